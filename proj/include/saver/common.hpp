#ifndef SAVER_COMMON_HPP
#define SAVER_COMMON_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace saver {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A point in the output space of the function under verification.
using Point = Vector;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The set or network description itself is malformed (dimension mismatch,
// nonpositive radius, zero facet normal, broken layer chain).
class spec_error : public error {
 public:
  using error::error;
};

// A caller-supplied value is unusable (non-finite coordinate, empty sample
// list).
class input_error : public error {
 public:
  using error::error;
};

// A scalar parameter is outside its admissible range.
class parameter_error : public error {
 public:
  using error::error;
};

// An operation was called before its prerequisites were established.
class state_error : public error {
 public:
  using error::error;
};

// A computation produced a non-finite intermediate value.
class numeric_error : public error {
 public:
  using error::error;
};

// An iterative solve exhausted its budget without meeting its tolerances.
class convergence_error : public error {
 public:
  using error::error;
};

// A document (JSON, CSV) does not match its schema.
class parse_error : public error {
 public:
  using error::error;
};

// A file could not be opened or written.
class io_error : public error {
 public:
  using error::error;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline void require_unit_range(double value, const std::string& name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw parameter_error(name + " must be in (0,1), got " + std::to_string(value));
  }
}

}  // namespace saver

#endif  // SAVER_COMMON_HPP
