#ifndef SAVER_SETS_HPP
#define SAVER_SETS_HPP

#include <cmath>
#include <utility>

#include "saver/common.hpp"

namespace saver {

enum class NormOrder { one, two, inf };

// The ball {y : ||y - center||_q <= radius} in norm order q.
struct NormBallSpec {
  Point center;
  double radius = 1.0;
  NormOrder order = NormOrder::two;

  NormBallSpec(Point c, double r, NormOrder q = NormOrder::two)
      : center(std::move(c)), radius(r), order(q) {
    if (center.size() < 1) throw spec_error("norm ball center must have dimension >= 1");
    if (!all_finite(center)) throw spec_error("norm ball center must be finite");
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw spec_error("norm ball radius must be positive and finite");
    }
  }

  Eigen::Index dimension() const { return center.size(); }
};

inline double norm_of(const Vector& v, NormOrder order) {
  switch (order) {
    case NormOrder::one:
      return v.lpNorm<1>();
    case NormOrder::two:
      return v.norm();
    case NormOrder::inf:
      return v.lpNorm<Eigen::Infinity>();
  }
  throw spec_error("unknown norm order");
}

// The polytope {y : A y <= b}, one facet per row of A. Rows must be nonzero;
// redundant rows are allowed. Must be nonempty with nonempty complement
// (a modeling precondition; emptiness is only detected heuristically, as
// projection non-convergence).
class PolytopeSpec {
 public:
  PolytopeSpec(Matrix a, Vector offsets) : a_(std::move(a)), b_(std::move(offsets)) {
    if (a_.rows() < 1) throw spec_error("polytope needs at least one facet");
    if (a_.cols() < 1) throw spec_error("polytope dimension must be >= 1");
    if (a_.rows() != b_.size()) {
      throw spec_error("polytope facet count mismatch: A has " + std::to_string(a_.rows()) +
                       " rows, b has " + std::to_string(b_.size()) + " entries");
    }
    if (!all_finite(a_) || !all_finite(b_)) throw spec_error("polytope data must be finite");
    row_norms_ = a_.rowwise().norm();
    for (Eigen::Index i = 0; i < row_norms_.size(); ++i) {
      if (!(row_norms_(i) > 0.0)) {
        throw spec_error("polytope facet " + std::to_string(i) + " has a zero normal");
      }
    }
  }

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  const Vector& row_norms() const { return row_norms_; }
  Eigen::Index facets() const { return a_.rows(); }
  Eigen::Index dimension() const { return a_.cols(); }

 private:
  Matrix a_;
  Vector b_;
  Vector row_norms_;
};

// The slab {lo <= x <= hi} on the real line, as a two-facet 1-D polytope.
inline PolytopeSpec interval(double lo, double hi) {
  if (!(lo <= hi)) throw spec_error("interval requires lo <= hi");
  Matrix a(2, 1);
  a << 1.0, -1.0;
  Vector b(2);
  b << hi, -lo;
  return PolytopeSpec(std::move(a), std::move(b));
}

}  // namespace saver

#endif  // SAVER_SETS_HPP
