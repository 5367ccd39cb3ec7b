#ifndef SAVER_PROJECTION_HPP
#define SAVER_PROJECTION_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "saver/common.hpp"
#include "saver/sets.hpp"

namespace saver {

struct ProjectionOptions {
  double feas_tol = 1e-9;   // allowed constraint violation at the solution
  double opt_tol = 1e-7;    // relative stopping tolerance on cycle increments
  std::int64_t max_iter = 100000;  // full Dykstra cycles
};

struct ProjectionResult {
  Point point;            // the projection z*
  double distance = 0.0;  // ||y - z*||_2
  std::int64_t iterations = 0;
  bool converged = true;
};

// Euclidean projection onto the halfspace {z : normal.z <= offset}.
inline Point project_halfspace(const Vector& normal, double offset, const Point& y) {
  if (normal.size() < 1 || normal.squaredNorm() == 0.0) {
    throw spec_error("halfspace normal must be nonzero");
  }
  if (normal.size() != y.size()) {
    throw spec_error("halfspace/point dimension mismatch");
  }
  double violation = normal.dot(y) - offset;
  if (violation <= 0.0) return y;
  return y - (violation / normal.squaredNorm()) * normal;
}

// Euclidean projection onto {z : A z <= b} by Dykstra's cyclic scheme over
// the facet halfspaces. Each halfspace projection is closed-form, and for an
// intersection of convex sets the corrected cycle converges to the true
// projection (unlike plain alternating projections, which only reach *a*
// point of the intersection).
//
// Stopping follows the robust criterion of Birgin & Raydan, "Robust stopping
// criteria for Dykstra's algorithm", SISC 26(4), 2005: a cycle is accepted
// once the summed correction increments are small relative to 1 + ||y|| and
// the iterate is feasible to feas_tol. A feasible input returns immediately
// with zero iterations. Non-convergence (iteration budget exhausted, which
// is also how an empty polytope shows up) is reported, not thrown.
inline ProjectionResult project_polytope(const PolytopeSpec& spec, const Point& y,
                                         const ProjectionOptions& opts = {}) {
  if (spec.dimension() != y.size()) {
    throw spec_error("polytope/point dimension mismatch: set is " +
                     std::to_string(spec.dimension()) + "-dimensional, point is " +
                     std::to_string(y.size()) + "-dimensional");
  }
  if (!all_finite(y)) throw input_error("projection query point must be finite");
  if (!(opts.feas_tol > 0.0) || !(opts.opt_tol > 0.0) || opts.max_iter < 1) {
    throw parameter_error("projection tolerances must be positive and max_iter >= 1");
  }

  const Matrix& a = spec.a();
  const Vector& b = spec.b();
  const Eigen::Index m = spec.facets();

  if (((b - a * y).array() >= 0.0).all()) {
    return ProjectionResult{y, 0.0, 0, true};
  }

  Point x = y;
  Matrix corrections = Matrix::Zero(m, spec.dimension());
  const double stop_tol = opts.opt_tol * (1.0 + y.norm());

  for (std::int64_t cycle = 1; cycle <= opts.max_iter; ++cycle) {
    double increment_sq = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      Vector z = x + corrections.row(i).transpose();
      double violation = a.row(i).dot(z) - b(i);
      if (violation > 0.0) {
        x = z - (violation / a.row(i).squaredNorm()) * a.row(i).transpose();
      } else {
        x = z;
      }
      Vector correction = z - x;
      increment_sq += (correction - corrections.row(i).transpose()).squaredNorm();
      corrections.row(i) = correction.transpose();
    }
    if (std::sqrt(increment_sq) <= stop_tol && (a * x - b).maxCoeff() <= opts.feas_tol) {
      return ProjectionResult{x, (y - x).norm(), cycle, true};
    }
  }
  return ProjectionResult{x, (y - x).norm(), opts.max_iter, false};
}

// Distance from y to the polytope. Unlike project_polytope, a failure to
// converge is an error here, never a silently wrong number.
inline double distance_to_polytope(const PolytopeSpec& spec, const Point& y,
                                   const ProjectionOptions& opts = {}) {
  ProjectionResult result = project_polytope(spec, y, opts);
  if (!result.converged) {
    throw convergence_error("polytope projection did not converge in " +
                            std::to_string(result.iterations) +
                            " cycles (is the polytope empty?)");
  }
  return result.distance;
}

}  // namespace saver

#endif  // SAVER_PROJECTION_HPP
