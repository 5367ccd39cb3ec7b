#ifndef SAVER_BOUNDS_HPP
#define SAVER_BOUNDS_HPP

#include <cmath>
#include <cstdint>

#include "saver/common.hpp"

namespace saver {

// Accuracy/confidence pair for an empirical-CDF (DKW) guarantee: the ECDF is
// within epsilon of the true CDF in sup norm, with probability 1 - beta.
struct DkwParams {
  double epsilon;
  double beta;
};

// Violation/confidence pair for a scenario-optimization guarantee, plus the
// number of decision variables of the sampled program.
struct ScenarioParams {
  double delta;
  double beta;
  std::int64_t n_theta = 1;
};

// Samples needed so that the ECDF sup-error stays below epsilon with
// confidence 1 - beta:  N = ceil(-ln(beta/2) / (2 epsilon^2)).
// The ceiling is applied once, after the full double-precision evaluation.
inline std::int64_t dkw_samples(const DkwParams& p) {
  require_unit_range(p.epsilon, "epsilon");
  require_unit_range(p.beta, "beta");
  double n = -std::log(p.beta / 2.0) / (2.0 * p.epsilon * p.epsilon);
  auto count = static_cast<std::int64_t>(std::ceil(n));
  return count < 1 ? 1 : count;
}

// Achieved sup-error accuracy for a given sample budget; the closed-form
// inverse of dkw_samples, so dkw_samples(dkw_epsilon(N, beta), beta) lands
// back on N (or N+1 at a ceiling boundary).
inline double dkw_epsilon(std::int64_t n, double beta) {
  if (n < 1) throw parameter_error("sample count must be >= 1");
  require_unit_range(beta, "beta");
  return std::sqrt(-std::log(beta / 2.0) / (2.0 * static_cast<double>(n)));
}

// Samples needed so that the optimum of the sampled program satisfies the
// chance constraint at violation level delta with confidence 1 - beta:
//   N = ceil( (1/delta) (e/(e-1)) (ln(1/beta) + n_theta) ).
inline std::int64_t scenario_samples(const ScenarioParams& p) {
  require_unit_range(p.delta, "delta");
  require_unit_range(p.beta, "beta");
  if (p.n_theta < 1) throw parameter_error("n_theta must be >= 1");
  const double e = std::exp(1.0);
  double n = (1.0 / p.delta) * (e / (e - 1.0)) *
             (std::log(1.0 / p.beta) + static_cast<double>(p.n_theta));
  auto count = static_cast<std::int64_t>(std::ceil(n));
  return count < 1 ? 1 : count;
}

}  // namespace saver

#endif  // SAVER_BOUNDS_HPP
