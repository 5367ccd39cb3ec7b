#ifndef SAVER_ECDF_HPP
#define SAVER_ECDF_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "saver/common.hpp"

namespace saver {

// The empirical distribution of a set of scalar evaluations. Values are
// stored sorted; duplicates are kept. Immutable after construction, so
// concurrent reads are safe.
class SampleSet {
 public:
  // Args:
  //   values: the raw evaluations, in any order. Must be nonempty and
  //     finite; a sorted copy is kept, so the input order never influences
  //     any query.
  explicit SampleSet(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw input_error("sample set must be nonempty");
    for (double v : values_) {
      if (!std::isfinite(v)) throw input_error("sample values must be finite");
    }
    std::sort(values_.begin(), values_.end());
  }

  // The fraction of values <= y: a right-continuous step function that is 0
  // below the minimum and 1 at and above the maximum.
  double ecdf(double y) const {
    if (std::isnan(y)) throw input_error("ecdf query must not be NaN");
    auto it = std::upper_bound(values_.begin(), values_.end(), y);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
  }

  // The smallest value whose ECDF is >= p, which for a step CDF is the
  // ceil(p*N)-th order statistic (1-indexed).
  double quantile(double p) const {
    std::size_t k = quantile_rank(p);
    return values_[k - 1];
  }

  // Same quantile located by bisection on the value axis instead of by rank.
  // Kept for cross-checking; agrees with quantile() to within one sample
  // spacing.
  double quantile_bisection(double p) const {
    quantile_rank(p);  // validates p
    double lo = values_.front() - 1.0;  // ecdf(lo) = 0 < p
    double hi = values_.back();        // ecdf(hi) = 1 >= p
    while (true) {
      double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;  // interval no longer splits
      if (ecdf(mid) >= p) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }

  // Empirical probability that an evaluation is <= 0.
  double probability_nonpositive() const { return ecdf(0.0); }

  std::size_t size() const { return values_.size(); }
  double min_value() const { return values_.front(); }
  double max_value() const { return values_.back(); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t quantile_rank(double p) const {
    if (!(p > 0.0 && p <= 1.0)) throw parameter_error("quantile level must be in (0,1]");
    double k = std::ceil(p * static_cast<double>(values_.size()));
    if (k < 1.0) k = 1.0;
    if (k > static_cast<double>(values_.size())) k = static_cast<double>(values_.size());
    return static_cast<std::size_t>(k);
  }

  std::vector<double> values_;
};

}  // namespace saver

#endif  // SAVER_ECDF_HPP
