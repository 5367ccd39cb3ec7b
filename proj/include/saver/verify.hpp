#ifndef SAVER_VERIFY_HPP
#define SAVER_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saver/bounds.hpp"
#include "saver/common.hpp"
#include "saver/ecdf.hpp"
#include "saver/parallel.hpp"
#include "saver/sdf.hpp"

namespace saver {

enum class Method { dkw, scenario };
enum class Direction { enlargement, reduction };

inline std::string to_string(Method m) { return m == Method::dkw ? "dkw" : "scenario"; }
inline std::string to_string(Direction d) {
  return d == Direction::enlargement ? "enlargement" : "reduction";
}

// Outcome of a probability check. `margin` is the slack against the
// effective bar: estimate - threshold for the CDF-band method, minus the
// worst observed value for the worst-case method. Either way satisfied
// holds exactly when margin >= 0.
struct Verdict {
  bool satisfied = false;
  double estimate = 0.0;   // empirical P(g <= 0)
  double threshold = 0.0;  // probability bar the estimate is held to
  double margin = 0.0;
  std::int64_t n_used = 0;
  std::int64_t n_required = 0;
};

// Level shift that makes the sampled evidence sit exactly on the boundary
// of acceptance: positive theta_star grows the set, negative shrinks it.
struct SetModification {
  double theta_star = 0.0;
  SetSpec modified_spec;
  Direction direction = Direction::reduction;
};

// One verification run: a target probability level 1 - delta, a confidence
// budget beta, the set to check, and (once attached) the sampled g-values.
//
// Two methods are supported. The CDF-band method (dkw) estimates the full
// distribution of g and needs an accuracy epsilon; the worst-case method
// (scenario) only looks at the largest observed g. Single-writer: samples
// change only through attach_samples, everything else is immutable.
class VerificationProblem {
 public:
  static VerificationProblem dkw(double delta, double beta, double epsilon, SetSpec spec,
                                 bool conservative = false) {
    require_unit_range(delta, "delta");
    require_unit_range(beta, "beta");
    require_unit_range(epsilon, "epsilon");
    return VerificationProblem(Method::dkw, delta, beta, epsilon, std::move(spec), conservative);
  }

  static VerificationProblem scenario(double delta, double beta, SetSpec spec) {
    require_unit_range(delta, "delta");
    require_unit_range(beta, "beta");
    return VerificationProblem(Method::scenario, delta, beta, std::nullopt, std::move(spec),
                               false);
  }

  Method method() const { return method_; }
  double delta() const { return delta_; }
  double beta() const { return beta_; }
  bool conservative() const { return conservative_; }

  double epsilon() const {
    if (!epsilon_) throw state_error("epsilon is only defined for the dkw method");
    return *epsilon_;
  }

  const SetSpec& spec() const { return spec_; }

  std::int64_t samples_required() const {
    if (method_ == Method::dkw) return dkw_samples({*epsilon_, beta_});
    return scenario_samples({delta_, beta_, 1});
  }

  // Network outputs: evaluated through the set's SDF (in parallel; the
  // result is independent of evaluation order). Replaces prior samples.
  void attach_samples(const std::vector<Point>& outputs, const ProjectionOptions& opts = {}) {
    if (outputs.empty()) throw input_error("need at least one sample");
    std::vector<double> values(outputs.size());
    parallel_for(outputs.size(), [&](std::size_t i) { values[i] = spec_.evaluate(outputs[i], opts); });
    samples_.emplace(std::move(values));
  }

  // Pre-evaluated g-values. Replaces prior samples.
  void attach_samples(std::vector<double> values) { samples_.emplace(std::move(values)); }

  bool has_samples() const { return samples_.has_value(); }

  const SampleSet& samples() const {
    if (!samples_) throw state_error("no samples attached");
    return *samples_;
  }

  // Fewer samples than required is allowed but voids the confidence
  // guarantee; callers should surface that as a warning.
  bool samples_sufficient() const {
    return static_cast<std::int64_t>(samples().size()) >= samples_required();
  }

  Verdict check_probability() const {
    const SampleSet& s = samples();
    Verdict v;
    v.estimate = s.probability_nonpositive();
    v.n_used = static_cast<std::int64_t>(s.size());
    v.n_required = samples_required();
    if (method_ == Method::dkw) {
      v.threshold = effective_level();
      v.margin = v.estimate - v.threshold;
      v.satisfied = v.estimate >= v.threshold;
    } else {
      v.threshold = 1.0 - delta_;
      v.margin = -s.max_value();
      v.satisfied = s.max_value() <= 0.0;
    }
    return v;
  }

  SetModification modify_set() const {
    const SampleSet& s = samples();
    double theta_star;
    if (method_ == Method::dkw) {
      double level = effective_level();
      if (level > 1.0) {
        throw parameter_error("conservative quantile level 1 - delta + epsilon = " +
                              std::to_string(level) + " exceeds 1; lower epsilon");
      }
      theta_star = s.quantile(level);
    } else {
      theta_star = s.max_value();
    }
    SetModification mod{theta_star, spec_.shift_level(theta_star),
                        theta_star > 0.0 ? Direction::enlargement : Direction::reduction};
    return mod;
  }

 private:
  VerificationProblem(Method method, double delta, double beta, std::optional<double> epsilon,
                      SetSpec spec, bool conservative)
      : method_(method),
        delta_(delta),
        beta_(beta),
        epsilon_(epsilon),
        conservative_(conservative),
        spec_(std::move(spec)) {}

  // The probability level verdicts and quantiles are held to: 1 - delta,
  // raised by epsilon in conservative mode to absorb the CDF band's error.
  double effective_level() const {
    double level = 1.0 - delta_;
    if (conservative_) level += *epsilon_;
    return level;
  }

  Method method_;
  double delta_;
  double beta_;
  std::optional<double> epsilon_;
  bool conservative_;
  SetSpec spec_;
  std::optional<SampleSet> samples_;
};

}  // namespace saver

#endif  // SAVER_VERIFY_HPP
