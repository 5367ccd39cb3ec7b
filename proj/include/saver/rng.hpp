#ifndef SAVER_RNG_HPP
#define SAVER_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

#include "saver/common.hpp"

namespace saver {

// splitmix64 (Steele, Lea & Flood 2014; public-domain reference by Vigna).
// Output i is a pure function of (seed, i), so any stream position can be
// addressed directly and sample generation parallelizes without coordination.
//
// Reference outputs for seed 0, indices 0..3:
//   16294208416658607535  7960286522194355700
//   487617019471545679    17909611376780542444
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Output at a given stream position, without advancing any state.
  static std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * kGamma);
  }

  // Maps 64 random bits to the open interval (0,1); the half-step offset
  // keeps both endpoints unreachable.
  static double to_unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_unit_open() { return to_unit_open(next()); }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  std::uint64_t state_;
};

namespace detail {

template <std::size_t N>
double horner(double x, const std::array<double, N>& ascending) {
  double acc = ascending[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * x + ascending[i];
  return acc;
}

}  // namespace detail

// Inverse of the standard normal CDF via the rational approximations of
// Wichura's algorithm AS 241 (PPND16 variant, absolute error below 1e-9
// over the full open interval). Chosen over rejection sampling so that the
// draw at a given stream position is a fixed arithmetic expression.
inline double inverse_normal_cdf(double p) {
  static const std::array<double, 8> a = {
      3.3871328727963666080e0,  1.3314166789178437745e2,  1.9715909503065514427e3,
      1.3731693765509461125e4,  4.5921953931549871457e4,  6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  static const std::array<double, 8> b = {
      1.0,                      4.2313330701600911252e1,  6.8718700749205790830e2,
      5.3941960214247511077e3,  2.1213794301586595867e4,  3.9307895800092710610e4,
      2.8729085735721942674e4,  5.2264952788528545610e3};
  static const std::array<double, 8> c = {
      1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static const std::array<double, 8> d = {
      1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static const std::array<double, 8> e = {
      6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static const std::array<double, 8> f = {
      1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  if (!(p > 0.0 && p < 1.0)) {
    throw parameter_error("inverse_normal_cdf requires p in (0,1)");
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * detail::horner(r, a) / detail::horner(r, b);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = detail::horner(r, c) / detail::horner(r, d);
  } else {
    r -= 5.0;
    x = detail::horner(r, e) / detail::horner(r, f);
  }
  return (q < 0.0) ? -x : x;
}

}  // namespace saver

#endif  // SAVER_RNG_HPP
