#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include <saver/bounds.hpp>

using namespace saver;

TEST_CASE("dkw_samples matches hand-computed ceilings", "[bounds]") {
  // ceil(-ln(beta/2) / (2 eps^2)) evaluated independently:
  //   -ln(0.0005) = 7.600902459542082
  CHECK(dkw_samples({0.001, 0.001}) == 3800452);
  CHECK(dkw_samples({0.01, 0.001}) == 38005);
  CHECK(dkw_samples({0.1, 0.001}) == 381);
  CHECK(dkw_samples({0.05, 0.05}) == 738);
}

TEST_CASE("scenario_samples matches hand-computed ceilings", "[bounds]") {
  // ceil((1/delta) * e/(e-1) * (ln(1/beta) + n_theta)), natural log:
  //   e/(e-1) = 1.5819767068693265, ln(1000) + 1 = 7.907755278982137
  CHECK(scenario_samples({0.001, 0.001, 1}) == 12510);
  CHECK(scenario_samples({0.01, 0.001, 1}) == 1251);
  CHECK(scenario_samples({0.1, 0.001, 1}) == 126);
  CHECK(scenario_samples({0.05, 0.05, 1}) == 127);
}

TEST_CASE("dkw_epsilon inverts the sample bound", "[bounds]") {
  CHECK_THAT(dkw_epsilon(381, 0.001), Catch::Matchers::WithinAbs(0.09987, 5e-5));
  CHECK_THAT(dkw_epsilon(38005, 0.001), Catch::Matchers::WithinAbs(0.009999, 5e-6));

  SECTION("quadrupling N halves epsilon exactly") {
    for (std::int64_t n : {10, 100, 1000, 12345}) {
      CHECK_THAT(dkw_epsilon(4 * n, 0.3) / dkw_epsilon(n, 0.3),
                 Catch::Matchers::WithinUlps(0.5, 4));
    }
  }

  SECTION("round trip lands on N or N+1") {
    for (double n = 10; n <= 1e7; n *= 1.37) {
      auto count = static_cast<std::int64_t>(n);
      std::int64_t back = dkw_samples({dkw_epsilon(count, 0.001), 0.001});
      CAPTURE(count, back);
      CHECK(back >= count);
      CHECK(back <= count + 1);
    }
  }
}

TEST_CASE("sample bounds are monotone in their parameters", "[bounds]") {
  double eps[] = {0.001, 0.01, 0.05, 0.2, 0.9};
  double betas[] = {0.0001, 0.01, 0.5, 0.99};
  for (std::size_t i = 0; i + 1 < std::size(eps); ++i) {
    for (double beta : betas) {
      CHECK(dkw_samples({eps[i], beta}) >= dkw_samples({eps[i + 1], beta}));
      CHECK(scenario_samples({eps[i], beta, 1}) >= scenario_samples({eps[i + 1], beta, 1}));
    }
  }
  for (double e : eps) {
    for (std::size_t i = 0; i + 1 < std::size(betas); ++i) {
      CHECK(dkw_samples({e, betas[i]}) >= dkw_samples({e, betas[i + 1]}));
      CHECK(scenario_samples({e, betas[i], 1}) >= scenario_samples({e, betas[i + 1], 1}));
    }
    CHECK(scenario_samples({e, 0.01, 5}) >= scenario_samples({e, 0.01, 1}));
  }
}

TEST_CASE("bounds reject out-of-range parameters", "[bounds]") {
  CHECK_THROWS_AS(dkw_samples({0.0, 0.5}), parameter_error);
  CHECK_THROWS_AS(dkw_samples({1.0, 0.5}), parameter_error);
  CHECK_THROWS_AS(dkw_samples({0.5, 0.0}), parameter_error);
  CHECK_THROWS_AS(dkw_samples({0.5, 1.0}), parameter_error);
  CHECK_THROWS_AS(scenario_samples({0.0, 0.5, 1}), parameter_error);
  CHECK_THROWS_AS(scenario_samples({0.5, -0.1, 1}), parameter_error);
  CHECK_THROWS_AS(scenario_samples({0.5, 0.5, 0}), parameter_error);
  CHECK_THROWS_AS(dkw_epsilon(0, 0.5), parameter_error);
  CHECK_THROWS_AS(dkw_epsilon(10, 1.5), parameter_error);
  CHECK_THROWS_WITH(dkw_samples({0.0, 0.5}), Catch::Matchers::ContainsSubstring("epsilon"));
}

TEST_CASE("bounds never return less than one sample", "[bounds]") {
  CHECK(dkw_samples({0.999, 0.999}) >= 1);
  CHECK(scenario_samples({0.999, 0.999, 1}) >= 1);
}
