#include <cmath>
#include <numbers>

#include "doctest.h"
#include "../oracles.hpp"
#include "nof1/error.hpp"
#include "nof1/special_dist.hpp"

using nof1::TailSide;

TEST_CASE("t_cdf reference values") {
  CHECK(nof1::t_cdf(0.0, 7.3) == 0.5);
  CHECK(std::abs(nof1::t_cdf(1.0, 1.0) - 0.75) < 1e-14);
  CHECK(std::abs(nof1::t_cdf(2.5, 1.0) - (0.5 + std::atan(2.5) / std::numbers::pi)) < 1e-14);
  CHECK(std::abs(nof1::t_cdf(1.959964, 10000.0) - 0.975) < 1e-4);
}

TEST_CASE("t_cdf matches the integer-df series") {
  for (int df : {1, 2, 5, 30}) {
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      CAPTURE(df);
      CAPTURE(t);
      CHECK(std::abs(nof1::t_cdf(t, df) - oracle::t_cdf_integer(t, df)) < 1e-8);
      CHECK(std::abs(nof1::t_cdf(-t, df) - oracle::t_cdf_integer(-t, df)) < 1e-8);
    }
  }
}

TEST_CASE("t_cdf symmetry and monotonicity at fractional df") {
  for (double df : {0.01, 0.3, 2.29, 3.98, 47.5}) {
    double prev = 0.0;
    for (double t = -20; t <= 20; t += 0.25) {
      const double p = nof1::t_cdf(t, df);
      CHECK(p >= prev);
      prev = p;
      CHECK(std::abs(nof1::t_cdf(-t, df) - (1.0 - p)) < 1e-12);
    }
  }
}

TEST_CASE("t_quantile") {
  CHECK(nof1::t_quantile(0.5, 3.7) == 0.0);
  CHECK(std::abs(nof1::t_quantile(0.75, 1.0) - 1.0) < 1e-12);
  CHECK(std::abs(nof1::t_quantile(0.95, 4.0) - 2.13185) < 1e-4);
  for (double df : {0.05, 1.5, 2.22, 9.0, 200.0}) {
    double prev = -INFINITY;
    for (double p : {0.001, 0.025, 0.2, 0.5, 0.8, 0.975, 0.999}) {
      const double q = nof1::t_quantile(p, df);
      CHECK(q > prev);
      prev = q;
      CHECK(std::abs(nof1::t_cdf(q, df) - p) < 1e-9);
    }
  }
  CHECK_THROWS_AS(nof1::t_quantile(0.0, 3.0), nof1::DomainError);
  CHECK_THROWS_AS(nof1::t_quantile(1.0, 3.0), nof1::DomainError);
}

TEST_CASE("p-values by side") {
  const double t = 1.7, df = 5.5;
  const double lo = nof1::t_p_value(t, df, TailSide::Lower);
  const double up = nof1::t_p_value(t, df, TailSide::Upper);
  CHECK(std::abs(lo + up - 1.0) < 1e-14);
  CHECK(std::abs(nof1::t_p_value(t, df, TailSide::TwoSided) - 2 * std::min(lo, up)) < 1e-14);
  CHECK(nof1::t_p_value(0.0, df, TailSide::TwoSided) == 1.0);
}

TEST_CASE("df domain") {
  CHECK_THROWS_AS(nof1::t_cdf(1.0, 0.0), nof1::DomainError);
  CHECK_THROWS_AS(nof1::t_cdf(1.0, 0.009), nof1::DomainError);
  CHECK_NOTHROW(nof1::t_cdf(1.0, 0.01));
  CHECK_THROWS_AS(nof1::nct_power(-1.0, 1.0, 0.05, TailSide::Upper), nof1::DomainError);
  CHECK_THROWS_AS(nof1::nct_power(5.0, 1.0, 0.0, TailSide::Upper), nof1::DomainError);
  CHECK_THROWS_AS(nof1::nct_power(5.0, 1.0, 1.0, TailSide::Upper), nof1::DomainError);
}

TEST_CASE("nct_power limits") {
  for (TailSide side : {TailSide::Lower, TailSide::Upper, TailSide::TwoSided}) {
    for (double df : {0.5, 2.29, 9.0, 80.0}) {
      CHECK(std::abs(nof1::nct_power(df, 0.0, 0.05, side) - 0.05) < 1e-6);
    }
  }
  CHECK(1.0 - nof1::nct_power(9.0, 50.0, 0.05, TailSide::Upper) < 1e-6);
  CHECK(nof1::nct_power(9.0, -50.0, 0.05, TailSide::Upper) < 1e-6);
  CHECK(1.0 - nof1::nct_power(9.0, -50.0, 0.05, TailSide::Lower) < 1e-6);
}

TEST_CASE("nct_power agrees with chi-square mixture quadrature") {
  for (double df : {1.0, 2.5, 9.0, 30.0}) {
    for (double lambda : {-1.0, 0.5, 2.6, 4.0}) {
      const double crit = nof1::t_quantile(0.95, df);
      CAPTURE(df);
      CAPTURE(lambda);
      CHECK(std::abs(nof1::nct_power(df, lambda, 0.05, TailSide::Upper) -
                     oracle::nct_upper(df, lambda, crit)) < 1e-6);
      const double c2 = nof1::t_quantile(0.975, df);
      const double two = oracle::nct_upper(df, lambda, c2) + oracle::nct_upper(df, -lambda, c2);
      CHECK(std::abs(nof1::nct_power(df, lambda, 0.05, TailSide::TwoSided) - two) < 1e-6);
    }
  }
}

TEST_CASE("nct_power agrees with simulation at df = 9, lambda = 2.6") {
  const double crit = nof1::t_quantile(0.95, 9.0);
  const auto sim = oracle::nct_upper_sim(9.0, 2.6, crit, 1000000, 42);
  CHECK(std::abs(nof1::nct_power(9.0, 2.6, 0.05, TailSide::Upper) - sim.p) < 3 * sim.se);
}

TEST_CASE("nct_power is nondecreasing in lambda") {
  for (double df : {0.3, 3.0, 20.0}) {
    double prev = 0.0;
    for (double lambda = 0.0; lambda <= 30.0; lambda += 0.1) {
      const double p = nof1::nct_power(df, lambda, 0.05, TailSide::Upper);
      CHECK(p >= prev - 1e-12);
      prev = p;
    }
  }
}

TEST_CASE("nct_power is continuous across the large-lambda path") {
  for (double df : {0.01, 0.2, 2.0}) {
    for (TailSide side : {TailSide::Upper, TailSide::TwoSided}) {
      // Power still moves by ~1e-5 per unit lambda here at df = 0.2.
      const double below = nof1::nct_power(df, 19999.999, 0.05, side);
      const double above = nof1::nct_power(df, 20000.001, 0.05, side);
      CHECK(std::abs(below - above) < 1e-6);
      CHECK(above >= below - 1e-12);
    }
    CHECK(nof1::nct_power(df, 1e7, 0.05, TailSide::Upper) >= nof1::nct_power(df, 1e5, 0.05, TailSide::Upper));
    CHECK(nof1::nct_power(df, -1e7, 0.05, TailSide::Lower) ==
          doctest::Approx(nof1::nct_power(df, 1e7, 0.05, TailSide::Upper)).epsilon(1e-12));
  }
}
