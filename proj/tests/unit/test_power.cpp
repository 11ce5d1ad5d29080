#include <cmath>

#include "doctest.h"
#include "../oracles.hpp"
#include "nof1/error.hpp"
#include "nof1/power.hpp"

using nof1::PowerQuery;
using nof1::TailSide;
using nof1::TestKind;

namespace {

PowerQuery query(TestKind kind, std::size_t m, double rho) {
  PowerQuery q;
  q.kind = kind;
  q.m_a = m;
  q.rho = rho;
  return q;
}

// Upper 5% critical value for integer df by bisection on the series cdf.
double crit_integer(int df, double alpha) {
  double lo = 0.0, hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (1.0 - oracle::t_cdf_integer(mid, df) > alpha ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

// Classical one-sided power with standard error `se` (sigma units).
double classical_power(double delta, double se, int df) {
  return oracle::nct_upper(df, delta / se, crit_integer(df, 0.05));
}

double classical_detectable(double se, int df) {
  double lo = 0.0, hi = 20.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = (lo + hi) / 2;
    (classical_power(mid, se, df) < 0.8 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("power at zero effect is alpha") {
  for (TestKind k : {TestKind::PairedLevel, TestKind::TwoSampleLevel, TestKind::PairedRate,
                     TestKind::TwoSampleRate}) {
    for (TailSide side : {TailSide::Lower, TailSide::Upper, TailSide::TwoSided}) {
      auto q = query(k, 10, 0.4);
      q.side = side;
      CHECK(std::abs(nof1::theoretical_power(q, 0.0) - 0.05) < 1e-6);
    }
  }
}

TEST_CASE("paired level at rho = 0 matches the one-sample t") {
  const auto q = query(TestKind::PairedLevel, 10, 0.0);
  const double pw = nof1::theoretical_power(q, 1.0);
  CHECK(std::abs(pw - 0.897) < 0.01);
  CHECK(std::abs(pw - classical_power(1.0, 1 / std::sqrt(10.0), 9)) < 1e-6);
  // The one-sample t oracle gives 0.853 here.
  const double delta = nof1::detectable_effect(q);
  CHECK(std::abs(delta - classical_detectable(1 / std::sqrt(10.0), 9)) < 1e-4);
  CHECK(std::abs(delta - 0.853) < 0.001);
  CHECK(nof1::theoretical_power(query(TestKind::PairedLevel, 10, 0.67), 1.0) < pw);
}

TEST_CASE("serial detectable effect at rho = 0 equals the classical value") {
  struct Case {
    TestKind kind;
    std::size_t m;
    double se;
    int df;
  };
  auto sxx = [](double m) { return m * (m * m - 1) / 12; };
  const Case cases[] = {
      {TestKind::PairedLevel, 7, 1 / std::sqrt(7.0), 6},
      {TestKind::TwoSampleLevel, 6, std::sqrt(2 / 6.0), 10},
      {TestKind::PairedRate, 8, 1 / std::sqrt(sxx(8)), 6},
      {TestKind::TwoSampleRate, 9, std::sqrt(2 / sxx(9)), 14},
  };
  for (const auto& c : cases) {
    CAPTURE(static_cast<int>(c.kind));
    const double ours = nof1::detectable_effect(query(c.kind, c.m, 0.0));
    CHECK(std::abs(ours - classical_detectable(c.se, c.df)) < 1e-4);
  }
}

TEST_CASE("detectable effect monotonicity") {
  for (TestKind k : {TestKind::PairedLevel, TestKind::TwoSampleLevel, TestKind::PairedRate,
                     TestKind::TwoSampleRate}) {
    for (double rho : {-0.33, 0.0, 0.33, 0.67}) {
      CHECK(nof1::detectable_effect(query(k, 12, rho)) < nof1::detectable_effect(query(k, 6, rho)));
    }
  }
  for (TestKind k : {TestKind::PairedLevel, TestKind::TwoSampleLevel}) {
    for (std::size_t m : {6u, 10u, 30u}) {
      const double d0 = nof1::detectable_effect(query(k, m, 0.0));
      const double d1 = nof1::detectable_effect(query(k, m, 0.33));
      const double d2 = nof1::detectable_effect(query(k, m, 0.67));
      CHECK(d0 < d1);
      CHECK(d1 < d2);
    }
  }
}

TEST_CASE("round trip power(detectable_effect) = target") {
  for (TestKind k : {TestKind::PairedLevel, TestKind::TwoSampleLevel, TestKind::PairedRate,
                     TestKind::TwoSampleRate}) {
    for (double rho : {-0.99, -0.5, 0.0, 0.5, 0.8}) {
      for (TailSide side : {TailSide::Upper, TailSide::Lower, TailSide::TwoSided}) {
        for (std::size_t m : {8u, 100u, 1000u}) {
          auto q = query(k, m, rho);
          q.side = side;
          q.target_power = 0.9;
          const double d = nof1::detectable_effect(q);
          CHECK(d > 0);
          CHECK(std::abs(nof1::theoretical_power(q, d) - 0.9) < 1e-5);
        }
      }
    }
  }
}

TEST_CASE("an unreachable target is a convergence error") {
  // At rho = 0.99 and m = 8 the df is so small that power stays below 0.9
  // for every effect in the bracket.
  auto q = query(TestKind::PairedLevel, 8, 0.99);
  q.target_power = 0.9;
  CHECK(nof1::theoretical_power(q, 100.0) < 0.9);
  CHECK_THROWS_AS(nof1::detectable_effect(q), nof1::ConvergenceError);
}

TEST_CASE("power stays finite for very large noncentrality") {
  // Long negatively correlated rate series have tiny standard errors.
  auto q = query(TestKind::PairedRate, 100, -0.98);
  CHECK(nof1::theoretical_power(q, 100.0) > 1.0 - 1e-12);
  const double d = nof1::detectable_effect(q);
  CHECK(d > 0);
  CHECK(d < 0.01);
}

// Adjacent detectable effects 0.01 apart in rho can legitimately differ by
// more than 0.01 where the curve is steep (rho near +-1, large m), so a
// jump is accepted when it shrinks in proportion to the step.
TEST_CASE("detectable effect is continuous in rho") {
  for (TestKind k : {TestKind::PairedLevel, TestKind::TwoSampleLevel, TestKind::PairedRate,
                     TestKind::TwoSampleRate}) {
    for (std::size_t m : {6u, 30u, 100u}) {
      auto at = [&](double rho) { return nof1::detectable_effect(query(k, m, rho)); };
      double prev = at(-0.98);
      for (int i = -97; i <= 98; ++i) {
        const double rho = i / 100.0;
        double cur = 0.0;
        try {
          cur = at(rho);
        } catch (const nof1::ConvergenceError&) {
          break;  // beyond here the target needs more than 100 sigma
        }
        const double jump = std::abs(cur - prev);
        if (jump > 0.01) {
          CAPTURE(rho);
          const double half = std::abs(at(rho - 0.005) - prev);
          const double quarter = std::abs(at(rho - 0.0075) - prev);
          CHECK(half < 0.6 * jump);
          CHECK(quarter < 0.35 * jump);
        }
        prev = cur;
      }
    }
  }
}

TEST_CASE("usual method ignores rho") {
  auto q = query(TestKind::TwoSampleLevel, 10, 0.5);
  q.method = nof1::Method::Usual;
  auto q0 = query(TestKind::TwoSampleLevel, 10, 0.0);
  CHECK(nof1::detectable_effect(q) == doctest::Approx(nof1::detectable_effect(q0)).epsilon(1e-9));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(nof1::validate(query(TestKind::PairedLevel, 3, 0.0)), nof1::MinimumSizeError);
  auto q = query(TestKind::PairedLevel, 10, 0.0);
  q.alpha = 0.6;
  CHECK_THROWS_AS(nof1::validate(q), nof1::ValidationError);
  q = query(TestKind::PairedLevel, 10, 0.995);
  CHECK_THROWS_AS(nof1::validate(q), nof1::ValidationError);
  q = query(TestKind::PairedLevel, 10, 0.0);
  q.target_power = 0.01;
  CHECK_THROWS_AS(nof1::detectable_effect(q), nof1::ValidationError);
}
