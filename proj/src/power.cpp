#include "nof1/power.hpp"

#include <cmath>
#include <string>

#include "nof1/ar1_math.hpp"
#include "nof1/error.hpp"
#include "nof1/special_dist.hpp"

namespace nof1 {
namespace {

constexpr double kMaxDelta = 100.0;
constexpr double kPowerTolerance = 1e-7;
constexpr int kMaxBisections = 200;

std::size_t second_length(const PowerQuery& q) { return q.m_b == 0 ? q.m_a : q.m_b; }

}  // namespace

void validate(const PowerQuery& q) {
  if (!(q.alpha > 0.0 && q.alpha <= 0.5)) throw ValidationError("alpha must be in (0, 0.5]");
  if (!(q.target_power > 0.0 && q.target_power < 1.0)) {
    throw ValidationError("target power must be in (0, 1)");
  }
  if (!(q.sigma > 0.0) || !std::isfinite(q.sigma)) throw ValidationError("sigma must be positive");
  if (!std::isfinite(q.rho) || std::abs(q.rho) > kMaxAbsRho) {
    throw DomainError("assumed rho must lie in [-0.99, 0.99]");
  }
  check_minimum_size(q.kind, q.m_a, second_length(q));
}

PowerDesign power_design(const PowerQuery& q) {
  validate(q);
  const Design design = design_of(q.kind);
  const int p = location_params(design);
  const double rho = q.method == Method::Usual ? 0.0 : q.rho;

  PowerDesign out;
  if (is_paired(q.kind)) {
    const CorrectionFactors f = factors(design, q.m_a, rho);
    out.se = std::sqrt(f.c);
    out.df = f.m_eff - p;
    return out;
  }
  const CorrectionFactors fa = factors(design, q.m_a, rho);
  const CorrectionFactors fb = factors(design, second_length(q), rho);
  const double ra = static_cast<double>(fa.m) - p;
  const double rb = static_cast<double>(fb.m) - p;
  const double expected_s2 = (fa.b * ra + fb.b * rb) / (ra + rb);
  out.se = std::sqrt(expected_s2 * (fa.c / fa.b + fb.c / fb.b));
  out.df = fa.m_eff + fb.m_eff - 2.0 * p;
  return out;
}

double theoretical_power(const PowerQuery& q, double delta) {
  if (!std::isfinite(delta)) throw DomainError("effect size must be finite");
  const PowerDesign d = power_design(q);
  double lambda = delta / d.se;
  if (q.side == TailSide::Lower) lambda = -lambda;
  return nct_power(d.df, lambda, q.alpha, q.side);
}

double detectable_effect(const PowerQuery& q) {
  const PowerDesign d = power_design(q);
  auto power_at = [&](double delta) {
    const double lambda = q.side == TailSide::Lower ? -delta / d.se : delta / d.se;
    return nct_power(d.df, lambda, q.alpha, q.side);
  };
  if (q.target_power <= power_at(0.0)) {
    throw ValidationError("target power must exceed the power at zero effect");
  }
  double lo = 0.0;
  double hi = kMaxDelta;
  if (power_at(hi) < q.target_power) {
    throw ConvergenceError("target power not reached for effects up to " +
                           std::to_string(kMaxDelta) + " sigma");
  }
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double pw = power_at(mid);
    if (std::abs(pw - q.target_power) <= kPowerTolerance) return mid;
    if (pw < q.target_power) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13) return 0.5 * (lo + hi);
  }
  throw ConvergenceError("detectable effect bisection did not converge");
}

}  // namespace nof1
