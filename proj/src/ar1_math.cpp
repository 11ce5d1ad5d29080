#include "nof1/ar1_math.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nof1/error.hpp"

namespace nof1 {
namespace {

// Above this correlation the rate-change closed form, whose terms carry
// (rho - 1)^-4 poles, is replaced by the equivalent finite lag sums.
constexpr double kRateLagSumThreshold = 0.9;

void check_args(std::size_t m, double rho, std::size_t min_m, const char* what) {
  if (m < min_m) {
    throw DomainError(std::string(what) + ": m must be at least " + std::to_string(min_m));
  }
  if (!std::isfinite(rho) || std::abs(rho) > kMaxAbsRho + 1e-12) {
    throw DomainError(std::string(what) + ": |rho| must not exceed " + std::to_string(kMaxAbsRho));
  }
}

// rho^n - 1 without cancellation for rho near 1.
double pow_minus_one(double rho, double n) {
  if (rho > 0.0) return std::expm1(n * std::log(rho));
  return std::pow(rho, n) - 1.0;
}

// sum_{j=1}^{m-h} x_j x_{j+h} for x_j = j - (m+1)/2.
double centered_lag_product(std::size_t m, std::size_t h) {
  const double n = static_cast<double>(m - h);
  const double mid = 0.5 * (static_cast<double>(m) + 1.0);
  const double sum_sq = n * ((n + 1.0) * (2.0 * n + 1.0) / 6.0 - mid * (n + 1.0) + mid * mid);
  const double hd = static_cast<double>(h);
  return sum_sq - 0.5 * n * hd * hd;
}

}  // namespace

double clamp_rho(double rho, bool* clamped) noexcept {
  const double r = std::clamp(rho, -kMaxAbsRho, kMaxAbsRho);
  if (clamped) *clamped = (r != rho);
  return r;
}

double effective_size(std::size_t m, int p, double b) noexcept {
  const double md = static_cast<double>(m);
  return p * md / (md - (md - p) * b);
}

CorrectionFactors level_factors(std::size_t m, double rho) {
  check_args(m, rho, 2, "level_factors");
  const double md = static_cast<double>(m);
  const double one_minus = 1.0 - rho;
  const double num = md + 2.0 * std::pow(rho, md + 1.0) - md * rho * rho - 2.0 * rho;
  CorrectionFactors f;
  f.design = Design::Level;
  f.m = m;
  f.rho = rho;
  f.c = num / (md * md * one_minus * one_minus);
  f.b = md * (1.0 - f.c) / (md - 1.0);
  // tr(P_X R) = m c, so m' = 1/c; avoids m - (m-1)b cancelling at rho near -1.
  f.m_eff = 1.0 / f.c;
  if (rho == 0.0) {
    f.b = 1.0;
    f.m_eff = md;
  }
  return f;
}

CorrectionFactors rate_factors(std::size_t m, double rho) {
  check_args(m, rho, 3, "rate_factors");
  const double md = static_cast<double>(m);
  const double m2 = md * md;
  const double sxx = md * (m2 - 1.0) / 12.0;  // sum of squared centered indices
  CorrectionFactors f;
  f.design = Design::Rate;
  f.m = m;
  f.rho = rho;

  if (rho > kRateLagSumThreshold) {
    // m^2 - 1'R1 = 2A and x'Rx = -2B, with every term carrying (1 - rho^h).
    double a = 0.0;
    double bsum = 0.0;
    for (std::size_t h = 1; h < m; ++h) {
      const double w = -pow_minus_one(rho, static_cast<double>(h));
      a += static_cast<double>(m - h) * w;
      bsum += centered_lag_product(m, h) * w;
    }
    const double xrx = -2.0 * bsum;
    f.c = xrx / (sxx * sxx);
    f.b = (2.0 * a / md - xrx / sxx) / (md - 2.0);
    f.m_eff = effective_size(m, 2, f.b);
  } else {
    const double rm = std::pow(rho, md);
    const double rm1 = pow_minus_one(rho, md);
    const double d = rho - 1.0;
    const double d2 = d * d;
    const double d3 = d2 * d;
    const double d4 = d2 * d2;
    const double rp1 = rho + 1.0;
    const double inner = -6.0 * rho * rp1 * rp1 * rm1 / (m2 * d4) +
                         2.0 * rho * (6.0 * rm * rho + 6.0 * rm + rho * rho - 2.0 * rho + 1.0) /
                             (md * d3) -
                         6.0 * rho * (rm + 1.0) / d2 - 2.0 * md * rho / d + (m2 - 1.0) / md;
    f.c = 12.0 / ((m2 - 1.0) * (m2 - 1.0)) * inner;
    // tr(P_X R) = 1 + t1 + Sxx c
    const double t1 = 2.0 * rho * (rm - md * rho + md - 1.0) / (md * d2);
    f.b = (md - 1.0 - t1 - sxx * f.c) / (md - 2.0);
    f.m_eff = 2.0 * md / (1.0 + t1 + sxx * f.c);
  }
  if (rho == 0.0) {
    f.b = 1.0;
    f.m_eff = md;
  }
  return f;
}

CorrectionFactors factors(Design design, std::size_t m, double rho) {
  return design == Design::Rate ? rate_factors(m, rho) : level_factors(m, rho);
}

}  // namespace nof1
