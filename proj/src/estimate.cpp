#include "nof1/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nof1/error.hpp"
#include "nof1/kernels.hpp"

namespace nof1 {
namespace {

void validate(const Series& series, std::size_t min_m, const char* what) {
  if (series.size() < min_m) {
    throw MinimumSizeError(std::string(what) + ": series needs at least " +
                           std::to_string(min_m) + " observations");
  }
  for (double v : series.values) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite observation");
  }
}

// Residuals at rounding-noise level relative to the data count as zero.
bool negligible(double sse, std::span<const double> y) {
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
  return sse <= static_cast<double>(y.size()) * tol * tol;
}

}  // namespace

ModelFit fit_level(const Series& series) {
  validate(series, 2, "fit_level");
  const auto y = series.view();
  const double m = static_cast<double>(y.size());
  ModelFit f;
  f.design = Design::Level;
  f.mu_hat = kernels::sum(y) / m;
  f.residuals.resize(y.size());
  kernels::center(y, f.mu_hat, f.residuals);
  f.sse = kernels::dot(f.residuals, f.residuals);
  if (negligible(f.sse, y)) {
    throw DegenerateDataError("series '" + series.label + "' has no variability about its mean");
  }
  f.s2 = f.sse / (m - 1.0);
  return f;
}

ModelFit fit_rate(const Series& series) {
  validate(series, 3, "fit_rate");
  const auto y = series.view();
  const double m = static_cast<double>(y.size());
  const double sxx = m * (m * m - 1.0) / 12.0;
  ModelFit f;
  f.design = Design::Rate;
  f.mu_hat = kernels::sum(y) / m;
  f.beta_hat = kernels::centered_index_dot(y) / sxx;
  f.residuals.resize(y.size());
  kernels::detrend(y, f.mu_hat, *f.beta_hat, f.residuals);
  f.sse = kernels::dot(f.residuals, f.residuals);
  if (negligible(f.sse, y)) {
    throw DegenerateDataError("series '" + series.label + "' has no variability about its trend");
  }
  f.s2 = f.sse / (m - 2.0);
  return f;
}

ModelFit fit(Design design, const Series& series) {
  return design == Design::Rate ? fit_rate(series) : fit_level(series);
}

SerialCorrEstimate serial_corr(std::span<const double> residuals) {
  const std::size_t m = residuals.size();
  if (m < 3) throw MinimumSizeError("serial_corr: needs at least 3 residuals");
  const double denom = kernels::dot(residuals, residuals);
  if (!(denom > 0.0)) throw DegenerateDataError("serial_corr: residual sum of squares is zero");
  SerialCorrEstimate est;
  est.m = m;
  est.rho_hat = kernels::lag1_dot(residuals) / denom;
  const double fuller = est.rho_hat + (1.0 - est.rho_hat * est.rho_hat) / static_cast<double>(m - 1);
  est.r = clamp_rho(fuller, &est.clamped);
  return est;
}

SerialCorrEstimate serial_corr(const ModelFit& fit) { return serial_corr(fit.residuals); }

double pooled_corr(const SerialCorrEstimate& a, const SerialCorrEstimate& b, bool* clamped) {
  const double ma = static_cast<double>(a.m);
  const double mb = static_cast<double>(b.m);
  if (!(ma > 0.0 && mb > 0.0)) throw DomainError("pooled_corr: empty estimate");
  bool hit = false;
  const double r = clamp_rho((ma * a.r + mb * b.r) / (ma + mb), &hit);
  if (clamped) *clamped = hit || a.clamped || b.clamped;
  return r;
}

double unbiased_variance(double s2, const CorrectionFactors& factors) {
  if (!(factors.b > 0.0)) throw DomainError("unbiased_variance: bias factor must be positive");
  return s2 / factors.b;
}

}  // namespace nof1
