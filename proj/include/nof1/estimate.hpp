#pragma once

// OLS fits of a single series, residual-based lag-one correlation with
// Fuller's small-sample correction, and variance recovery.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nof1/ar1_math.hpp"
#include "nof1/types.hpp"

namespace nof1 {

struct Series {
  std::vector<double> values;
  std::string label;

  std::size_t size() const noexcept { return values.size(); }
  std::span<const double> view() const noexcept { return values; }
};

struct ModelFit {
  Design design = Design::Level;
  double mu_hat = 0.0;
  std::optional<double> beta_hat;  // slope per index step; rate fits only
  double sse = 0.0;                // sum of squared residuals
  double s2 = 0.0;                 // sse / (m - p)
  std::vector<double> residuals;

  std::size_t m() const noexcept { return residuals.size(); }
  int p() const noexcept { return location_params(design); }
};

struct SerialCorrEstimate {
  double rho_hat = 0.0;  // sum e_j e_{j-1} / sum e_j^2
  double r = 0.0;        // Fuller-corrected, then clamped
  std::size_t m = 0;
  bool clamped = false;
};

// Mean of the series; residuals y - ybar. Requires m >= 2, finite values.
// Throws DegenerateDataError if every residual is zero.
ModelFit fit_level(const Series& series);
// Intercept and slope on the centered index x_j = j - (m+1)/2. Requires m >= 3.
// Throws DegenerateDataError if the series is exactly linear.
ModelFit fit_rate(const Series& series);
ModelFit fit(Design design, const Series& series);

// Requires m >= 3 and a nonzero residual sum of squares.
SerialCorrEstimate serial_corr(const ModelFit& fit);
SerialCorrEstimate serial_corr(std::span<const double> residuals);

// Length-weighted average (m_A r_A + m_B r_B) / (m_A + m_B), clamped.
double pooled_corr(const SerialCorrEstimate& a, const SerialCorrEstimate& b,
                   bool* clamped = nullptr);

// s^2 / b
double unbiased_variance(double s2, const CorrectionFactors& factors);

}  // namespace nof1
