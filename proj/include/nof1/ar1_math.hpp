#pragma once

// AR(1) correction factors for OLS inference on a single series.
//
// For a series of length m with AR(1) errors (corr(y_j, y_k) = rho^|j-k|):
//   Var(estimate) = c * sigma^2     (mean for level designs, slope for rate)
//   E(s^2)        = b * sigma^2
//   b             = m (m_eff - p) / (m_eff (m - p))
// where p is the number of location parameters (1 level, 2 rate).

#include <cstddef>

#include "nof1/types.hpp"

namespace nof1 {

// Correlations are clamped to this magnitude before factors are evaluated.
inline constexpr double kMaxAbsRho = 0.99;

struct CorrectionFactors {
  double c = 0.0;       // variance factor
  double b = 1.0;       // bias factor of s^2
  double m_eff = 0.0;   // effective sample size
  std::size_t m = 0;
  double rho = 0.0;
  Design design = Design::Level;

  int p() const noexcept { return location_params(design); }
};

// Clamp to [-kMaxAbsRho, kMaxAbsRho]; sets *clamped when the bound bites.
double clamp_rho(double rho, bool* clamped = nullptr) noexcept;

// Closed forms. Throw DomainError if |rho| > kMaxAbsRho or m is too small
// (m >= 2 level, m >= 3 rate).
CorrectionFactors level_factors(std::size_t m, double rho);
CorrectionFactors rate_factors(std::size_t m, double rho);
CorrectionFactors factors(Design design, std::size_t m, double rho);

// Effective sample size implied by b for a design with p location params.
double effective_size(std::size_t m, int p, double b) noexcept;

// Reference values from the dense matrix definitions
//   Var(beta_hat) = (X'X)^-1 X'RX (X'X)^-1 sigma^2
//   E(s^2)        = (m - tr(P_X R)) / (m - rank X) sigma^2
// with X = [1] (level) or [1, x] with centered x (rate). Requires
// m <= 2000 and |rho| < 1.
CorrectionFactors oracle_factors(Design design, std::size_t m, double rho);

}  // namespace nof1
