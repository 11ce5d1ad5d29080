#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "nof1/ar1_math.hpp"
#include "nof1/error.hpp"

namespace nof1 {

CorrectionFactors oracle_factors(Design design, std::size_t m, double rho) {
  const int p = location_params(design);
  if (m > 2000) throw DomainError("oracle_factors: m must not exceed 2000");
  if (m < static_cast<std::size_t>(p) + 1) throw DomainError("oracle_factors: m too small");
  if (!(std::abs(rho) < 1.0)) throw DomainError("oracle_factors: |rho| must be below 1");

  const Eigen::Index n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index j = 0; j < n; ++j) {
    x(j, 0) = 1.0;
    if (p == 2) x(j, 1) = static_cast<double>(j + 1) - 0.5 * (static_cast<double>(m) + 1.0);
  }
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      r(j, k) = std::pow(rho, static_cast<double>(std::abs(j - k)));
    }
  }
  const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();
  const Eigen::MatrixXd xtrx = x.transpose() * (r * x);
  const Eigen::MatrixXd var = xtx_inv * xtrx * xtx_inv;
  // tr(P_X R) = tr((X'X)^-1 X'RX)
  const double trace = (xtx_inv * xtrx).trace();

  CorrectionFactors f;
  f.design = design;
  f.m = m;
  f.rho = rho;
  f.c = var(p - 1, p - 1);
  f.b = (static_cast<double>(m) - trace) / static_cast<double>(m - p);
  f.m_eff = p * static_cast<double>(m) / trace;
  return f;
}

}  // namespace nof1
