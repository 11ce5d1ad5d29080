#include "nof1/kernels.hpp"

namespace nof1::kernels::scalar {

double sum(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double centered_index_dot(const double* v, std::size_t n) {
  const double mid = 0.5 * static_cast<double>(n - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (static_cast<double>(i) - mid) * v[i];
  return s;
}

void center(const double* y, double mu, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] - mu;
}

void detrend(const double* y, double mu, double beta, double* out, std::size_t n) {
  const double mid = 0.5 * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] - mu - beta * (static_cast<double>(i) - mid);
}

}  // namespace nof1::kernels::scalar
