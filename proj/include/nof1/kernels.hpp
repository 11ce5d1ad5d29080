#pragma once

// Reduction and residual kernels used by the estimators. Each kernel has a
// portable scalar reference and, on x86-64, an AVX2 variant; the variant is
// picked once at startup from CPUID and can be overridden with the
// NOF1_SIMD environment variable ("scalar" or "avx2") or force_isa().

#include <cstddef>
#include <span>
#include <string_view>

namespace nof1::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
Isa active_isa() noexcept;
// Throws DomainError if the CPU (or build) lacks the instruction set.
void force_isa(Isa isa);

double sum(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
// sum_{j>=1} v[j] * v[j-1]
double lag1_dot(std::span<const double> v);
// sum_j (j - (n-1)/2) * v[j]
double centered_index_dot(std::span<const double> v);
// out[j] = y[j] - mu
void center(std::span<const double> y, double mu, std::span<double> out);
// out[j] = y[j] - mu - beta * (j - (n-1)/2)
void detrend(std::span<const double> y, double mu, double beta, std::span<double> out);

struct KernelTable {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*centered_index_dot)(const double*, std::size_t);
  void (*center)(const double*, double, double*, std::size_t);
  void (*detrend)(const double*, double, double, double*, std::size_t);
};

// Direct access to one implementation, for equivalence testing.
const KernelTable& table(Isa isa);

namespace scalar {
double sum(const double* v, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double centered_index_dot(const double* v, std::size_t n);
void center(const double* y, double mu, double* out, std::size_t n);
void detrend(const double* y, double mu, double beta, double* out, std::size_t n);
}  // namespace scalar

#if defined(NOF1_HAVE_AVX2)
namespace avx2 {
double sum(const double* v, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double centered_index_dot(const double* v, std::size_t n);
void center(const double* y, double mu, double* out, std::size_t n);
void detrend(const double* y, double mu, double beta, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace nof1::kernels
