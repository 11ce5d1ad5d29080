#include <atomic>
#include <cstdlib>
#include <string>

#include "nof1/error.hpp"
#include "nof1/kernels.hpp"

namespace nof1::kernels {
namespace {

constexpr KernelTable kScalar{&scalar::sum, &scalar::dot, &scalar::centered_index_dot,
                              &scalar::center, &scalar::detrend};
#if defined(NOF1_HAVE_AVX2)
constexpr KernelTable kAvx2{&avx2::sum, &avx2::dot, &avx2::centered_index_dot, &avx2::center,
                            &avx2::detrend};
#endif

Isa detect() noexcept {
  Isa best = isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  if (const char* env = std::getenv("NOF1_SIMD")) {
    std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) noexcept {
  if (isa == Isa::Scalar) return true;
#if defined(NOF1_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("instruction set " + std::string(to_string(isa)) + " not available");
  }
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
#if defined(NOF1_HAVE_AVX2)
  if (isa == Isa::Avx2) {
    if (!isa_supported(isa)) throw DomainError("instruction set avx2 not available");
    return kAvx2;
  }
#else
  if (isa == Isa::Avx2) throw DomainError("instruction set avx2 not compiled in");
#endif
  return kScalar;
}

namespace {
const KernelTable& active() { return table(active_isa()); }
}  // namespace

double sum(std::span<const double> v) { return active().sum(v.data(), v.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

double lag1_dot(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  return active().dot(v.data() + 1, v.data(), v.size() - 1);
}

double centered_index_dot(std::span<const double> v) {
  return active().centered_index_dot(v.data(), v.size());
}

void center(std::span<const double> y, double mu, std::span<double> out) {
  if (y.size() != out.size()) throw DomainError("center: length mismatch");
  active().center(y.data(), mu, out.data(), y.size());
}

void detrend(std::span<const double> y, double mu, double beta, std::span<double> out) {
  if (y.size() != out.size()) throw DomainError("detrend: length mismatch");
  active().detrend(y.data(), mu, beta, out.data(), y.size());
}

}  // namespace nof1::kernels
