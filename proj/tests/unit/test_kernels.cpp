#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "nof1/error.hpp"
#include "nof1/kernels.hpp"

namespace k = nof1::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(3.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

double rel_diff(double a, double b, double scale) { return std::abs(a - b) / std::max(1.0, scale); }

}  // namespace

TEST_CASE("scalar kernels match hand loops") {
  const auto& s = k::table(k::Isa::Scalar);
  const std::vector<double> v{1.0, -2.0, 4.0, 0.5, 3.0};
  CHECK(s.sum(v.data(), v.size()) == doctest::Approx(6.5));
  CHECK(s.dot(v.data(), v.data(), v.size()) == doctest::Approx(1 + 4 + 16 + 0.25 + 9));
  // centered index weights -2..2
  CHECK(s.centered_index_dot(v.data(), v.size()) == doctest::Approx(-2 * 1 + -1 * -2 + 0 + 0.5 + 2 * 3));
  std::vector<double> out(v.size());
  s.detrend(v.data(), 1.0, 0.5, out.data(), v.size());
  CHECK(out[0] == doctest::Approx(1.0 - 1.0 + 1.0));
  CHECK(out[4] == doctest::Approx(3.0 - 1.0 - 1.0));
  s.center(v.data(), 1.3, out.data(), v.size());
  CHECK(out[2] == doctest::Approx(2.7));
}

TEST_CASE("lag1_dot pairs neighbours") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(k::lag1_dot(v) == doctest::Approx(2 + 6 + 12));
  CHECK(k::lag1_dot(std::vector<double>{5.0}) == 0.0);
  CHECK(k::lag1_dot(std::vector<double>{}) == 0.0);
}

TEST_CASE("dot rejects mismatched lengths") {
  const std::vector<double> a(3, 1.0), b(4, 1.0);
  CHECK_THROWS_AS(k::dot(a, b), nof1::DomainError);
}

TEST_CASE("avx2 kernels agree with scalar kernels") {
  if (!k::isa_supported(k::Isa::Avx2)) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const auto& s = k::table(k::Isa::Scalar);
  const auto& v = k::table(k::Isa::Avx2);
  // Lengths straddle the 8-wide unrolled body and the scalar tail.
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 100u, 1001u}) {
    CAPTURE(n);
    const auto a = random_vector(n, 11 + n);
    const auto b = random_vector(n, 97 + n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i]) * std::max(1.0, std::abs(b[i]));
    CHECK(rel_diff(s.sum(a.data(), n), v.sum(a.data(), n), scale) < 1e-13);
    CHECK(rel_diff(s.dot(a.data(), b.data(), n), v.dot(a.data(), b.data(), n), scale * 10) < 1e-13);
    CHECK(rel_diff(s.centered_index_dot(a.data(), n), v.centered_index_dot(a.data(), n), scale * n) <
          1e-13);
    std::vector<double> o1(n), o2(n);
    s.center(a.data(), 0.7, o1.data(), n);
    v.center(a.data(), 0.7, o2.data(), n);
    CHECK(o1 == o2);
    s.detrend(a.data(), 0.7, -0.3, o1.data(), n);
    v.detrend(a.data(), 0.7, -0.3, o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-14));
  }
}

TEST_CASE("force_isa switches the active table") {
  const k::Isa before = k::active_isa();
  k::force_isa(k::Isa::Scalar);
  CHECK(k::active_isa() == k::Isa::Scalar);
  if (k::isa_supported(k::Isa::Avx2)) {
    k::force_isa(k::Isa::Avx2);
    CHECK(k::active_isa() == k::Isa::Avx2);
  } else {
    CHECK_THROWS_AS(k::force_isa(k::Isa::Avx2), nof1::DomainError);
  }
  k::force_isa(before);
  CHECK(k::to_string(k::Isa::Avx2) == "avx2");
}
