#pragma once

#include <cstddef>
#include <string_view>

namespace nof1 {

// The four serial t-test designs. Paired kinds analyze one series of A-B
// differences; two-sample kinds analyze two independent series.
enum class TestKind { PairedLevel, TwoSampleLevel, PairedRate, TwoSampleRate };

enum class TailSide { Lower, Upper, TwoSided };

enum class Method { Serial, Usual };

// Mean model of a single series: constant mean, or mean linear in the
// centered index.
enum class Design { Level, Rate };

constexpr bool is_paired(TestKind k) noexcept {
  return k == TestKind::PairedLevel || k == TestKind::PairedRate;
}

constexpr bool is_rate(TestKind k) noexcept {
  return k == TestKind::PairedRate || k == TestKind::TwoSampleRate;
}

constexpr Design design_of(TestKind k) noexcept {
  return is_rate(k) ? Design::Rate : Design::Level;
}

// Location parameters estimated per series.
constexpr int location_params(Design d) noexcept { return d == Design::Rate ? 2 : 1; }

std::string_view to_string(TestKind k) noexcept;
std::string_view to_string(TailSide s) noexcept;
std::string_view to_string(Method m) noexcept;

// Accepts the hyphenated CLI spellings ("paired-level", "two-sample-rate", ...).
TestKind parse_test_kind(std::string_view text);
// Accepts "lower", "upper", "two" (and "two-sided").
TailSide parse_tail_side(std::string_view text);

// Throws MinimumSizeError when the series lengths cannot support the test.
// m_b is ignored for paired kinds.
void check_minimum_size(TestKind kind, std::size_t m_a, std::size_t m_b = 0);

// Smallest admissible per-series length when both series have equal length.
std::size_t minimum_length(TestKind kind) noexcept;

}  // namespace nof1
