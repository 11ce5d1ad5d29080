#include "nof1/types.hpp"

#include <string>

#include "nof1/error.hpp"

namespace nof1 {

std::string_view to_string(TestKind k) noexcept {
  switch (k) {
    case TestKind::PairedLevel: return "paired-level";
    case TestKind::TwoSampleLevel: return "two-sample-level";
    case TestKind::PairedRate: return "paired-rate";
    case TestKind::TwoSampleRate: return "two-sample-rate";
  }
  return "?";
}

std::string_view to_string(TailSide s) noexcept {
  switch (s) {
    case TailSide::Lower: return "lower";
    case TailSide::Upper: return "upper";
    case TailSide::TwoSided: return "two";
  }
  return "?";
}

std::string_view to_string(Method m) noexcept {
  return m == Method::Serial ? "serial" : "usual";
}

TestKind parse_test_kind(std::string_view text) {
  for (auto k : {TestKind::PairedLevel, TestKind::TwoSampleLevel, TestKind::PairedRate,
                 TestKind::TwoSampleRate}) {
    if (text == to_string(k)) return k;
  }
  throw ValidationError("unknown test kind '" + std::string(text) +
                        "' (expected paired-level, two-sample-level, paired-rate, two-sample-rate)");
}

TailSide parse_tail_side(std::string_view text) {
  if (text == "lower") return TailSide::Lower;
  if (text == "upper") return TailSide::Upper;
  if (text == "two" || text == "two-sided") return TailSide::TwoSided;
  throw ValidationError("unknown side '" + std::string(text) + "' (expected lower, upper, two)");
}

void check_minimum_size(TestKind kind, std::size_t m_a, std::size_t m_b) {
  auto fail = [&](const char* rule) {
    throw MinimumSizeError(std::string(to_string(kind)) + " requires " + rule);
  };
  switch (kind) {
    case TestKind::PairedLevel:
      if (m_a < 4) fail("m >= 4");
      break;
    case TestKind::PairedRate:
      if (m_a < 5) fail("m >= 5");
      break;
    case TestKind::TwoSampleLevel:
      if (m_a < 3 || m_b < 3 || m_a + m_b < 7) fail("m_A >= 3, m_B >= 3 and m_A + m_B >= 7");
      break;
    case TestKind::TwoSampleRate:
      if (m_a < 4 || m_b < 4 || m_a + m_b < 9) fail("m_A >= 4, m_B >= 4 and m_A + m_B >= 9");
      break;
  }
}

std::size_t minimum_length(TestKind kind) noexcept {
  switch (kind) {
    case TestKind::PairedLevel: return 4;
    case TestKind::PairedRate: return 5;
    case TestKind::TwoSampleLevel: return 4;
    case TestKind::TwoSampleRate: return 5;
  }
  return 0;
}

}  // namespace nof1
