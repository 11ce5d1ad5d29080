#pragma once

// Machine-readable forms of results: JSON (nlohmann) and RFC 4180 CSV.

#include <string>
#include <vector>

#include "json.hpp"
#include "nof1/mc_sim.hpp"
#include "nof1/serial_tests.hpp"

namespace nof1 {

void to_json(nlohmann::json& j, const SeriesSummary& s);
void from_json(const nlohmann::json& j, SeriesSummary& s);
void to_json(nlohmann::json& j, const TestResult& r);
void from_json(const nlohmann::json& j, TestResult& r);

nlohmann::json to_json(const McConfig& config);
// Strict: unknown keys, a missing seed or a missing kind throw
// ValidationError. Absent optional keys take McConfig::defaults values.
McConfig mc_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const McSummary& summary);
nlohmann::json to_json(const EffectSizeCell& cell);

std::vector<std::string> flag_names(unsigned flags);

// Minimal RFC 4180 writer: CRLF records, fields quoted when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& field(const std::string& value);
  CsvWriter& field(double value);
  CsvWriter& field(long long value);
  CsvWriter& field(std::size_t value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(int value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(bool value) { return field(std::string(value ? "true" : "false")); }
  void end_row();
  const std::string& str() const noexcept { return out_; }

 private:
  void raw(const std::string& text);
  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::string out_;
};

// Shortest representation that parses back to the same double.
std::string format_full(double v);
// Four significant digits for human-readable output.
std::string format_short(double v);

std::string mc_summary_csv(const std::vector<McSummary>& summaries);

struct EffectSizeGrid {
  TestKind kind = TestKind::PairedLevel;
  std::vector<EffectSizeCell> cells;
};
std::string effect_size_csv(const std::vector<EffectSizeGrid>& grids);

}  // namespace nof1
