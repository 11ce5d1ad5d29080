#pragma once

// Series ingestion from CSV and the bundled example datasets.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nof1/estimate.hpp"

namespace nof1 {

// One series (`index,value`) or two aligned series (`index,a,b`).
struct SeriesInput {
  Series a;
  std::optional<Series> b;
};

// Parses CSV text. The header row is optional; when present it must read
// `index,value` or `index,a,b`. Lines starting with '#' and blank lines
// are skipped. Indices must be consecutive ascending integers. Throws
// ParseError carrying the offending line number.
SeriesInput parse_series_csv(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
SeriesInput ingest_series(const std::filesystem::path& path);

// Bundled data.
struct Table1Patient {
  int id = 0;
  std::vector<double> diffs;  // active minus placebo, per crossover pair
  // Published summary, for comparison.
  double mean = 0.0;
  double sd = 0.0;
  double r = 0.0;
  double usual_p = 0.0;
  double serial_p = 0.0;
  bool serial_p_below = false;  // printed as "<0.01"
};

const std::vector<Table1Patient>& table1_patients();

struct Table2Data {
  Series pre;
  Series post;
  Series difference;  // pre minus post, as printed
};

const Table2Data& table2_data();

struct DatasetInfo {
  std::string name;
  std::string description;
  std::string csv;  // loadable by parse_series_csv
};

const std::vector<DatasetInfo>& datasets();
// Throws ValidationError for unknown names.
const DatasetInfo& dataset(std::string_view name);

}  // namespace nof1
