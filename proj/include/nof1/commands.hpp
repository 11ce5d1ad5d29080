#pragma once

// Command implementations behind the `nof1` executable. Each command
// returns a Report; the executable decides where it goes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nof1/mc_sim.hpp"
#include "nof1/power.hpp"
#include "nof1/types.hpp"

namespace nof1::cli {

struct CsvFile {
  std::string name;  // file name inside --out
  std::string content;
};

struct Report {
  nlohmann::json json;
  std::string text;  // human-readable, 4 significant digits
  std::vector<CsvFile> csv;
};

struct AnalyzeRequest {
  TestKind kind = TestKind::PairedLevel;
  Method method = Method::Serial;
  TailSide side = TailSide::TwoSided;
  double alpha = 0.05;
  std::string input;    // CSV path
  std::string dataset;  // bundled dataset name, used when input is empty
  std::optional<double> rho_override;
};

Report cmd_analyze(const AnalyzeRequest& request);

struct PowerRequest {
  PowerQuery query;
  std::optional<double> delta;  // also report power at this effect
};

Report cmd_power(const PowerRequest& request);

Report cmd_simulate(const McConfig& config, RunOptions options = {});

enum class ReproduceTarget { Table1, Table2, FigureData };
ReproduceTarget parse_reproduce_target(const std::string& text);

struct ReproduceOptions {
  std::uint64_t seed = 20200101;
  std::size_t replicates = 10000;
  RunOptions run;
  std::vector<TestKind> kinds;  // figure_data only; empty means all four
};

Report cmd_reproduce(ReproduceTarget target, const ReproduceOptions& options = {});

Report cmd_datasets_list();

}  // namespace nof1::cli
