// nof1: serial t-tests for N-of-1 trials.
//
//   nof1 analyze <kind> --input data.csv [--side two] [--alpha 0.05] [--rho-override r]
//   nof1 power --kind paired-level --m 10 --rho 0.5 [--delta 1]
//   nof1 simulate --config sim.json [--out dir] [--threads n]
//   nof1 reproduce table1|table2|figure_data [--seed s] [--replicates n]
//   nof1 datasets list

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nof1/commands.hpp"
#include "nof1/error.hpp"
#include "nof1/io.hpp"
#include "nof1/report.hpp"

namespace {

namespace fs = std::filesystem;
using nof1::cli::Report;

struct OutputOptions {
  std::string out_dir;
  std::string format;  // "", "json" or "csv"
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out_dir, "Directory for output files");
  cmd->add_option("--format", o.format, "Machine-readable output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw nof1::ValidationError("cannot write '" + path.string() + "'");
  f << content;
}

// With --out, the JSON report and every CSV table are written to the
// directory and stdout carries the text summary (or the chosen format).
void emit(const Report& rep, const OutputOptions& o, const std::string& stem) {
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    write_file(fs::path(o.out_dir) / (stem + ".json"), rep.json.dump(2) + "\n");
    for (const auto& f : rep.csv) write_file(fs::path(o.out_dir) / f.name, f.content);
  }
  if (o.format == "json") {
    std::cout << rep.json.dump(2) << '\n';
  } else if (o.format == "csv") {
    for (std::size_t i = 0; i < rep.csv.size(); ++i) {
      if (rep.csv.size() > 1) std::cout << (i ? "\n" : "") << "# " << rep.csv[i].name << '\n';
      std::cout << rep.csv[i].content;
    }
  } else {
    std::cout << rep.text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial-correlation-corrected t-tests for N-of-1 trials"};
  app.require_subcommand(1);

  // analyze
  nof1::cli::AnalyzeRequest analyze;
  std::string analyze_kind;
  std::string analyze_side = "two";
  std::string analyze_method = "serial";
  std::optional<double> rho_override;
  OutputOptions analyze_out;
  auto* cmd_analyze = app.add_subcommand("analyze", "Run a serial (or usual) t-test on one dataset");
  cmd_analyze->add_option("kind", analyze_kind, "paired-level, two-sample-level, paired-rate, two-sample-rate")
      ->required();
  cmd_analyze->add_option("--input", analyze.input, "CSV with 'index,value' or 'index,a,b'");
  cmd_analyze->add_option("--dataset", analyze.dataset, "Bundled dataset name (see datasets list)");
  cmd_analyze->add_option("--side", analyze_side, "lower, upper or two")
      ->check(CLI::IsMember({"lower", "upper", "two"}));
  cmd_analyze->add_option("--alpha", analyze.alpha, "Significance level");
  cmd_analyze->add_option("--method", analyze_method, "serial or usual")
      ->check(CLI::IsMember({"serial", "usual"}));
  cmd_analyze->add_option("--rho-override", rho_override, "Use this serial correlation instead of estimating it");
  add_output_options(cmd_analyze, analyze_out);

  // power
  nof1::cli::PowerRequest power;
  std::string power_kind = "paired-level";
  std::string power_side = "upper";
  std::string power_method = "serial";
  OutputOptions power_out;
  auto* cmd_power = app.add_subcommand("power", "Theoretical power and detectable effect size");
  cmd_power->add_option("--kind", power_kind, "Test kind");
  cmd_power->add_option("--m", power.query.m_a, "Series length (m_A for two-sample)")->required();
  cmd_power->add_option("--m-b", power.query.m_b, "Second series length (two-sample; default m)");
  cmd_power->add_option("--rho", power.query.rho, "Assumed serial correlation");
  cmd_power->add_option("--alpha", power.query.alpha, "Significance level");
  cmd_power->add_option("--side", power_side, "lower, upper or two")
      ->check(CLI::IsMember({"lower", "upper", "two"}));
  cmd_power->add_option("--target-power", power.query.target_power, "Power for the detectable effect");
  cmd_power->add_option("--sigma", power.query.sigma, "Scale used to express effects in response units");
  cmd_power->add_option("--delta", power.delta, "Also report power at this effect (sigma units)");
  cmd_power->add_option("--method", power_method, "serial or usual")
      ->check(CLI::IsMember({"serial", "usual"}));
  add_output_options(cmd_power, power_out);

  // simulate
  std::string config_path;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::size_t> sim_replicates;
  unsigned sim_threads = 0;
  OutputOptions sim_out;
  auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo Type I error / power from a JSON config");
  cmd_sim->add_option("--config", config_path, "Simulation config (JSON)")->required();
  cmd_sim->add_option("--seed", sim_seed, "Override the config seed");
  cmd_sim->add_option("--replicates", sim_replicates, "Override the config replicate count");
  cmd_sim->add_option("--threads", sim_threads, "Worker threads (0: all cores)");
  add_output_options(cmd_sim, sim_out);

  // reproduce
  std::string target;
  nof1::cli::ReproduceOptions repro;
  std::vector<std::string> repro_kinds;
  OutputOptions repro_out;
  auto* cmd_repro = app.add_subcommand("reproduce", "Recompute the bundled example analyses or figure data");
  cmd_repro->add_option("target", target, "table1, table2 or figure_data")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "figure_data"}));
  cmd_repro->add_option("--seed", repro.seed, "Monte Carlo seed (figure_data)");
  cmd_repro->add_option("--replicates", repro.replicates, "Replicates per cell (figure_data)");
  cmd_repro->add_option("--threads", repro.run.threads, "Worker threads (0: all cores)");
  cmd_repro->add_option("--kind", repro_kinds, "Restrict figure_data to these kinds");
  add_output_options(cmd_repro, repro_out);

  // datasets
  OutputOptions ds_out;
  auto* cmd_ds = app.add_subcommand("datasets", "Bundled datasets");
  auto* cmd_ds_list = cmd_ds->add_subcommand("list", "List bundled datasets");
  cmd_ds->require_subcommand(1);
  add_output_options(cmd_ds_list, ds_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_analyze->parsed()) {
      analyze.kind = nof1::parse_test_kind(analyze_kind);
      analyze.side = nof1::parse_tail_side(analyze_side);
      analyze.method = analyze_method == "usual" ? nof1::Method::Usual : nof1::Method::Serial;
      analyze.rho_override = rho_override;
      emit(nof1::cli::cmd_analyze(analyze), analyze_out, "analyze");
    } else if (cmd_power->parsed()) {
      power.query.kind = nof1::parse_test_kind(power_kind);
      power.query.side = nof1::parse_tail_side(power_side);
      power.query.method = power_method == "usual" ? nof1::Method::Usual : nof1::Method::Serial;
      emit(nof1::cli::cmd_power(power), power_out, "power");
    } else if (cmd_sim->parsed()) {
      nlohmann::json cfg_json;
      try {
        cfg_json = nlohmann::json::parse(nof1::read_text_file(config_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw nof1::ValidationError(std::string("config is not valid JSON: ") + e.what());
      }
      if (sim_seed) cfg_json["seed"] = *sim_seed;
      if (sim_replicates) cfg_json["replicates"] = *sim_replicates;
      const nof1::McConfig cfg = nof1::mc_config_from_json(cfg_json);
      emit(nof1::cli::cmd_simulate(cfg, {sim_threads}), sim_out, "mc_summary");
    } else if (cmd_repro->parsed()) {
      for (const auto& k : repro_kinds) repro.kinds.push_back(nof1::parse_test_kind(k));
      emit(nof1::cli::cmd_reproduce(nof1::cli::parse_reproduce_target(target), repro), repro_out, target);
    } else if (cmd_ds_list->parsed()) {
      emit(nof1::cli::cmd_datasets_list(), ds_out, "datasets");
    }
  } catch (const nof1::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
