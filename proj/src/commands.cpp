#include "nof1/commands.hpp"

#include <sstream>

#include "nof1/error.hpp"
#include "nof1/estimate.hpp"
#include "nof1/io.hpp"
#include "nof1/report.hpp"
#include "nof1/serial_tests.hpp"

namespace nof1::cli {

using nlohmann::json;

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw ValidationError("alpha must be in (0, 0.5]");
}

Series difference(const Series& a, const Series& b) {
  Series d;
  d.label = "A-B";
  d.values.resize(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) d.values[j] = a.values[j] - b.values[j];
  return d;
}

std::string describe(const TestResult& r) {
  std::ostringstream ss;
  ss << to_string(r.method) << ' ' << to_string(r.kind) << " (" << to_string(r.side) << ")\n";
  ss << "  t = " << format_short(r.statistic) << ", df = " << format_short(r.df)
     << ", p = " << format_short(r.p_value) << '\n';
  ss << "  effect = " << format_short(r.effect) << ", se = " << format_short(r.se)
     << ", s = " << format_short(r.s) << ", rho used = " << format_short(r.rho_used) << '\n';
  for (const auto& s : r.series) {
    ss << "  [" << s.label << "] m = " << s.m << ", " << (s.slope ? "intercept" : "mean") << " = "
       << format_short(s.location);
    if (s.slope) ss << ", slope = " << format_short(*s.slope);
    ss << ", s = " << format_short(s.s);
    if (s.rho_hat) ss << ", rho_hat = " << format_short(*s.rho_hat);
    if (s.r) ss << ", r = " << format_short(*s.r) << (s.clamped ? " (clamped)" : "");
    ss << '\n';
  }
  return ss.str();
}

std::string result_csv(const std::vector<std::pair<std::string, TestResult>>& rows) {
  CsvWriter w({"label", "kind", "method", "side", "statistic", "df", "p_value", "effect", "se", "s",
               "rho_used", "flags"});
  for (const auto& [label, r] : rows) {
    std::string flags;
    for (const auto& f : flag_names(r.flags)) flags += (flags.empty() ? "" : ";") + f;
    w.field(label)
        .field(std::string(to_string(r.kind)))
        .field(std::string(to_string(r.method)))
        .field(std::string(to_string(r.side)))
        .field(r.statistic)
        .field(r.df)
        .field(r.p_value)
        .field(r.effect)
        .field(r.se)
        .field(r.s)
        .field(r.rho_used)
        .field(flags);
    w.end_row();
  }
  return w.str();
}

}  // namespace

Report cmd_analyze(const AnalyzeRequest& req) {
  check_alpha(req.alpha);
  SeriesInput in;
  std::string source;
  if (!req.input.empty()) {
    in = ingest_series(req.input);
    source = req.input;
  } else if (!req.dataset.empty()) {
    in = parse_series_csv(dataset(req.dataset).csv);
    source = "dataset:" + req.dataset;
  } else {
    throw ValidationError("analyze needs --input <csv> or --dataset <name>");
  }
  if (req.method == Method::Usual && req.rho_override) {
    throw ValidationError("--rho-override applies to serial tests only");
  }

  TestResult result;
  if (is_paired(req.kind)) {
    const Series d = in.b ? difference(in.a, *in.b) : in.a;
    result = run_test(req.kind, req.method, d, nullptr, req.side, req.rho_override);
  } else {
    if (!in.b) throw ValidationError("two-sample tests need an 'index,a,b' input");
    result = run_test(req.kind, req.method, in.a, &*in.b, req.side, req.rho_override);
  }

  json warnings = json::array();
  if (result.has(kCorrelationClamped)) {
    warnings.push_back("serial correlation clamped to +/-0.99");
  }
  if (result.has(kLowDf)) warnings.push_back("degrees of freedom below 1; p-value is unreliable");
  if (req.rho_override) warnings.push_back("serial correlation overridden by the caller");

  Report rep;
  rep.json = json{{"command", "analyze"},
                  {"request",
                   {{"kind", std::string(to_string(req.kind))},
                    {"method", std::string(to_string(req.method))},
                    {"side", std::string(to_string(req.side))},
                    {"alpha", req.alpha},
                    {"input", source},
                    {"rho_override", req.rho_override ? json(*req.rho_override) : json(nullptr)}}},
                  {"result", result},
                  {"significant", result.p_value < req.alpha},
                  {"warnings", warnings}};
  rep.text = describe(result);
  rep.text += std::string("  ") + (result.p_value < req.alpha ? "significant" : "not significant") +
              " at alpha = " + format_short(req.alpha) + '\n';
  for (const auto& w : warnings) rep.text += "  warning: " + w.get<std::string>() + '\n';
  rep.csv.push_back({"analyze.csv", result_csv({{source, result}})});
  return rep;
}

Report cmd_power(const PowerRequest& req) {
  const PowerQuery& q = req.query;
  const PowerDesign design = power_design(q);
  const double delta = detectable_effect(q);
  Report rep;
  rep.json = json{{"command", "power"},
                  {"query",
                   {{"kind", std::string(to_string(q.kind))},
                    {"method", std::string(to_string(q.method))},
                    {"m_a", q.m_a},
                    {"m_b", q.m_b == 0 ? q.m_a : q.m_b},
                    {"rho", q.rho},
                    {"alpha", q.alpha},
                    {"side", std::string(to_string(q.side))},
                    {"target_power", q.target_power},
                    {"sigma", q.sigma}}},
                  {"df", design.df},
                  {"se", design.se},
                  {"detectable_effect", delta},
                  {"detectable_effect_response", delta * q.sigma},
                  {"delta", nullptr},
                  {"power_at_delta", nullptr}};
  std::ostringstream ss;
  ss << to_string(q.method) << ' ' << to_string(q.kind) << ", m = " << q.m_a;
  if (!is_paired(q.kind)) ss << '/' << (q.m_b == 0 ? q.m_a : q.m_b);
  ss << ", rho = " << format_short(q.rho) << ", alpha = " << format_short(q.alpha) << " ("
     << to_string(q.side) << ")\n";
  ss << "  df = " << format_short(design.df) << ", se = " << format_short(design.se) << " sigma\n";
  ss << "  detectable effect at power " << format_short(q.target_power) << ": "
     << format_short(delta) << " sigma\n";

  CsvWriter w({"kind", "method", "m_a", "m_b", "rho", "alpha", "side", "target_power", "df", "se",
               "detectable_effect", "delta", "power_at_delta"});
  w.field(std::string(to_string(q.kind)))
      .field(std::string(to_string(q.method)))
      .field(q.m_a)
      .field(q.m_b == 0 ? q.m_a : q.m_b)
      .field(q.rho)
      .field(q.alpha)
      .field(std::string(to_string(q.side)))
      .field(q.target_power)
      .field(design.df)
      .field(design.se)
      .field(delta);
  if (req.delta) {
    const double pw = theoretical_power(q, *req.delta);
    rep.json["delta"] = *req.delta;
    rep.json["power_at_delta"] = pw;
    ss << "  power at effect " << format_short(*req.delta) << " sigma: " << format_short(pw) << '\n';
    w.field(*req.delta).field(pw);
  } else {
    w.field(std::string()).field(std::string());
  }
  w.end_row();
  rep.text = ss.str();
  rep.csv.push_back({"power.csv", w.str()});
  return rep;
}

Report cmd_simulate(const McConfig& config, RunOptions options) {
  const McSummary summary = run_monte_carlo(config, options);
  Report rep;
  rep.json = json{{"command", "simulate"}, {"summary", to_json(summary)}};
  std::ostringstream ss;
  ss << to_string(config.kind) << ": " << summary.cells.size() << " cells x " << config.replicates
     << " replicates\n";
  ss << "     m     rho  rho_pair  serial   usual  mean r\n";
  for (const auto& c : summary.cells) {
    char line[128];
    std::snprintf(line, sizeof line, "  %4zu  %6.3g  %8.3g  %6.4f  %6.4f  %6.3g\n", c.key.m, c.key.rho,
                  c.key.rho_pair, c.serial_rate, c.usual_rate, c.mean_r);
    ss << line;
  }
  rep.text = ss.str();
  rep.csv.push_back({"mc_summary.csv", mc_summary_csv({summary})});
  return rep;
}

ReproduceTarget parse_reproduce_target(const std::string& text) {
  if (text == "table1") return ReproduceTarget::Table1;
  if (text == "table2") return ReproduceTarget::Table2;
  if (text == "figure_data") return ReproduceTarget::FigureData;
  throw ValidationError("unknown reproduce target '" + text + "' (table1, table2, figure_data)");
}

namespace {

Report reproduce_table1() {
  Report rep;
  json rows = json::array();
  CsvWriter w({"patient", "m", "mean", "sd", "r", "usual_p", "serial_p", "serial_df",
               "published_mean", "published_sd", "published_r", "published_usual_p",
               "published_serial_p"});
  std::ostringstream ss;
  ss << "patient  m    mean      sd       r  usual p  serial p\n";
  for (const auto& p : table1_patients()) {
    Series d{p.diffs, "patient " + std::to_string(p.id)};
    const TestResult serial = paired_serial_level(d, TailSide::Upper);
    const TestResult usual = usual_paired_t(d, TailSide::Upper);
    const auto& s = serial.series.front();
    rows.push_back(json{{"patient", p.id},
                        {"m", d.size()},
                        {"mean", s.location},
                        {"sd", s.s},
                        {"r", *s.r},
                        {"usual_p", usual.p_value},
                        {"serial_p", serial.p_value},
                        {"serial_df", serial.df},
                        {"serial", serial},
                        {"usual", usual}});
    w.field(p.id)
        .field(d.size())
        .field(s.location)
        .field(s.s)
        .field(*s.r)
        .field(usual.p_value)
        .field(serial.p_value)
        .field(serial.df)
        .field(p.mean)
        .field(p.sd)
        .field(p.r)
        .field(p.usual_p)
        .field((p.serial_p_below ? "<" : "") + format_full(p.serial_p));
    w.end_row();
    char line[160];
    std::snprintf(line, sizeof line, "%7d  %zu  %6.4g  %6.4g  %6.4g  %7.4g  %8.4g\n", p.id, d.size(),
                  s.location, s.s, *s.r, usual.p_value, serial.p_value);
    ss << line;
  }
  rep.json = json{{"command", "reproduce"}, {"target", "table1"}, {"side", "upper"}, {"rows", rows}};
  rep.text = ss.str();
  rep.csv.push_back({"table1.csv", w.str()});
  return rep;
}

Report reproduce_table2() {
  const Table2Data& t2 = table2_data();
  const TailSide side = TailSide::TwoSided;
  const std::vector<std::pair<std::string, TestResult>> tests = {
      {"two-sample-level", two_sample_serial_level(t2.pre, t2.post, side)},
      {"two-sample-rate", two_sample_serial_rate(t2.pre, t2.post, side)},
      {"paired-level", paired_serial_level(t2.difference, side)},
      {"paired-rate", paired_serial_rate(t2.difference, side)},
  };
  Report rep;
  json rows = json::array();
  CsvWriter w({"analysis", "s", "r", "statistic", "abs_statistic", "df", "p_value"});
  std::ostringstream ss;
  ss << "analysis               s       r       t      df       p\n";
  for (const auto& [name, r] : tests) {
    rows.push_back(json{{"analysis", name},
                        {"s", r.s},
                        {"r", r.rho_used},
                        {"statistic", r.statistic},
                        {"df", r.df},
                        {"p_value", r.p_value},
                        {"result", r}});
    w.field(name).field(r.s).field(r.rho_used).field(r.statistic).field(std::abs(r.statistic));
    w.field(r.df).field(r.p_value);
    w.end_row();
    char line[160];
    std::snprintf(line, sizeof line, "%-18s %6.4g  %6.4g  %6.4g  %6.4g  %6.4g\n", name.c_str(), r.s,
                  r.rho_used, r.statistic, r.df, r.p_value);
    ss << line;
  }

  json series = json::array();
  for (const Series* s : {&t2.pre, &t2.post, &t2.difference}) {
    const ModelFit level = fit_level(*s);
    const ModelFit rate = fit_rate(*s);
    series.push_back(json{{"series", s->label},
                          {"level_s", std::sqrt(level.s2)},
                          {"level_r", serial_corr(level).r},
                          {"rate_s", std::sqrt(rate.s2)},
                          {"rate_r", serial_corr(rate).r}});
  }
  rep.json = json{{"command", "reproduce"},
                  {"target", "table2"},
                  {"side", "two"},
                  {"rows", rows},
                  {"series", series}};
  rep.text = ss.str();
  rep.csv.push_back({"table2.csv", w.str()});
  return rep;
}

Report reproduce_figure_data(const ReproduceOptions& opt) {
  std::vector<TestKind> kinds = opt.kinds;
  if (kinds.empty()) {
    kinds = {TestKind::PairedLevel, TestKind::TwoSampleLevel, TestKind::PairedRate,
             TestKind::TwoSampleRate};
  }
  std::vector<McSummary> summaries;
  std::vector<EffectSizeGrid> grids;
  json per_kind = json::array();
  std::ostringstream ss;
  for (TestKind kind : kinds) {
    McConfig cfg = McConfig::defaults(kind, opt.seed);
    cfg.replicates = opt.replicates;
    summaries.push_back(run_monte_carlo(cfg, opt.run));
    grids.push_back({kind, effect_size_grid(cfg, 0.80, opt.run)});
    json effect = json::array();
    for (const auto& c : grids.back().cells) effect.push_back(to_json(c));
    per_kind.push_back(json{{"kind", std::string(to_string(kind))},
                            {"type1", to_json(summaries.back())},
                            {"effect_size", effect}});
    ss << to_string(kind) << ": " << summaries.back().cells.size() << " cells\n";
  }
  Report rep;
  rep.json = json{{"command", "reproduce"},
                  {"target", "figure_data"},
                  {"seed", opt.seed},
                  {"replicates", opt.replicates},
                  {"kinds", per_kind}};
  rep.text = ss.str();
  rep.csv.push_back({"type1_error.csv", mc_summary_csv(summaries)});
  rep.csv.push_back({"effect_size.csv", effect_size_csv(grids)});
  return rep;
}

}  // namespace

Report cmd_reproduce(ReproduceTarget target, const ReproduceOptions& options) {
  switch (target) {
    case ReproduceTarget::Table1: return reproduce_table1();
    case ReproduceTarget::Table2: return reproduce_table2();
    case ReproduceTarget::FigureData: return reproduce_figure_data(options);
  }
  throw ValidationError("unknown reproduce target");
}

Report cmd_datasets_list() {
  Report rep;
  json list = json::array();
  CsvWriter w({"name", "observations", "description"});
  std::ostringstream ss;
  for (const auto& d : datasets()) {
    const SeriesInput in = parse_series_csv(d.csv);
    list.push_back(json{{"name", d.name}, {"observations", in.a.size()}, {"description", d.description}});
    w.field(d.name).field(in.a.size()).field(d.description);
    w.end_row();
    ss << d.name << "  (" << in.a.size() << ")  " << d.description << '\n';
  }
  rep.json = json{{"command", "datasets"}, {"datasets", list}};
  rep.text = ss.str();
  rep.csv.push_back({"datasets.csv", w.str()});
  return rep;
}

}  // namespace nof1::cli
