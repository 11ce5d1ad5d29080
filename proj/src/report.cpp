#include "nof1/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "nof1/error.hpp"

namespace nof1 {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

Method parse_method(const std::string& s) {
  if (s == "serial") return Method::Serial;
  if (s == "usual") return Method::Usual;
  throw ValidationError("unknown method '" + s + "'");
}

}  // namespace

std::vector<std::string> flag_names(unsigned flags) {
  std::vector<std::string> out;
  if (flags & kCorrelationClamped) out.emplace_back("correlation_clamped");
  if (flags & kLowDf) out.emplace_back("low_df");
  return out;
}

void to_json(json& j, const SeriesSummary& s) {
  j = json{{"label", s.label},
           {"m", s.m},
           {"location", s.location},
           {"slope", optional_number(s.slope)},
           {"s", s.s},
           {"rho_hat", optional_number(s.rho_hat)},
           {"r", optional_number(s.r)},
           {"clamped", s.clamped}};
}

void from_json(const json& j, SeriesSummary& s) {
  s.label = j.at("label").get<std::string>();
  s.m = j.at("m").get<std::size_t>();
  s.location = j.at("location").get<double>();
  s.slope = read_optional(j, "slope");
  s.s = j.at("s").get<double>();
  s.rho_hat = read_optional(j, "rho_hat");
  s.r = read_optional(j, "r");
  s.clamped = j.at("clamped").get<bool>();
}

void to_json(json& j, const TestResult& r) {
  j = json{{"kind", std::string(to_string(r.kind))},
           {"method", std::string(to_string(r.method))},
           {"side", std::string(to_string(r.side))},
           {"statistic", r.statistic},
           {"df", r.df},
           {"p_value", r.p_value},
           {"effect", r.effect},
           {"se", r.se},
           {"s", r.s},
           {"rho_used", r.rho_used},
           {"flags", flag_names(r.flags)},
           {"series", r.series}};
}

void from_json(const json& j, TestResult& r) {
  r.kind = parse_test_kind(j.at("kind").get<std::string>());
  r.method = parse_method(j.at("method").get<std::string>());
  r.side = parse_tail_side(j.at("side").get<std::string>());
  r.statistic = j.at("statistic").get<double>();
  r.df = j.at("df").get<double>();
  r.p_value = j.at("p_value").get<double>();
  r.effect = j.at("effect").get<double>();
  r.se = j.at("se").get<double>();
  r.s = j.at("s").get<double>();
  r.rho_used = j.at("rho_used").get<double>();
  r.flags = 0;
  for (const auto& f : j.at("flags")) {
    const auto name = f.get<std::string>();
    if (name == "correlation_clamped") {
      r.flags |= kCorrelationClamped;
    } else if (name == "low_df") {
      r.flags |= kLowDf;
    } else {
      throw ValidationError("unknown flag '" + name + "'");
    }
  }
  r.series = j.at("series").get<std::vector<SeriesSummary>>();
}

json to_json(const McConfig& c) {
  json effect = nullptr;
  if (c.effect) {
    if (c.effect->scale == EffectScale::Response && c.effect->value == 1.0) {
      effect = "unit";
    } else if (c.effect->scale == EffectScale::Response) {
      effect = json{{"response_units", c.effect->value}};
    } else {
      effect = c.effect->value;
    }
  }
  return json{{"kind", std::string(to_string(c.kind))},
              {"m_values", c.m_values},
              {"rho_values", c.rho_values},
              {"rho_pair_values", c.rho_pair_values},
              {"sigma2", c.sigma2},
              {"replicates", c.replicates},
              {"alpha", c.alpha},
              {"side", std::string(to_string(c.side))},
              {"effect", effect},
              {"seed", c.seed}};
}

McConfig mc_config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("simulation config must be a JSON object");
  static const std::set<std::string> known = {"kind",     "m_values",   "rho_values", "rho_pair_values",
                                              "sigma2",   "replicates", "alpha",      "side",
                                              "effect",   "seed"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
  }
  if (!j.contains("kind")) throw ValidationError("config key 'kind' is required");
  if (!j.contains("seed") || j.at("seed").is_null()) {
    throw ValidationError("config key 'seed' is required; pick an explicit seed for reproducibility");
  }
  try {
    const TestKind kind = parse_test_kind(j.at("kind").get<std::string>());
    const auto& seed = j.at("seed");
    if (!seed.is_number_integer()) throw ValidationError("seed must be an integer");
    McConfig c = McConfig::defaults(kind, seed.is_number_unsigned() ? seed.get<std::uint64_t>()
                                                                    : static_cast<std::uint64_t>(seed.get<std::int64_t>()));
    if (j.contains("m_values")) c.m_values = j.at("m_values").get<std::vector<std::size_t>>();
    if (j.contains("rho_values")) c.rho_values = j.at("rho_values").get<std::vector<double>>();
    if (j.contains("rho_pair_values")) {
      c.rho_pair_values = j.at("rho_pair_values").get<std::vector<double>>();
    }
    if (j.contains("sigma2")) c.sigma2 = j.at("sigma2").get<double>();
    if (j.contains("replicates")) c.replicates = j.at("replicates").get<std::size_t>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("side")) c.side = parse_tail_side(j.at("side").get<std::string>());
    if (j.contains("effect")) {
      const auto& e = j.at("effect");
      if (e.is_null()) {
        c.effect.reset();
      } else if (e.is_string()) {
        if (e.get<std::string>() != "unit") {
          throw ValidationError("effect must be null, a number, \"unit\" or {\"response_units\": x}");
        }
        c.effect = McEffect{1.0, EffectScale::Response};
      } else if (e.is_object()) {
        if (e.size() != 1 || !e.contains("response_units")) {
          throw ValidationError("effect object must have exactly the key 'response_units'");
        }
        c.effect = McEffect{e.at("response_units").get<double>(), EffectScale::Response};
      } else {
        c.effect = McEffect{e.get<double>(), EffectScale::Sigma};
      }
    }
    validate(c);
    return c;
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed simulation config: ") + ex.what());
  }
}

json to_json(const McSummary& s) {
  json cells = json::array();
  for (const auto& c : s.cells) {
    cells.push_back(json{{"m", c.key.m},
                         {"rho", c.key.rho},
                         {"rho_pair", c.key.rho_pair},
                         {"replicates", c.replicates},
                         {"excluded", c.excluded},
                         {"serial_rate", c.serial_rate},
                         {"serial_mcse", c.serial_mcse},
                         {"usual_rate", c.usual_rate},
                         {"usual_mcse", c.usual_mcse},
                         {"mean_r", c.mean_r}});
  }
  return json{{"config", to_json(s.config)}, {"cells", cells}};
}

json to_json(const EffectSizeCell& c) {
  return json{{"m", c.key.m},
              {"rho", c.key.rho},
              {"rho_pair", c.key.rho_pair},
              {"theoretical", c.theoretical},
              {"serial_empirical", c.serial_empirical},
              {"usual_empirical", c.usual_empirical},
              {"serial_ratio", c.serial_ratio},
              {"usual_ratio", c.usual_ratio}};
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
}

void CsvWriter::raw(const std::string& text) {
  if (in_row_ > 0) out_ += ',';
  out_ += text;
  ++in_row_;
}

CsvWriter& CsvWriter::field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) {
    raw(value);
  } else {
    std::string quoted = "\"";
    for (char ch : value) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    quoted += '"';
    raw(quoted);
  }
  return *this;
}

CsvWriter& CsvWriter::field(double value) {
  raw(format_full(value));
  return *this;
}

CsvWriter& CsvWriter::field(long long value) {
  raw(std::to_string(value));
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw std::logic_error("CsvWriter: wrong number of fields in row");
  out_ += "\r\n";
  in_row_ = 0;
}

std::string format_full(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string mc_summary_csv(const std::vector<McSummary>& summaries) {
  CsvWriter w({"kind", "m", "rho", "rho_pair", "replicates", "excluded", "serial_rate", "serial_mcse",
               "usual_rate", "usual_mcse", "mean_r"});
  for (const auto& s : summaries) {
  for (const auto& c : s.cells) {
    w.field(std::string(to_string(s.config.kind)))
        .field(c.key.m)
        .field(c.key.rho)
        .field(c.key.rho_pair)
        .field(c.replicates)
        .field(c.excluded)
        .field(c.serial_rate)
        .field(c.serial_mcse)
        .field(c.usual_rate)
        .field(c.usual_mcse)
        .field(c.mean_r);
    w.end_row();
  }
  }
  return w.str();
}

std::string effect_size_csv(const std::vector<EffectSizeGrid>& grids) {
  CsvWriter w({"kind", "m", "rho", "rho_pair", "theoretical", "serial_empirical", "usual_empirical",
               "serial_ratio", "usual_ratio"});
  for (const auto& g : grids) {
  for (const auto& c : g.cells) {
    w.field(std::string(to_string(g.kind)))
        .field(c.key.m)
        .field(c.key.rho)
        .field(c.key.rho_pair)
        .field(c.theoretical)
        .field(c.serial_empirical)
        .field(c.usual_empirical)
        .field(c.serial_ratio)
        .field(c.usual_ratio);
    w.end_row();
  }
  }
  return w.str();
}

}  // namespace nof1
