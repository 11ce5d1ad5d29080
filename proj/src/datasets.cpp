#include <sstream>
#include <string>

#include "nof1/error.hpp"
#include "nof1/io.hpp"

namespace nof1 {

// Amitriptyline vs placebo N-of-1 crossover trials in fibromyalgia
// (Jaeschke et al., J Rheumatol 1991). Each value is the within-pair
// difference in mean weekly symptom score between the two treatments;
// positive means improvement on amitriptyline. Summary columns are the published
// mean, SD, Fuller r, one-sided usual p and one-sided serial p.
const std::vector<Table1Patient>& table1_patients() {
  static const std::vector<Table1Patient> patients = {
      {9, {0.05, -0.22, 0.57, 0.36}, 0.19, 0.35, 0.24, 0.10, 0.25, false},
      {18, {0.64, 1.08, -0.36, 0.79, -0.64, 1.50}, 0.50, 0.83, -0.49, 0.10, 0.02, false},
      {23, {1.22, 1.07, -0.08, 0.50}, 0.68, 0.59, 0.38, 0.06, 0.17, false},
      {17, {-0.08, 0.86, 1.07, 1.15}, 0.75, 0.57, 0.41, 0.04, 0.15, false},
      {15, {0.86, 1.43, 0.65, 1.86}, 1.20, 0.55, -0.42, 0.01, 0.01, true},
      {12, {4.29, 3.15, 0.78, 4.49}, 3.18, 1.70, -0.07, 0.02, 0.01, false},
  };
  return patients;
}

// Delay-discounting indifference points (% of a $1000 delayed reward) of one
// patient before and after 12 weeks of treatment for opioid dependence
// (Landes et al., Exp Clin Psychopharmacol 2012). Delays: 1 day, 1 week,
// 2 weeks, 1 month, 6 months, 1 year, 5 years, 25 years.
const Table2Data& table2_data() {
  static const Table2Data data = [] {
    Table2Data d;
    d.pre = {{92, 76, 68, 58, 50, 38, 18, 2}, "pre"};
    d.post = {{98, 92, 90, 84, 72, 56, 2, 2}, "post"};
    d.difference.label = "pre-post";
    for (std::size_t j = 0; j < d.pre.size(); ++j) {
      d.difference.values.push_back(d.pre.values[j] - d.post.values[j]);
    }
    return d;
  }();
  return data;
}

namespace {

std::string format_value(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

std::string single_csv(const std::vector<double>& v) {
  std::string out = "index,value\n";
  for (std::size_t j = 0; j < v.size(); ++j) {
    out += std::to_string(j + 1) + "," + format_value(v[j]) + "\n";
  }
  return out;
}

std::string pair_csv(const std::vector<double>& a, const std::vector<double>& b) {
  std::string out = "index,a,b\n";
  for (std::size_t j = 0; j < a.size(); ++j) {
    out += std::to_string(j + 1) + "," + format_value(a[j]) + "," + format_value(b[j]) + "\n";
  }
  return out;
}

}  // namespace

const std::vector<DatasetInfo>& datasets() {
  static const std::vector<DatasetInfo> all = [] {
    std::vector<DatasetInfo> out;
    for (const auto& p : table1_patients()) {
      out.push_back({"fibromyalgia-patient-" + std::to_string(p.id),
                     "amitriptyline vs placebo symptom differences, " +
                         std::to_string(p.diffs.size()) + " crossover pairs",
                     single_csv(p.diffs)});
    }
    const auto& t2 = table2_data();
    out.push_back({"discounting-pre-post",
                   "indifference points at 8 delays, a = pre-treatment, b = post-treatment",
                   pair_csv(t2.pre.values, t2.post.values)});
    out.push_back({"discounting-difference", "pre minus post indifference points at 8 delays",
                   single_csv(t2.difference.values)});
    return out;
  }();
  return all;
}

const DatasetInfo& dataset(std::string_view name) {
  for (const auto& d : datasets()) {
    if (d.name == name) return d;
  }
  throw ValidationError("unknown dataset '" + std::string(name) + "' (see `datasets list`)");
}

}  // namespace nof1
