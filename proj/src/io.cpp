#include "nof1/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nof1/error.hpp"

namespace nof1 {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    std::string_view f = trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
    out.push_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_integer(std::string_view s, long long& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

SeriesInput parse_series_csv(std::string_view text) {
  SeriesInput in;
  std::size_t columns = 0;
  std::optional<long long> prev_index;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (columns == 0 && !saw_header) {
      long long probe = 0;
      if (!parse_integer(fields[0], probe)) {
        if (fields.size() == 2 && fields[0] == "index" && fields[1] == "value") {
          columns = 2;
        } else if (fields.size() == 3 && fields[0] == "index" && fields[1] == "a" && fields[2] == "b") {
          columns = 3;
        } else {
          throw ParseError("header must be 'index,value' or 'index,a,b'", line_no);
        }
        saw_header = true;
        continue;
      }
    }
    if (columns == 0) {
      if (fields.size() != 2 && fields.size() != 3) {
        throw ParseError("expected 2 or 3 columns, got " + std::to_string(fields.size()), line_no);
      }
      columns = fields.size();
    }
    if (fields.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    long long index = 0;
    if (!parse_integer(fields[0], index)) throw ParseError("index is not an integer", line_no);
    if (prev_index && index != *prev_index + 1) {
      throw ParseError("indices must be consecutive and ascending (expected " +
                           std::to_string(*prev_index + 1) + ", got " + std::to_string(index) + ")",
                       line_no);
    }
    prev_index = index;
    for (std::size_t c = 1; c < columns; ++c) {
      double v = 0.0;
      if (!parse_double(fields[c], v)) {
        throw ParseError("value '" + std::string(fields[c]) + "' is not a number", line_no);
      }
      if (!std::isfinite(v)) throw ParseError("non-finite value", line_no);
      if (c == 1) {
        in.a.values.push_back(v);
      } else {
        if (!in.b) in.b.emplace();
        in.b->values.push_back(v);
      }
    }
  }
  if (in.a.values.empty()) throw ParseError("no observations", line_no == 0 ? 1 : line_no);
  if (columns == 3) {
    in.a.label = "A";
    in.b->label = "B";
  } else {
    in.a.label = "series";
  }
  return in;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

SeriesInput ingest_series(const std::filesystem::path& path) {
  return parse_series_csv(read_text_file(path));
}

}  // namespace nof1
