#include "stackcut/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include "stackcut/errors.hpp"

namespace stackcut {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no, const char* name) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad " + name + " '" +
                                std::string(field) + "'");
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_instance_csv(std::ostream& out, const std::vector<Interval>& intervals) {
  out << "center,length\n";
  for (const auto& iv : intervals) out << format_real(iv.center) << ',' << format_real(iv.length) << '\n';
}

void write_colored_csv(std::ostream& out, const std::vector<Interval>& intervals,
                       const Coloring& coloring) {
  if (coloring.size() != intervals.size())
    throw std::invalid_argument("coloring size does not match instance size");
  out << "center,length,color\n";
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    out << format_real(intervals[i].center) << ',' << format_real(intervals[i].length) << ','
        << coloring.colors[i] << '\n';
  }
}

ColoredInstance read_instance_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::invalid_argument("instance file is empty");
  ++line_no;
  const auto header = split_commas(trim(line));
  bool with_color = false;
  if (header.size() == 3 && header[0] == "center" && header[1] == "length" && header[2] == "color") {
    with_color = true;
  } else if (!(header.size() == 2 && header[0] == "center" && header[1] == "length")) {
    throw std::invalid_argument("line 1: expected header 'center,length' or 'center,length,color'");
  }

  ColoredInstance result;
  if (with_color) result.colors.emplace();
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_commas(body);
    if (fields.size() != header.size())
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    Interval iv{parse_field<double>(fields[0], line_no, "center"),
                parse_field<double>(fields[1], line_no, "length")};
    if (!(iv.length >= 0.0))
      throw std::invalid_argument("line " + std::to_string(line_no) + ": negative length");
    result.intervals.push_back(iv);
    if (with_color) result.colors->push_back(parse_field<Color>(fields[2], line_no, "color"));
  }
  return result;
}

ColoredInstance read_instance_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_instance_csv(in);
}

void write_result_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.k << ',' << format_real(r.L) << ',' << r.mode << ',' << r.n_or_trials << ','
        << r.seed << ',' << format_real(r.estimate) << ',' << format_real(r.reference) << ','
        << format_real(r.relative_difference) << ',' << format_real(r.stderr_) << '\n';
  }
}

}  // namespace stackcut
