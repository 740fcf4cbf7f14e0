#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stackcut/coloring.hpp"
#include "stackcut/model.hpp"

namespace stackcut {

// Instance files are CSV with a header: "center,length", optionally followed
// by a ",color" column. Reals are written in shortest round-trip form.

struct ColoredInstance {
  std::vector<Interval> intervals;
  std::optional<std::vector<Color>> colors;  ///< present iff the file has a color column
};

void write_instance_csv(std::ostream& out, const std::vector<Interval>& intervals);
void write_colored_csv(std::ostream& out, const std::vector<Interval>& intervals,
                       const Coloring& coloring);

/// Throws std::invalid_argument with the line number on malformed input.
ColoredInstance read_instance_csv(std::istream& in);
ColoredInstance read_instance_csv(const std::filesystem::path& path);

/// One row of an experiment report.
struct ResultRow {
  int k = 0;
  double L = 0.0;
  std::string mode;
  std::uint64_t n_or_trials = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double reference = 0.0;
  double relative_difference = 0.0;
  double stderr_ = 0.0;
};

inline constexpr const char* kResultCsvHeader =
    "k,L,mode,n_or_trials,seed,estimate,reference,relative_difference,stderr";

void write_result_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Shortest decimal that reads back to the same double.
std::string format_real(double value);

}  // namespace stackcut
