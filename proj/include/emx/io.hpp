#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emx/core.hpp"

namespace emx {

// Raised for anything unreadable: missing files, bad headers, malformed or
// non-finite coordinates. The CLI maps it to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance file layout, bit-exact:
//   line 1:        "EMX1 <d> <n>"
//   lines 2..n+1:  d space-separated coordinates, shortest round-trip form
// Every line ends with '\n'; no trailing whitespace anywhere.
std::string format_instance(const PointSet& s);
void write_instance(const std::filesystem::path& path, const PointSet& s);
PointSet parse_instance(std::string_view text);
PointSet read_instance(const std::filesystem::path& path);

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// One row of the run report. Optional fields print as empty cells.
struct ReportRow {
  std::string instance;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t h = 0;
  std::string algorithm;
  std::int64_t wall_time_ns = 0;
  std::uint64_t dominance_queries = 0;
  std::uint64_t iterations = 0;
  std::uint64_t points_pruned_total = 0;
  std::uint64_t duplicates_removed = 0;
  std::optional<double> entropy_known;
  std::optional<double> theoretical_cost;
  std::optional<std::uint64_t> seed;
};

inline constexpr std::string_view kReportHeader =
    "instance,n,d,h,algorithm,wall_time_ns,dominance_queries,iterations,"
    "points_pruned_total,duplicates_removed,entropy_known,theoretical_cost,seed";

std::string format_report_row(const ReportRow& row);

// Appends rows, writing the header first when the file is new or empty.
void append_report_rows(const std::filesystem::path& path,
                        const std::vector<ReportRow>& rows);

std::vector<ReportRow> read_report(const std::filesystem::path& path);

}  // namespace emx
