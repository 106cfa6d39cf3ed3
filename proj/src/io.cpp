#include "emx/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace emx {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_coord(std::string_view token, const char* what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(std::string("malformed ") + what + ": '" + std::string(token) + "'");
  if (!std::isfinite(v))
    throw ParseError(std::string(what) + " must be finite: '" + std::string(token) + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view token, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(std::string("malformed ") + what + ": '" + std::string(token) + "'");
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_instance(const PointSet& s) {
  std::string out = "EMX1 " + std::to_string(s.dim()) + " " + std::to_string(s.size()) + "\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    PointRef p = s[i];
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (a > 0) out += ' ';
      out += format_double(p[a]);
    }
    out += '\n';
  }
  return out;
}

void write_instance(const std::filesystem::path& path, const PointSet& s) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << format_instance(s);
  if (!out) throw ParseError("write failed for " + path.string());
}

PointSet parse_instance(std::string_view text) {
  if (text.empty() || text.back() != '\n')
    throw ParseError("instance file must end with a newline");
  auto lines = split(text, '\n');
  // A newline-terminated file splits into its lines plus one empty tail.
  if (lines.empty() || !lines.back().empty())
    throw ParseError("instance file has trailing garbage");
  lines.pop_back();
  if (lines.empty()) throw ParseError("instance file is empty");

  auto header = split(lines[0], ' ');
  if (header.size() != 3 || header[0] != "EMX1")
    throw ParseError("bad header: expected 'EMX1 <d> <n>'");
  std::uint64_t d = parse_uint(header[1], "dimension");
  std::uint64_t n = parse_uint(header[2], "point count");
  if (d < 2) throw ParseError("dimension must be >= 2");
  if (n < 1) throw ParseError("point count must be >= 1");
  if (lines.size() != n + 1)
    throw ParseError("header promises " + std::to_string(n) + " points, file has " +
                     std::to_string(lines.size() - 1) + " lines");

  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n * d));
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto tokens = split(lines[li], ' ');
    if (tokens.size() != d)
      throw ParseError("line " + std::to_string(li + 1) + " has " +
                       std::to_string(tokens.size()) + " fields, expected " +
                       std::to_string(d));
    for (auto tok : tokens) {
      if (tok.empty())
        throw ParseError("line " + std::to_string(li + 1) + " has stray whitespace");
      flat.push_back(parse_coord(tok, "coordinate"));
    }
  }
  try {
    return PointSet(static_cast<std::size_t>(d), std::move(flat));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

PointSet read_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

namespace {

std::string format_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string format_cell(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::optional<double> parse_opt_double(std::string_view token) {
  if (token.empty()) return std::nullopt;
  return parse_coord(token, "report number");
}

std::optional<std::uint64_t> parse_opt_uint(std::string_view token) {
  if (token.empty()) return std::nullopt;
  return parse_uint(token, "report number");
}

}  // namespace

std::string format_report_row(const ReportRow& row) {
  std::string out;
  out += row.instance;
  out += ',' + std::to_string(row.n);
  out += ',' + std::to_string(row.d);
  out += ',' + std::to_string(row.h);
  out += ',' + row.algorithm;
  out += ',' + std::to_string(row.wall_time_ns);
  out += ',' + std::to_string(row.dominance_queries);
  out += ',' + std::to_string(row.iterations);
  out += ',' + std::to_string(row.points_pruned_total);
  out += ',' + std::to_string(row.duplicates_removed);
  out += ',' + format_cell(row.entropy_known);
  out += ',' + format_cell(row.theoretical_cost);
  out += ',' + format_cell(row.seed);
  return out;
}

void append_report_rows(const std::filesystem::path& path,
                        const std::vector<ReportRow>& rows) {
  bool need_header = true;
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && std::filesystem::file_size(path, ec) > 0)
    need_header = false;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw ParseError("cannot write " + path.string());
  if (need_header) out << kReportHeader << '\n';
  for (const auto& row : rows) out << format_report_row(row) << '\n';
  if (!out) throw ParseError("write failed for " + path.string());
}

std::vector<ReportRow> read_report(const std::filesystem::path& path) {
  std::string text = read_file(path);
  auto lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("report file is empty");
  if (lines[0] != kReportHeader)
    throw ParseError("report header does not match the expected schema");
  std::vector<ReportRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto cells = split(lines[li], ',');
    if (cells.size() != 13)
      throw ParseError("report line " + std::to_string(li + 1) + " has " +
                       std::to_string(cells.size()) + " cells, expected 13");
    ReportRow row;
    row.instance = std::string(cells[0]);
    row.n = parse_uint(cells[1], "n");
    row.d = parse_uint(cells[2], "d");
    row.h = parse_uint(cells[3], "h");
    row.algorithm = std::string(cells[4]);
    row.wall_time_ns = static_cast<std::int64_t>(parse_uint(cells[5], "wall_time_ns"));
    row.dominance_queries = parse_uint(cells[6], "dominance_queries");
    row.iterations = parse_uint(cells[7], "iterations");
    row.points_pruned_total = parse_uint(cells[8], "points_pruned_total");
    row.duplicates_removed = parse_uint(cells[9], "duplicates_removed");
    row.entropy_known = parse_opt_double(cells[10]);
    row.theoretical_cost = parse_opt_double(cells[11]);
    row.seed = parse_opt_uint(cells[12]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace emx
