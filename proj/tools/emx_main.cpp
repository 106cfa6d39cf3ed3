#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "emx/core.hpp"
#include "emx/dpc.hpp"
#include "emx/instances.hpp"
#include "emx/io.hpp"

namespace {

using emx::PointSet;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInputError = 2;

std::vector<std::vector<double>> canonical_rows(const PointSet& s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    emx::PointRef p = s[i];
    rows.emplace_back(p.begin(), p.end());
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

std::string row_to_string(const std::vector<double>& row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ", ";
    out += emx::format_double(row[i]);
  }
  out += ")";
  return out;
}

struct InstanceMeta {
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::size_t>> partition_sizes;
};

InstanceMeta read_sidecar(const std::filesystem::path& instance_path) {
  InstanceMeta meta;
  std::filesystem::path side = instance_path;
  side += ".meta.json";
  std::error_code ec;
  if (!std::filesystem::exists(side, ec)) return meta;
  std::ifstream in(side);
  if (!in) return meta;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw emx::ParseError("sidecar metadata is not valid JSON: " + side.string());
  }
  if (j.contains("seed") && j["seed"].is_number_unsigned())
    meta.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("partition_sizes") && j["partition_sizes"].is_array())
    meta.partition_sizes = j["partition_sizes"].get<std::vector<std::size_t>>();
  return meta;
}

emx::GeneratedInstance make_instance(const std::string& family, std::size_t n,
                                     std::optional<std::size_t> h, std::size_t d,
                                     std::uint64_t seed) {
  if (family == "cascade") {
    if (!h) throw std::invalid_argument("cascade needs --h");
    return emx::gen_cascade(n, *h, d, seed);
  }
  if (family == "balanced") {
    if (!h) throw std::invalid_argument("balanced needs --h");
    return emx::gen_balanced(n, *h, d, seed);
  }
  if (h) throw std::invalid_argument("uniform does not take --h");
  return emx::gen_uniform(n, d, seed);
}

emx::ReportRow run_algorithm(const std::string& instance_id, const PointSet& pts,
                             const std::string& algo, const InstanceMeta& meta) {
  emx::ReportRow row;
  row.instance = instance_id;
  row.n = pts.size();
  row.d = pts.dim();
  row.algorithm = algo;
  row.seed = meta.seed;

  auto t0 = std::chrono::steady_clock::now();
  if (algo == "dpc") {
    emx::MaximaResult res = emx::compute_maxima(pts);
    auto t1 = std::chrono::steady_clock::now();
    row.wall_time_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    row.h = res.maxima.size();
    row.dominance_queries = res.trace.total_queries;
    row.iterations = res.trace.iterations.size();
    row.duplicates_removed = res.trace.duplicates_removed;
    for (const auto& it : res.trace.iterations)
      row.points_pruned_total += it.sigma_before - it.sigma_after;
  } else {
    PointSet maxima = algo == "naive" ? emx::naive_maxima(pts)
                                      : emx::sweep_maxima_2d(pts);
    auto t1 = std::chrono::steady_clock::now();
    row.wall_time_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    row.h = canonical_rows(maxima).size();
    // One membership test per input point for the quadratic scan; the sweep
    // issues none.
    row.dominance_queries = algo == "naive" ? pts.size() : 0;
    row.iterations = 1;
    row.points_pruned_total = pts.size() - row.h;
    row.duplicates_removed = 0;
  }

  if (meta.partition_sizes) {
    emx::RespectfulPartitionSpec spec;
    spec.n = pts.size();
    spec.subset_sizes = *meta.partition_sizes;
    row.entropy_known = emx::partition_entropy(spec);
    row.theoretical_cost = emx::theoretical_cost(spec, pts.dim());
  }
  return row;
}

int cmd_gen(const std::string& family, std::size_t n, std::optional<std::size_t> h,
            std::size_t d, std::uint64_t seed, const std::string& out_path) {
  emx::GeneratedInstance inst = make_instance(family, n, h, d, seed);
  emx::write_instance(out_path, inst.points);

  nlohmann::json side;
  side["family"] = family;
  side["seed"] = seed;
  side["n"] = inst.points.size();
  side["d"] = inst.points.dim();
  side["h"] = inst.known_maxima_size;
  if (inst.known_partition) {
    side["partition_sizes"] = inst.known_partition->subset_sizes;
  } else {
    side["partition_sizes"] = nullptr;
  }
  std::filesystem::path meta_path(out_path);
  meta_path += ".meta.json";
  std::ofstream meta(meta_path, std::ios::binary | std::ios::trunc);
  if (!meta) throw emx::ParseError("cannot write " + meta_path.string());
  meta << side.dump(2) << '\n';

  std::cout << "wrote " << out_path << " (" << family << ", n=" << inst.points.size()
            << ", d=" << inst.points.dim() << ", h=" << inst.known_maxima_size
            << ", seed=" << seed << ")\n";
  return kExitOk;
}

int cmd_run(const std::string& algo, const std::string& in_path,
            const std::string& report_path) {
  PointSet pts = emx::read_instance(in_path);
  if (algo == "sweep2d" && pts.dim() != 2)
    throw std::invalid_argument("sweep2d needs a 2D instance, file has d = " +
                                std::to_string(pts.dim()));
  InstanceMeta meta = read_sidecar(in_path);
  std::string id = std::filesystem::path(in_path).stem().string();
  emx::ReportRow row = run_algorithm(id, pts, algo, meta);
  emx::append_report_rows(report_path, {row});
  std::cout << id << " " << algo << ": n=" << row.n << " d=" << row.d
            << " h=" << row.h << " queries=" << row.dominance_queries
            << " iterations=" << row.iterations << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& in_path) {
  PointSet pts = emx::read_instance(in_path);
  emx::MaximaResult res = emx::compute_maxima(pts);
  PointSet reference = emx::naive_maxima(pts);
  auto got = canonical_rows(res.maxima);
  auto want = canonical_rows(reference);
  if (got == want) {
    std::cout << "match: n=" << pts.size() << " d=" << pts.dim()
              << " h=" << want.size() << "\n";
    return kExitOk;
  }
  std::vector<std::vector<double>> missing, extra;
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                      std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                      std::back_inserter(extra));
  std::cerr << "mismatch: " << got.size() << " maxima found, " << want.size()
            << " expected\n";
  if (!missing.empty())
    std::cerr << "first missing point: " << row_to_string(missing.front()) << "\n";
  if (!extra.empty())
    std::cerr << "first extra point: " << row_to_string(extra.front()) << "\n";
  return kExitMismatch;
}

int cmd_bench(const std::string& family, std::size_t d, const std::string& h_rule,
              const std::string& n_list, std::size_t seeds,
              const std::string& report_path) {
  std::vector<std::size_t> ns;
  for (const auto& tok : [&] {
         std::vector<std::string> parts;
         std::string cur;
         for (char c : n_list) {
           if (c == ',') {
             parts.push_back(cur);
             cur.clear();
           } else {
             cur += c;
           }
         }
         parts.push_back(cur);
         return parts;
       }()) {
    std::size_t v = 0;
    try {
      v = std::stoull(tok);
    } catch (...) {
      throw std::invalid_argument("bad --n-list entry: '" + tok + "'");
    }
    if (v == 0) throw std::invalid_argument("--n-list entries must be positive");
    ns.push_back(v);
  }
  if (seeds == 0) throw std::invalid_argument("--seeds must be positive");

  auto h_for = [&](std::size_t n) -> std::size_t {
    if (h_rule == "sqrt")
      return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    if (h_rule.rfind("fixed:", 0) == 0) {
      std::size_t v = std::stoull(h_rule.substr(6));
      if (v == 0) throw std::invalid_argument("fixed h must be positive");
      return v;
    }
    throw std::invalid_argument("unknown --h-rule: '" + h_rule + "' (sqrt, fixed:<k>)");
  };

  std::vector<std::string> algos = {"dpc", "naive"};
  if (d == 2) algos.push_back("sweep2d");

  std::vector<emx::ReportRow> rows;
  for (std::size_t n : ns) {
    std::optional<std::size_t> h;
    if (family != "uniform") h = h_for(n);
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      emx::GeneratedInstance inst = make_instance(family, n, h, d, seed);
      std::string id = family + "_n" + std::to_string(n) + "_d" + std::to_string(d) +
                       "_h" + std::to_string(inst.known_maxima_size) + "_s" +
                       std::to_string(seed);
      InstanceMeta meta;
      meta.seed = seed;
      if (inst.known_partition) meta.partition_sizes = inst.known_partition->subset_sizes;
      for (const auto& algo : algos) {
        rows.push_back(run_algorithm(id, inst.points, algo, meta));
        std::cout << id << " " << algo << ": queries="
                  << rows.back().dominance_queries << " h=" << rows.back().h << "\n";
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const emx::ReportRow& a, const emx::ReportRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.seed != b.seed) return a.seed < b.seed;
    return a.algorithm < b.algorithm;
  });
  emx::append_report_rows(report_path, rows);
  std::cout << "appended " << rows.size() << " rows to " << report_path << "\n";
  return kExitOk;
}

int cmd_report(const std::string& report_path) {
  std::vector<emx::ReportRow> rows = emx::read_report(report_path);
  if (rows.empty()) {
    std::cout << "no rows\n";
    return kExitOk;
  }
  auto family_of = [](const std::string& id) -> std::string {
    std::string head = id.substr(0, id.find('_'));
    if (head == "balanced" || head == "cascade" || head == "uniform") return head;
    return "other";
  };
  struct Agg {
    std::size_t rows = 0;
    double queries_per_point = 0;
    double iterations = 0;
    double ratio_sum = 0;
    std::size_t ratio_rows = 0;
  };
  std::map<std::pair<std::string, std::string>, Agg> stats;
  for (const auto& row : rows) {
    Agg& a = stats[{family_of(row.instance), row.algorithm}];
    a.rows += 1;
    a.queries_per_point +=
        static_cast<double>(row.dominance_queries) / static_cast<double>(row.n);
    a.iterations += static_cast<double>(row.iterations);
    if (row.theoretical_cost && *row.theoretical_cost > 0) {
      a.ratio_sum += static_cast<double>(row.dominance_queries) / *row.theoretical_cost;
      a.ratio_rows += 1;
    }
  }
  std::cout << "family      algorithm  rows  queries/point  iterations  queries/cost\n";
  for (const auto& [key, a] : stats) {
    char line[160];
    double qpp = a.queries_per_point / static_cast<double>(a.rows);
    double its = a.iterations / static_cast<double>(a.rows);
    std::string ratio = "-";
    if (a.ratio_rows) {
      char num[32];
      std::snprintf(num, sizeof(num), "%.4f",
                    a.ratio_sum / static_cast<double>(a.ratio_rows));
      ratio = num;
    }
    std::snprintf(line, sizeof(line), "%-11s %-10s %4zu  %13.4f  %10.2f  %s\n",
                  key.first.c_str(), key.second.c_str(), a.rows, qpp, its,
                  ratio.c_str());
    std::cout << line;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto maxima toolkit: instance generation, runs, verification"};
  app.require_subcommand(1);
  // --h is a real option below, so help must not claim the -h short name.
  app.set_help_flag("--help", "print help and exit");

  std::string family, algo, in_path, out_path, report_path;
  std::string h_rule = "sqrt", n_list;
  std::size_t n = 0, d = 0, h_value = 0, seeds = 1;
  std::uint64_t seed = 0;
  bool h_given = false;

  CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
  gen->set_help_flag("--help", "print help and exit");
  gen->add_option("--family", family, "balanced | cascade | uniform")
      ->required()
      ->check(CLI::IsMember({"balanced", "cascade", "uniform"}));
  gen->add_option("--n", n, "number of points")->required();
  gen->add_option("--h", h_value, "number of maxima (balanced, cascade)")
      ->each([&](const std::string&) { h_given = true; });
  gen->add_option("--d", d, "dimension (>= 2)")->required();
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", out_path, "output instance path")->required();

  CLI::App* run = app.add_subcommand("run", "run an algorithm, append a report row");
  run->set_help_flag("--help", "print help and exit");
  run->add_option("--algo", algo, "dpc | naive | sweep2d")
      ->required()
      ->check(CLI::IsMember({"dpc", "naive", "sweep2d"}));
  run->add_option("--in", in_path, "instance file")->required();
  run->add_option("--report", report_path, "CSV report path")->required();

  CLI::App* verify = app.add_subcommand("verify", "check dpc against the quadratic scan");
  verify->set_help_flag("--help", "print help and exit");
  verify->add_option("--in", in_path, "instance file")->required();

  CLI::App* bench = app.add_subcommand("bench", "generate and run a size sweep");
  bench->set_help_flag("--help", "print help and exit");
  bench->add_option("--family", family, "balanced | cascade | uniform")
      ->required()
      ->check(CLI::IsMember({"balanced", "cascade", "uniform"}));
  bench->add_option("--d", d, "dimension (>= 2)")->required();
  bench->add_option("--h-rule", h_rule, "sqrt | fixed:<k> (default sqrt)");
  bench->add_option("--n-list", n_list, "comma-separated instance sizes")->required();
  bench->add_option("--seeds", seeds, "seeds 0..k-1 per size (default 1)");
  bench->add_option("--report", report_path, "CSV report path")->required();

  CLI::App* report = app.add_subcommand("report", "summarize a CSV report");
  report->set_help_flag("--help", "print help and exit");
  report->add_option("--report", report_path, "CSV report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (app.got_subcommand(gen)) {
      std::optional<std::size_t> h_opt;
      if (h_given) h_opt = h_value;
      return cmd_gen(family, n, h_opt, d, seed, out_path);
    }
    if (app.got_subcommand(run)) return cmd_run(algo, in_path, report_path);
    if (app.got_subcommand(verify)) return cmd_verify(in_path);
    if (app.got_subcommand(bench))
      return cmd_bench(family, d, h_rule, n_list, seeds, report_path);
    if (app.got_subcommand(report)) return cmd_report(report_path);
  } catch (const emx::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
