// Compares the serial reference kernels against their OpenMP counterparts on
// one generated instance and prints a timing table.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "emx/dpc.hpp"
#include "emx/instances.hpp"
#include "emx/oracle.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double run_ms(int trials, const std::function<void()>& fn) {
  double best = 1e300;
  for (int t = 0; t < trials; ++t) {
    auto t0 = Clock::now();
    fn();
    auto t1 = Clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

void print_row(const char* kernel, double serial_ms, double parallel_ms) {
  std::printf("%-18s %12.2f %12.2f %10.2fx\n", kernel, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 20000;
  std::size_t d = 3;
  std::uint64_t seed = 1;
  int trials = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    std::string value = argv[i + 1];
    if (flag == "--n") n = std::stoull(value);
    else if (flag == "--d") d = std::stoull(value);
    else if (flag == "--seed") seed = std::stoull(value);
    else if (flag == "--trials") trials = std::stoi(value);
    else {
      std::fprintf(stderr, "usage: bench_kernels [--n N] [--d D] [--seed S] [--trials T]\n");
      return 2;
    }
  }

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled in this build (both columns run serial)\n");
#endif
  std::printf("instance: uniform n=%zu d=%zu seed=%llu, best of %d trials\n\n", n, d,
              static_cast<unsigned long long>(seed), trials);

  emx::GeneratedInstance inst = emx::gen_uniform(n, d, seed);
  const emx::PointSet& pts = inst.points;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<emx::Point> queries;
  queries.reserve(n / 4);
  for (std::size_t i = 0; i < n / 4; ++i) {
    std::vector<double> q(d);
    for (auto& v : q) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    queries.emplace_back(std::move(q));
  }
  std::size_t budget = static_cast<std::size_t>(std::max(1.0, std::sqrt(double(n))));

  std::printf("%-18s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms", "speedup");

  double s0 = run_ms(trials, [&] { emx::naive_maxima(pts, emx::Exec::serial); });
  double p0 = run_ms(trials, [&] { emx::naive_maxima(pts, emx::Exec::parallel); });
  print_row("naive_maxima", s0, p0);

  double s1 = run_ms(trials, [&] {
    emx::batch_dominated(pts, queries, budget, emx::Exec::serial);
  });
  double p1 = run_ms(trials, [&] {
    emx::batch_dominated(pts, queries, budget, emx::Exec::parallel);
  });
  print_row("batch_dominated", s1, p1);

  double s2 = run_ms(trials, [&] { emx::compute_maxima(pts, emx::Exec::serial); });
  double p2 = run_ms(trials, [&] { emx::compute_maxima(pts, emx::Exec::parallel); });
  print_row("compute_maxima", s2, p2);

  return 0;
}
