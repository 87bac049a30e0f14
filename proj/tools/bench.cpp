// Compares the parallel kernels against their serial twins: same results
// (checked bit for bit), wall time side by side.  Thread count comes from
// OpenMP; on a single-core host both columns will look alike.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "granda/grandnorm.hpp"
#include "granda/parallel.hpp"
#include "granda/sequence.hpp"
#include "granda/verifier.hpp"

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    fn();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

struct Row {
  const char* name;
  double serial_ms;
  double parallel_ms;
  bool identical;
};

void print_rows(const std::vector<Row>& rows) {
  std::printf("%-28s %12s %12s %9s %10s\n", "kernel", "serial ms",
              "parallel ms", "speedup", "identical");
  for (const Row& r : rows) {
    std::printf("%-28s %12.2f %12.2f %8.2fx %10s\n", r.name, r.serial_ms,
                r.parallel_ms,
                r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0,
                r.identical ? "yes" : "NO");
  }
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc)
      reps = std::atoi(argv[++i]);
  }

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif

  std::vector<Row> rows;

  {  // Chunked power-sum reduction, the inner loop of every tail bracket.
    const std::int64_t n = 20'000'000;
    auto term = [](std::int64_t i) {
      const double x = static_cast<double>(i + 1);
      return 1.0 / (x * std::sqrt(x));
    };
    double serial_val = 0.0, parallel_val = 0.0;
    const double ts = time_best_of(reps, [&] {
      serial_val = granda::chunked_sum_serial(0, n, term);
    });
    granda::set_parallel(true);
    const double tp = time_best_of(reps, [&] {
      parallel_val = granda::chunked_sum(0, n, term);
    });
    rows.push_back({"chunked_sum 2e7 terms", ts, tp,
                    std::memcmp(&serial_val, &parallel_val, sizeof(double)) == 0});
  }

  {  // Grid evaluation map, the node sweep of the norm optimizer.
    const std::size_t n = 1024;
    granda::GrandSequence x = granda::make_sequence(
        granda::IndexSet::N, {}, granda::PowerLogTail{1, 2.0, 0.0});
    granda::SumConfig scfg;
    auto fn = [&](std::size_t i) {
      const double eps =
          std::pow(10.0, -4.0 + 8.0 * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
      return granda::objective_certified_lower(x, {1.0, 1.0}, eps, scfg);
    };
    std::vector<double> a, b;
    const double ts = time_best_of(reps, [&] {
      granda::map_indexed_serial(n, a, fn);
    });
    granda::set_parallel(true);
    const double tp =
        time_best_of(reps, [&] { granda::map_indexed(n, b, fn); });
    rows.push_back({"objective grid 1024 nodes", ts, tp, a == b});
  }

  {  // Whole verification suites, case-parallel.
    granda::SuiteConfig cfg;
    cfg.cases = 200;
    std::string sa, sb;
    const double ts = time_best_of(reps, [&] {
      granda::set_parallel(false);
      sa = granda::run_suite("norm_equivalence", cfg).to_records();
    });
    const double tp = time_best_of(reps, [&] {
      granda::set_parallel(true);
      sb = granda::run_suite("norm_equivalence", cfg).to_records();
    });
    rows.push_back({"norm_equivalence 200 cases", ts, tp, sa == sb});
  }

  print_rows(rows);
  for (const Row& r : rows)
    if (!r.identical) {
      std::printf("mismatch between serial and parallel results\n");
      return 1;
    }
  return 0;
}
