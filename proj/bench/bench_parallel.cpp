// Serial reference vs OpenMP paths: block-positivity restarts and
// suite-level trial parallelism. Also checks that both paths agree.

#include <omp.h>

#include <cstdio>
#include <cstdlib>

#include "conekit/block_positive.hpp"
#include "conekit/maps.hpp"
#include "conekit/random.hpp"
#include "conekit/verify.hpp"

using namespace conekit;

template <typename F>
double time_it(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double start = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - start);
  }
  return best;
}

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %4s %12s %12s %8s %6s\n", "kernel", "n", "serial[ms]",
              "omp[ms]", "speedup", "same");

  for (int n = 2; n <= 4; ++n) {
    Matrix x = reduction_witness(n).choi();
    const int restarts = confident_restarts(n);
    ProductMinimum s{}, p{};
    double ts = time_it([&] { s = min_product_value(x, n, restarts, 7, Execution::Serial); }, reps);
    double tp = time_it([&] { p = min_product_value(x, n, restarts, 7, Execution::Parallel); }, reps);
    const bool same = s.value == p.value && s.restart == p.restart;
    std::printf("%-28s %4d %12.3f %12.3f %8.2f %6s\n", "min_product_value", n,
                1e3 * ts, 1e3 * tp, ts / tp, same ? "yes" : "NO");
  }

  for (const char* suite : {"L3", "R9", "T10"}) {
    for (int n = 2; n <= 3; ++n) {
      SuiteReport s, p;
      double ts = time_it([&] { s = run_suite(suite, n, 40, 11, Execution::Serial); }, reps);
      double tp = time_it([&] { p = run_suite(suite, n, 40, 11, Execution::Parallel); }, reps);
      const bool same = failures_fingerprint(s) == failures_fingerprint(p) &&
                        s.notes == p.notes;
      std::printf("%-28s %4d %12.3f %12.3f %8.2f %6s\n",
                  (std::string("run_suite ") + suite).c_str(), n, 1e3 * ts,
                  1e3 * tp, ts / tp, same ? "yes" : "NO");
    }
  }
  return 0;
}
