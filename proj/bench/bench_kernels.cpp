// Timing comparison between the serial reference paths and the
// OpenMP-parallel ones: the Q grid oracle and the trial runner.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mdlreg/oracle.hpp"
#include "mdlreg/simlab.hpp"

using namespace mdlreg;
using clk = std::chrono::steady_clock;

static double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

int main() {
#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  std::printf("threads available: %d\n\n", threads);

  {
    QOracle oracle(2.5e-7);
    double sink = 0.0;
    auto t0 = clk::now();
    for (int i = 1; i <= 20; ++i)
      sink += oracle.minimize_serial(2.0, 0.02 * i);
    double ts = seconds_since(t0);
    t0 = clk::now();
    double sink2 = 0.0;
    for (int i = 1; i <= 20; ++i)
      sink2 += oracle.minimize_parallel(2.0, 0.02 * i);
    double tp = seconds_since(t0);
    std::printf("Q grid oracle, 20 sweeps of 2e6 points:\n");
    std::printf("  serial   %.3f s\n  parallel %.3f s (speedup %.2fx)\n",
                ts, tp, ts / tp);
    std::printf("  results identical: %s\n\n", sink == sink2 ? "yes" : "NO");
  }

  {
    HardInstance inst{0.1, 0.25, {ScheduleKind::constant, 1.0, 0.5},
                      Variant::infinite_stream};
    auto t0 = clk::now();
    auto a = run_trials_serial(inst, 2000, 400, 7, 0);
    double ts = seconds_since(t0);
    t0 = clk::now();
    auto b = run_trials(inst, 2000, 400, 7, 0, threads);
    double tp = seconds_since(t0);
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      same = same && a[i].winning_objective == b[i].winning_objective &&
             a[i].winning_class == b[i].winning_class;
    std::printf("trial runner, 400 trials at m=2000:\n");
    std::printf("  serial   %.3f s\n  parallel %.3f s (speedup %.2fx)\n",
                ts, tp, ts / tp);
    std::printf("  results identical: %s\n", same ? "yes" : "NO");
  }
  return 0;
}
