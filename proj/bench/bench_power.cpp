// Times run_cell_serial against the OpenMP run_cell on a few grid cells and
// checks that both produce the same PowerCell.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "conduct/power.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace conduct;

template <typename Fn>
static double seconds(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int main(int argc, char** argv) {
  const int M = argc > 1 ? std::atoi(argv[1]) : 100;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("replications=%d threads=%d\n", M, threads);
  std::printf("%-8s %-10s %-12s %10s %10s %8s %s\n", "T", "theta", "regime", "serial_s", "omp_s",
              "speedup", "match");

  struct Case {
    long T;
    InstrumentKind regime;
  };
  const Case cases[] = {{1000, InstrumentKind::Benchmark},
                        {1000, InstrumentKind::Optimal},
                        {10000, InstrumentKind::Benchmark},
                        {10000, InstrumentKind::Optimal}};
  bool all_match = true;
  for (const auto& c : cases) {
    ParamConfig p;
    p.theta = 0.2;
    p.alpha2 = 1.0;
    const auto seed = cell_seed(1, c.T);
    PowerCell serial, parallel;
    const double ts = seconds([&] { serial = run_cell_serial(p, c.T, c.regime, M, seed); });
    const double tp = seconds([&] { parallel = run_cell(p, c.T, c.regime, M, seed); });
    const bool match = serial == parallel;
    all_match = all_match && match;
    std::printf("%-8ld %-10.2f %-12s %10.3f %10.3f %8.2f %s\n", c.T, p.theta,
                std::string(regime_name(c.regime)).c_str(), ts, tp, ts / tp, match ? "yes" : "NO");
  }
  return all_match ? 0 : 1;
}
