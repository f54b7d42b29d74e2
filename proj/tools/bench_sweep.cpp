// Compares the serial reference sweep kernel against the OpenMP-sharded one
// and checks that both produce identical reports.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "graphdm/io.hpp"
#include "graphdm/sweep.hpp"

using namespace graphdm;

namespace {

double run_ms(int p, int q, const SweepMode& mode, Execution exec,
              std::string& canonical) {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepReport report = sweep_graphs(p, q, mode, exec);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  canonical = sweep_report_to_json(report, false).dump();
  return ms;
}

void bench(int p, int q, const SweepMode& mode, const char* label) {
  std::string serial_json, parallel_json;
  const double serial_ms = run_ms(p, q, mode, Execution::Serial, serial_json);
  const double parallel_ms =
      run_ms(p, q, mode, Execution::Parallel, parallel_json);
  const bool identical = serial_json == parallel_json;
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx   %s\n",
              label, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "reports identical" : "REPORTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel path falls back to serial\n");
#endif
  bench(2, 2, SweepMode{SweepMode::Kind::Exhaustive, 0, 0},
        "exhaustive 2x2 (63)");
  bench(2, 3, SweepMode{SweepMode::Kind::Exhaustive, 0, 0},
        "exhaustive 2x3 (32767)");
  bench(3, 3, SweepMode{SweepMode::Kind::Random, 1, 20000},
        "random 3x3 (20000)");
  return 0;
}
