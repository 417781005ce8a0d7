// Serial reference vs OpenMP kernels: data-matrix assembly and indicator scan.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prolsm/experiment.hpp"

using namespace prolsm;

template <typename F>
double median_ms(F &&f, int reps) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

int main(int argc, char **argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads=%d reps=%d\n", threads, reps);
  std::printf("%-14s %-9s %12s %12s %8s %s\n", "case", "kernel", "serial_ms", "parallel_ms", "speedup", "identical");

  for (const char *name : {"fig2_c40", "fig6_gap_0.04"}) {
    const auto cfg = preset(name).resolved();
    const auto basis = solve_pswf(cfg.c, cfg.n_max, cfg.n_t);
    const int dim = select_index_set(basis, std::max(cfg.delta, cfg.lambda_floor));
    const auto rule = lgl_rule(cfg.n_q);
    const auto profile = cfg.make_profile();

    DataMatrix a_s, a_p;
    const double ts = median_ms([&] { a_s = assemble_data_matrix(profile, basis, dim, rule, Exec::Serial); }, reps);
    const double tp = median_ms([&] { a_p = assemble_data_matrix(profile, basis, dim, rule, Exec::Parallel); }, reps);
    std::printf("%-14s %-9s %12.2f %12.2f %8.2f %s\n", name, "assemble", ts, tp, ts / tp,
                a_s.entries == a_p.entries ? "yes" : "NO");

    ScanInputs in;
    in.basis = &basis;
    in.dim = dim;
    in.rule = &rule;
    in.data = &a_s;
    in.profile = &profile;
    const auto zs = cfg.z_grid();
    ScanResult r_s, r_p;
    const double ss = median_ms([&] { r_s = scan(zs, cfg.eps, in, Exec::Serial); }, reps);
    const double sp = median_ms([&] { r_p = scan(zs, cfg.eps, in, Exec::Parallel); }, reps);
    std::printf("%-14s %-9s %12.2f %12.2f %8.2f %s\n", name, "scan", ss, sp, ss / sp,
                scan_csv(r_s) == scan_csv(r_p) ? "yes" : "NO");
  }
  return 0;
}
