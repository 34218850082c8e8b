// Benchmark of the OpenMP kernels against their serial references. Each
// kernel pair must produce identical results; the table reports wall times
// and speedup.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spsum/scan.hpp"
#include "spsum/sequence.hpp"
#include "spsum/zsigmondy.hpp"

using namespace spsum;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, bool match) {
  std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name, serial_s,
              parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0,
              match ? "results match" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  long scan_to = 70;
  std::uint64_t prefix_n = 20000000;
  long zsig_a = 12, zsig_n = 20;
  if (argc > 1) scan_to = std::stol(argv[1]);
  if (argc > 2) prefix_n = std::stoull(argv[2]);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; parallel kernels fall back to serial\n");
#endif

  bool all_match = true;

  {
    SuperpowerSum s;
    s.ell = 1;
    Term a{QQ(1), {QQ(2)}}, b{QQ(1), {QQ(3)}};
    s.terms = {a, b};
    ScanOptions opts;
    auto t0 = std::chrono::steady_clock::now();
    auto rows_s = scan_range_serial(s, ZZ(1), ZZ(scan_to), opts);
    double ts = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    auto rows_p = scan_range_parallel(s, ZZ(1), ZZ(scan_to), opts);
    double tp = seconds(t0);
    bool match = rows_s.size() == rows_p.size();
    for (std::size_t i = 0; match && i < rows_s.size(); ++i)
      match = rows_s[i].n == rows_p[i].n && rows_s[i].omega == rows_p[i].omega &&
              rows_s[i].omega_exact == rows_p[i].omega_exact &&
              rows_s[i].slog_n == rows_p[i].slog_n && rows_s[i].sigma0_n == rows_p[i].sigma0_n;
    all_match = all_match && match;
    report("omega scan 2^n+3^n", ts, tp, match);
  }

  {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<ZsigmondyRow>> grid_s;
    for (long b = 1; b < zsig_a; ++b) {
      if (gcd_zz(ZZ(zsig_a), ZZ(b)) != 1) continue;
      grid_s.push_back(omega_divisor_bound_check(ZZ(zsig_a), ZZ(b), ZZ(zsig_n), {}, false));
    }
    double ts = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<ZsigmondyRow>> grid_p;
    for (long b = 1; b < zsig_a; ++b) {
      if (gcd_zz(ZZ(zsig_a), ZZ(b)) != 1) continue;
      grid_p.push_back(omega_divisor_bound_check(ZZ(zsig_a), ZZ(b), ZZ(zsig_n), {}, true));
    }
    double tp = seconds(t0);
    bool match = grid_s.size() == grid_p.size();
    for (std::size_t i = 0; match && i < grid_s.size(); ++i)
      for (std::size_t j = 0; match && j < grid_s[i].size(); ++j)
        match = grid_s[i][j].omega == grid_p[i][j].omega &&
                grid_s[i][j].primitive == grid_p[i][j].primitive;
    all_match = all_match && match;
    report("zsigmondy grid a=12", ts, tp, match);
  }

  {
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t sum_s = sigma0_prefix_sum_serial(prefix_n);
    double ts = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    std::uint64_t sum_p = sigma0_prefix_sum_parallel(prefix_n);
    double tp = seconds(t0);
    bool match = sum_s == sum_p;
    all_match = all_match && match;
    report("sigma0 prefix sum", ts, tp, match);
  }

  return all_match ? 0 : 1;
}
