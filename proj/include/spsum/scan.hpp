#pragma once

#include <cstdint>
#include <vector>

#include "spsum/factor.hpp"
#include "spsum/integer.hpp"
#include "spsum/sequence.hpp"

namespace spsum {

// One row of the scan table: omega of s_n (exact where the factorization
// completed, a flagged lower bound otherwise), the super-logarithm of the
// index, and the divisor-count comparison columns.
struct ScanRow {
  ZZ n;
  bool omega_infinite = false;
  unsigned long omega = 0;
  bool omega_exact = true;
  unsigned slog_n = 0;
  ZZ sigma0_n;
  long margin = 0;  // omega - (sigma0(n) - 2); 0 when omega is infinite
};

struct ScanOptions {
  QQ slog_base = 2;
  FactorOptions factor;
  std::uint64_t bit_cap = kDefaultBitCap;
};

// Serial reference implementation.
std::vector<ScanRow> scan_range_serial(const SuperpowerSum& s, const ZZ& n_from, const ZZ& n_to,
                                       const ScanOptions& opts = {});

// OpenMP kernel over the index range; row order and contents match the
// serial reference exactly (per-row work is deterministic).
std::vector<ScanRow> scan_range_parallel(const SuperpowerSum& s, const ZZ& n_from, const ZZ& n_to,
                                         const ScanOptions& opts = {});

// Exact sum of sigma_0(1..n), serial reference and OpenMP kernel; feeds the
// divisor-average sanity check and the benchmark.
std::uint64_t sigma0_prefix_sum_serial(std::uint64_t n);
std::uint64_t sigma0_prefix_sum_parallel(std::uint64_t n);

}  // namespace spsum
