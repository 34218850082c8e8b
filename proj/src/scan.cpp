#include "spsum/scan.hpp"

#include <exception>
#include <stdexcept>

#include "spsum/tetration.hpp"

namespace spsum {

namespace {

ScanRow scan_one(const SuperpowerSum& s, const ZZ& n, const ScanOptions& opts) {
  ScanRow row;
  row.n = n;
  QQ value = eval(s, n, opts.bit_cap);
  if (value == 0) {
    row.omega_infinite = true;
    row.omega_exact = true;
  } else {
    OmegaBoundValue num = omega_lower(value.get_num(), opts.factor);
    OmegaBoundValue den = omega_lower(value.get_den(), opts.factor);
    row.omega = num.lower_bound + den.lower_bound;
    row.omega_exact = num.exact && den.exact;
  }
  row.slog_n = n >= 2 ? slog(opts.slog_base, n) : 0;
  row.sigma0_n = sigma0(n, opts.factor);
  if (!row.omega_infinite)
    row.margin = static_cast<long>(row.omega) - (row.sigma0_n.get_si() - 2);
  return row;
}

std::vector<ScanRow> scan_range(const SuperpowerSum& s, const ZZ& n_from, const ZZ& n_to,
                                const ScanOptions& opts, bool parallel) {
  if (n_from < 1 || n_to < n_from) throw std::invalid_argument("scan: empty or invalid range");
  ZZ count = n_to - n_from + 1;
  if (!count.fits_slong_p() || !n_from.fits_slong_p())
    throw BitCapExceeded("scan: range too large");
  long total = count.get_si();
  long base = n_from.get_si();

  std::vector<ScanRow> rows(static_cast<std::size_t>(total));
  std::exception_ptr first_error;
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
      try {
        rows[static_cast<std::size_t>(i)] = scan_one(s, ZZ(base + i), opts);
      } catch (...) {
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < total; ++i)
      rows[static_cast<std::size_t>(i)] = scan_one(s, ZZ(base + i), opts);
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

}  // namespace

std::vector<ScanRow> scan_range_serial(const SuperpowerSum& s, const ZZ& n_from, const ZZ& n_to,
                                       const ScanOptions& opts) {
  return scan_range(s, n_from, n_to, opts, false);
}

std::vector<ScanRow> scan_range_parallel(const SuperpowerSum& s, const ZZ& n_from, const ZZ& n_to,
                                         const ScanOptions& opts) {
  return scan_range(s, n_from, n_to, opts, true);
}

std::uint64_t sigma0_prefix_sum_serial(std::uint64_t n) {
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d <= n; ++d) sum += n / d;
  return sum;
}

std::uint64_t sigma0_prefix_sum_parallel(std::uint64_t n) {
  std::uint64_t sum = 0;
  long last = static_cast<long>(n);
#pragma omp parallel for schedule(static) reduction(+ : sum)
  for (long d = 1; d <= last; ++d) sum += n / static_cast<std::uint64_t>(d);
  return sum;
}

}  // namespace spsum
