#include "doctest.h"

#include "spsum/scan.hpp"
#include "test_util.hpp"

using namespace spsum;
using spsum::test::instance;

TEST_CASE("scan rows for 2^n + 3^n") {
  SuperpowerSum s = instance(1, {{"1", "2"}, {"1", "3"}});
  ScanOptions opts;
  auto rows = scan_range_serial(s, ZZ(1), ZZ(10), opts);
  REQUIRE(rows.size() == 10);
  // 2^6 + 3^6 = 793 = 13 * 61
  CHECK(rows[5].n == 6);
  CHECK(rows[5].omega == 2);
  CHECK(rows[5].omega_exact);
  // slog_2(16) = 3 lands in some column of a wider scan
  auto row16 = scan_range_serial(s, ZZ(16), ZZ(16), opts);
  CHECK(row16[0].slog_n == 3);
}

TEST_CASE("bounded instance keeps a constant omega column") {
  SuperpowerSum s = instance(1, {{"6", "4"}});  // 6*4^n = 2^(2n+1)*3
  ScanOptions opts;
  auto rows = scan_range_serial(s, ZZ(1), ZZ(50), opts);
  for (const auto& row : rows) {
    CHECK(row.omega == 2);
    CHECK(row.omega_exact);
  }
}

TEST_CASE("zero values flag omega as infinite") {
  SuperpowerSum s = instance(1, {{"1", "2"}, {"-1", "2"}});
  auto rows = scan_range_serial(s, ZZ(1), ZZ(5), {});
  for (const auto& row : rows) CHECK(row.omega_infinite);
}

TEST_CASE("budget-limited rows are flagged as lower bounds") {
  // c * 2^n with c a 10^18-scale semiprime: trial division strips the twos,
  // five rho steps cannot split the rest
  ZZ c = ZZ(999999937) * ZZ(999999893);
  SuperpowerSum s = instance(1, {{to_string(c), "2"}});
  ScanOptions opts;
  opts.factor.budget = 5;
  auto rows = scan_range_serial(s, ZZ(3), ZZ(3), opts);
  CHECK_FALSE(rows[0].omega_exact);
  CHECK(rows[0].omega == 2);  // the certain 2 plus at least one prime in the cofactor
}

TEST_CASE("parallel scan equals the serial reference") {
  SuperpowerSum s = instance(1, {{"1", "2"}, {"1", "3"}});
  ScanOptions opts;
  auto a = scan_range_serial(s, ZZ(1), ZZ(25), opts);
  auto b = scan_range_parallel(s, ZZ(1), ZZ(25), opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].omega == b[i].omega);
    CHECK(a[i].omega_exact == b[i].omega_exact);
    CHECK(a[i].slog_n == b[i].slog_n);
    CHECK(a[i].sigma0_n == b[i].sigma0_n);
  }
}

TEST_CASE("scan propagates the bit cap") {
  SuperpowerSum s = instance(3, {{"1", "2", "2", "2"}});
  ScanOptions opts;
  opts.bit_cap = 1 << 10;
  CHECK_THROWS_AS(scan_range_serial(s, ZZ(100), ZZ(100), opts), BitCapExceeded);
}

TEST_CASE("sigma0 prefix sums") {
  // tiny case against a direct divisor count
  std::uint64_t direct = 0;
  for (std::uint64_t i = 1; i <= 200; ++i)
    for (std::uint64_t d = 1; d <= i; ++d)
      if (i % d == 0) ++direct;
  CHECK(sigma0_prefix_sum_serial(200) == direct);
  CHECK(sigma0_prefix_sum_parallel(200) == direct);
  CHECK(sigma0_prefix_sum_parallel(100000) == sigma0_prefix_sum_serial(100000));
  // frozen from the independent sieve: sum of sigma0(1..10^5)
  CHECK(sigma0_prefix_sum_serial(100000) == 1166750ULL);
}
