#include "doctest.h"

#include <cmath>

#include "spsum/zsigmondy.hpp"

using namespace spsum;

TEST_CASE("exception list") {
  CHECK(is_exception({ZZ(2), ZZ(1), ZZ(6)}));
  CHECK(is_exception({ZZ(3), ZZ(1), ZZ(2)}));   // a+b = 4
  CHECK(is_exception({ZZ(7), ZZ(1), ZZ(2)}));   // a+b = 8
  CHECK_FALSE(is_exception({ZZ(3), ZZ(2), ZZ(5)}));
  CHECK_FALSE(is_exception({ZZ(2), ZZ(1), ZZ(5)}));
  CHECK_FALSE(is_exception({ZZ(3), ZZ(2), ZZ(2)}));  // a+b = 5
  CHECK_THROWS_AS(is_exception({ZZ(1), ZZ(1), ZZ(3)}), std::invalid_argument);
  CHECK_THROWS_AS(is_exception({ZZ(3), ZZ(2), ZZ(1)}), std::invalid_argument);
}

TEST_CASE("primitive prime divisors") {
  CHECK(primitive_prime_divisors({ZZ(2), ZZ(1), ZZ(6)}).primes.empty());  // 63 = 3^2 * 7
  CHECK(primitive_prime_divisors({ZZ(3), ZZ(1), ZZ(2)}).primes.empty());  // 8 = 2^3
  CHECK(primitive_prime_divisors({ZZ(2), ZZ(1), ZZ(4)}).primes ==
        std::vector<ZZ>{5});  // 15 = 3 * 5, 3 divides 2^2 - 1
  PrimitiveDivisors pd = primitive_prime_divisors({ZZ(4), ZZ(2), ZZ(3)});
  CHECK(pd.reduced_common_factor);  // gcd 2 divided out: reduces to (2,1,3)
  CHECK(pd.primes == std::vector<ZZ>{7});
}

TEST_CASE("omega against sigma0 report") {
  // 3^12 - 2^12 = 527345 = 5 * 7 * 13 * 19 * 61 (full factorization oracle)
  auto rows = omega_divisor_bound_check(ZZ(3), ZZ(2), ZZ(12));
  REQUIRE(rows.size() == 11);
  const ZsigmondyRow& last = rows.back();
  CHECK(last.n == 12);
  CHECK(last.omega == 5);
  CHECK(last.sigma0_n == 6);
  CHECK(last.margin == 1);
  for (const auto& row : rows) CHECK(row.margin >= 0);

  // 2^6 - 1 = 63: omega = 2 = sigma0(6) - 2 exactly
  rows = omega_divisor_bound_check(ZZ(2), ZZ(1), ZZ(6));
  CHECK(rows.back().omega == 2);
  CHECK(rows.back().margin == 0);
  CHECK(rows.back().exception);

  // n = 2 rows are trivially nonnegative: sigma0(2) - 2 = 0
  CHECK(rows.front().n == 2);
  CHECK(rows.front().margin == static_cast<long>(rows.front().omega));
}

TEST_CASE("small grid: primitive divisors exist except on the exception list") {
  for (long a = 2; a <= 6; ++a) {
    for (long b = 1; b < a; ++b) {
      if (gcd_zz(ZZ(a), ZZ(b)) != 1) continue;
      for (long n = 2; n <= 12; ++n) {
        ZsigmondyQuery q{ZZ(a), ZZ(b), ZZ(n)};
        bool has_primitive = !primitive_prime_divisors(q).primes.empty();
        CHECK_MESSAGE(has_primitive == !is_exception(q),
                      "a=" << a << " b=" << b << " n=" << n);
      }
    }
  }
}

TEST_CASE("divisor-count average tracks log n") {
  // (1/n) sum sigma0(i) at n = 10^5, against log(n) + 1.154 within 15%
  const std::uint64_t n = 100000;
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d <= n; ++d) sum += n / d;  // independent sieve
  double average = static_cast<double>(sum) / static_cast<double>(n);
  double reference = std::log(static_cast<double>(n)) + 1.154;
  CHECK(std::abs(average - reference) / reference < 0.15);
}

TEST_CASE("parallel grid equals the serial reference") {
  auto serial = omega_divisor_bound_check(ZZ(5), ZZ(2), ZZ(14), {}, false);
  auto parallel = omega_divisor_bound_check(ZZ(5), ZZ(2), ZZ(14), {}, true);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].n == parallel[i].n);
    CHECK(serial[i].omega == parallel[i].omega);
    CHECK(serial[i].sigma0_n == parallel[i].sigma0_n);
    CHECK(serial[i].margin == parallel[i].margin);
    CHECK(serial[i].primitive == parallel[i].primitive);
  }
}
