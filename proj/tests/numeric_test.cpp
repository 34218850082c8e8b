#include "doctest.h"

#include <random>

#include "spsum/factor.hpp"
#include "spsum/integer.hpp"
#include "spsum/interval.hpp"
#include "spsum/poly.hpp"
#include "spsum/tetration.hpp"

using namespace spsum;

TEST_CASE("rational string round trip and reduction") {
  CHECK(to_string(qq_from_string("4/6")) == "2/3");
  CHECK(to_string(qq_from_string("-4/6")) == "-2/3");
  CHECK(to_string(qq_from_string("7")) == "7");
  CHECK(to_string(qq_from_string("0/5")) == "0");
  QQ x = qq_from_string("10/4");
  x.canonicalize();  // re-reduction is idempotent
  CHECK(to_string(x) == "5/2");
  CHECK_THROWS_AS(qq_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(qq_from_string("abc"), ParseError);
}

TEST_CASE("valuation") {
  CHECK(valuation(ZZ(2), ZZ(12)) == 2);
  CHECK(valuation(ZZ(5), ZZ(12)) == 0);
  // 793 = 13 * 61 by trial division
  {
    ZZ n = 793;
    std::vector<ZZ> divs;
    for (ZZ d = 2; d * d <= n; ++d)
      while (n % d == 0) {
        divs.push_back(d);
        n /= d;
      }
    if (n > 1) divs.push_back(n);
    REQUIRE(divs == std::vector<ZZ>{13, 61});
  }
  CHECK(valuation(ZZ(13), ZZ(793)) == 1);
  CHECK(valuation(ZZ(7), ZZ(-49)) == 2);
  CHECK_THROWS_AS(valuation(ZZ(2), ZZ(0)), std::invalid_argument);
  CHECK_THROWS_AS(valuation(ZZ(6), ZZ(12)), std::invalid_argument);
}

TEST_CASE("valuation is additive on products") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(1, 1 << 20);
  const ZZ primes[] = {ZZ(2), ZZ(3), ZZ(13)};
  for (int it = 0; it < 200; ++it) {
    ZZ x = d(rng), y = d(rng);
    for (const ZZ& p : primes)
      CHECK(valuation(p, ZZ(x * y)) == valuation(p, x) + valuation(p, y));
  }
}

TEST_CASE("exponent polynomial evaluation") {
  ExponentPolynomial id({ZZ(0), ZZ(1)});
  CHECK(id.eval(ZZ(7)) == 7);
  ExponentPolynomial f({ZZ(2), ZZ(0), ZZ(3)});
  CHECK(f.eval(ZZ(10)) == 302);
  ExponentPolynomial g({ZZ(1), ZZ(1)});
  ZZ big = pow_zz(ZZ(10), 40);
  CHECK(g.eval(big) == big + 1);
}

TEST_CASE("eval_mod matches big-integer evaluation") {
  ExponentPolynomial id({ZZ(0), ZZ(1)});
  ZZ huge = pow_zz(ZZ(10), 100);
  CHECK(id.eval_mod(huge, ZZ(7)) == huge % 7);  // 10^100 mod 7 = 4
  CHECK(id.eval_mod(huge, ZZ(7)) == 4);
  ExponentPolynomial c5({ZZ(5)});
  CHECK(c5.eval_mod(ZZ(123456789), ZZ(3)) == 2);
  ExponentPolynomial f({ZZ(1), ZZ(2)});
  CHECK(f.eval_mod(ZZ(6), ZZ(13)) == 0);

  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> cd(-50, 50), nd(1, 1000), md(1, 1 << 16);
  for (int it = 0; it < 300; ++it) {
    std::vector<ZZ> coeff;
    for (int j = 0; j <= 3; ++j) coeff.emplace_back(cd(rng));
    ExponentPolynomial p(coeff);
    ZZ n = nd(rng), m = md(rng);
    ZZ direct = p.eval(n) % m;
    if (direct < 0) direct += m;
    CHECK(p.eval_mod(n, m) == direct);
  }
}

TEST_CASE("eventual comparison and positivity threshold") {
  ExponentPolynomial a({ZZ(100), ZZ(1)});
  ExponentPolynomial b({ZZ(0), ZZ(2)});
  CHECK(compare_eventual(a, b) == std::strong_ordering::less);
  CHECK(compare_eventual(a, a) == std::strong_ordering::equal);
  // n - 100 > 0 exactly from n = 101
  ExponentPolynomial diff = b - a;  // n - 100
  CHECK(positivity_threshold(diff) == 101);
  ExponentPolynomial tight({ZZ(-1), ZZ(1)});  // n - 1
  CHECK(positivity_threshold(tight) == 2);
  ExponentPolynomial always({ZZ(1), ZZ(1)});
  CHECK(positivity_threshold(always) == 1);
}

TEST_CASE("step2 difference expands f(n+2) - f(n)") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> cd(-9, 9), nd(1, 50);
  for (int it = 0; it < 100; ++it) {
    std::vector<ZZ> coeff;
    for (int j = 0; j <= 4; ++j) coeff.emplace_back(cd(rng));
    ExponentPolynomial f(coeff);
    ExponentPolynomial g = step2_difference(f);
    for (int t = 0; t < 5; ++t) {
      ZZ n = nd(rng);
      CHECK(g.eval(n) == f.eval(n + 2) - f.eval(n));
    }
  }
}

TEST_CASE("tetrate on integer bases") {
  Tetration t = tetrate(QQ(2), 3, 1 << 20);
  REQUIRE(t.kind == Tetration::Kind::exact);
  CHECK(t.value == 16);
  t = tetrate(QQ(2), 0, 1 << 20);
  REQUIRE(t.kind == Tetration::Kind::exact);
  CHECK(t.value == 1);
  t = tetrate(QQ(3), 2, 1 << 20);
  REQUIRE(t.kind == Tetration::Kind::exact);
  CHECK(t.value == 27);
  t = tetrate(QQ(2), 6, 1 << 20);
  CHECK(t.kind == Tetration::Kind::over_cap);
  CHECK_THROWS_AS(tetrate(QQ(1), 2, 1 << 10), std::domain_error);
  CHECK_THROWS_AS(tetrate(QQ(1, 2), 2, 1 << 10), std::domain_error);
}

TEST_CASE("tetrate on non-integer rational bases brackets the tower") {
  // (3/2)^^11 ~= 10.9909829327 (far from any relevant boundary)
  Tetration t = tetrate(QQ(3, 2), 11, 1 << 20);
  REQUIRE(t.kind == Tetration::Kind::interval);
  CHECK(t.lo <= t.hi);
  CHECK(t.lo > QQ(109909, 10000));
  CHECK(t.hi < QQ(109911, 10000));
  // height 1 is the base itself
  t = tetrate(QQ(3, 2), 1, 1 << 20);
  REQUIRE(t.kind == Tetration::Kind::interval);
  CHECK(t.lo == QQ(3, 2));
  CHECK(t.hi == QQ(3, 2));
}

TEST_CASE("slog basics") {
  CHECK(slog(QQ(2), ZZ(16)) == 3);
  CHECK(slog(QQ(2), ZZ(65535)) == 3);
  CHECK(slog(QQ(2), ZZ(65536)) == 4);
  // largest l with 10^^l <= 10^9 is 1 (10^^2 = 10^10 already exceeds it)
  CHECK(slog(QQ(10), ZZ(1000000000)) == 1);
  CHECK(slog(QQ(10), pow_zz(ZZ(10), 10)) == 2);
  CHECK_THROWS_AS(slog(QQ(1), ZZ(5)), std::domain_error);
  CHECK_THROWS_AS(slog(QQ(2), ZZ(1)), std::domain_error);
}

TEST_CASE("slog satisfies the defining two-sided inequality") {
  std::mt19937_64 rng(4);
  for (const long base : {2L, 3L, 5L, 10L}) {
    std::uniform_int_distribution<long> nd(2, 1 << 30);
    for (int it = 0; it < 50; ++it) {
      ZZ n = nd(rng);
      unsigned l = slog(QQ(base), n);
      Tetration lo = tetrate(QQ(base), l, bit_length(n) + 4);
      REQUIRE(lo.kind == Tetration::Kind::exact);
      CHECK(lo.value <= n);
      Tetration hi = tetrate(QQ(base), l + 1, bit_length(n) + 4);
      if (hi.kind == Tetration::Kind::exact) CHECK(hi.value > n);
      // over_cap already certifies the tower exceeded n's bit length
    }
  }
}

TEST_CASE("slog is nondecreasing and exact on tower boundaries") {
  unsigned prev = 0;
  for (long n = 2; n <= 70000; n += 997) {
    unsigned cur = slog(QQ(2), ZZ(n));
    CHECK(cur >= prev);
    prev = cur;
  }
  ZZ t5 = pow_zz(ZZ(2), 65536);  // 2^^5
  CHECK(slog(QQ(2), t5 - 1) == 4);
  CHECK(slog(QQ(2), t5) == 5);
  CHECK(slog(QQ(2), t5 + 1) == 5);
}

TEST_CASE("slog on non-integer rational base") {
  // float-oracle values, all far from tower boundaries
  CHECK(slog(QQ(3, 2), ZZ(2)) == 2);
  CHECK(slog(QQ(3, 2), ZZ(16)) == 11);
  CHECK(slog(QQ(3, 2), ZZ(100)) == 12);
  CHECK(slog(QQ(5, 2), ZZ(1000)) == 2);  // 2.5^^2 = 9.88, 2.5^^3 = 8544
}

TEST_CASE("rigorous log bounds") {
  QInterval ln2 = log2_bounds(96);
  CHECK(ln2.lo <= ln2.hi);
  // 0.693147180559945 < ln 2 < 0.693147180559946
  CHECK(ln2.lo > qq_from_string("693147180559945/1000000000000000"));
  CHECK(ln2.hi < qq_from_string("693147180559946/1000000000000000"));
  QInterval ln10 = log_bounds(QQ(10), 96);
  CHECK(ln10.lo > qq_from_string("2302585092994045/1000000000000000"));
  CHECK(ln10.hi < qq_from_string("2302585092994046/1000000000000000"));
  QInterval lnhalf = log_bounds(QQ(1, 2), 96);
  CHECK(lnhalf.hi < qq_from_string("-693147180559945/1000000000000000"));
  CHECK(lnhalf.lo > qq_from_string("-693147180559946/1000000000000000"));
  // huge argument: ln(10^1000)
  QInterval big = log_bounds(QQ(pow_zz(ZZ(10), 1000)), 96);
  CHECK(big.lo > qq_from_string("2302585092994045/1000000000000"));
  CHECK(big.hi < qq_from_string("2302585092994046/1000000000000"));
}

TEST_CASE("pow bounds bracket rational powers") {
  // 2^(1/2) = 1.41421356...
  PowBounds pb;
  REQUIRE(pow_bounds(QQ(2), QQ(1, 2), 64, 1 << 16, pb));
  CHECK(pb.lo <= pb.hi);
  CHECK(pb.lo > QQ(141421, 100000));
  CHECK(pb.hi < QQ(141422, 100000));
  // integer exponent stays exact
  REQUIRE(pow_bounds(QQ(3), QQ(5), 64, 1 << 16, pb));
  CHECK(pb.lo == 243);
  CHECK(pb.hi == 243);
  // cap
  CHECK_FALSE(pow_bounds(QQ(2), QQ(1 << 20), 64, 1 << 10, pb));
}
