#include "doctest.h"

#include <random>

#include "spsum/factor.hpp"
#include "spsum/sequence.hpp"
#include "test_util.hpp"

using namespace spsum;
using spsum::test::instance;
using spsum::test::random_instance;

TEST_CASE("eval") {
  SuperpowerSum s = instance(1, {{"1", "2"}, {"1", "3"}});  // 2^n + 3^n
  CHECK(eval(s, ZZ(2)) == 13);
  CHECK(eval(s, ZZ(1)) == 5);
  CHECK(eval(s, ZZ(4)) == 97);

  SuperpowerSum single = instance(1, {{"6", "4"}});
  CHECK(eval(single, ZZ(3)) == 384);

  SuperpowerSum cancel = instance(1, {{"3", "2"}, {"-3", "2"}});
  for (int n = 1; n <= 6; ++n) CHECK(eval(cancel, ZZ(n)) == 0);

  CHECK_THROWS_AS(eval(s, ZZ(0)), std::invalid_argument);
}

TEST_CASE("eval honors the bit cap") {
  SuperpowerSum s = instance(2, {{"1", "2", "2"}});  // 2^(n + n^2)
  CHECK(eval(s, ZZ(3), 1 << 20) == 4096);
  CHECK_THROWS_AS(eval(s, pow_zz(ZZ(10), 30), 1 << 20), BitCapExceeded);
  // |bases| = 1 never hits the cap, whatever the index
  SuperpowerSum ones = instance(1, {{"5", "-1"}});
  CHECK(eval(ones, pow_zz(ZZ(10), 50), 64) == 5);       // even exponent
  CHECK(eval(ones, pow_zz(ZZ(10), 50) + 1, 64) == -5);  // odd exponent
}

TEST_CASE("prec_compare") {
  auto t = [](std::initializer_list<long> v) {
    std::vector<QQ> out;
    for (long x : v) out.emplace_back(x);
    return out;
  };
  CHECK(prec_compare(t({2}), t({3})) == std::strong_ordering::less);
  CHECK(prec_compare(t({5, 2}), t({1, 3})) == std::strong_ordering::less);
  CHECK(prec_compare(t({-2, 3}), t({2, 3})) == std::strong_ordering::equal);
  CHECK(prec_compare(t({9, 4}), t({2, 4})) == std::strong_ordering::greater);
  CHECK_THROWS_AS(prec_compare(t({1}), t({1, 2})), std::invalid_argument);
}

TEST_CASE("normalize_even examples") {
  SUBCASE("already normalized") {
    auto r = normalize_even(instance(1, {{"1", "2"}, {"1", "3"}}));
    REQUIRE(r.has_value());
    CHECK(r->k() == 2);
    CHECK(r->terms[0].coeff == 1);
    CHECK(r->terms[0].bases == std::vector<ZZ>{2});
    CHECK(r->terms[1].bases == std::vector<ZZ>{3});
    CHECK(r->omega_slack == 0);
  }
  SUBCASE("cancellation then merge") {
    // 3*2^n + (-3)*(-2)^n + 5^n: on evens the 2^n terms cancel, and the
    // single survivor (1, 5) then loses its column gcd to delta_1
    auto r = normalize_even(instance(1, {{"3", "2"}, {"-3", "-2"}, {"1", "5"}}));
    REQUIRE(r.has_value());
    CHECK(r->k() == 1);
    CHECK(r->terms[0].coeff == 1);
    CHECK(r->terms[0].bases == std::vector<ZZ>{1});
    CHECK(r->removed_gcds == std::vector<ZZ>{1, 5});
  }
  SUBCASE("denominator clearing records alpha and omega slack") {
    auto r = normalize_even(instance(1, {{"1/2", "3"}, {"1", "5"}}));
    REQUIRE(r.has_value());
    CHECK(r->scale_denominators == std::vector<ZZ>{2, 1});
    CHECK(r->omega_slack == 1);
    REQUIRE(r->k() == 2);
    CHECK(r->terms[0].coeff == 1);
    CHECK(r->terms[0].bases == std::vector<ZZ>{3});
    CHECK(r->terms[1].coeff == 2);
    CHECK(r->terms[1].bases == std::vector<ZZ>{5});
  }
  SUBCASE("columnwise gcd removal") {
    auto r = normalize_even(instance(1, {{"1", "2"}, {"2", "4"}}));
    REQUIRE(r.has_value());
    CHECK(r->removed_gcds == std::vector<ZZ>{1, 2});
    CHECK(r->terms[0].bases == std::vector<ZZ>{1});
    CHECK(r->terms[1].bases == std::vector<ZZ>{2});
  }
  SUBCASE("identically zero on evens") {
    CHECK_FALSE(normalize_even(instance(1, {{"1", "2"}, {"-1", "-2"}})).has_value());
    CHECK_FALSE(normalize_even(instance(1, {{"0", "7"}})).has_value());
  }
  SUBCASE("zero bases drop the term") {
    auto r = normalize_even(instance(2, {{"5", "0", "3"}, {"1", "2", "2"}}));
    REQUIRE(r.has_value());
    CHECK(r->k() == 1);
    CHECK(r->removed_gcds == std::vector<ZZ>{1, 2, 2});
    CHECK(r->terms[0].bases == std::vector<ZZ>{1, 1});
  }
}

TEST_CASE("normalization preserves values up to the recorded scaling") {
  std::mt19937_64 rng(20);
  int done = 0;
  while (done < 60) {
    SuperpowerSum s = random_instance(rng, 4, 2, 6);
    // rational entries as well
    if (done % 3 == 0 && !s.terms.empty()) s.terms[0].coeff /= 3;
    auto r = normalize_even(s);
    if (!r.has_value()) continue;
    ++done;
    for (ZZ n = 2; n <= 20; n += 2) {
      ZZ u = eval(*r, n);
      // v_n = prod_j alpha_j^(n^j), w_n = prod_j delta_j^(n^j)
      QQ v = 1, w = 1;
      ZZ e = 1;
      for (std::size_t j = 0; j < r->scale_denominators.size(); ++j) {
        if (j > 0) e *= n;
        v *= pow_qq(QQ(r->scale_denominators[j]), e.get_si());
        w *= pow_qq(QQ(r->removed_gcds[j]), e.get_si());
      }
      CHECK(QQ(u) * w / v == eval(s, n));
    }
  }
}

TEST_CASE("omega slack bounds the normalization loss") {
  // omega(s_2n) >= omega(u_2n) - omegaSlack, and u here also absorbs the
  // removed gcds (they only add prime content)
  std::mt19937_64 rng(21);
  FactorOptions opts;
  int done = 0;
  while (done < 25) {
    SuperpowerSum s = random_instance(rng, 3, 1, 5);
    if (done % 2 == 0 && !s.terms.empty()) s.terms.back().coeff /= 2;
    auto r = normalize_even(s);
    if (!r.has_value()) continue;
    ++done;
    for (ZZ n = 2; n <= 10; n += 2) {
      QQ sv = eval(s, n);
      if (sv == 0) continue;
      ZZ u = eval(*r, n);
      long lhs = static_cast<long>(omega_rational(sv, opts).count);
      long rhs = static_cast<long>(omega(u, opts).count) -
                 static_cast<long>(r->omega_slack);
      CHECK(lhs >= rhs);
    }
  }
}

TEST_CASE("normalize_even output is a fixed point") {
  std::mt19937_64 rng(22);
  int done = 0;
  while (done < 40) {
    auto r = normalize_even(random_instance(rng, 4, 3, 9));
    if (!r.has_value()) continue;
    ++done;
    SuperpowerSum back;
    back.ell = r->ell;
    for (const auto& t : r->terms) {
      Term bt;
      bt.coeff = QQ(t.coeff);
      for (const auto& b : t.bases) bt.bases.emplace_back(b);
      back.terms.push_back(std::move(bt));
    }
    auto again = normalize_even(back);
    REQUIRE(again.has_value());
    CHECK(again->scale_denominators == std::vector<ZZ>(r->scale_denominators.size(), ZZ(1)));
    CHECK(again->removed_gcds == std::vector<ZZ>(r->removed_gcds.size(), ZZ(1)));
    REQUIRE(again->k() == r->k());
    for (int i = 0; i < r->k(); ++i) {
      CHECK(again->terms[i].coeff == r->terms[i].coeff);
      CHECK(again->terms[i].bases == r->terms[i].bases);
    }
    // prec never returns Equal on a normalized tuple list
    for (int i = 0; i + 1 < r->k(); ++i)
      CHECK(prec_compare(r->terms[i].bases, r->terms[i + 1].bases) ==
            std::strong_ordering::less);
  }
}

TEST_CASE("odd transform identity s_{2n-1} = t_{2n}") {
  SUBCASE("paper example") {
    SuperpowerSum s = instance(1, {{"1", "2"}, {"1", "3"}});
    SuperpowerSum t = odd_transform(s);
    REQUIRE(t.k() == 2);
    CHECK(eval(s, ZZ(5)) == 275);
    CHECK(eval(t, ZZ(6)) == 275);
    CHECK(t.terms[0].coeff == QQ(1, 2));
    CHECK(t.terms[0].bases[0] == 2);
    CHECK(t.terms[1].coeff == QQ(1, 3));
    CHECK(t.terms[1].bases[0] == 3);
  }
  SUBCASE("random instances, all small indices") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 100; ++it) {
      SuperpowerSum s = random_instance(rng, 3, 3, 5, true);
      SuperpowerSum t = odd_transform(s);
      for (ZZ n = 1; n <= 8; ++n) CHECK(eval(s, 2 * n - 1) == eval(t, 2 * n));
    }
  }
}

TEST_CASE("type-II conversion") {
  SUBCASE("2^(n^2)") {
    Type2Spec spec;
    spec.terms.push_back({{QQ(2)}, {ExponentPolynomial({ZZ(0), ZZ(0), ZZ(1)})}});
    SuperpowerSum s = convert_type2(spec);
    CHECK(s.ell == 2);
    REQUIRE(s.k() == 1);
    CHECK(s.terms[0].coeff == 1);
    CHECK(s.terms[0].bases == std::vector<QQ>{QQ(1), QQ(2)});
  }
  SUBCASE("(2/3)^(2n+1)") {
    Type2Spec spec;
    spec.terms.push_back({{QQ(2, 3)}, {ExponentPolynomial({ZZ(1), ZZ(2)})}});
    SuperpowerSum s = convert_type2(spec);
    REQUIRE(s.k() == 1);
    CHECK(s.terms[0].coeff == QQ(2, 3));
    CHECK(s.terms[0].bases == std::vector<QQ>{QQ(4, 9)});
  }
  SUBCASE("2^(n^2+1) + 3^(2n) against direct evaluation") {
    Type2Spec spec;
    spec.terms.push_back({{QQ(2)}, {ExponentPolynomial({ZZ(1), ZZ(0), ZZ(1)})}});
    spec.terms.push_back({{QQ(3)}, {ExponentPolynomial({ZZ(0), ZZ(2)})}});
    SuperpowerSum s = convert_type2(spec);
    for (long n = 1; n <= 3; ++n) {
      ZZ direct = pow_zz(ZZ(2), static_cast<unsigned long>(n * n + 1)) +
                  pow_zz(ZZ(3), static_cast<unsigned long>(2 * n));
      CHECK(eval(s, ZZ(n)) == QQ(direct));
    }
  }
}

TEST_CASE("instance JSON") {
  const std::string text = R"({"ell": 1, "terms": [
    {"coeff": "1", "bases": ["2"]},
    {"coeff": "1/2", "bases": ["3"]}
  ]})";
  SuperpowerSum s = instance_from_json(text);
  CHECK(s.ell == 1);
  REQUIRE(s.k() == 2);
  CHECK(s.terms[1].coeff == QQ(1, 2));
  // canonical round trip
  SuperpowerSum again = instance_from_json(instance_to_json(s));
  CHECK(eval(again, ZZ(3)) == eval(s, ZZ(3)));

  CHECK_THROWS_AS(instance_from_json("{"), ParseError);
  CHECK_THROWS_AS(instance_from_json(R"({"ell":1,"terms":[]})"), ParseError);
  CHECK_THROWS_AS(instance_from_json(R"({"ell":0,"terms":[{"coeff":"1","bases":[]}]})"),
                  ParseError);
  CHECK_THROWS_AS(instance_from_json(R"({"ell":2,"terms":[{"coeff":"1","bases":["2"]}]})"),
                  ParseError);
}
