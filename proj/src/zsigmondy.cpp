#include "spsum/zsigmondy.hpp"

#include <exception>
#include <stdexcept>

namespace spsum {

namespace {

void validate(const ZsigmondyQuery& q) {
  if (q.b < 1 || q.a <= q.b) throw std::invalid_argument("zsigmondy: need a > b >= 1");
  if (q.n < 2) throw std::invalid_argument("zsigmondy: need n >= 2");
}

bool power_of_two(const ZZ& x) {
  return x > 0 && mpz_popcount(x.get_mpz_t()) == 1;
}

}  // namespace

bool is_exception(const ZsigmondyQuery& q) {
  validate(q);
  if (q.a == 2 && q.b == 1 && q.n == 6) return true;
  return q.n == 2 && power_of_two(ZZ(q.a + q.b));
}

PrimitiveDivisors primitive_prime_divisors(const ZsigmondyQuery& q, const FactorOptions& opts) {
  validate(q);
  PrimitiveDivisors out;
  ZZ a = q.a, b = q.b;
  ZZ g = gcd_zz(a, b);
  if (g > 1) {
    a /= g;
    b /= g;
    out.reduced_common_factor = true;
  }
  if (!q.n.fits_ulong_p()) throw BitCapExceeded("zsigmondy: n out of range");
  unsigned long n = q.n.get_ui();
  ZZ value = pow_zz(a, n) - pow_zz(b, n);
  FactoredInteger f = factor_complete(value, opts);
  for (const auto& [p, e] : f.factors) {
    // p is primitive iff a^m != b^m mod p for every 1 <= m < n
    bool primitive = true;
    ZZ am = 1, bm = 1;
    for (unsigned long m = 1; m < n && primitive; ++m) {
      am = am * a % p;
      bm = bm * b % p;
      if (am == bm) primitive = false;
    }
    if (primitive) out.primes.push_back(p);
  }
  return out;
}

std::vector<ZsigmondyRow> omega_divisor_bound_check(const ZZ& a, const ZZ& b, const ZZ& n_max,
                                                    const FactorOptions& opts, bool parallel) {
  ZsigmondyQuery probe{a, b, 2};
  validate(probe);
  if (!n_max.fits_slong_p()) throw BitCapExceeded("zsigmondy: n_max out of range");
  long last = n_max.get_si();
  if (last < 2) return {};

  std::vector<ZsigmondyRow> rows(static_cast<std::size_t>(last - 1));
  std::exception_ptr first_error;
  auto fill = [&](long n) {
    ZsigmondyQuery q{a, b, ZZ(n)};
    ZsigmondyRow row;
    row.n = q.n;
    row.exception = is_exception(q);
    PrimitiveDivisors pd = primitive_prime_divisors(q, opts);
    row.primitive = pd.primes;
    ZZ value = pow_zz(a, static_cast<unsigned long>(n)) - pow_zz(b, static_cast<unsigned long>(n));
    row.omega = omega(value, opts).count;
    row.sigma0_n = sigma0(q.n, opts);
    row.margin = static_cast<long>(row.omega) - (row.sigma0_n.get_si() - 2);
    rows[static_cast<std::size_t>(n - 2)] = std::move(row);
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long n = 2; n <= last; ++n) {
      try {
        fill(n);
      } catch (...) {
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
  } else {
    for (long n = 2; n <= last; ++n) fill(n);
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

}  // namespace spsum
