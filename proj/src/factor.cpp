#include "spsum/factor.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace spsum {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 10000;
    std::vector<bool> sieve(limit + 1, true);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p <= limit; ++p) {
      if (!sieve[p]) continue;
      out.push_back(p);
      for (std::uint64_t q = std::uint64_t(p) * p; q <= limit; q += p) sieve[q] = false;
    }
    return out;
  }();
  return primes;
}

namespace {

bool miller_rabin_witness(const ZZ& n, const ZZ& n_minus_1, const ZZ& d, unsigned long s,
                          unsigned long a) {
  ZZ base = ZZ(a) % n;
  if (base == 0) return false;  // a multiple of n proves nothing
  ZZ x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return false;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return false;
  }
  return true;  // composite witnessed
}

// Bases deterministic for every n < 2^64 (Sinclair/Jaeschke set).
constexpr unsigned long kMillerRabinBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

Primality classify_prime(const ZZ& x) {
  if (x < 2) throw std::invalid_argument("classify_prime: x must be >= 2");
  for (std::uint32_t p : small_primes()) {
    if (x == p) return Primality::prime;
    if (ZZ(p) * p > x) return Primality::prime;  // no divisor up to sqrt
    if (mpz_divisible_ui_p(x.get_mpz_t(), p)) return Primality::composite;
  }
  ZZ n_minus_1 = x - 1;
  ZZ d = n_minus_1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  for (unsigned long a : kMillerRabinBases)
    if (miller_rabin_witness(x, n_minus_1, d, s, a)) return Primality::composite;
  bool in_deterministic_range = mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
  return in_deterministic_range ? Primality::prime : Primality::probable_prime;
}

bool is_prime(const ZZ& x) { return classify_prime(x) != Primality::composite; }

unsigned long valuation(const ZZ& p, const ZZ& x) {
  if (x == 0) throw std::invalid_argument("valuation: undefined (infinite) at x = 0");
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("valuation: p must be prime");
  ZZ reduced;
  return mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

namespace {

// Brent's cycle variant of Pollard rho with batched gcds. Deterministic:
// the polynomial offset and starting point come from the seed and the input.
// Returns a nontrivial factor, or 0 when the budget ran out.
ZZ brent_rho(const ZZ& n, std::uint64_t param_seed, std::uint64_t& budget) {
  ZZ c = ZZ(splitmix64(param_seed)) % (n - 3) + 1;
  ZZ y = ZZ(splitmix64(param_seed ^ 0x9e3779b97f4a7c15ULL)) % n;
  const unsigned long batch = 128;
  ZZ x, ys, q = 1, g = 1;
  unsigned long r = 1;
  auto step = [&](ZZ& v) { v = (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) {
      if (budget == 0) return 0;
      --budget;
      step(y);
    }
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(batch, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        if (budget == 0) return 0;
        --budget;
        step(y);
        q = q * abs(x - y) % n;
      }
      g = gcd_zz(q, n);
      k += lim;
    }
    r *= 2;
  }
  if (g == n) {
    // backtrack one step at a time
    do {
      if (budget == 0) return 0;
      --budget;
      step(ys);
      g = gcd_zz(abs(x - ys), n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

void note_prime(PartialFactorization& out, const ZZ& p, unsigned long mult) {
  out.factors[p] += mult;
  if (classify_prime(p) == Primality::probable_prime) {
    if (std::find(out.probable.begin(), out.probable.end(), p) == out.probable.end())
      out.probable.push_back(p);
  }
}

}  // namespace

PartialFactorization factor(const ZZ& x, const FactorOptions& opts) {
  if (x == 0) throw std::invalid_argument("factor: x must be nonzero");
  PartialFactorization out;
  out.sign = sgn(x) < 0 ? -1 : 1;
  ZZ m = abs(x);
  if (m == 1) return out;

  for (std::uint32_t p : small_primes()) {
    if (ZZ(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ZZ reduced;
      unsigned long e = mpz_remove(reduced.get_mpz_t(), m.get_mpz_t(), ZZ(p).get_mpz_t());
      out.factors[ZZ(p)] += e;
      m = reduced;
    }
  }
  if (m == 1) return out;

  std::uint64_t budget = opts.budget;
  std::vector<std::pair<ZZ, unsigned long>> pending{{m, 1}};
  while (!pending.empty()) {
    auto [v, mult] = pending.back();
    pending.pop_back();
    if (classify_prime(v) != Primality::composite) {
      note_prime(out, v, mult);
      continue;
    }
    if (mpz_perfect_power_p(v.get_mpz_t())) {
      for (unsigned long k = 2; k <= bit_length(v); ++k) {
        ZZ root;
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), k) != 0) {
          pending.emplace_back(root, mult * k);
          v = 0;
          break;
        }
      }
      if (v == 0) continue;
    }
    ZZ d = 0;
    for (std::uint64_t attempt = 0; budget > 0 && d == 0; ++attempt) {
      std::uint64_t param = splitmix64(opts.seed ^ digest64(v)) + attempt;
      d = brent_rho(v, param, budget);
    }
    if (d == 0) {
      for (unsigned long i = 0; i < mult; ++i) out.cofactor *= v;
    } else {
      pending.emplace_back(d, mult);
      pending.emplace_back(v / d, mult);
    }
  }
  std::sort(out.probable.begin(), out.probable.end());
  return out;
}

ZZ PartialFactorization::reconstruct() const {
  ZZ v = cofactor;
  for (const auto& [p, e] : factors) v *= pow_zz(p, e);
  return sign < 0 ? ZZ(-v) : v;
}

ZZ FactoredInteger::reconstruct() const {
  ZZ v = 1;
  for (const auto& [p, e] : factors) v *= pow_zz(p, e);
  return sign < 0 ? ZZ(-v) : v;
}

FactoredInteger factor_complete(const ZZ& x, const FactorOptions& opts) {
  PartialFactorization pf = factor(x, opts);
  if (!pf.complete())
    throw BudgetExceeded("factor_complete: budget exhausted, cofactor " + to_string(pf.cofactor));
  return FactoredInteger{pf.sign, std::move(pf.factors), std::move(pf.probable)};
}

OmegaValue omega(const ZZ& x, const FactorOptions& opts) {
  if (x == 0) return {true, 0};
  return {false, factor_complete(x, opts).factors.size()};
}

OmegaBoundValue omega_lower(const ZZ& x, const FactorOptions& opts) {
  if (x == 0) return {true, 0, true};
  PartialFactorization pf = factor(x, opts);
  OmegaBoundValue out;
  out.lower_bound = pf.factors.size() + (pf.complete() ? 0 : 1);
  out.exact = pf.complete();
  return out;
}

OmegaValue omega_rational(const QQ& x, const FactorOptions& opts) {
  if (x == 0) return {true, 0};
  OmegaValue num = omega(x.get_num(), opts);
  OmegaValue den = omega(x.get_den(), opts);
  return {false, num.count + den.count};
}

ZZ sigma0(const ZZ& n, const FactorOptions& opts) {
  if (n < 1) throw std::invalid_argument("sigma0: n must be >= 1");
  FactoredInteger f = factor_complete(n, opts);
  ZZ count = 1;
  for (const auto& [p, e] : f.factors) count *= (e + 1);
  return count;
}

}  // namespace spsum
