#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "spsum/integer.hpp"

namespace spsum {

enum class Primality { composite, prime, probable_prime };

// Deterministic Miller-Rabin below 2^64; a strong pseudoprime test above,
// whose acceptances are reported as probable_prime and recorded as such
// wherever factorizations end up in certificates.
Primality classify_prime(const ZZ& x);

// Rejects x < 2.
bool is_prime(const ZZ& x);

// p-adic valuation: exponent of the largest power of p dividing x.
// Rejects x = 0 and non-prime p.
unsigned long valuation(const ZZ& p, const ZZ& x);

struct FactorOptions {
  // number of rho splitting iterations across the whole factorization;
  // the default fully factors any |x| < 10^18 with a wide margin (prime
  // factors up to ~10^13 split in well under a second)
  std::uint64_t budget = 24'000'000;
  std::uint64_t seed = 0x5eed0f5eedULL;
};

// Sign and multiset of certified prime powers; cofactor > 1 holds whatever
// part the budget did not crack (composite, or unknown).
struct PartialFactorization {
  int sign = 1;
  std::map<ZZ, unsigned long> factors;
  ZZ cofactor = 1;
  std::vector<ZZ> probable;  // listed factors above the deterministic range

  bool complete() const { return cofactor == 1; }
  ZZ reconstruct() const;
};

// Fully factored integer: same shape with the completeness invariant.
struct FactoredInteger {
  int sign = 1;
  std::map<ZZ, unsigned long> factors;
  std::vector<ZZ> probable;

  ZZ reconstruct() const;
};

// Trial division by small primes, then deterministic Brent-rho splitting;
// pseudorandom parameters are derived from seed and input, so identical
// inputs and budgets give identical results. Rejects x = 0.
PartialFactorization factor(const ZZ& x, const FactorOptions& opts = {});

// As factor(), but throws BudgetExceeded unless the factorization is full.
FactoredInteger factor_complete(const ZZ& x, const FactorOptions& opts = {});

struct OmegaValue {
  bool infinite = false;  // only for input 0
  unsigned long count = 0;

  bool operator==(const OmegaValue&) const = default;
};

// Number of distinct prime divisors; omega(0) = infinity, omega(+-1) = 0.
// Throws BudgetExceeded when the factorization stays incomplete.
OmegaValue omega(const ZZ& x, const FactorOptions& opts = {});

// Lower-bound variant for scan mode: never throws on budget exhaustion,
// reports how many distinct primes are certain and whether that is exact.
struct OmegaBoundValue {
  bool infinite = false;
  unsigned long lower_bound = 0;
  bool exact = true;
};
OmegaBoundValue omega_lower(const ZZ& x, const FactorOptions& opts = {});

// omega extended to rationals: with x = a/b reduced, omega(a) + omega(b).
OmegaValue omega_rational(const QQ& x, const FactorOptions& opts = {});

// Divisor count via full factorization; n >= 1.
ZZ sigma0(const ZZ& n, const FactorOptions& opts = {});

const std::vector<std::uint32_t>& small_primes();  // primes below 10^4

}  // namespace spsum
