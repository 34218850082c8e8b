#pragma once

#include <vector>

#include "spsum/factor.hpp"
#include "spsum/integer.hpp"

namespace spsum {

struct ZsigmondyQuery {
  ZZ a, b, n;  // a > b >= 1, n >= 2
};

// True exactly for (a,b,n) = (2,1,6), or n = 2 with a+b a power of two.
bool is_exception(const ZsigmondyQuery& q);

// Primes dividing a^n - b^n but none of a^m - b^m for m < n. A common
// factor g = gcd(a,b) > 1 is divided out before the scan (with a warning
// flag on the result).
struct PrimitiveDivisors {
  std::vector<ZZ> primes;
  bool reduced_common_factor = false;
};
PrimitiveDivisors primitive_prime_divisors(const ZsigmondyQuery& q,
                                           const FactorOptions& opts = {});

// One row of the section-1 inequality report: omega(a^n - b^n) against
// sigma_0(n) - 2.
struct ZsigmondyRow {
  ZZ n;
  unsigned long omega = 0;
  ZZ sigma0_n;
  long margin = 0;  // omega - (sigma0 - 2)
  bool exception = false;
  std::vector<ZZ> primitive;
};

std::vector<ZsigmondyRow> omega_divisor_bound_check(const ZZ& a, const ZZ& b, const ZZ& n_max,
                                                    const FactorOptions& opts = {},
                                                    bool parallel = false);

}  // namespace spsum
