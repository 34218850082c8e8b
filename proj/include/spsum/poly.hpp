#pragma once

#include <compare>
#include <vector>

#include "spsum/integer.hpp"

namespace spsum {

// Integer-coefficient polynomial in the sequence index n, stored c_0..c_ell.
// Exponent polynomials e_p built from valuations have nonnegative
// coefficients and zero constant term; their differences (the delta polys)
// carry signed coefficients but are eventually nonnegative.
struct ExponentPolynomial {
  std::vector<ZZ> coeff;

  ExponentPolynomial() = default;
  explicit ExponentPolynomial(std::vector<ZZ> c) : coeff(std::move(c)) {}

  // highest index with a nonzero coefficient, or -1 for the zero polynomial
  int degree() const {
    for (int j = static_cast<int>(coeff.size()) - 1; j >= 0; --j)
      if (coeff[static_cast<std::size_t>(j)] != 0) return j;
    return -1;
  }
  bool is_zero() const { return degree() < 0; }

  ZZ eval(const ZZ& n) const;

  // eval(n) mod m, in [0, m), without materializing n^j
  ZZ eval_mod(const ZZ& n, const ZZ& m) const;

  ExponentPolynomial operator-(const ExponentPolynomial& other) const;
  bool operator==(const ExponentPolynomial& other) const;
};

// Orders two polynomials by their values for all sufficiently large n:
// compares coefficients from the top degree down.
std::strong_ordering compare_eventual(const ExponentPolynomial& f,
                                      const ExponentPolynomial& g);

// Smallest t >= 1 with f(n) > 0 for every n >= t. Requires a positive
// leading coefficient; uses a Cauchy root bound, then scans down to the
// exact minimal threshold.
ZZ positivity_threshold(const ExponentPolynomial& f);

// f(n+2) - f(n) expanded as a polynomial in n.
ExponentPolynomial step2_difference(const ExponentPolynomial& f);

}  // namespace spsum
