#pragma once

#include <vector>

#include "spsum/factor.hpp"
#include "spsum/integer.hpp"
#include "spsum/poly.hpp"
#include "spsum/sequence.hpp"

namespace spsum {

// x^E mod q^a for astronomically large E: the q-part of x contributes
// q^(v*E) (zero once v*E >= a), the unit part is powered with its exponent
// reduced mod phi(q^(a - v*E)). Rejects x = 0.
ZZ pow_mod_prime_power(const ZZ& x, const ZZ& e, const ZZ& q, unsigned long a);

// Residue of sum_i coeff_i * prod_j bases_{i,j}^(n^j) modulo the fully
// factored modulus, assembled per prime power and recombined by CRT.
ZZ eval_sum_mod(const NormalizedInstance& inst, const ZZ& n, const FactoredInteger& modulus);

// Same engine on raw integer terms (coefficient, base tuple); bases may be
// negative, signs ride through the parity of the exponent.
struct IntegerTerm {
  ZZ coeff;
  std::vector<ZZ> bases;
};
ZZ eval_terms_mod(const std::vector<IntegerTerm>& terms, const ZZ& n,
                  const FactoredInteger& modulus);

// sigma_n = sum_i coeff_i * prod_p p^(delta_p^(i)(n)): coefficient plus one
// exponent polynomial per prime of P, per term. Valid for n >= min_index
// (the witness engine's n_P), where every delta value is nonnegative.
struct SigmaTerm {
  ZZ coeff;
  std::vector<ExponentPolynomial> prime_exps;  // aligned with SigmaForm::primes
};
struct SigmaForm {
  std::vector<ZZ> primes;
  std::vector<SigmaTerm> terms;
  ZZ min_index = 1;
};

// Exact sigma_n, for small n (tests and chain seeding).
ZZ eval_sigma_exact(const SigmaForm& form, const ZZ& n, std::uint64_t bit_cap = kDefaultBitCap);

// Residue of sigma_n mod the factored modulus; rejects n < min_index.
ZZ eval_sigma_mod(const SigmaForm& form, const ZZ& n, const FactoredInteger& modulus);

// CRT recombination of residues against pairwise coprime moduli.
ZZ crt_combine(const std::vector<std::pair<ZZ, ZZ>>& residue_modulus);

// Convenience: certify the factored shape of a modulus (every listed prime
// certified, value >= 2) before using it for residue evaluation.
FactoredInteger factored_modulus(const ZZ& m, const FactorOptions& opts = {});

}  // namespace spsum
