#include "spsum/residue.hpp"

#include <stdexcept>

namespace spsum {

namespace {

ZZ powm(const ZZ& base, const ZZ& e, const ZZ& m) {
  ZZ r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

ZZ mod_pos(const ZZ& x, const ZZ& m) {
  ZZ r = x % m;
  if (r < 0) r += m;
  return r;
}

struct PrimePowerCtx {
  ZZ q;
  unsigned long a;
  ZZ qa;  // q^a
};

// unit-part exponentiation: u^e mod q^b with the exponent reduced mod
// phi(q^b); valid unconditionally for units
ZZ unit_pow(const ZZ& u, const ZZ& e, const ZZ& q, unsigned long b, const ZZ& qb) {
  ZZ phi = pow_zz(q, b - 1) * (q - 1);
  ZZ er = mod_pos(e, phi);
  return powm(mod_pos(u, qb), er, qb);
}

}  // namespace

ZZ pow_mod_prime_power(const ZZ& x, const ZZ& e, const ZZ& q, unsigned long a) {
  if (x == 0) throw std::invalid_argument("pow_mod_prime_power: x must be nonzero");
  if (e < 0) throw std::invalid_argument("pow_mod_prime_power: exponent must be >= 0");
  if (a < 1) throw std::invalid_argument("pow_mod_prime_power: a must be >= 1");
  ZZ qa = pow_zz(q, a);
  ZZ ax = abs(x);
  ZZ unit;
  unsigned long v = mpz_remove(unit.get_mpz_t(), ax.get_mpz_t(), q.get_mpz_t());
  ZZ result;
  if (v > 0 && ZZ(v) * e >= a) {
    result = 0;
  } else {
    unsigned long ve = v == 0 ? 0 : static_cast<unsigned long>(ZZ(ZZ(v) * e).get_ui());
    unsigned long b = a - ve;
    ZZ qb = pow_zz(q, b);
    ZZ w = unit_pow(unit, e, q, b, qb);
    result = w * pow_zz(q, ve) % qa;
  }
  if (sgn(x) < 0 && mpz_odd_p(e.get_mpz_t())) result = mod_pos(-result, qa);
  return result;
}

namespace {

// one term coeff * prod_j bases_j^(n^j) mod q^a
ZZ term_mod_prime_power(const ZZ& coeff, const std::vector<ZZ>& bases, const ZZ& n,
                        const PrimePowerCtx& pp) {
  ZZ acoeff = abs(coeff);
  ZZ coeff_unit;
  unsigned long v0 = mpz_remove(coeff_unit.get_mpz_t(), acoeff.get_mpz_t(), pp.q.get_mpz_t());

  // valuation of the whole term, with early exit past a
  ZZ big_v = v0;
  std::vector<std::pair<ZZ, ZZ>> units;  // (unit base, exponent n^j)
  for (std::size_t j = 1; j <= bases.size(); ++j) {
    const ZZ& b = bases[j - 1];
    ZZ e = 1;
    mpz_pow_ui(e.get_mpz_t(), n.get_mpz_t(), j);
    ZZ u;
    unsigned long vb = mpz_remove(u.get_mpz_t(), b.get_mpz_t(), pp.q.get_mpz_t());
    if (vb > 0) {
      big_v += ZZ(vb) * e;
      if (big_v >= pp.a) return 0;
    }
    if (u != 1) units.emplace_back(u, e);
  }
  if (big_v >= pp.a) return 0;

  unsigned long b_rem = pp.a - big_v.get_ui();
  ZZ qb = pow_zz(pp.q, b_rem);
  ZZ w = mod_pos(coeff_unit, qb);
  for (const auto& [u, e] : units) w = w * unit_pow(u, e, pp.q, b_rem, qb) % qb;
  ZZ res = w * pow_zz(pp.q, big_v.get_ui()) % pp.qa;
  if (sgn(coeff) < 0) res = mod_pos(-res, pp.qa);
  return res;
}

std::vector<PrimePowerCtx> contexts(const FactoredInteger& modulus) {
  if (modulus.sign < 0 || modulus.factors.empty())
    throw std::invalid_argument("modulus must be a factored integer >= 2");
  std::vector<PrimePowerCtx> out;
  for (const auto& [q, a] : modulus.factors) out.push_back({q, a, pow_zz(q, a)});
  return out;
}

}  // namespace

ZZ eval_sum_mod(const NormalizedInstance& inst, const ZZ& n, const FactoredInteger& modulus) {
  std::vector<IntegerTerm> terms;
  for (const auto& term : inst.terms) terms.push_back({term.coeff, term.bases});
  return eval_terms_mod(terms, n, modulus);
}

ZZ eval_terms_mod(const std::vector<IntegerTerm>& terms, const ZZ& n,
                  const FactoredInteger& modulus) {
  if (n < 1) throw std::invalid_argument("eval_sum_mod: n must be >= 1");
  std::vector<std::pair<ZZ, ZZ>> residues;
  for (const auto& pp : contexts(modulus)) {
    ZZ acc = 0;
    for (const auto& term : terms) {
      if (term.coeff == 0) continue;
      bool zero_base = false;
      for (const auto& b : term.bases) zero_base = zero_base || b == 0;
      if (zero_base) continue;  // vanishes for every n >= 1
      acc = (acc + term_mod_prime_power(term.coeff, term.bases, n, pp)) % pp.qa;
    }
    residues.emplace_back(acc, pp.qa);
  }
  return crt_combine(residues);
}

ZZ eval_sigma_exact(const SigmaForm& form, const ZZ& n, std::uint64_t bit_cap) {
  if (n < form.min_index) throw std::invalid_argument("eval_sigma_exact: n below n_P");
  ZZ sum = 0;
  for (const auto& term : form.terms) {
    ZZ prod = term.coeff;
    ZZ bits = 0;
    for (std::size_t p = 0; p < form.primes.size(); ++p) {
      ZZ e = term.prime_exps[p].eval(n);
      if (e < 0) throw std::logic_error("eval_sigma_exact: negative exponent");
      if (e == 0) continue;
      bits += e * static_cast<unsigned long>(bit_length(form.primes[p]));
      if (bits > static_cast<unsigned long>(bit_cap) || !e.fits_ulong_p())
        throw BitCapExceeded("eval_sigma_exact: value exceeds bit cap");
      prod *= pow_zz(form.primes[p], e.get_ui());
    }
    sum += prod;
  }
  return sum;
}

ZZ eval_sigma_mod(const SigmaForm& form, const ZZ& n, const FactoredInteger& modulus) {
  if (n < form.min_index)
    throw std::invalid_argument("eval_sigma_mod: n below n_P (sigma_n may be non-integral)");
  std::vector<std::pair<ZZ, ZZ>> residues;
  for (const auto& pp : contexts(modulus)) {
    ZZ acc = 0;
    for (const auto& term : form.terms) {
      ZZ acoeff = abs(term.coeff);
      ZZ coeff_unit;
      unsigned long v0 = mpz_remove(coeff_unit.get_mpz_t(), acoeff.get_mpz_t(), pp.q.get_mpz_t());
      ZZ big_v = v0;
      bool zero = false;
      for (std::size_t p = 0; p < form.primes.size() && !zero; ++p) {
        if (form.primes[p] != pp.q) continue;
        ZZ e = term.prime_exps[p].eval(n);
        if (e < 0) throw std::logic_error("eval_sigma_mod: negative exponent");
        big_v += e;
        if (big_v >= pp.a) zero = true;
      }
      if (zero || big_v >= pp.a) continue;

      unsigned long b_rem = pp.a - big_v.get_ui();
      ZZ qb = pow_zz(pp.q, b_rem);
      ZZ phi = pow_zz(pp.q, b_rem - 1) * (pp.q - 1);
      ZZ w = mod_pos(coeff_unit, qb);
      for (std::size_t p = 0; p < form.primes.size(); ++p) {
        if (form.primes[p] == pp.q) continue;
        ZZ er = term.prime_exps[p].eval_mod(n, phi);
        w = w * powm(mod_pos(form.primes[p], qb), er, qb) % qb;
      }
      ZZ res = w * pow_zz(pp.q, big_v.get_ui()) % pp.qa;
      if (sgn(term.coeff) < 0) res = mod_pos(-res, pp.qa);
      acc = (acc + res) % pp.qa;
    }
    residues.emplace_back(acc, pp.qa);
  }
  return crt_combine(residues);
}

ZZ crt_combine(const std::vector<std::pair<ZZ, ZZ>>& residue_modulus) {
  if (residue_modulus.empty()) throw std::invalid_argument("crt_combine: no residues");
  ZZ x = residue_modulus[0].first;
  ZZ m = residue_modulus[0].second;
  for (std::size_t i = 1; i < residue_modulus.size(); ++i) {
    const auto& [r2, m2] = residue_modulus[i];
    ZZ inv;
    if (mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), m2.get_mpz_t()) == 0)
      throw std::invalid_argument("crt_combine: moduli not coprime");
    ZZ t = mod_pos((r2 - x) * inv, m2);
    x += m * t;
    m *= m2;
  }
  return x;
}

FactoredInteger factored_modulus(const ZZ& m, const FactorOptions& opts) {
  if (m < 2) throw std::invalid_argument("factored_modulus: m must be >= 2");
  return factor_complete(m, opts);
}

}  // namespace spsum
