#include "spsum/witness.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "spsum/interval.hpp"
#include "spsum/tetration.hpp"

namespace spsum {

namespace {

ZZ ceil_qq(const QQ& x) {
  ZZ q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// Certified lower-bound shape for a real-coefficient polynomial
// sum_j c_j n^j: for n >= 1, poly(n) >= L n^lead - S n^(lead-1).
struct PolyBound {
  int lead = -1;
  QQ L;  // certified lower bound of the leading coefficient, > 0
  QQ S;  // certified upper bound on sum of |c_j|, j < lead
};

PolyBound poly_bound(const std::vector<QInterval>& coeff) {
  PolyBound out;
  for (int j = static_cast<int>(coeff.size()) - 1; j >= 0; --j) {
    const auto& c = coeff[static_cast<std::size_t>(j)];
    if (c.lo == 0 && c.hi == 0) continue;
    out.lead = j;
    out.L = c.lo;
    break;
  }
  if (out.lead < 0) return out;
  out.S = 0;
  for (int j = 0; j < out.lead; ++j) {
    const auto& c = coeff[static_cast<std::size_t>(j)];
    QQ m = std::max(abs(c.lo), abs(c.hi));
    out.S += m;
  }
  return out;
}

// Smallest n* with poly(n) >= target certified for every n >= n*.
ZZ dominance_threshold(const PolyBound& pb, const QQ& target) {
  if (pb.lead < 0 || pb.L <= 0)
    throw std::runtime_error("dominance_threshold: leading coefficient not separated");
  if (pb.lead == 0) {
    if (pb.L >= target) return 1;
    throw std::runtime_error("dominance_threshold: constant bound below target");
  }
  QQ t = target > 0 ? target : QQ(0);
  ZZ n = ceil_qq((pb.S + t) / pb.L);
  return n > 1 ? n : ZZ(1);
}

// Margin for strict inequalities certified through logs: e^delta > 1 covers
// the gap between "ratio >= K" and "ratio > K".
const QQ kDelta(1, 256);

// ln-ratio interval coefficients of prod_j (hi_bases_j / lo_bases_j)^(n^j);
// index 0 unused (exact zero).
std::vector<QInterval> ratio_log_coeffs(const NormalizedTerm& hi, const NormalizedTerm& lo,
                                        unsigned prec) {
  std::vector<QInterval> out(hi.bases.size() + 1, QInterval(QQ(0)));
  for (std::size_t j = 1; j <= hi.bases.size(); ++j) {
    if (hi.bases[j - 1] == lo.bases[j - 1]) continue;
    QQ ratio(hi.bases[j - 1], lo.bases[j - 1]);
    ratio.canonicalize();
    out[j] = log_bounds(ratio, prec);
  }
  return out;
}

PolyBound ratio_bound_checked(const NormalizedTerm& hi, const NormalizedTerm& lo,
                              unsigned prec_start) {
  for (unsigned prec = prec_start; prec <= (1u << 14); prec *= 2) {
    PolyBound pb = poly_bound(ratio_log_coeffs(hi, lo, prec));
    if (pb.lead >= 1 && pb.L > 0) return pb;
  }
  throw std::runtime_error("ratio_bound: could not separate leading log from zero");
}

std::vector<ExponentPolynomial> delta_polys_for(const WitnessParams& params, std::size_t term) {
  std::vector<ExponentPolynomial> out;
  for (std::size_t p = 0; p < params.primes.size(); ++p)
    out.push_back(params.e_polys[p][term] - params.e_polys[p][params.i_min[p]]);
  return out;
}

std::string join_moduli(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += ",";
    out += s;
  }
  return out;
}

}  // namespace

WitnessParams derive_params(const NormalizedInstance& inst, const DeriveOptions& opts) {
  const int k = inst.k();
  if (k < 2) throw DegenerateInstance("derive_params: instance merges to a single term");
  if (k > opts.k_cap)
    throw SubsetBlowup("derive_params: 2^k - 1 subset analyses exceed the k cap");
  const std::size_t kk = static_cast<std::size_t>(k);
  const unsigned prec = opts.log_prec_bits;

  WitnessParams params;
  params.ell = inst.ell;
  for (const auto& t : inst.terms) params.coeffs.push_back(t.coeff);

  // P: primes of the product of all bases (columns j >= 1)
  ZZ z_product = 1;
  for (const auto& t : inst.terms)
    for (const auto& b : t.bases) z_product *= b;
  if (z_product < 2)
    throw DegenerateInstance("derive_params: no prime content in the power tuples");
  for (const auto& [p, e] : factor_complete(z_product, opts.factor).factors)
    params.primes.push_back(p);

  // exponent polynomials: c_0 = 0, c_j = v_p(x_{i,j}); the coefficient
  // x_{i,0} is carried whole, not folded into the polynomial
  for (const auto& p : params.primes) {
    std::vector<ExponentPolynomial> row;
    for (const auto& t : inst.terms) {
      std::vector<ZZ> c(static_cast<std::size_t>(inst.ell) + 1, ZZ(0));
      for (std::size_t j = 1; j <= t.bases.size(); ++j) c[j] = valuation(p, t.bases[j - 1]);
      row.emplace_back(std::move(c));
    }
    params.e_polys.push_back(std::move(row));
  }

  // i_p: eventually minimal exponent polynomial, smallest index on ties
  for (std::size_t p = 0; p < params.primes.size(); ++p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < kk; ++i)
      if (compare_eventual(params.e_polys[p][i], params.e_polys[p][best]) ==
          std::strong_ordering::less)
        best = i;
    params.i_min.push_back(best);
  }

  // pairwise ratio bounds (term m dominates term i)
  std::vector<std::vector<PolyBound>> rb(kk);
  for (std::size_t m = 1; m < kk; ++m) {
    rb[m].resize(m);
    for (std::size_t i = 0; i < m; ++i)
      rb[m][i] = ratio_bound_checked(inst.terms[m], inst.terms[i], prec);
  }

  // N: beyond it no nonempty subsum vanishes; per subset, the prec-largest
  // term certifiably exceeds the others' absolute sum
  ZZ big_n = 1;
  for (unsigned long mask = 1; mask < (1ul << kk); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons never vanish
    std::size_t top = 0;
    for (std::size_t i = 0; i < kk; ++i)
      if (mask & (1ul << i)) top = i;
    QQ rest_sum = 0;
    for (std::size_t i = 0; i < top; ++i)
      if (mask & (1ul << i)) rest_sum += abs(QQ(inst.terms[i].coeff));
    QQ target = log_bounds(rest_sum / abs(QQ(inst.terms[top].coeff)), prec).hi + kDelta;
    for (std::size_t i = 0; i < top; ++i) {
      if (!(mask & (1ul << i))) continue;
      ZZ thr = dominance_threshold(rb[top][i], target);
      if (thr > big_n) big_n = thr;
    }
  }
  params.n_subsums = big_n;

  // n_p: exact minimal threshold past which the minimal polynomial is
  // strictly below every distinct competitor; clamped to >= N
  ZZ n_pset = params.n_subsums;
  for (std::size_t p = 0; p < params.primes.size(); ++p) {
    for (std::size_t i = 0; i < kk; ++i) {
      ExponentPolynomial diff = params.e_polys[p][i] - params.e_polys[p][params.i_min[p]];
      if (diff.is_zero()) continue;
      ZZ thr = positivity_threshold(diff);
      if (thr > n_pset) n_pset = thr;
    }
  }
  params.n_pset = n_pset;

  // monotonicity of |sigma| on even indices: (a) the top term exceeds twice
  // the rest, (b) the top term grows by a factor >= 3 per index step of 2
  QQ rest_all = 0;
  for (std::size_t i = 0; i + 1 < kk; ++i) rest_all += abs(QQ(inst.terms[i].coeff));
  ZZ thr_margin = 1;
  {
    QQ target =
        log_bounds(2 * rest_all / abs(QQ(inst.terms[kk - 1].coeff)), prec).hi + kDelta;
    for (std::size_t i = 0; i + 1 < kk; ++i) {
      ZZ thr = dominance_threshold(rb[kk - 1][i], target);
      if (thr > thr_margin) thr_margin = thr;
    }
  }
  ZZ thr_ratio = 1;
  {
    bool any = false;
    for (std::size_t p = 0; p < params.primes.size(); ++p)
      any = any ||
            !(params.e_polys[p][kk - 1] - params.e_polys[p][params.i_min[p]]).is_zero();
    if (!any)
      throw DegenerateInstance(
          "derive_params: every delta polynomial of the top term vanishes (lemma 1)");
    // escalate the log precision until the leading growth coefficient (a
    // sum of positive contributions) is separated from zero
    for (unsigned p2 = prec;; p2 *= 2) {
      if (p2 > (1u << 14))
        throw std::runtime_error("derive_params: growth bound precision exhausted");
      std::vector<QInterval> growth(static_cast<std::size_t>(inst.ell) + 1, QInterval(QQ(0)));
      for (std::size_t p = 0; p < params.primes.size(); ++p) {
        ExponentPolynomial delta =
            params.e_polys[p][kk - 1] - params.e_polys[p][params.i_min[p]];
        if (delta.is_zero()) continue;
        ExponentPolynomial step = step2_difference(delta);
        QInterval lnp = log_bounds(QQ(params.primes[p]), p2);
        for (std::size_t j = 0; j < step.coeff.size(); ++j) {
          if (step.coeff[j] == 0) continue;
          growth[j] += lnp.scaled(QQ(step.coeff[j]));
        }
      }
      PolyBound gb = poly_bound(growth);
      QQ target = log_bounds(QQ(3), p2).hi + kDelta;
      if (gb.lead < 0 || gb.L <= 0) continue;
      if (gb.lead == 0 && gb.L < target) continue;
      thr_ratio = dominance_threshold(gb, target);
      break;
    }
  }
  {
    ZZ n0 = 1;
    auto bump = [&n0](const ZZ& v) {
      if (v > n0) n0 = v;
    };
    bump(params.n_pset);
    bump(params.n_subsums);
    bump((thr_margin + 1) / 2);
    bump((thr_ratio + 1) / 2);
    params.n0 = n0;
  }

  // lambda, alpha, beta from sigma at 2 n_0
  SigmaForm form = build_sigma_form(inst, params);
  ZZ r0 = 2 * params.n0;
  ZZ sigma_r0 = eval_sigma_exact(form, r0, opts.bit_cap);
  if (sigma_r0 == 0) throw std::logic_error("derive_params: sigma(2 n0) = 0 despite N bound");
  ZZ max_val = 0, max_delta = 0;
  for (std::size_t p = 0; p < params.primes.size(); ++p) {
    ZZ v = valuation(params.primes[p], sigma_r0);
    if (v > max_val) max_val = v;
    for (std::size_t i = 0; i < kk; ++i) {
      ZZ d = (params.e_polys[p][i] - params.e_polys[p][params.i_min[p]]).eval(r0);
      if (d > max_delta) max_delta = d;
    }
  }
  params.lambda = max_val + max_delta;

  ZZ max_coeff = 0;
  for (const auto& c : params.coeffs)
    if (abs(c) > max_coeff) max_coeff = abs(c);
  if (!params.lambda.fits_ulong_p())
    throw BitCapExceeded("derive_params: lambda too large to materialize alpha");
  ZZ prime_pow_lambda = 1;
  for (const auto& p : params.primes) prime_pow_lambda *= pow_zz(p, params.lambda.get_ui());
  params.alpha = k * max_coeff * prime_pow_lambda;

  ZZ alpha_m1 = params.alpha - 1;
  {
    ZZ beta_bits = 0;
    for (const auto& p : params.primes)
      beta_bits += alpha_m1 * static_cast<unsigned long>(bit_length(p));
    if (beta_bits > static_cast<unsigned long>(opts.bit_cap) || !alpha_m1.fits_ulong_p())
      throw BitCapExceeded("derive_params: beta = prod p^(alpha-1)(p-1) exceeds the bit cap");
  }
  params.beta = 1;
  for (const auto& p : params.primes) params.beta *= pow_zz(p, alpha_m1.get_ui()) * (p - 1);

  // A: square of the top term's product, plus one
  ZZ dominant = abs(inst.terms[kk - 1].coeff);
  for (const auto& b : inst.terms[kk - 1].bases) dominant *= b;
  params.growth_bound_a = dominant * dominant + 1;

  // B: smallest integer > A with r0 + 2 beta A^(r0^ell) <= B^(r0^ell);
  // re-verified (and bumped if needed) at every chain extension
  {
    if (!r0.fits_ulong_p()) throw BitCapExceeded("derive_params: r0 out of range");
    ZZ r0_ell = pow_zz(r0, static_cast<unsigned long>(inst.ell));
    ZZ a_pow_bits = r0_ell * static_cast<unsigned long>(bit_length(params.growth_bound_a));
    if (a_pow_bits > static_cast<unsigned long>(opts.bit_cap) || !r0_ell.fits_ulong_p())
      throw BitCapExceeded("derive_params: A^(r0^ell) exceeds the bit cap");
    ZZ x = r0 + 2 * params.beta * pow_zz(params.growth_bound_a, r0_ell.get_ui());
    ZZ b = root_floor(x, r0_ell.get_ui());
    while (pow_zz(b, r0_ell.get_ui()) < x) ++b;
    if (b <= params.growth_bound_a) b = params.growth_bound_a + 1;
    params.chain_bound_b = b;
  }
  params.slog_base_c = 0;  // fixed once r_1 exists
  return params;
}

SigmaForm build_sigma_form(const NormalizedInstance& inst, const WitnessParams& params) {
  SigmaForm form;
  form.primes = params.primes;
  form.min_index = params.n_pset;
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    SigmaTerm term;
    term.coeff = inst.terms[i].coeff;
    term.prime_exps = delta_polys_for(params, i);
    form.terms.push_back(std::move(term));
  }
  return form;
}

WitnessCertificate make_certificate(const NormalizedInstance& inst, const DeriveOptions& opts) {
  WitnessCertificate cert;
  cert.instance = inst;
  cert.params = derive_params(inst, opts);
  cert.sigma = build_sigma_form(inst, cert.params);
  return cert;
}

namespace {

ZZ beta_kappa_from(const WitnessParams& params, const std::map<ZZ, unsigned long>& known) {
  ZZ b = params.beta;
  for (const auto& [q, v] : known) {
    bool in_p = std::find(params.primes.begin(), params.primes.end(), q) != params.primes.end();
    if (in_p) continue;  // Q* excludes P
    b *= pow_zz(q, v) * (q - 1);
  }
  return b;
}

FactoredInteger prime_power_modulus(const ZZ& q, unsigned long a) {
  FactoredInteger m;
  m.factors[q] = a;
  return m;
}

// valuation of sigma_r at q, certified through a residue mod q^cap_exp;
// returns false when the residue is 0 (valuation >= cap_exp, not determined)
bool sigma_valuation(const SigmaForm& form, const ZZ& r, const ZZ& q, unsigned long cap_exp,
                     unsigned long& val_out) {
  ZZ res = eval_sigma_mod(form, r, prime_power_modulus(q, cap_exp));
  if (res == 0) return false;
  ZZ reduced;
  val_out = mpz_remove(reduced.get_mpz_t(), res.get_mpz_t(), q.get_mpz_t());
  return true;
}

// Re-verification of the chain bound r_next <= B^(r_prev^ell), bumping B
// up to the r_prev^ell-th root of r_next when needed. Once r_prev^ell is at
// least the bit length of r_next the bound holds outright (B >= 2).
void maybe_bump_b(WitnessParams& params, const ZZ& r_prev, const ZZ& r_next) {
  if (!r_prev.fits_ulong_p()) return;  // r_prev^ell dwarfs any bit length
  ZZ r_prev_ell = pow_zz(r_prev, static_cast<unsigned long>(params.ell));
  if (r_prev_ell >= static_cast<unsigned long>(bit_length(r_next))) return;
  unsigned long e = r_prev_ell.get_ui();
  ZZ b = root_floor(r_next, e);
  while (pow_zz(b, e) < r_next) ++b;
  if (b <= params.growth_bound_a) b = params.growth_bound_a + 1;
  if (b > params.chain_bound_b) params.chain_bound_b = b;
}

}  // namespace

void extend_chain(WitnessCertificate& cert, const ExtendOptions& opts) {
  const WitnessParams& params = cert.params;
  if (cert.chain.empty()) {
    ChainLink link;
    link.kappa = 0;
    link.r = 2 * params.n0;
    ZZ sigma_r0 = eval_sigma_exact(cert.sigma, link.r, opts.bit_cap);
    PartialFactorization pf = factor(sigma_r0, opts.factor);
    if (!pf.complete())
      throw FactorizationIncomplete("extend_chain: sigma(r_0) did not factor within budget");
    link.known_primes = pf.factors;
    link.partial = false;
    link.beta_kappa = beta_kappa_from(params, link.known_primes);
    cert.chain.push_back(std::move(link));
    return;
  }

  const ChainLink& prev = cert.chain.back();
  if (prev.partial && !opts.allow_partial)
    throw FactorizationIncomplete("extend_chain: refusing to extend a partial chain");

  ChainLink link;
  link.kappa = prev.kappa + 1;
  link.r = 2 * prev.beta_kappa + prev.r;
  link.partial = true;  // completeness of Q_{r_kappa} is not certifiable here

  // carry non-P primes with their valuations (lemma 4 transfers: the
  // congruence built into beta_kappa pins the valuation exactly)
  for (const auto& [q, v] : prev.known_primes) {
    bool in_p = std::find(params.primes.begin(), params.primes.end(), q) != params.primes.end();
    if (!in_p) link.known_primes[q] = v;
  }
  // P primes: valuations recomputed from residues mod q^alpha (lemma 3
  // bounds them below alpha)
  if (!params.alpha.fits_ulong_p())
    throw BitCapExceeded("extend_chain: alpha too large for residue certification");
  unsigned long alpha_ul = params.alpha.get_ui();
  for (const auto& q : params.primes) {
    unsigned long v = 0;
    if (!sigma_valuation(cert.sigma, link.r, q, alpha_ul, v))
      throw FailedCheck("extend_chain: sigma(r_" + std::to_string(link.kappa) +
                        ") vanished mod " + to_string(q) + "^alpha (lemma 3 violated)");
    if (v > 0) link.known_primes[q] = v;
  }
  // budgeted discovery of small new primes
  for (std::uint32_t qi : small_primes()) {
    ZZ q(qi);
    if (q > opts.discovery_bound) break;
    if (link.known_primes.count(q)) continue;
    if (std::find(params.primes.begin(), params.primes.end(), q) != params.primes.end()) continue;
    if (eval_sigma_mod(cert.sigma, link.r, prime_power_modulus(q, 1)) != 0) continue;
    unsigned long v = 0;
    for (unsigned long a = 2; a <= 128; ++a) {
      if (sigma_valuation(cert.sigma, link.r, q, a, v)) break;
      v = 0;
    }
    link.known_primes[q] = v > 0 ? v : 1;
  }
  link.beta_kappa = beta_kappa_from(params, link.known_primes);
  maybe_bump_b(cert.params, prev.r, link.r);
  cert.chain.push_back(std::move(link));

  // C = max(B^ell * ell, r_1^ell + 1) once r_1 exists
  if (cert.chain.size() == 2) {
    ZZ b_pow = pow_zz(cert.params.chain_bound_b, static_cast<unsigned long>(params.ell));
    ZZ c1 = b_pow * params.ell;
    ZZ c2 = pow_zz(cert.chain[1].r, static_cast<unsigned long>(params.ell)) + 1;
    cert.params.slog_base_c = std::max(c1, c2);
  }
}

std::vector<CheckResult> verify_chain(const WitnessCertificate& cert, unsigned log_prec_bits) {
  if (cert.chain.size() < 2)
    throw std::invalid_argument("verify_chain: need a chain of length >= 2");
  const WitnessParams& params = cert.params;
  const SigmaForm& form = cert.sigma;
  std::vector<CheckResult> out;
  const std::size_t kk = cert.instance.terms.size();

  bool alpha_ok = params.alpha.fits_ulong_p() && params.alpha >= 2;
  unsigned long alpha_ul = alpha_ok ? params.alpha.get_ui() : 0;

  for (std::size_t idx = 0; idx + 1 < cert.chain.size(); ++idx) {
    const ChainLink& cur = cert.chain[idx];
    const ChainLink& nxt = cert.chain[idx + 1];
    unsigned link_no = cur.kappa;

    // (a) exponent congruences mod q^(alpha-1)(q-1), q in P
    {
      CheckResult c{"congP", link_no, true, "", ""};
      std::vector<std::string> moduli;
      if (!alpha_ok) {
        c.pass = false;
        c.detail = "alpha not materializable";
      } else {
        for (const auto& q : params.primes) {
          ZZ m = pow_zz(q, alpha_ul - 1) * (q - 1);
          moduli.push_back(to_string(q) + "^" + to_string(ZZ(params.alpha - 1)) + "*(" +
                           to_string(q) + "-1)");
          for (std::size_t p = 0; p < params.primes.size() && c.pass; ++p) {
            for (std::size_t i = 0; i < kk; ++i) {
              ExponentPolynomial d = params.e_polys[p][i] - params.e_polys[p][params.i_min[p]];
              if (d.eval_mod(cur.r, m) != d.eval_mod(nxt.r, m)) {
                c.pass = false;
                c.detail = "delta e for p=" + to_string(params.primes[p]) + ", term " +
                           std::to_string(i) + " differs mod " + to_string(m);
                break;
              }
            }
          }
        }
      }
      c.modulus = join_moduli(moduli);
      out.push_back(std::move(c));
    }

    // (a') exponent congruences mod q^v(q-1), q in the link's known non-P set
    {
      CheckResult c{"congQ", link_no, true, "", ""};
      std::vector<std::string> moduli;
      for (const auto& [q, v] : cur.known_primes) {
        if (std::find(params.primes.begin(), params.primes.end(), q) != params.primes.end())
          continue;
        ZZ m = pow_zz(q, v) * (q - 1);
        moduli.push_back(to_string(q) + "^" + std::to_string(v) + "*(" + to_string(q) + "-1)");
        for (std::size_t p = 0; p < params.primes.size() && c.pass; ++p) {
          for (std::size_t i = 0; i < kk; ++i) {
            ExponentPolynomial d = params.e_polys[p][i] - params.e_polys[p][params.i_min[p]];
            if (d.eval_mod(cur.r, m) != d.eval_mod(nxt.r, m)) {
              c.pass = false;
              c.detail = "delta e for p=" + to_string(params.primes[p]) + ", term " +
                         std::to_string(i) + " differs mod " + to_string(m);
              break;
            }
          }
        }
      }
      c.modulus = join_moduli(moduli);
      out.push_back(std::move(c));
    }

    // (b) lemma 2: every known prime of sigma_{r_kappa} divides both links
    {
      CheckResult c{"lemma2", link_no, true, "", ""};
      std::vector<std::string> moduli;
      for (const auto& [q, v] : cur.known_primes) {
        moduli.push_back(to_string(q));
        if (eval_sigma_mod(form, cur.r, prime_power_modulus(q, 1)) != 0 ||
            eval_sigma_mod(form, nxt.r, prime_power_modulus(q, 1)) != 0) {
          c.pass = false;
          c.detail = "sigma not divisible by " + to_string(q);
          break;
        }
      }
      c.modulus = join_moduli(moduli);
      out.push_back(std::move(c));
    }

    // (d) lemma 4: valuations of non-P known primes agree across the pair
    {
      CheckResult c{"lemma4", link_no, true, "", ""};
      std::vector<std::string> moduli;
      for (const auto& [q, v] : cur.known_primes) {
        if (std::find(params.primes.begin(), params.primes.end(), q) != params.primes.end())
          continue;
        FactoredInteger m = prime_power_modulus(q, v + 1);
        moduli.push_back(to_string(q) + "^" + std::to_string(v + 1));
        ZZ res_cur = eval_sigma_mod(form, cur.r, m);
        ZZ res_nxt = eval_sigma_mod(form, nxt.r, m);
        auto val_of = [&](const ZZ& res) -> long {
          if (res == 0) return -1;
          ZZ reduced;
          return static_cast<long>(
              mpz_remove(reduced.get_mpz_t(), res.get_mpz_t(), q.get_mpz_t()));
        };
        if (res_cur != res_nxt || val_of(res_cur) != static_cast<long>(v)) {
          c.pass = false;
          c.detail = "residues mod " + to_string(q) + "^" + std::to_string(v + 1) +
                     " disagree or valuation is not " + std::to_string(v);
          break;
        }
      }
      c.modulus = join_moduli(moduli);
      out.push_back(std::move(c));
    }

    // (e) growth: |sigma| increases strictly, via interval logs of the
    // dominant term (valid for even r >= 2 n0, which is checked here too)
    {
      CheckResult c{"growth", link_no, true, "", ""};
      if (mpz_odd_p(cur.r.get_mpz_t()) || mpz_odd_p(nxt.r.get_mpz_t()) || nxt.r <= cur.r ||
          cur.r < 2 * params.n0) {
        c.pass = false;
        c.detail = "chain indices not even/increasing/at least 2 n0";
      } else {
        auto ln_sigma = [&](const ZZ& r) {
          QInterval ln_dom = log_bounds(abs(QQ(params.coeffs[kk - 1])), log_prec_bits);
          for (std::size_t p = 0; p < params.primes.size(); ++p) {
            ExponentPolynomial d =
                params.e_polys[p][kk - 1] - params.e_polys[p][params.i_min[p]];
            ZZ e = d.eval(r);
            ln_dom += log_bounds(QQ(params.primes[p]), log_prec_bits).scaled(QQ(e));
          }
          QInterval ln2 = log2_bounds(log_prec_bits);
          return QInterval(ln_dom.lo - ln2.hi, ln_dom.hi + ln2.hi);
        };
        QInterval a = ln_sigma(cur.r);
        QInterval b = ln_sigma(nxt.r);
        if (!b.certainly_gt(a)) {
          c.pass = false;
          c.detail = "interval log bounds do not separate |sigma| growth";
        }
      }
      out.push_back(std::move(c));
    }
  }

  // membership of the last link's own primes (earlier links were covered
  // pairwise above)
  {
    const ChainLink& last = cert.chain.back();
    CheckResult c{"lemma2", last.kappa, true, "", ""};
    std::vector<std::string> moduli;
    for (const auto& [q, v] : last.known_primes) {
      moduli.push_back(to_string(q));
      if (eval_sigma_mod(form, last.r, prime_power_modulus(q, 1)) != 0) {
        c.pass = false;
        c.detail = "sigma not divisible by " + to_string(q);
        break;
      }
    }
    c.modulus = join_moduli(moduli);
    out.push_back(std::move(c));
  }

  // (c) lemma 3 per link: residue mod q^alpha is nonzero for q in P
  for (const ChainLink& link : cert.chain) {
    CheckResult c{"lemma3", link.kappa, true, "", ""};
    std::vector<std::string> moduli;
    if (!alpha_ok) {
      c.pass = false;
      c.detail = "alpha not materializable";
    } else {
      for (const auto& q : params.primes) {
        moduli.push_back(to_string(q) + "^" + to_string(params.alpha));
        ZZ res = eval_sigma_mod(form, link.r, prime_power_modulus(q, alpha_ul));
        if (res == 0) {
          c.pass = false;
          c.detail = "sigma divisible by " + to_string(q) + "^alpha";
          break;
        }
      }
    }
    c.modulus = join_moduli(moduli);
    out.push_back(std::move(c));
  }

  // (f) conclusion: slog_C(r_kappa) < kappa for kappa >= 1
  for (const ChainLink& link : cert.chain) {
    if (link.kappa == 0) continue;
    CheckResult c{"slog", link.kappa, true, to_string(params.slog_base_c), ""};
    if (params.slog_base_c < 2) {
      c.pass = false;
      c.detail = "C not derived";
    } else {
      unsigned s = slog(QQ(params.slog_base_c), link.r);
      if (s >= link.kappa) {
        c.pass = false;
        c.detail = "slog_C(r) = " + std::to_string(s) + " not below " +
                   std::to_string(link.kappa);
      }
    }
    out.push_back(std::move(c));
  }

  // (g) lemma 1: some delta polynomial of the top term is unbounded
  {
    CheckResult c{"lemma1", 0, false, "", ""};
    for (std::size_t p = 0; p < params.primes.size(); ++p) {
      ExponentPolynomial d = params.e_polys[p][kk - 1] - params.e_polys[p][params.i_min[p]];
      int deg = d.degree();
      if (deg >= 1 && d.coeff[static_cast<std::size_t>(deg)] > 0) {
        c.pass = true;
        c.detail = "delta e_p^(k) grows for p = " + to_string(params.primes[p]);
        break;
      }
    }
    if (!c.pass) c.detail = "no growing delta polynomial in the top term";
    out.push_back(std::move(c));
  }

  return out;
}

std::optional<std::string> params_inconsistency(const WitnessCertificate& cert,
                                                const DeriveOptions& opts) {
  WitnessParams derived;
  try {
    derived = derive_params(cert.instance, opts);
  } catch (const std::exception& e) {
    return std::string("re-derivation failed: ") + e.what();
  }
  auto mismatch = [](const std::string& what) { return "params mismatch: " + what; };
  if (derived.ell != cert.params.ell) return mismatch("ell");
  if (derived.coeffs != cert.params.coeffs) return mismatch("coeffs");
  if (derived.primes != cert.params.primes) return mismatch("P");
  if (derived.i_min != cert.params.i_min) return mismatch("iMin");
  if (cert.params.e_polys.size() != derived.e_polys.size()) return mismatch("ePoly shape");
  for (std::size_t p = 0; p < derived.primes.size(); ++p) {
    if (cert.params.e_polys[p].size() != derived.e_polys[p].size()) return mismatch("ePoly shape");
    for (std::size_t i = 0; i < derived.coeffs.size(); ++i)
      if (!(derived.e_polys[p][i] == cert.params.e_polys[p][i])) return mismatch("ePoly");
  }
  if (derived.n_pset != cert.params.n_pset) return mismatch("nP");
  if (derived.n_subsums != cert.params.n_subsums) return mismatch("NSubsums");
  if (derived.growth_bound_a != cert.params.growth_bound_a) return mismatch("A");
  if (derived.n0 != cert.params.n0) return mismatch("n0");
  if (derived.lambda != cert.params.lambda) return mismatch("lambda");
  if (derived.alpha != cert.params.alpha) return mismatch("alpha");
  if (derived.beta != cert.params.beta) return mismatch("beta");

  // replay the chain recurrences
  SigmaForm form = build_sigma_form(cert.instance, derived);
  for (std::size_t idx = 0; idx < cert.chain.size(); ++idx) {
    const ChainLink& link = cert.chain[idx];
    if (link.kappa != idx) return std::string("chain: kappa out of order");
    if (link.partial != (idx > 0)) return std::string("chain: partial flag wrong");
    for (const auto& [q, v] : link.known_primes) {
      if (!is_prime(q)) return "chain: known prime " + to_string(q) + " is composite";
      if (v == 0) return "chain: zero valuation recorded for " + to_string(q);
    }
    if (idx == 0) {
      if (link.r != 2 * derived.n0) return std::string("chain: r_0 != 2 n0");
      ZZ sigma_r0 = eval_sigma_exact(form, link.r, opts.bit_cap);
      ZZ recon = 1;
      for (const auto& [q, v] : link.known_primes) recon *= pow_zz(q, v);
      if (recon != abs(sigma_r0))
        return std::string("chain: link 0 factorization does not reconstruct sigma(r_0)");
    } else {
      const ChainLink& prev = cert.chain[idx - 1];
      if (link.r != 2 * prev.beta_kappa + prev.r)
        return "chain: r_" + std::to_string(idx) + " != 2 beta + r";
      maybe_bump_b(derived, prev.r, link.r);
    }
    if (link.beta_kappa != beta_kappa_from(derived, link.known_primes))
      return "chain: beta_kappa of link " + std::to_string(idx) + " wrong";
  }
  if (derived.chain_bound_b != cert.params.chain_bound_b) return mismatch("B");
  if (cert.chain.size() >= 2) {
    ZZ b_pow = pow_zz(derived.chain_bound_b, static_cast<unsigned long>(derived.ell));
    ZZ expect_c = std::max(
        ZZ(b_pow * derived.ell),
        ZZ(pow_zz(cert.chain[1].r, static_cast<unsigned long>(derived.ell)) + 1));
    if (cert.params.slog_base_c != expect_c) return mismatch("C");
  }
  return std::nullopt;
}

std::vector<OmegaLink> omega_lower_bound(const WitnessCertificate& cert) {
  std::vector<OmegaLink> out;
  bool base_complete = !cert.chain.empty() && !cert.chain[0].partial &&
                       !cert.chain[0].known_primes.empty();
  for (const ChainLink& link : cert.chain) {
    OmegaLink o;
    o.kappa = link.kappa;
    o.empirical = link.known_primes.size();
    if (link.kappa == 0) {
      o.certified = 0;
    } else if (!base_complete) {
      o.certified = 0;
    } else {
      // containment of the nonempty Q_{r_0} gives 1; every complete link
      // past it adds a certified strict inclusion
      unsigned certified = 1;
      for (unsigned j = 1; j < link.kappa; ++j)
        if (!cert.chain[j].partial) ++certified;
      o.certified = certified;
    }
    out.push_back(o);
  }
  return out;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson zz_array(const std::vector<ZZ>& v) {
  ojson out = ojson::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<ZZ> zz_array_from(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<ZZ> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(std::string(what) + ": expected decimal strings");
    out.push_back(zz_from_string(e.get<std::string>()));
  }
  return out;
}

ZZ zz_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw ParseError(std::string("certificate: missing field ") + key);
  return zz_from_string(j[key].get<std::string>());
}

}  // namespace

std::string certificate_to_json(const WitnessCertificate& cert) {
  ojson doc;
  doc["format"] = "spsum-certificate";
  doc["version"] = 1;

  ojson inst;
  inst["ell"] = cert.instance.ell;
  ojson coeffs = ojson::array(), bases = ojson::array();
  for (const auto& t : cert.instance.terms) {
    coeffs.push_back(to_string(t.coeff));
    bases.push_back(zz_array(t.bases));
  }
  inst["coeffs"] = std::move(coeffs);
  inst["bases"] = std::move(bases);
  inst["alpha"] = zz_array(cert.instance.scale_denominators);
  inst["delta"] = zz_array(cert.instance.removed_gcds);
  inst["omegaSlack"] = cert.instance.omega_slack;
  doc["instance"] = std::move(inst);

  ojson params;
  params["ell"] = cert.params.ell;
  params["P"] = zz_array(cert.params.primes);
  ojson epoly = ojson::array();
  for (std::size_t p = 0; p < cert.params.primes.size(); ++p) {
    ojson entry;
    entry["prime"] = to_string(cert.params.primes[p]);
    ojson per_term = ojson::array();
    for (const auto& poly : cert.params.e_polys[p]) per_term.push_back(zz_array(poly.coeff));
    entry["perTerm"] = std::move(per_term);
    epoly.push_back(std::move(entry));
  }
  params["ePoly"] = std::move(epoly);
  ojson imin = ojson::array();
  for (auto i : cert.params.i_min) imin.push_back(i);
  params["iMin"] = std::move(imin);
  params["nP"] = to_string(cert.params.n_pset);
  params["NSubsums"] = to_string(cert.params.n_subsums);
  params["A"] = to_string(cert.params.growth_bound_a);
  params["n0"] = to_string(cert.params.n0);
  params["lambda"] = to_string(cert.params.lambda);
  params["alpha"] = to_string(cert.params.alpha);
  params["beta"] = to_string(cert.params.beta);
  params["B"] = to_string(cert.params.chain_bound_b);
  params["C"] = to_string(cert.params.slog_base_c);
  doc["params"] = std::move(params);

  ojson links = ojson::array();
  for (const auto& link : cert.chain) {
    ojson l;
    l["kappa"] = link.kappa;
    l["r"] = to_string(link.r);
    ojson known = ojson::array();
    for (const auto& [q, v] : link.known_primes) {
      ojson kp;
      kp["q"] = to_string(q);
      kp["val"] = v;
      known.push_back(std::move(kp));
    }
    l["knownPrimes"] = std::move(known);
    // primes accepted by the pseudoprime test only (above the deterministic
    // range) are recorded as probable
    ojson probable = ojson::array();
    for (const auto& [q, v] : link.known_primes)
      if (classify_prime(q) == Primality::probable_prime) probable.push_back(to_string(q));
    l["probablePrimes"] = std::move(probable);
    l["betaKappa"] = to_string(link.beta_kappa);
    l["partial"] = link.partial;
    links.push_back(std::move(l));
  }
  doc["links"] = std::move(links);

  ojson checks = ojson::array();
  for (const auto& c : cert.checks) {
    ojson e;
    e["name"] = c.name;
    e["link"] = c.link;
    e["pass"] = c.pass;
    e["modulus"] = c.modulus;
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2);
}

WitnessCertificate certificate_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != std::string("spsum-certificate"))
    throw ParseError("certificate: wrong or missing format tag");
  WitnessCertificate cert;

  const auto& inst = doc.at("instance");
  cert.instance.ell = inst.at("ell").get<int>();
  if (cert.instance.ell < 1) throw ParseError("certificate: ell must be positive");
  std::vector<ZZ> coeffs = zz_array_from(inst.at("coeffs"), "coeffs");
  const auto& bases = inst.at("bases");
  if (!bases.is_array() || bases.size() != coeffs.size())
    throw ParseError("certificate: coeffs/bases mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    NormalizedTerm t;
    t.coeff = coeffs[i];
    t.bases = zz_array_from(bases[i], "bases");
    if (t.bases.size() != static_cast<std::size_t>(cert.instance.ell))
      throw ParseError("certificate: base tuple length mismatch");
    cert.instance.terms.push_back(std::move(t));
  }
  cert.instance.scale_denominators = zz_array_from(inst.at("alpha"), "alpha");
  cert.instance.removed_gcds = zz_array_from(inst.at("delta"), "delta");
  cert.instance.omega_slack = inst.at("omegaSlack").get<unsigned long>();

  const auto& params = doc.at("params");
  cert.params.ell = params.at("ell").get<int>();
  cert.params.coeffs = coeffs;
  cert.params.primes = zz_array_from(params.at("P"), "P");
  for (const auto& entry : params.at("ePoly")) {
    std::vector<ExponentPolynomial> row;
    for (const auto& c : entry.at("perTerm")) row.emplace_back(zz_array_from(c, "ePoly"));
    cert.params.e_polys.push_back(std::move(row));
  }
  for (const auto& i : params.at("iMin")) cert.params.i_min.push_back(i.get<std::size_t>());
  if (cert.params.e_polys.size() != cert.params.primes.size() ||
      cert.params.i_min.size() != cert.params.primes.size())
    throw ParseError("certificate: ePoly/iMin shape mismatch");
  for (const auto& row : cert.params.e_polys) {
    if (row.size() != cert.instance.terms.size())
      throw ParseError("certificate: ePoly row length mismatch");
  }
  for (auto i : cert.params.i_min)
    if (i >= cert.instance.terms.size()) throw ParseError("certificate: iMin out of range");
  cert.params.n_pset = zz_field(params, "nP");
  cert.params.n_subsums = zz_field(params, "NSubsums");
  cert.params.growth_bound_a = zz_field(params, "A");
  cert.params.n0 = zz_field(params, "n0");
  cert.params.lambda = zz_field(params, "lambda");
  cert.params.alpha = zz_field(params, "alpha");
  cert.params.beta = zz_field(params, "beta");
  cert.params.chain_bound_b = zz_field(params, "B");
  cert.params.slog_base_c = zz_field(params, "C");

  for (const auto& l : doc.at("links")) {
    ChainLink link;
    link.kappa = l.at("kappa").get<unsigned>();
    link.r = zz_field(l, "r");
    for (const auto& kp : l.at("knownPrimes"))
      link.known_primes[zz_field(kp, "q")] = kp.at("val").get<unsigned long>();
    link.beta_kappa = zz_field(l, "betaKappa");
    link.partial = l.at("partial").get<bool>();
    cert.chain.push_back(std::move(link));
  }

  if (doc.contains("checks")) {
    for (const auto& c : doc["checks"]) {
      CheckResult r;
      r.name = c.at("name").get<std::string>();
      r.link = c.at("link").get<unsigned>();
      r.pass = c.at("pass").get<bool>();
      r.modulus = c.value("modulus", "");
      r.detail = c.value("detail", "");
      cert.checks.push_back(std::move(r));
    }
  }
  cert.sigma = build_sigma_form(cert.instance, cert.params);
  return cert;
}

}  // namespace spsum
