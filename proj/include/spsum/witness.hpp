#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spsum/factor.hpp"
#include "spsum/integer.hpp"
#include "spsum/poly.hpp"
#include "spsum/residue.hpp"
#include "spsum/sequence.hpp"

namespace spsum {

// Constants of the case-(i) construction. e_polys[p][i] is the exponent
// polynomial of prime primes[p] in term i (zero constant term; the
// coefficient x_{i,0} rides along whole in coeffs). slog_base_c stays 0
// until the chain reaches r_1, which its formula needs.
struct WitnessParams {
  int ell = 1;
  std::vector<ZZ> coeffs;                              // x_{i,0}
  std::vector<ZZ> primes;                              // P, ascending
  std::vector<std::vector<ExponentPolynomial>> e_polys;
  std::vector<std::size_t> i_min;                      // i_p per prime, 0-based
  ZZ n_pset;          // n_P: all delta polys strictly positive beyond it
  ZZ n_subsums;       // N: no nonempty subsum vanishes at n >= N
  ZZ growth_bound_a;  // A
  ZZ n0;
  ZZ lambda;
  ZZ alpha;
  ZZ beta;
  ZZ chain_bound_b;   // B
  ZZ slog_base_c;     // C, 0 until derived
};

struct DeriveOptions {
  int k_cap = 12;  // subset analyses are 2^k - 1; beyond this, SubsetBlowup
  FactorOptions factor;
  std::uint64_t bit_cap = kDefaultBitCap;
  unsigned log_prec_bits = 96;
};

// Chain link kappa: the even index r, the primes of sigma_r known so far
// with their valuations, and the beta_kappa that produced the next index.
// Link 0 is complete (sigma_{r_0} fully factored); links past the last
// factorable sigma carry partial = true.
struct ChainLink {
  unsigned kappa = 0;
  ZZ r;
  std::map<ZZ, unsigned long> known_primes;
  ZZ beta_kappa;
  bool partial = false;
};

struct CheckResult {
  std::string name;  // congP congQ lemma2 lemma3 lemma4 growth slog lemma1
  unsigned link = 0;
  bool pass = false;
  std::string modulus;
  std::string detail;
};

struct WitnessCertificate {
  NormalizedInstance instance;
  WitnessParams params;
  SigmaForm sigma;
  std::vector<ChainLink> chain;
  std::vector<CheckResult> checks;
};

// Computes every constant of the construction from a normalized instance.
// Requires at least two terms (otherwise DegenerateInstance).
WitnessParams derive_params(const NormalizedInstance& inst, const DeriveOptions& opts = {});

// sigma_n as coefficients with per-prime delta exponent polynomials;
// |s_{2n}| = pi_{2n} * |sigma_{2n}| with pi the extracted common part.
SigmaForm build_sigma_form(const NormalizedInstance& inst, const WitnessParams& params);

WitnessCertificate make_certificate(const NormalizedInstance& inst, const DeriveOptions& opts = {});

struct ExtendOptions {
  FactorOptions factor;
  std::uint64_t bit_cap = kDefaultBitCap;
  // new primes q <= this bound are searched for by residue tests on links
  // whose sigma cannot be factored
  ZZ discovery_bound = 1000;
  bool allow_partial = true;
};

// Appends one link: r_0 = 2 n_0 first, then r_{kappa+1} = 2 beta_kappa +
// r_kappa. Link 0 must factor completely; later links carry primes over per
// lemma-4 transfers plus budgeted discovery, and are flagged partial.
void extend_chain(WitnessCertificate& cert, const ExtendOptions& opts = {});

// Runs the named machine checks on every adjacent pair of links and the
// per-link conclusion checks; returns them all (also stored in the
// certificate by cmd_witness). Requires chain length >= 2.
std::vector<CheckResult> verify_chain(const WitnessCertificate& cert,
                                      unsigned log_prec_bits = 96);

// Certified lower bounds on omega(sigma_{r_kappa}): kappa while every
// preceding link is complete, stalling at the first partial link; empirical
// is the count of known primes.
struct OmegaLink {
  unsigned kappa = 0;
  unsigned certified = 0;
  unsigned long empirical = 0;
};
std::vector<OmegaLink> omega_lower_bound(const WitnessCertificate& cert);

// Certificate serialization; stable field order for diffing.
std::string certificate_to_json(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const std::string& text);

// Re-derives the formula-bound params from the embedded instance, replays
// the chain recurrences, and compares; catches tampering that the
// congruence checks alone would not. Returns the first inconsistency, or
// nullopt when everything matches.
std::optional<std::string> params_inconsistency(const WitnessCertificate& cert,
                                                const DeriveOptions& opts = {});

}  // namespace spsum
