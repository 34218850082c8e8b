#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spsum/integer.hpp"
#include "spsum/sequence.hpp"

namespace spsum {

enum class ParityKind { degenerate, non_degenerate, identically_zero };

// One parity's component of the main theorem dichotomy. For degenerate
// parities, coefficients holds the nonzero a_j (or b_j) of the product form;
// for non-degenerate ones, evidence holds the two prec-largest merged tuples.
struct ParityForm {
  ParityKind kind = ParityKind::non_degenerate;
  std::vector<QQ> coefficients;
  std::vector<std::vector<QQ>> evidence;
};

enum class Verdict { omega_bounded, omega_unbounded };

struct ClassificationResult {
  ParityForm even;
  ParityForm odd;
  Verdict verdict = Verdict::omega_unbounded;
};

// Even side: merge terms on even indices; zero survivors mean identically
// zero, one survivor is the degenerate product form, two or more are
// non-degenerate.
ParityForm classify_even(const SuperpowerSum& s);

// Both parities; the odd side classifies the transformed sequence and maps
// coefficients back into the (2n-1)-form of the theorem statement.
ClassificationResult classify(const SuperpowerSum& s);

enum class CorollaryVerdict { bounded, unbounded };
struct CorollaryResult {
  CorollaryVerdict verdict;
  std::string reason;
};

// The corollary's ell = 1 criterion: bounded iff all |x_i| are equal and the
// sign-weighted coefficient sum does not vanish.
CorollaryResult corollary_classify(const std::vector<QQ>& c, const std::vector<QQ>& x);

// Runtime guard for degenerate claims: checks s_m = prod_j a_j^(m^j) exactly
// at every index m <= n_check of the given parity (even = true checks even m).
struct CrossValidation {
  bool ok = true;
  ZZ counterexample;  // first failing index when !ok
};
CrossValidation cross_validate_degenerate(const SuperpowerSum& s, bool even_parity,
                                          const std::vector<QQ>& coefficients, const ZZ& n_check,
                                          std::uint64_t bit_cap = kDefaultBitCap);

std::string classification_to_json(const ClassificationResult& r);

}  // namespace spsum
