#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "spsum/integer.hpp"
#include "spsum/poly.hpp"

namespace spsum {

inline constexpr std::uint64_t kDefaultBitCap = 1u << 26;

// One term x_{i,0} * prod_j x_{i,j}^(n^j); bases[j-1] holds x_{i,j}.
struct Term {
  QQ coeff;
  std::vector<QQ> bases;
};

// s_n = sum_i coeff_i * prod_j bases_{i,j}^(n^j), the raw instance as read
// from an instance file. Zeros are allowed; normalization removes them.
struct SuperpowerSum {
  int ell = 1;
  std::vector<Term> terms;

  int k() const { return static_cast<int>(terms.size()); }
};

// Canonical even-index integer form: coefficients and bases integerized,
// bases positive, identical power tuples merged, columnwise gcds removed,
// terms sorted by the prec order.
struct NormalizedTerm {
  ZZ coeff;               // nonzero
  std::vector<ZZ> bases;  // all >= 1
};

struct NormalizedInstance {
  int ell = 1;
  std::vector<NormalizedTerm> terms;   // prec-sorted, tuples pairwise distinct
  std::vector<ZZ> scale_denominators;  // alpha_0..alpha_ell
  std::vector<ZZ> removed_gcds;        // delta_0..delta_ell
  unsigned long omega_slack = 0;       // omega(prod_j alpha_j)

  int k() const { return static_cast<int>(terms.size()); }
};

// General term of the type-II shape: per term, bases y_{i,j} with integer
// coefficient exponent polynomials f_{i,j}(n).
struct Type2Term {
  std::vector<QQ> bases;
  std::vector<ExponentPolynomial> exponents;
};
struct Type2Spec {
  std::vector<Type2Term> terms;
};

// Exact value of s_n; throws BitCapExceeded when the result would be
// infeasibly large.
QQ eval(const SuperpowerSum& s, const ZZ& n, std::uint64_t bit_cap = kDefaultBitCap);

// Exact value of the normalized integer sequence u_n.
ZZ eval(const NormalizedInstance& s, const ZZ& n, std::uint64_t bit_cap = kDefaultBitCap);

// The paper's order on power tuples: compares |u_j| against |v_j| from the
// top exponent down. Throws on length mismatch.
std::strong_ordering prec_compare(const std::vector<QQ>& u, const std::vector<QQ>& v);
std::strong_ordering prec_compare(const std::vector<ZZ>& u, const std::vector<ZZ>& v);

// Normalization pipeline for even indices; nullopt means the even-index
// subsequence is identically zero.
std::optional<NormalizedInstance> normalize_even(const SuperpowerSum& s);

// Partial pipeline for the classifier: drop zero terms, fold signs into the
// coefficient (valid on even indices), merge equal tuples, prec-sort.
// Entries stay rational.
struct MergedTerm {
  QQ coeff;
  std::vector<QQ> bases;  // positive
};
std::vector<MergedTerm> merge_even(const SuperpowerSum& s);

// Binomial transform T with s_{2n-1} = t_{2n}: y_{i,j} = prod_{h>=j}
// x_{i,h}^((-1)^(h-j)·binom(h,j)). Terms containing a zero entry vanish for
// every n >= 1 and are dropped first.
SuperpowerSum odd_transform(const SuperpowerSum& s);

// Superpower form of a type-II instance: x_{i,h} = prod_j y_{i,j}^(c_{i,j,h}).
SuperpowerSum convert_type2(const Type2Spec& spec);

// Instance file format, shared by every CLI command:
//   { "ell": int, "terms": [ { "coeff": "p/q", "bases": ["p/q", ...] } ] }
SuperpowerSum instance_from_json(const std::string& text);
std::string instance_to_json(const SuperpowerSum& s);

}  // namespace spsum
