#include "spsum/classify.hpp"

#include <json.hpp>

#include <stdexcept>

namespace spsum {

ParityForm classify_even(const SuperpowerSum& s) {
  std::vector<MergedTerm> merged = merge_even(s);
  ParityForm out;
  if (merged.empty()) {
    out.kind = ParityKind::identically_zero;
    return out;
  }
  if (merged.size() == 1) {
    out.kind = ParityKind::degenerate;
    out.coefficients.push_back(merged[0].coeff);
    for (const auto& b : merged[0].bases) out.coefficients.push_back(b);
    return out;
  }
  out.kind = ParityKind::non_degenerate;
  out.evidence.push_back(merged[merged.size() - 2].bases);
  out.evidence.push_back(merged[merged.size() - 1].bases);
  return out;
}

namespace {

// a'_j of the transformed even form t_{2n} = prod a'_j^((2n)^j) back to the
// theorem's odd shape s_{2n-1} = prod b_h^((2n-1)^h): with m = w+1,
// prod_j a'_j^(m^j) = prod_h (prod_{j>=h} a'_j^binom(j,h))^(w^h).
std::vector<QQ> map_back_odd(const std::vector<QQ>& a) {
  std::vector<QQ> b(a.size(), QQ(1));
  for (std::size_t h = 0; h < a.size(); ++h) {
    for (std::size_t j = h; j < a.size(); ++j) {
      ZZ binom;
      mpz_bin_uiui(binom.get_mpz_t(), j, h);
      b[h] *= pow_qq(a[j], binom.get_si());
    }
  }
  return b;
}

}  // namespace

ClassificationResult classify(const SuperpowerSum& s) {
  ClassificationResult out;
  out.even = classify_even(s);
  out.odd = classify_even(odd_transform(s));
  if (out.odd.kind == ParityKind::degenerate)
    out.odd.coefficients = map_back_odd(out.odd.coefficients);
  bool both = out.even.kind == ParityKind::degenerate && out.odd.kind == ParityKind::degenerate;
  out.verdict = both ? Verdict::omega_bounded : Verdict::omega_unbounded;
  return out;
}

CorollaryResult corollary_classify(const std::vector<QQ>& c, const std::vector<QQ>& x) {
  if (c.empty() || c.size() != x.size())
    throw std::invalid_argument("corollary_classify: need matching nonempty c and x");
  for (const auto& ci : c)
    if (ci <= 0) throw std::invalid_argument("corollary_classify: coefficients must be positive");
  for (const auto& xi : x)
    if (xi == 0) throw std::invalid_argument("corollary_classify: bases must be nonzero");

  QQ mag = abs(x[0]);
  bool all_equal = true;
  for (const auto& xi : x)
    if (abs(xi) != mag) all_equal = false;
  if (!all_equal) return {CorollaryVerdict::unbounded, "base magnitudes differ"};

  QQ signed_sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) signed_sum += sgn(x[i]) < 0 ? -c[i] : c[i];
  if (signed_sum == 0)
    return {CorollaryVerdict::unbounded,
            "odd-index subsequence vanishes identically (omega(0) is infinite)"};
  return {CorollaryVerdict::bounded, "equal base magnitudes with nonzero signed coefficient sum"};
}

CrossValidation cross_validate_degenerate(const SuperpowerSum& s, bool even_parity,
                                          const std::vector<QQ>& coefficients, const ZZ& n_check,
                                          std::uint64_t bit_cap) {
  CrossValidation out;
  for (ZZ m = even_parity ? 2 : 1; m <= n_check; m += 2) {
    QQ lhs = eval(s, m, bit_cap);
    QQ rhs = 1;
    ZZ e = 1;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      if (j > 0) e *= m;
      if (!e.fits_slong_p()) throw BitCapExceeded("cross_validate: exponent too large");
      rhs *= pow_qq(coefficients[j], e.get_si());
    }
    if (lhs != rhs) {
      out.ok = false;
      out.counterexample = m;
      return out;
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json parity_to_json(const ParityForm& p) {
  nlohmann::ordered_json j;
  switch (p.kind) {
    case ParityKind::degenerate: {
      j["kind"] = "Degenerate";
      auto arr = nlohmann::ordered_json::array();
      for (const auto& c : p.coefficients) arr.push_back(to_string(c));
      j["coefficients"] = std::move(arr);
      break;
    }
    case ParityKind::non_degenerate: {
      j["kind"] = "NonDegenerate";
      auto ev = nlohmann::ordered_json::array();
      for (const auto& tuple : p.evidence) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : tuple) arr.push_back(to_string(c));
        ev.push_back(std::move(arr));
      }
      j["evidence"] = std::move(ev);
      break;
    }
    case ParityKind::identically_zero:
      j["kind"] = "IdenticallyZero";
      break;
  }
  return j;
}

}  // namespace

std::string classification_to_json(const ClassificationResult& r) {
  nlohmann::ordered_json doc;
  doc["even"] = parity_to_json(r.even);
  doc["odd"] = parity_to_json(r.odd);
  doc["verdict"] = r.verdict == Verdict::omega_bounded ? "OmegaBounded" : "OmegaUnbounded";
  return doc.dump(2);
}

}  // namespace spsum
