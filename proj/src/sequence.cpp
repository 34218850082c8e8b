#include "spsum/sequence.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

#include "spsum/factor.hpp"

namespace spsum {

namespace {

// exact x^e for potentially huge e, guarded by the bit cap; |x| = 1 and
// x = 0 short-circuit so padding entries never hit the cap
QQ checked_pow(const QQ& x, const ZZ& e, ZZ& bits_used, std::uint64_t bit_cap) {
  if (x == 0) return QQ(0);
  if (x == 1) return QQ(1);
  if (x == -1) return mpz_odd_p(e.get_mpz_t()) ? QQ(-1) : QQ(1);
  std::uint64_t base_bits = bit_length(x.get_num()) + bit_length(x.get_den());
  bits_used += e * static_cast<unsigned long>(base_bits);
  if (bits_used > static_cast<unsigned long>(bit_cap) || !e.fits_ulong_p())
    throw BitCapExceeded("eval: exponent " + to_string(e) + " exceeds the bit cap");
  return pow_qq(x, static_cast<long>(e.get_ui()));
}

}  // namespace

QQ eval(const SuperpowerSum& s, const ZZ& n, std::uint64_t bit_cap) {
  if (n < 1) throw std::invalid_argument("eval: n must be >= 1");
  QQ sum = 0;
  ZZ bits_used = 0;
  for (const auto& term : s.terms) {
    QQ prod = term.coeff;
    for (std::size_t j = 1; j <= term.bases.size() && prod != 0; ++j) {
      ZZ ej;
      mpz_pow_ui(ej.get_mpz_t(), n.get_mpz_t(), j);
      prod *= checked_pow(term.bases[j - 1], ej, bits_used, bit_cap);
    }
    sum += prod;
  }
  return sum;
}

ZZ eval(const NormalizedInstance& s, const ZZ& n, std::uint64_t bit_cap) {
  SuperpowerSum raw;
  raw.ell = s.ell;
  for (const auto& t : s.terms) {
    Term rt;
    rt.coeff = QQ(t.coeff);
    for (const auto& b : t.bases) rt.bases.emplace_back(b);
    raw.terms.push_back(std::move(rt));
  }
  QQ v = eval(raw, n, bit_cap);
  return v.get_num();  // integer by construction
}

namespace {

std::strong_ordering prec_impl(const std::vector<QQ>& u, const std::vector<QQ>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("prec_compare: length mismatch");
  for (std::size_t j = u.size(); j-- > 0;) {
    QQ a = abs(u[j]);
    QQ b = abs(v[j]);
    if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering prec_compare(const std::vector<QQ>& u, const std::vector<QQ>& v) {
  return prec_impl(u, v);
}

std::strong_ordering prec_compare(const std::vector<ZZ>& u, const std::vector<ZZ>& v) {
  std::vector<QQ> uq(u.begin(), u.end()), vq(v.begin(), v.end());
  return prec_impl(uq, vq);
}

std::vector<MergedTerm> merge_even(const SuperpowerSum& s) {
  std::vector<MergedTerm> kept;
  for (const auto& term : s.terms) {
    if (term.coeff == 0) continue;
    bool zero_base = false;
    MergedTerm m;
    m.coeff = term.coeff;
    for (const auto& b : term.bases) {
      if (b == 0) {
        zero_base = true;  // the whole term vanishes for every n >= 1
        break;
      }
      m.bases.push_back(abs(b));  // sign is irrelevant on even indices
    }
    if (zero_base) continue;
    kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(), [](const MergedTerm& a, const MergedTerm& b) {
    return prec_compare(a.bases, b.bases) == std::strong_ordering::less;
  });
  std::vector<MergedTerm> merged;
  for (auto& t : kept) {
    if (!merged.empty() &&
        prec_compare(merged.back().bases, t.bases) == std::strong_ordering::equal) {
      merged.back().coeff += t.coeff;
      if (merged.back().coeff == 0) merged.pop_back();
    } else {
      merged.push_back(std::move(t));
    }
  }
  return merged;
}

std::optional<NormalizedInstance> normalize_even(const SuperpowerSum& s) {
  std::vector<MergedTerm> merged = merge_even(s);
  if (merged.empty()) return std::nullopt;

  NormalizedInstance out;
  out.ell = s.ell;
  std::size_t cols = static_cast<std::size_t>(s.ell) + 1;
  out.scale_denominators.assign(cols, ZZ(1));
  out.removed_gcds.assign(cols, ZZ(1));

  // alpha_j: least common multiple of the column's denominators
  for (const auto& t : merged) {
    out.scale_denominators[0] = lcm_zz(out.scale_denominators[0], t.coeff.get_den());
    for (std::size_t j = 1; j < cols; ++j)
      out.scale_denominators[j] = lcm_zz(out.scale_denominators[j], t.bases[j - 1].get_den());
  }
  for (const auto& t : merged) {
    NormalizedTerm nt;
    QQ c = t.coeff * out.scale_denominators[0];
    nt.coeff = c.get_num();
    for (std::size_t j = 1; j < cols; ++j) {
      QQ b = t.bases[j - 1] * out.scale_denominators[j];
      nt.bases.push_back(b.get_num());
    }
    out.terms.push_back(std::move(nt));
  }

  // delta_j: columnwise gcd, divided out
  for (std::size_t j = 0; j < cols; ++j) {
    ZZ g = 0;
    for (const auto& t : out.terms) g = gcd_zz(g, j == 0 ? t.coeff : t.bases[j - 1]);
    out.removed_gcds[j] = g;
    for (auto& t : out.terms) {
      if (j == 0)
        t.coeff /= g;
      else
        t.bases[j - 1] /= g;
    }
  }

  ZZ scale_product = 1;
  for (const auto& a : out.scale_denominators) scale_product *= a;
  out.omega_slack = omega(scale_product).count;
  return out;
}

SuperpowerSum odd_transform(const SuperpowerSum& s) {
  SuperpowerSum out;
  out.ell = s.ell;
  std::size_t cols = static_cast<std::size_t>(s.ell) + 1;
  for (const auto& term : s.terms) {
    if (term.coeff == 0) continue;
    bool zero_base = false;
    for (const auto& b : term.bases)
      if (b == 0) zero_base = true;
    if (zero_base) continue;  // identically zero for n >= 1

    // x_0 = coeff, x_h = bases[h-1]; y_j = prod_{h>=j} x_h^((-1)^(h-j) binom(h,j))
    std::vector<QQ> x(cols);
    x[0] = term.coeff;
    for (std::size_t h = 1; h < cols; ++h) x[h] = term.bases[h - 1];
    std::vector<QQ> y(cols, QQ(1));
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t h = j; h < cols; ++h) {
        ZZ binom;
        mpz_bin_uiui(binom.get_mpz_t(), h, j);
        if (!binom.fits_slong_p()) throw BitCapExceeded("odd_transform: binomial too large");
        long e = binom.get_si();
        if ((h - j) % 2 == 1) e = -e;
        y[j] *= pow_qq(x[h], e);
      }
    }
    Term nt;
    nt.coeff = y[0];
    nt.bases.assign(y.begin() + 1, y.end());
    out.terms.push_back(std::move(nt));
  }
  return out;
}

SuperpowerSum convert_type2(const Type2Spec& spec) {
  int ell = 1;
  for (const auto& term : spec.terms) {
    if (term.bases.size() != term.exponents.size())
      throw std::invalid_argument("convert_type2: bases/exponents length mismatch");
    for (const auto& f : term.exponents) ell = std::max(ell, f.degree());
  }
  SuperpowerSum out;
  out.ell = ell;
  for (const auto& term : spec.terms) {
    Term nt;
    nt.coeff = 1;
    nt.bases.assign(static_cast<std::size_t>(ell), QQ(1));
    for (std::size_t h = 0; h <= static_cast<std::size_t>(ell); ++h) {
      QQ xh = 1;
      for (std::size_t j = 0; j < term.bases.size(); ++j) {
        if (term.bases[j] == 0) throw std::invalid_argument("convert_type2: zero base");
        const auto& c = term.exponents[j].coeff;
        if (h >= c.size() || c[h] == 0) continue;
        if (!c[h].fits_slong_p()) throw BitCapExceeded("convert_type2: exponent too large");
        xh *= pow_qq(term.bases[j], c[h].get_si());
      }
      if (h == 0)
        nt.coeff = xh;
      else
        nt.bases[h - 1] = xh;
    }
    out.terms.push_back(std::move(nt));
  }
  return out;
}

namespace {

QQ rational_from_node(const nlohmann::json& v, const char* what) {
  try {
    if (v.is_string()) return qq_from_string(v.get<std::string>());
    if (v.is_number_integer()) return QQ(static_cast<long>(v.get<std::int64_t>()));
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
  throw ParseError(std::string(what) + ": expected a rational string");
}

}  // namespace

SuperpowerSum instance_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("ell") || !doc.contains("terms"))
    throw ParseError("instance: need an object with 'ell' and 'terms'");
  if (!doc["ell"].is_number_integer() || doc["ell"].get<int>() < 1)
    throw ParseError("instance: 'ell' must be a positive integer");
  SuperpowerSum s;
  s.ell = doc["ell"].get<int>();
  if (!doc["terms"].is_array() || doc["terms"].empty())
    throw ParseError("instance: 'terms' must be a nonempty array");
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("bases"))
      throw ParseError("instance: each term needs 'coeff' and 'bases'");
    Term term;
    term.coeff = rational_from_node(t["coeff"], "coeff");
    if (!t["bases"].is_array() || t["bases"].size() != static_cast<std::size_t>(s.ell))
      throw ParseError("instance: 'bases' must list exactly ell entries");
    for (const auto& b : t["bases"]) term.bases.push_back(rational_from_node(b, "base"));
    s.terms.push_back(std::move(term));
  }
  return s;
}

std::string instance_to_json(const SuperpowerSum& s) {
  nlohmann::ordered_json doc;
  doc["ell"] = s.ell;
  doc["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : s.terms) {
    nlohmann::ordered_json term;
    term["coeff"] = to_string(t.coeff);
    term["bases"] = nlohmann::ordered_json::array();
    for (const auto& b : t.bases) term["bases"].push_back(to_string(b));
    doc["terms"].push_back(std::move(term));
  }
  return doc.dump(2);
}

}  // namespace spsum
