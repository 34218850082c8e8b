#include "spsum/poly.hpp"

#include <stdexcept>

namespace spsum {

ZZ ExponentPolynomial::eval(const ZZ& n) const {
  ZZ acc = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * n + *it;
  return acc;
}

ZZ ExponentPolynomial::eval_mod(const ZZ& n, const ZZ& m) const {
  if (m <= 0) throw std::invalid_argument("eval_mod: modulus must be positive");
  ZZ nr = n % m;
  ZZ acc = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = (acc * nr + *it) % m;
  if (acc < 0) acc += m;
  return acc;
}

ExponentPolynomial ExponentPolynomial::operator-(const ExponentPolynomial& other) const {
  std::vector<ZZ> out(std::max(coeff.size(), other.coeff.size()), ZZ(0));
  for (std::size_t j = 0; j < coeff.size(); ++j) out[j] += coeff[j];
  for (std::size_t j = 0; j < other.coeff.size(); ++j) out[j] -= other.coeff[j];
  return ExponentPolynomial(std::move(out));
}

bool ExponentPolynomial::operator==(const ExponentPolynomial& other) const {
  std::size_t top = std::max(coeff.size(), other.coeff.size());
  for (std::size_t j = 0; j < top; ++j) {
    const ZZ& a = j < coeff.size() ? coeff[j] : ZZ(0);
    const ZZ& b = j < other.coeff.size() ? other.coeff[j] : ZZ(0);
    if (a != b) return false;
  }
  return true;
}

std::strong_ordering compare_eventual(const ExponentPolynomial& f, const ExponentPolynomial& g) {
  int top = std::max(f.degree(), g.degree());
  for (int j = top; j >= 0; --j) {
    const ZZ& a = j < static_cast<int>(f.coeff.size()) ? f.coeff[static_cast<std::size_t>(j)] : ZZ(0);
    const ZZ& b = j < static_cast<int>(g.coeff.size()) ? g.coeff[static_cast<std::size_t>(j)] : ZZ(0);
    if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

ZZ positivity_threshold(const ExponentPolynomial& f) {
  int d = f.degree();
  if (d < 0) throw std::invalid_argument("positivity_threshold: zero polynomial");
  const ZZ& lead = f.coeff[static_cast<std::size_t>(d)];
  if (lead < 0) throw std::invalid_argument("positivity_threshold: negative leading coefficient");
  if (d == 0) return 1;  // constant and positive everywhere

  // Cauchy bound: every real root is below 1 + max_j |c_j| / c_d.
  ZZ maxc = 0;
  for (int j = 0; j < d; ++j) {
    ZZ a = abs(f.coeff[static_cast<std::size_t>(j)]);
    if (a > maxc) maxc = a;
  }
  ZZ bound = 2 + maxc / lead;  // f(n) > 0 for every n >= bound
  ZZ t = bound;
  while (t > 1 && f.eval(t - 1) > 0) --t;
  return t;
}

ExponentPolynomial step2_difference(const ExponentPolynomial& f) {
  // coefficients of f(n+2) via binomial expansion, minus f(n)
  std::size_t len = f.coeff.size();
  std::vector<ZZ> out(len, ZZ(0));
  for (std::size_t j = 0; j < len; ++j) {
    if (f.coeff[j] == 0) continue;
    ZZ binom = 1;  // C(j, h) * 2^(j-h), built incrementally from h = j down
    for (std::size_t h = j + 1; h-- > 0;) {
      if (h < j) {
        // C(j,h)*2^(j-h) = C(j,h+1)*2^(j-h-1) * 2*(h+1)/(j-h)
        binom = binom * 2 * static_cast<unsigned long>(h + 1) / static_cast<unsigned long>(j - h);
      }
      out[h] += f.coeff[j] * binom;
    }
  }
  for (std::size_t j = 0; j < len; ++j) out[j] -= f.coeff[j];
  return ExponentPolynomial(std::move(out));
}

}  // namespace spsum
