#include "spsum/interval.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace spsum {

namespace {

QQ make_dyadic(const ZZ& num, unsigned prec_bits) {
  ZZ den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), prec_bits);
  QQ r(num, den);
  r.canonicalize();
  return r;
}

// One directed evaluation of the atanh series:
// ln((1+z)/(1-z)) = 2 sum_{i>=0} z^(2i+1)/(2i+1), 0 <= z < 1/2.
// Every operation is rounded toward the requested direction on the dyadic
// grid, so operands stay small at any precision; the geometric tail is
// added when rounding up.
QQ atanh_directed(const QQ& z, unsigned prec_bits, bool round_up) {
  if (sgn(z) < 0 || z >= QQ(1, 2)) throw std::invalid_argument("atanh_directed: need 0 <= z < 1/2");
  if (z == 0) return QQ(0);
  const unsigned work = prec_bits + 16;
  auto rnd = [&](const QQ& v) { return round_up ? dyadic_ceil(v, work) : dyadic_floor(v, work); };
  QQ z2 = rnd(z * z);
  QQ power = rnd(z);
  QQ sum = 0;
  unsigned long i = 0;
  QQ eps = make_dyadic(ZZ(1), prec_bits + 4);
  QQ term;
  do {
    term = rnd(power / static_cast<unsigned long>(2 * i + 1));
    sum = rnd(sum + term);
    power = rnd(power * z2);
    ++i;
  } while (term > eps);
  if (round_up) {
    // tail < power/(2i+1) / (1 - z^2), with power already an upper bound
    QQ tail = dyadic_ceil((power / static_cast<unsigned long>(2 * i + 1)) / (QQ(1) - z2), work);
    sum += tail;
  }
  return 2 * sum;
}

}  // namespace

QQ dyadic_floor(const QQ& x, unsigned prec_bits) {
  ZZ scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), x.get_num().get_mpz_t(), prec_bits);
  ZZ q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  return make_dyadic(q, prec_bits);
}

QQ dyadic_ceil(const QQ& x, unsigned prec_bits) {
  ZZ scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), x.get_num().get_mpz_t(), prec_bits);
  ZZ q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  return make_dyadic(q, prec_bits);
}

QInterval log2_bounds(unsigned prec_bits) {
  static std::mutex mu;
  static std::map<unsigned, QInterval> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(prec_bits);
  if (it != cache.end()) return it->second;
  QInterval v(atanh_directed(QQ(1, 3), prec_bits, false),
              atanh_directed(QQ(1, 3), prec_bits, true));
  cache.emplace(prec_bits, v);
  return v;
}

QInterval log_bounds(const QQ& x, unsigned prec_bits) {
  if (sgn(x) <= 0) throw std::invalid_argument("log_bounds: argument must be positive");
  if (x == 1) return QInterval(QQ(0));
  if (x < 1) {
    QInterval r = log_bounds(QQ(1) / x, prec_bits);
    return {-r.hi, -r.lo};
  }
  // reduce to y = x / 2^k in [1, 2)
  long k = static_cast<long>(bit_length(x.get_num())) - static_cast<long>(bit_length(x.get_den()));
  QQ y = x;
  if (k > 0) {
    ZZ den = y.get_den();
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k));
    y = QQ(y.get_num(), den);
    y.canonicalize();
  }
  while (y >= 2) {
    y /= 2;
    ++k;
  }
  while (y < 1) {
    y *= 2;
    --k;
  }
  QInterval ln2 = log2_bounds(prec_bits);
  QInterval lny(QQ(0));
  if (y != 1) {
    // z = (y-1)/(y+1) in (0, 1/3); rounded outward first so the series runs
    // on small dyadics even when x carries million-digit numerators
    QQ z = (y - 1) / (y + 1);
    QQ zl = dyadic_floor(z, prec_bits + 8);
    QQ zh = dyadic_ceil(z, prec_bits + 8);
    if (sgn(zl) < 0) zl = 0;
    lny = QInterval(atanh_directed(zl, prec_bits, false), atanh_directed(zh, prec_bits, true));
  }
  QInterval r = ln2.scaled(QQ(k)) + lny;
  return dyadic_round(r, prec_bits);
}

bool pow_bounds(const QQ& base, const QQ& t, unsigned prec_bits, std::uint64_t cap_bits,
                PowBounds& out) {
  if (base <= 1) throw std::invalid_argument("pow_bounds: base must be > 1");
  if (sgn(t) < 0) throw std::invalid_argument("pow_bounds: exponent must be >= 0");
  // coarse cap: bits(base^t) <= t * bits(num(base))
  QQ est = t * static_cast<unsigned long>(bit_length(base.get_num()));
  if (est > QQ(static_cast<unsigned long>(cap_bits))) return false;

  if (t.get_den() == 1 && t.get_num().fits_ulong_p()) {
    QQ v = pow_qq(base, static_cast<long>(t.get_num().get_ui()));
    out = {v, v};
    return true;
  }

  // dyadic exponent sandwich t in [m_lo, m_hi] / 2^s
  const unsigned s = prec_bits;
  ZZ scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), t.get_num().get_mpz_t(), s);
  ZZ m_lo, m_hi;
  mpz_fdiv_q(m_lo.get_mpz_t(), scaled.get_mpz_t(), t.get_den().get_mpz_t());
  mpz_cdiv_q(m_hi.get_mpz_t(), scaled.get_mpz_t(), t.get_den().get_mpz_t());

  // working precision absorbs the m-fold error amplification
  unsigned work = prec_bits + static_cast<unsigned>(bit_length(m_hi)) + 16;

  // y in [y_lo, y_hi] with y = base^(1/2^s), via s directed square roots
  QQ y_lo = base, y_hi = base;
  for (unsigned i = 0; i < s; ++i) {
    ZZ nl, nh, rem;
    // floor sqrt of y_lo * 4^work-ish scaling
    ZZ a;
    mpz_mul_2exp(a.get_mpz_t(), y_lo.get_num().get_mpz_t(), 2 * work);
    mpz_fdiv_q(a.get_mpz_t(), a.get_mpz_t(), y_lo.get_den().get_mpz_t());
    mpz_sqrt(nl.get_mpz_t(), a.get_mpz_t());
    mpz_mul_2exp(a.get_mpz_t(), y_hi.get_num().get_mpz_t(), 2 * work);
    mpz_cdiv_q(a.get_mpz_t(), a.get_mpz_t(), y_hi.get_den().get_mpz_t());
    mpz_sqrtrem(nh.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t());
    if (rem != 0) nh += 1;
    y_lo = make_dyadic(nl, work);
    y_hi = make_dyadic(nh, work);
  }

  // directed powering y^m by square and multiply, rounding each product
  auto powered = [&](const QQ& y, const ZZ& m, bool round_up) {
    QQ acc = 1;
    QQ sq = y;
    ZZ e = m;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) {
        acc *= sq;
        acc = round_up ? dyadic_ceil(acc, work) : dyadic_floor(acc, work);
      }
      e >>= 1;
      if (e > 0) {
        sq *= sq;
        sq = round_up ? dyadic_ceil(sq, work) : dyadic_floor(sq, work);
      }
    }
    return acc;
  };
  out.lo = powered(y_lo, m_lo, false);
  out.hi = powered(y_hi, m_hi, true);
  return true;
}

}  // namespace spsum
