#pragma once

#include "spsum/integer.hpp"

namespace spsum {

// Closed rational interval [lo, hi] enclosing a real value; the building
// block for the rigorous logarithm bounds used by the witness engine and
// by slog on non-integer bases.
struct QInterval {
  QQ lo, hi;

  QInterval() = default;
  QInterval(QQ l, QQ h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit QInterval(const QQ& exact) : lo(exact), hi(exact) {}

  QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  QInterval& operator+=(const QInterval& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }

  // scale by an exact rational (either sign)
  QInterval scaled(const QQ& c) const {
    if (sgn(c) >= 0) return {c * lo, c * hi};
    return {c * hi, c * lo};
  }

  bool certainly_ge(const QQ& x) const { return lo >= x; }
  bool certainly_lt(const QQ& x) const { return hi < x; }
  bool certainly_gt(const QInterval& o) const { return lo > o.hi; }
};

// Round a rational outward to the 2^-prec grid; keeps interval endpoints
// small after long chains of operations.
QQ dyadic_floor(const QQ& x, unsigned prec_bits);
QQ dyadic_ceil(const QQ& x, unsigned prec_bits);

inline QInterval dyadic_round(const QInterval& v, unsigned prec_bits) {
  return {dyadic_floor(v.lo, prec_bits), dyadic_ceil(v.hi, prec_bits)};
}

// Rigorous bounds on ln(x) for rational x > 0. Reduction by powers of two,
// then the atanh series with an explicit geometric tail bound.
QInterval log_bounds(const QQ& x, unsigned prec_bits);

// Bounds on ln 2 at the requested precision.
QInterval log2_bounds(unsigned prec_bits);

// Directed bounds on base^t for rational base > 1 and rational t >= 0,
// via 2^s-th root extraction followed by integer powering. Returns an
// empty optional once the result would exceed cap_bits.
struct PowBounds {
  QQ lo, hi;
};
bool pow_bounds(const QQ& base, const QQ& t, unsigned prec_bits,
                std::uint64_t cap_bits, PowBounds& out);

}  // namespace spsum
