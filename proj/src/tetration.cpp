#include "spsum/tetration.hpp"

#include <stdexcept>

namespace spsum {

namespace {

// exact integer tower loop; returns over_cap once the next level would
// pass cap_bits
Tetration tetrate_integer(const ZZ& base, unsigned height, std::uint64_t cap_bits) {
  Tetration out;
  out.kind = Tetration::Kind::exact;
  out.value = 1;
  std::uint64_t base_bits = bit_length(base);
  for (unsigned l = 0; l < height; ++l) {
    // bits(base^v) >= v*(bits(base)-1) + 1
    ZZ lower_est = out.value * static_cast<unsigned long>(base_bits - 1);
    if (lower_est > static_cast<unsigned long>(cap_bits) || !out.value.fits_ulong_p()) {
      out.kind = Tetration::Kind::over_cap;
      return out;
    }
    ZZ next = pow_zz(base, out.value.get_ui());
    if (bit_length(next) > cap_bits) {
      out.kind = Tetration::Kind::over_cap;
      return out;
    }
    out.value = next;
  }
  return out;
}

}  // namespace

Tetration tetrate(const QQ& base, unsigned height, std::uint64_t cap_bits) {
  if (base <= 1) throw std::domain_error("tetrate: base must be > 1");
  if (base.get_den() == 1) return tetrate_integer(base.get_num(), height, cap_bits);

  Tetration out;
  if (height == 0) {
    out.kind = Tetration::Kind::exact;
    out.value = 1;
    return out;
  }
  if (height == 1) {
    out.kind = Tetration::Kind::interval;
    out.lo = out.hi = base;
    return out;
  }
  // towers over non-integer rational bases are irrational from height 2 on:
  // iterate rigorous bounds
  const unsigned prec = 96;
  QQ lo = base, hi = base;
  for (unsigned l = 2; l <= height; ++l) {
    PowBounds lo_b, hi_b;
    if (!pow_bounds(base, lo, prec, cap_bits, lo_b) ||
        !pow_bounds(base, hi, prec, cap_bits, hi_b)) {
      out.kind = Tetration::Kind::over_cap;
      return out;
    }
    lo = lo_b.lo;
    hi = hi_b.hi;
  }
  out.kind = Tetration::Kind::interval;
  out.lo = lo;
  out.hi = hi;
  return out;
}

namespace {

// slog for non-integer rational bases: slog(n) is the largest l with
// log_base applied l times to n still >= 1. Tower values are irrational for
// l >= 2 and integer n cannot equal the base, so interval comparisons decide
// at some finite precision.
unsigned slog_rational(const QQ& base, const ZZ& n) {
  for (unsigned prec = 96; prec <= (1u << 15); prec *= 2) {
    QInterval lnc = log_bounds(base, prec);
    if (sgn(lnc.lo) <= 0) continue;  // tighten until ln base separated from 0
    QInterval w{QQ(n)};
    unsigned l = 0;
    bool ambiguous = false;
    while (true) {
      // w > 1 certainly held on entry; apply log_base once
      QInterval lnw(log_bounds(w.lo, prec).lo, log_bounds(w.hi, prec).hi);
      w = QInterval(lnw.lo / lnc.hi, lnw.hi / lnc.lo);
      if (w.lo > 1) {
        ++l;
        continue;
      }
      if (w.hi < 1) return l;
      ambiguous = true;
      break;
    }
    if (!ambiguous) break;
  }
  throw std::runtime_error("slog: interval precision exhausted");
}

}  // namespace

unsigned slog(const QQ& base, const ZZ& n) {
  if (base <= 1) throw std::domain_error("slog: base must be > 1");
  if (n < 2) throw std::domain_error("slog: n must be >= 2");

  if (base.get_den() != 1) return slog_rational(base, n);

  const ZZ& b = base.get_num();
  std::uint64_t cap = bit_length(n) + 2;
  std::uint64_t bb = bit_length(b) - 1;  // >= 1
  ZZ tower = 1;
  unsigned l = 0;
  while (true) {
    // next tower would already exceed n once its bit estimate passes cap
    if (tower * static_cast<unsigned long>(bb) > static_cast<unsigned long>(cap)) return l;
    ZZ next = pow_zz(b, tower.get_ui());
    if (next > n) return l;
    tower = next;
    ++l;
  }
}

}  // namespace spsum
