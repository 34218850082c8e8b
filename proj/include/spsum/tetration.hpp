#pragma once

#include "spsum/integer.hpp"
#include "spsum/interval.hpp"

namespace spsum {

// Result of evaluating the tower base^^height. Integer bases (and heights
// 0 and 1) are exact; other rational bases give rigorous interval bounds,
// since the tower value is irrational for heights >= 2. OverCap reports
// that the value's bit size passed the cap; that is enough for every
// comparison slog makes.
struct Tetration {
  enum class Kind { exact, interval, over_cap } kind = Kind::exact;
  ZZ value;     // kind == exact
  QQ lo, hi;    // kind == interval
};

Tetration tetrate(const QQ& base, unsigned height, std::uint64_t cap_bits);

// Largest l >= 0 with base^^l <= n. Requires base > 1 and n >= 2.
unsigned slog(const QQ& base, const ZZ& n);

}  // namespace spsum
