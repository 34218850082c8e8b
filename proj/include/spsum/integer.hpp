#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spsum {

using ZZ = mpz_class;
using QQ = mpq_class;

// Named error conditions shared across the library. The CLI maps these to
// its exit-code contract.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BitCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SubsetBlowup : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FactorizationIncomplete : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FailedCheck : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const ZZ& x) { return x.get_str(); }

// Rationals serialize as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const QQ& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline ZZ zz_from_string(const std::string& s) {
  ZZ v;
  if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw ParseError("not an integer: '" + s + "'");
  return v;
}

inline QQ qq_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return QQ(zz_from_string(s));
  ZZ num = zz_from_string(s.substr(0, slash));
  ZZ den = zz_from_string(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + s + "'");
  QQ q(num, den);
  q.canonicalize();
  return q;
}

inline std::size_t bit_length(const ZZ& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline ZZ pow_zz(const ZZ& base, unsigned long e) {
  ZZ r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline QQ pow_qq(const QQ& base, long e) {
  if (e == 0) return QQ(1);
  QQ r;
  unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), a);
  if (e < 0) {
    if (base == 0) throw std::domain_error("0 raised to a negative power");
    mpz_swap(r.get_num_mpz_t(), r.get_den_mpz_t());
  }
  r.canonicalize();
  return r;
}

// floor(x^(1/k)), x >= 0
inline ZZ root_floor(const ZZ& x, unsigned long k) {
  ZZ r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

inline ZZ gcd_zz(const ZZ& a, const ZZ& b) {
  ZZ g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline ZZ lcm_zz(const ZZ& a, const ZZ& b) {
  ZZ l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Deterministic 64-bit mixer for reproducible pseudorandom parameters.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable 64-bit digest of an mpz value, used to derive reproducible
// pseudorandom parameters from inputs.
inline std::uint64_t digest64(const ZZ& x) {
  std::uint64_t h = sgn(x) < 0 ? 0x811c9dc5a5a5ULL : 0xcbf29ce4ULL;
  std::size_t words = (bit_length(x) + 63) / 64;
  std::vector<std::uint64_t> buf(words == 0 ? 1 : words, 0);
  std::size_t written = 0;
  mpz_export(buf.data(), &written, -1, sizeof(std::uint64_t), 0, 0, x.get_mpz_t());
  for (std::size_t i = 0; i < written; ++i) h = splitmix64(h ^ buf[i]);
  return splitmix64(h);
}

}  // namespace spsum
