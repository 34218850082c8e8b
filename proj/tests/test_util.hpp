#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "spsum/sequence.hpp"

namespace spsum::test {

// terse instance builder: {{coeff, b1, b2, ...}, ...} with shared ell
inline SuperpowerSum instance(int ell, std::initializer_list<std::vector<std::string>> rows) {
  SuperpowerSum s;
  s.ell = ell;
  for (const auto& row : rows) {
    Term t;
    t.coeff = qq_from_string(row.at(0));
    for (std::size_t j = 1; j < row.size(); ++j) t.bases.push_back(qq_from_string(row[j]));
    while (t.bases.size() < static_cast<std::size_t>(ell)) t.bases.emplace_back(1);
    s.terms.push_back(std::move(t));
  }
  return s;
}

// deterministic random instances for property tests
inline SuperpowerSum random_instance(std::mt19937_64& rng, int max_k = 4, int max_ell = 3,
                                     int max_abs = 9, bool allow_zero = false) {
  std::uniform_int_distribution<int> kd(1, max_k), elld(1, max_ell);
  int k = kd(rng), ell = elld(rng);
  std::uniform_int_distribution<int> xd(-max_abs, max_abs);
  SuperpowerSum s;
  s.ell = ell;
  for (int i = 0; i < k; ++i) {
    Term t;
    int c = 0;
    while (c == 0) c = xd(rng);
    t.coeff = c;
    for (int j = 0; j < ell; ++j) {
      int b = xd(rng);
      while (!allow_zero && b == 0) b = xd(rng);
      t.bases.emplace_back(b);
    }
    s.terms.push_back(std::move(t));
  }
  return s;
}

}  // namespace spsum::test
