#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fadinglab/mgf.hpp"

namespace fadinglab::test {

inline bool close(double x, double y, double abs_tol, double rel_tol = 0.0) {
  return std::abs(x - y) <= std::max(abs_tol, rel_tol * std::abs(y));
}

inline double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

/// Random compatible posynomial: positive weights summing to one, real poles,
/// exponents with a positive sum per term (individual exponents may be negative).
inline PosynomialMGF random_mgf(std::mt19937_64& rng, int max_terms = 3, int max_factors = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> nfactors(1, max_factors);
  std::uniform_real_distribution<double> pole(0.2, 5.0);
  std::uniform_real_distribution<double> expo(0.2, 3.0);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::vector<MonomialTerm> terms(nterms(rng));
  double total = 0.0;
  for (auto& t : terms) {
    t.c = weight(rng);
    total += t.c;
    const int n = nfactors(rng);
    for (int i = 0; i < n; ++i) t.factors.push_back({Complex{pole(rng), 0.0}, expo(rng)});
  }
  for (auto& t : terms) t.c /= total;
  return PosynomialMGF(std::move(terms));
}

}  // namespace fadinglab::test
