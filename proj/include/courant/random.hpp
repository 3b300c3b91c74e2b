#pragma once

// Seeded generators for property tests and the axiom checker. Everything is reproducible from the seed.

#include <cstdint>
#include <random>
#include <vector>

#include "courant/graded.hpp"
#include "courant/poly.hpp"

namespace courant {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }

  /// Small nonzero-biased rational: integers in [-3,3], sometimes halved or thirded.
  Rat rational();
  /// Sparse polynomial in x1..xn of total degree <= max_degree, at most `terms` terms.
  Poly poly(int n, int max_degree, int terms = 3);
  /// Component vector (section or vector field) with entries from poly(n, max_degree, terms).
  std::vector<Poly> vec(std::size_t len, int n, int max_degree, int terms = 2);
  /// Homogeneous graded element of degree k with polynomial coefficients of degree <= coeff_degree.
  GradedElem graded(const ContextPtr& ctx, int k, int coeff_degree, int terms = 3);

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace courant
