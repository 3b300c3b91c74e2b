#pragma once

// Finite-dimensional slices of the standard complex: k-cochains whose coefficients have coordinate degree
// <= N, and the matrix of dE into (k+1)-cochains of coordinate degree <= N + d (d = data degree).

#include <optional>
#include <vector>

#include "courant/cochain.hpp"

namespace courant {

struct BasisEntry {
  GradedKey key;
  Monomial mono;
};

/// All coordinate monomials in x1..xn of degree <= bound, graded-lex descending.
std::vector<Monomial> monomials_up_to(int n, int bound);

class TruncatedComplex {
 public:
  TruncatedComplex(StructurePtr E, int k, int bound);

  const StructurePtr& structure() const { return E_; }
  int degree() const { return k_; }
  int bound() const { return N_; }
  int target_bound() const { return target_N_; }
  const std::vector<BasisEntry>& basis() const { return source_; }
  const std::vector<BasisEntry>& target_basis() const { return target_; }
  /// Rows index the target basis, columns the source basis.
  const RatMatrix& matrix() const { return D_; }

  Cochain source_element(const RatVector& coords) const;
  /// Coordinates of a (k+1)-cochain in the target basis; nullopt when it has terms outside the truncation.
  std::optional<RatVector> target_coordinates(const Cochain& w) const;

 private:
  StructurePtr E_;
  int k_, N_, target_N_;
  std::vector<BasisEntry> source_, target_;
  RatMatrix D_;
};

bool certify_closed(const Cochain& w);

/// A primitive eta with dE eta = w and coefficient degree <= bound, if one exists in that range.
struct ExactnessResult {
  bool exact = false;
  int bound = 0;
  std::optional<Cochain> witness;
};
ExactnessResult certify_exact(const Cochain& w, int bound);

struct PointCohomology {
  int k = 0;
  int dimension = 0;
  std::vector<Cochain> representatives;
};
/// Chevalley-Eilenberg cohomology of a quadratic Lie algebra (n = 0, else DomainError).
PointCohomology cohomology_point(const StructurePtr& g, int k);

}  // namespace courant
