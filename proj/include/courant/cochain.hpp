#pragma once

// Keller-Waldmann cochains of a Courant algebroid, stored as graded bodies.
//
//   evaluate(w; e_1..e_k) = {e_k, ... {e_1, w}}        symbol(w; e_1..e_{k-2})(f) = {f, {e_{k-2}, ... {e_1, w}}}
//   contract(e) = {e, .}     lie(e) = {{e, theta}, .}     dE = {theta, .}     cup = product of bodies

#include <map>
#include <vector>

#include "courant/courant.hpp"
#include "courant/graded.hpp"

namespace courant {

class Cochain {
 public:
  /// Zero cochain of degree k.
  Cochain(StructurePtr E, int k);
  /// Body must be homogeneous of degree k (DomainError otherwise).
  Cochain(StructurePtr E, GradedElem body, int k);
  /// Degree read off a nonzero homogeneous body.
  Cochain(StructurePtr E, GradedElem body);

  const StructurePtr& structure() const { return E_; }
  const GradedElem& body() const { return body_; }
  int degree() const { return k_; }
  bool is_zero() const { return body_.is_zero(); }

  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain operator-() const { return Cochain(E_, -body_, k_); }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Poly& f, const Cochain& w) { return Cochain(w.E_, f * w.body_, w.k_); }
  friend Cochain operator*(const Rat& c, const Cochain& w) { return Cochain(w.E_, c * w.body_, w.k_); }
  friend bool operator==(const Cochain& a, const Cochain& b) { return a.k_ == b.k_ && a.body_ == b.body_; }

  template <class Fn>
  Cochain map_coefficients(Fn&& fn) const {
    return Cochain(E_, body_.map_coefficients(fn), k_);
  }

  std::string to_string() const { return body_.to_string(); }

 private:
  StructurePtr E_;
  GradedElem body_;
  int k_;
};

/// Throws ContextMismatch unless both cochains live over the same algebroid data.
void require_same_structure(const CourantStructure& a, const CourantStructure& b);

Poly evaluate(const Cochain& w, const std::vector<Section>& sections);
VectorField symbol(const Cochain& w, const std::vector<Section>& sections);

Cochain contract(const Section& e, const Cochain& w);
Cochain lie(const Section& e, const Cochain& w);
Cochain dE(const Cochain& w);
Cochain cup(const Cochain& a, const Cochain& b);
Cochain kw_poisson(const Cochain& a, const Cochain& b);

/// Graded commutator of operators of degrees da, db: AB - (-1)^{da db} BA.
template <class A, class B>
Cochain graded_commutator(A&& a, int da, B&& b, int db, const Cochain& w) {
  Cochain ab = a(b(w)), ba = b(a(w));
  return ((da * db) % 2 == 0) ? ab - ba : ab + ba;
}

Cochain from_function(StructurePtr E, const Poly& f);
Cochain from_section(StructurePtr E, const Section& e);
/// Skew-symmetric covariant differential operator with symbol X and frame matrix M (Delta e_a = M_a^c e_c).
/// Requires W = M g antisymmetric; w(e_a, e_b) = W_ab, symbol X.
Cochain from_cdo(StructurePtr E, const VectorField& X, const PolyMatrix& M);
/// Totally antisymmetric frame components w_{a_1..a_k}; keys are 0-based index tuples (missing entries are 0,
/// antisymmetry is checked on the supplied ones).
Cochain from_skew_tensor(StructurePtr E, int k, const std::map<std::vector<int>, Poly>& components);
/// The 3-cocycle T(e1, e2, e3) = <[[e1, e2]], e3>, i.e. the cochain of -theta.
Cochain structure_cocycle(StructurePtr E);

/// Cartan-sum evaluations, computed from `evaluate`, the bracket and the anchor only.
Poly cartan_dE_value(const Cochain& w, const std::vector<Section>& sections);
Poly cartan_lie_value(const Section& e, const Cochain& w, const std::vector<Section>& sections);
/// Shuffle formula for (a cup b)(e_1..e_{k+m}).
Poly shuffle_cup_value(const Cochain& a, const Cochain& b, const std::vector<Section>& sections);
/// w(.., e_i, e_{i+1}, ..) + w(.., e_{i+1}, e_i, ..) - symbol(..^i ^{i+1}..)(<e_i, e_{i+1}>); zero for a cochain.
Poly symbol_defect(const Cochain& w, const std::vector<Section>& sections, std::size_t i);

/// (k, m)-shuffles in lexicographic order with their signs.
struct Shuffle {
  std::vector<int> perm;
  int sign;
};
std::vector<Shuffle> shuffles(int k, int m);

}  // namespace courant
