#pragma once

// Dirac structures L in E given by a global frame l_1..l_m (m = r/2), the induced Lie algebroid on L,
// forms on L and the restriction map C(E) -> Gamma(wedge L*).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "courant/cochain.hpp"

namespace courant {

/// Lie algebroid on a trivial bundle with frame l_1..l_m: rho(l_a) = anchor[a], [l_a, l_b] = c[a][b][d] l_d.
struct LieAlgebroid {
  int n = 0;
  int m = 0;
  std::vector<VectorField> anchor;
  std::vector<std::vector<PolyVec>> c;

  /// Sections are coefficient vectors of length m in the frame.
  Poly act(const PolyVec& s, const Poly& f) const;
  PolyVec bracket(const PolyVec& s, const PolyVec& t) const;
  /// Jacobi identity on frame triples and rho([l_a,l_b]) = [rho l_a, rho l_b].
  bool satisfies_axioms() const;
};

/// Skew k-form on a rank-m bundle: components on increasing index tuples, keyed by bitmask.
class LForm {
 public:
  LForm(int m, int k);

  int m() const { return m_; }
  int degree() const { return k_; }
  const std::map<std::uint32_t, Poly>& components() const { return comp_; }
  Poly component(const std::vector<int>& increasing) const;
  void set(const std::vector<int>& increasing, const Poly& value);

  /// Value on m-component sections.
  Poly evaluate(const std::vector<PolyVec>& sections) const;
  bool is_zero() const { return comp_.empty(); }

  LForm operator+(const LForm& o) const;
  LForm operator-(const LForm& o) const;
  bool operator==(const LForm& o) const;

 private:
  int m_, k_;
  std::map<std::uint32_t, Poly> comp_;
};

LForm operator*(const Poly& f, const LForm& w);
LForm wedge(const LForm& a, const LForm& b);
LForm lie_algebroid_differential(const LieAlgebroid& A, const LForm& w);

struct DiracReport;

class DiracSubbundle {
 public:
  const StructurePtr& structure() const { return E_; }
  const std::vector<Section>& frame() const { return frame_; }
  int rank() const { return static_cast<int>(frame_.size()); }
  /// Induced Lie algebroid; its structure functions are the closure coefficients.
  const LieAlgebroid& algebroid() const { return alg_; }
  /// Section of E for coefficients s in the frame.
  Section embed(const PolyVec& s) const;

 private:
  friend DiracReport check_dirac(const StructurePtr& E, const std::vector<Section>& frame);
  StructurePtr E_;
  std::vector<Section> frame_;
  LieAlgebroid alg_;
};

/// A failed check: `isotropy` with <l_i, l_j> = value != 0, or `closure` with
/// <[[l_i, l_j]], l_k> = value != 0 (the bracket leaves L = L-perp).
struct DiracWitness {
  std::string kind;
  std::vector<int> indices;
  Poly value;
};

struct DiracReport {
  bool isotropic = false;
  bool involutive = false;
  bool jacobi = false;
  std::optional<DiracWitness> witness;
  std::optional<DiracSubbundle> subbundle;
  bool is_dirac() const { return subbundle.has_value(); }
};

/// Throws DomainError unless the frame has r/2 sections of length r and some maximal minor of the
/// coefficient matrix is a nonzero constant (constant rank on all of R^n).
DiracReport check_dirac(const StructurePtr& E, const std::vector<Section>& frame);
bool replay(const CourantStructure& E, const std::vector<Section>& frame, const DiracWitness& w);

/// pi(w): components w(l_a1, .., l_ak) on increasing tuples.
LForm restrict(const Cochain& w, const DiracSubbundle& L);
/// pi(dE w) == d_L pi(w).
bool restriction_commutes(const Cochain& w, const DiracSubbundle& L);

/// Primitive f with d_L f = w and coefficient degree <= bound, if one exists in that range.
std::optional<LForm> lform_primitive(const LieAlgebroid& A, const LForm& w, int bound);

/// Modular cocycle of L for wedge^top L (x) wedge^top T*M trivialized by the frame and dx^1..dx^n:
/// xi(l_a) = sum_b c_ab^b + div rho(l_a). The ambient class of E vanishes, so this represents the
/// relative class.
struct RelativeModularClass {
  LForm xi;
  bool closed = false;
  std::optional<LForm> witness;
  int bound = 0;
};
RelativeModularClass relative_modular_class(const DiracSubbundle& L, int bound);

}  // namespace courant
