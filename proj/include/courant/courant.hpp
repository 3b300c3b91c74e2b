#pragma once

// Courant algebroid on a trivial bundle E = M x R^r over M = R^n, presented in a global frame e_1..e_r:
//
//   <e_a, e_b> = g_ab (constant), rho(e_a) = rho_a^i d_i, [[e_a, e_b]] = c_ab^c e_c
//
// and its generating function theta in the graded model, with e_a lifted to xi^a.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "courant/graded.hpp"
#include "courant/matrix.hpp"
#include "courant/polyvec.hpp"

namespace courant {

class CourantStructure;
using StructurePtr = std::shared_ptr<const CourantStructure>;

class CourantStructure {
 public:
  /// `anchor` is r x n with anchor(a, i) = rho_a^i; `c[a](b, d)` = c_ab^d.
  /// Throws DomainError on malformed data. Axioms are not enforced here; see check_axioms.
  static StructurePtr make(RatMatrix pairing, PolyMatrix anchor, std::vector<PolyMatrix> c, std::string name = "");

  int n() const { return ctx_->n(); }
  int r() const { return ctx_->r(); }
  const ContextPtr& context() const { return ctx_; }
  const RatMatrix& pairing() const { return ctx_->pairing(); }
  const RatMatrix& inverse_pairing() const { return ctx_->inverse_pairing(); }
  const PolyMatrix& anchor() const { return anchor_; }
  const Poly& anchor(int a, int i) const { return anchor_(a, i); }
  const Poly& structure(int a, int b, int d) const { return c_[a](b, d); }
  const std::string& name() const { return name_; }
  /// Highest coordinate degree among anchor and structure functions.
  int data_degree() const;

  /// Generating function; throws StructureError when the data is not a Courant algebroid.
  const GradedElem& theta() const;
  bool has_theta() const { return theta_.has_value(); }
  const std::string& theta_error() const { return theta_error_; }

 private:
  CourantStructure() = default;
  ContextPtr ctx_;
  PolyMatrix anchor_;
  std::vector<PolyMatrix> c_;
  std::string name_;
  std::optional<GradedElem> theta_;
  std::string theta_error_;
};

// Presets.
StructurePtr standard(int n);
/// H-twisted standard algebroid; `H[i][j][k]` totally antisymmetric and closed, else DomainError.
/// Bracket on the frame: [[d_i, d_j]] = sum_k H_jik dx^k.
StructurePtr standard_twisted(int n, const std::vector<std::vector<std::vector<Poly>>>& H);
/// H = c dx1^dx2^dx3 on R^n (n >= 3).
StructurePtr standard_twisted(int n, const Rat& c);
/// Quadratic Lie algebras over a point: "so3", "sl2" (Killing forms), "aff1_double".
StructurePtr quadratic_lie(const std::string& name);
/// Abelian quadratic Lie algebra of dimension d with identity pairing.
StructurePtr abelian(int d);
/// Zero anchor and zero bracket, identity pairing.
StructurePtr silent(int n, int r);
/// aff1_double acting on R by rho(a) = -x1 d1, rho(b) = d1 (isotropic image of rho^*).
StructurePtr aff1_action();
/// E + F over the base of E, where F lives over a point.
StructurePtr direct_sum(const CourantStructure& E, const CourantStructure& F);

// Section calculus.
Section zero_section(const CourantStructure& E);
Poly pairing(const CourantStructure& E, const Section& a, const Section& b);
VectorField anchor_of(const CourantStructure& E, const Section& e);
Poly anchor_apply(const CourantStructure& E, const Section& e, const Poly& f);
/// D f = g^{-1} rho^T df.
Section dee(const CourantStructure& E, const Poly& f);
/// rho^* of a covector (components in dx^i).
Section rho_star(const CourantStructure& E, const PolyVec& covector);
/// Dorfman bracket of arbitrary polynomial sections.
Section bracket(const CourantStructure& E, const Section& a, const Section& b);

/// e = sum e^a e_a  ->  sum e^a xi^a.
GradedElem lift(const CourantStructure& E, const Section& e);
/// Inverse of lift on degree-1 elements (DomainError otherwise).
Section section_of(const CourantStructure& E, const GradedElem& e);

/// theta = rho_a^i eta^a p_i - 1/6 T_abc eta^a eta^b eta^c with T_abc = c_ab^d g_dc and eta^a = g^{ab} xi^b.
GradedElem build_theta_candidate(const CourantStructure& E);
/// Derived brackets {{e, theta}, f} and {{e1, theta}, e2}.
Poly derived_anchor(const CourantStructure& E, const Section& e, const Poly& f);
Section derived_bracket(const CourantStructure& E, const Section& a, const Section& b);

// Axiom checking.
enum class Axiom { C1, C2, C3, C4, A1, A2 };
std::string axiom_name(Axiom a);

/// Inputs of one failing instance; replaying it recomputes the residual.
struct AxiomWitness {
  Axiom axiom;
  std::vector<Section> sections;
  Poly function;
  std::string residual;
};

struct AxiomResult {
  Axiom axiom;
  bool pass = true;
  int instances = 0;
  std::optional<AxiomWitness> witness;
};

struct AxiomReport {
  std::uint64_t seed = 0;
  std::vector<AxiomResult> results;
  bool all_pass() const;
  const AxiomResult& result(Axiom a) const;
};

/// Frame instances plus `random_instances` seeded polynomial sections of degree <= 2 per axiom.
AxiomReport check_axioms(const CourantStructure& E, std::uint64_t seed = 1, int random_instances = 40);

/// Residual of the axiom on the witness inputs; zero residual means the instance holds.
PolyVec axiom_residual(const CourantStructure& E, Axiom axiom, const std::vector<Section>& sections,
                       const Poly& function);
bool replay(const CourantStructure& E, const AxiomWitness& w);

/// Copy of E with c_ab^d shifted by `delta`; theta may then be unavailable.
StructurePtr mutate_structure(const CourantStructure& E, int a, int b, int d, const Rat& delta);

}  // namespace courant
