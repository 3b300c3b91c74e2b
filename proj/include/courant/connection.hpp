#pragma once

// E-connections on a trivial rank-m bundle B, B-valued and End(B)-valued cochains.
//
//   nabla_{e_a} b_mu = Gamma_{a mu}^nu b_nu      A^nu_mu = sum_a Gamma_{a mu}^nu eta^a
//   D tau = dE tau + A tau      F = dE A + A A      D~ phi = dE phi + A phi - (-1)^k phi A

#include <functional>
#include <optional>
#include <vector>

#include "courant/cochain.hpp"

namespace courant {

/// Element of C^k(E; B) = C^k(E) (x) Gamma(B), one cochain per fiber frame vector.
class BCochain {
 public:
  BCochain(StructurePtr E, int k, int m);
  /// Nonempty, uniform degree.
  explicit BCochain(std::vector<Cochain> components);
  static BCochain from_fiber_section(StructurePtr E, const PolyVec& b);

  const StructurePtr& structure() const { return comp_.front().structure(); }
  int m() const { return static_cast<int>(comp_.size()); }
  int degree() const { return comp_.front().degree(); }
  const Cochain& operator[](int i) const { return comp_[i]; }
  Cochain& operator[](int i) { return comp_[i]; }
  bool is_zero() const;

  BCochain& operator+=(const BCochain& o);
  BCochain& operator-=(const BCochain& o);
  friend BCochain operator+(BCochain a, const BCochain& b) { return a += b; }
  friend BCochain operator-(BCochain a, const BCochain& b) { return a -= b; }
  friend bool operator==(const BCochain& a, const BCochain& b) { return a.comp_ == b.comp_; }

 private:
  std::vector<Cochain> comp_;
};

/// m x m matrix of k-cochains acting on BCochain from the left: (phi tau)^nu = sum_mu phi(nu, mu) tau^mu.
class EndCochain {
 public:
  EndCochain(StructurePtr E, int k, int m);
  static EndCochain identity(StructurePtr E, int m);
  static EndCochain from_matrix(StructurePtr E, const PolyMatrix& u);

  const StructurePtr& structure() const { return E_; }
  int m() const { return m_; }
  int degree() const { return k_; }
  const Cochain& operator()(int nu, int mu) const { return entries_[nu * m_ + mu]; }
  Cochain& operator()(int nu, int mu) { return entries_[nu * m_ + mu]; }
  bool is_zero() const;

  EndCochain& operator+=(const EndCochain& o);
  EndCochain& operator-=(const EndCochain& o);
  EndCochain operator-() const;
  friend EndCochain operator+(EndCochain a, const EndCochain& b) { return a += b; }
  friend EndCochain operator-(EndCochain a, const EndCochain& b) { return a -= b; }
  friend EndCochain operator*(const Rat& c, EndCochain a);
  friend EndCochain operator*(const Poly& f, EndCochain a);
  /// Composition of operators.
  friend EndCochain operator*(const EndCochain& a, const EndCochain& b);
  friend BCochain operator*(const EndCochain& a, const BCochain& t);
  friend bool operator==(const EndCochain& a, const EndCochain& b) {
    return a.k_ == b.k_ && a.m_ == b.m_ && a.entries_ == b.entries_;
  }

  template <class Fn>
  EndCochain map_coefficients(Fn&& fn) const {
    EndCochain out(E_, k_, m_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].map_coefficients(fn);
    return out;
  }

 private:
  StructurePtr E_;
  int k_, m_;
  std::vector<Cochain> entries_;
};

Cochain trace(const EndCochain& phi);
EndCochain power(const EndCochain& phi, int k);
/// h^{-1} phi^T h, the adjoint with respect to a fiber pairing h.
EndCochain pairing_transpose(const EndCochain& phi, const RatMatrix& h);
/// (w cup tau)^nu = w cup tau^nu.
BCochain cup(const Cochain& w, const BCochain& tau);
/// Apply operator d (degree shift) entrywise.
EndCochain apply_entrywise(const EndCochain& phi, int shift, const std::function<Cochain(const Cochain&)>& op);

PolyVec evaluate(const BCochain& tau, const std::vector<Section>& sections);
PolyMatrix evaluate(const EndCochain& phi, const std::vector<Section>& sections);

/// E-connection on the trivial bundle R^m; gamma[a](mu, nu) = Gamma_{a mu}^nu. Coefficients may depend on
/// the path parameter t.
class Connection {
 public:
  Connection(StructurePtr E, std::vector<PolyMatrix> gamma, std::optional<RatMatrix> fiber_pairing = std::nullopt);
  /// Zero coefficients (the trivial flat connection).
  static Connection trivial(StructurePtr E, int m);

  const StructurePtr& structure() const { return E_; }
  int m() const { return m_; }
  const std::vector<PolyMatrix>& coefficients() const { return gamma_; }
  const Poly& gamma(int a, int mu, int nu) const { return gamma_[a](mu, nu); }
  /// Matrix of nabla_{e_a} on fiber components: M_a(nu, mu) = Gamma_{a mu}^nu.
  PolyMatrix frame_matrix(int a) const { return gamma_[a].transpose(); }
  const std::optional<RatMatrix>& fiber_pairing() const { return pairing_; }
  Connection with_pairing(RatMatrix h) const;

  template <class Fn>
  Connection map_coefficients(Fn&& fn) const {
    std::vector<PolyMatrix> g = gamma_;
    for (auto& mat : g)
      for (std::size_t i = 0; i < mat.rows(); ++i)
        for (std::size_t j = 0; j < mat.cols(); ++j) mat(i, j) = fn(mat(i, j));
    return Connection(E_, std::move(g), pairing_);
  }

  friend bool operator==(const Connection& a, const Connection& b) { return a.gamma_ == b.gamma_; }

 private:
  StructurePtr E_;
  int m_;
  std::vector<PolyMatrix> gamma_;
  std::optional<RatMatrix> pairing_;
};

/// nabla_e b on fiber components.
PolyVec covariant_apply(const Connection& nabla, const Section& e, const PolyVec& b);
EndCochain connection_form(const Connection& nabla);
BCochain covariant_derivative(const Connection& nabla, const BCochain& tau);
/// (D tau)(e_0..e_k) by the alternating Cartan sum with nabla acting on values.
PolyVec covariant_derivative_value(const Connection& nabla, const BCochain& tau, const std::vector<Section>& sections);

EndCochain curvature(const Connection& nabla);
/// nabla_1 nabla_2 b - nabla_2 nabla_1 b - nabla_[[e1,e2]] b.
PolyVec curvature_value(const Connection& nabla, const Section& e1, const Section& e2, const PolyVec& b);

/// D~ phi = [D, phi] (graded commutator) for the induced connection on End(B).
EndCochain end_derivative(const Connection& nabla, const EndCochain& phi);
/// The induced connection nabla~_e tau = [nabla_e, tau] on End(B), frame E_{nu mu} at index nu*m + mu.
Connection end_connection(const Connection& nabla);
BCochain flatten(const EndCochain& phi);
EndCochain unflatten(const BCochain& tau);

/// <nabla^dag_e b1, b2> = rho(e)<b1, b2> - <b1, nabla_e b2>. Uses the connection's pairing when h is absent.
/// DomainError for a missing, asymmetric or singular pairing.
Connection adjoint(const Connection& nabla, const std::optional<RatMatrix>& h = std::nullopt);
/// u(nabla)_e = u nabla_e u^{-1}; `u_inverse` must be the polynomial inverse of u (DomainError otherwise).
Connection gauge_transform(const Connection& nabla, const PolyMatrix& u, const PolyMatrix& u_inverse);
Connection tensor_product(const Connection& a, const Connection& b);
/// Induced connection on the top exterior power of B (rank 1, coefficient tr M_a).
Connection top_exterior(const Connection& nabla);
/// Canonical representation on the top exterior power of E: coefficient sum_b c_ab^b.
Connection top_connection(StructurePtr E);

/// Linear connection on E in the base frame: L[i](a, c) = L_{ia}^c, i.e. nabla_{d_i} e_a = L_{ia}^c e_c.
using LinearConnection = std::vector<PolyMatrix>;
LinearConnection zero_linear_connection(const CourantStructure& E);

struct BottConnections {
  Connection on_E;      // nabla^E_e e' = [[e, e']] + nabla_{rho(e')} e - rho^* <nabla e, e'>
  // absent when n = 0
  std::optional<Connection> on_TM;      // nabla_e X = [rho(e), X] + rho(nabla_X e)
  std::optional<Connection> on_TstarM;  // dual of on_TM
};
/// The E-connection on E carries the pairing of E as fiber pairing.
BottConnections bott_connections(StructurePtr E, const LinearConnection& L);

}  // namespace courant
