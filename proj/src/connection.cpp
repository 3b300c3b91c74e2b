#include "courant/connection.hpp"

#include "courant/cartan.hpp"
#include "courant/error.hpp"

namespace courant {

// --- BCochain ---

BCochain::BCochain(StructurePtr E, int k, int m) {
  if (m < 1) throw DomainError("fiber rank must be positive");
  comp_.assign(m, Cochain(std::move(E), k));
}

BCochain::BCochain(std::vector<Cochain> components) : comp_(std::move(components)) {
  if (comp_.empty()) throw DomainError("B-valued cochain needs at least one component");
  for (const auto& c : comp_) {
    require_same_structure(*c.structure(), *comp_.front().structure());
    if (c.degree() != comp_.front().degree()) throw DomainError("B-valued cochain components differ in degree");
  }
}

BCochain BCochain::from_fiber_section(StructurePtr E, const PolyVec& b) {
  std::vector<Cochain> c;
  for (const auto& f : b) c.push_back(from_function(E, f));
  return BCochain(std::move(c));
}

bool BCochain::is_zero() const {
  for (const auto& c : comp_)
    if (!c.is_zero()) return false;
  return true;
}

BCochain& BCochain::operator+=(const BCochain& o) {
  if (m() != o.m()) throw DomainError("fiber ranks differ");
  for (int i = 0; i < m(); ++i) comp_[i] += o.comp_[i];
  return *this;
}

BCochain& BCochain::operator-=(const BCochain& o) {
  if (m() != o.m()) throw DomainError("fiber ranks differ");
  for (int i = 0; i < m(); ++i) comp_[i] -= o.comp_[i];
  return *this;
}

// --- EndCochain ---

EndCochain::EndCochain(StructurePtr E, int k, int m) : E_(std::move(E)), k_(k), m_(m) {
  if (m < 1) throw DomainError("fiber rank must be positive");
  entries_.assign(static_cast<std::size_t>(m) * m, Cochain(E_, k));
}

EndCochain EndCochain::identity(StructurePtr E, int m) {
  EndCochain id(E, 0, m);
  for (int i = 0; i < m; ++i) id(i, i) = from_function(E, Poly(1));
  return id;
}

EndCochain EndCochain::from_matrix(StructurePtr E, const PolyMatrix& u) {
  if (!u.is_square()) throw DomainError("endomorphism matrix must be square");
  EndCochain out(E, 0, static_cast<int>(u.rows()));
  for (int i = 0; i < out.m_; ++i)
    for (int j = 0; j < out.m_; ++j) out(i, j) = from_function(E, u(i, j));
  return out;
}

bool EndCochain::is_zero() const {
  for (const auto& c : entries_)
    if (!c.is_zero()) return false;
  return true;
}

EndCochain& EndCochain::operator+=(const EndCochain& o) {
  if (m_ != o.m_ || k_ != o.k_) throw DomainError("End-valued cochains of different shape or degree");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

EndCochain& EndCochain::operator-=(const EndCochain& o) {
  if (m_ != o.m_ || k_ != o.k_) throw DomainError("End-valued cochains of different shape or degree");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

EndCochain EndCochain::operator-() const {
  EndCochain out = *this;
  for (auto& c : out.entries_) c = -c;
  return out;
}

EndCochain operator*(const Rat& c, EndCochain a) {
  for (auto& x : a.entries_) x = c * x;
  return a;
}

EndCochain operator*(const Poly& f, EndCochain a) {
  for (auto& x : a.entries_) x = f * x;
  return a;
}

EndCochain operator*(const EndCochain& a, const EndCochain& b) {
  if (a.m_ != b.m_) throw DomainError("fiber ranks differ");
  require_same_structure(*a.E_, *b.E_);
  const int m = a.m_;
  EndCochain out(a.E_, a.k_ + b.k_, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      GradedElem acc(a.E_->context());
      for (int l = 0; l < m; ++l) {
        const auto& x = a(i, l);
        const auto& y = b(l, j);
        if (!x.is_zero() && !y.is_zero()) acc += x.body() * y.body();
      }
      out(i, j) = Cochain(a.E_, std::move(acc), a.k_ + b.k_);
    }
  return out;
}

BCochain operator*(const EndCochain& a, const BCochain& t) {
  if (a.m_ != t.m()) throw DomainError("fiber ranks differ");
  std::vector<Cochain> out;
  for (int i = 0; i < a.m_; ++i) {
    GradedElem acc(a.E_->context());
    for (int l = 0; l < a.m_; ++l) acc += a(i, l).body() * t[l].body();
    out.emplace_back(a.E_, std::move(acc), a.k_ + t.degree());
  }
  return BCochain(std::move(out));
}

Cochain trace(const EndCochain& phi) {
  Cochain t(phi.structure(), phi.degree());
  for (int i = 0; i < phi.m(); ++i) t += phi(i, i);
  return t;
}

EndCochain power(const EndCochain& phi, int k) {
  if (k < 0) throw DomainError("negative power");
  EndCochain out = EndCochain::identity(phi.structure(), phi.m());
  for (int i = 0; i < k; ++i) out = out * phi;
  return out;
}

EndCochain pairing_transpose(const EndCochain& phi, const RatMatrix& h) {
  if (h.rows() != static_cast<std::size_t>(phi.m()) || !h.is_square()) throw DomainError("pairing has wrong size");
  RatMatrix hi = inverse(h);
  const int m = phi.m();
  EndCochain out(phi.structure(), phi.degree(), m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Cochain acc(phi.structure(), phi.degree());
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          Rat c = hi(i, a) * h(b, j);
          if (!is_zero(c)) acc += c * phi(b, a);
        }
      out(i, j) = acc;
    }
  return out;
}

BCochain cup(const Cochain& w, const BCochain& tau) {
  std::vector<Cochain> out;
  for (int i = 0; i < tau.m(); ++i) out.push_back(cup(w, tau[i]));
  return BCochain(std::move(out));
}

EndCochain apply_entrywise(const EndCochain& phi, int shift, const std::function<Cochain(const Cochain&)>& op) {
  EndCochain out(phi.structure(), phi.degree() + shift, phi.m());
  for (int i = 0; i < phi.m(); ++i)
    for (int j = 0; j < phi.m(); ++j) out(i, j) = op(phi(i, j));
  return out;
}

PolyVec evaluate(const BCochain& tau, const std::vector<Section>& sections) {
  PolyVec v(tau.m());
  for (int i = 0; i < tau.m(); ++i) v[i] = evaluate(tau[i], sections);
  return v;
}

PolyMatrix evaluate(const EndCochain& phi, const std::vector<Section>& sections) {
  PolyMatrix out(phi.m(), phi.m());
  for (int i = 0; i < phi.m(); ++i)
    for (int j = 0; j < phi.m(); ++j) out(i, j) = evaluate(phi(i, j), sections);
  return out;
}

// --- Connection ---

namespace {

void check_pairing(const RatMatrix& h, int m) {
  if (h.rows() != static_cast<std::size_t>(m) || h.cols() != static_cast<std::size_t>(m))
    throw DomainError("fiber pairing must be " + std::to_string(m) + " x " + std::to_string(m));
  if (!h.is_symmetric()) throw DomainError("fiber pairing must be symmetric");
  if (is_zero(determinant(h))) throw DomainError("fiber pairing is singular");
}

PolyVec mat_apply(const PolyMatrix& M, const PolyVec& b) {
  PolyVec out(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero() && !b[j].is_zero()) out[i] += M(i, j) * b[j];
  return out;
}

PolyMatrix rho_apply(const CourantStructure& E, int a, const PolyMatrix& u) {
  PolyMatrix out(u.rows(), u.cols());
  Section ea = unit_vector(E.r(), a);
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = anchor_apply(E, ea, u(i, j));
  return out;
}

}  // namespace

Connection::Connection(StructurePtr E, std::vector<PolyMatrix> gamma, std::optional<RatMatrix> fiber_pairing)
    : E_(std::move(E)), m_(0), gamma_(std::move(gamma)), pairing_(std::move(fiber_pairing)) {
  if (gamma_.size() != static_cast<std::size_t>(E_->r()))
    throw DomainError("connection needs one coefficient matrix per frame section (" + std::to_string(E_->r()) + ")");
  if (gamma_.empty()) throw DomainError("connection over a rank-0 algebroid");
  m_ = static_cast<int>(gamma_.front().rows());
  if (m_ < 1) throw DomainError("fiber rank must be positive");
  for (const auto& g : gamma_)
    if (g.rows() != static_cast<std::size_t>(m_) || g.cols() != static_cast<std::size_t>(m_))
      throw DomainError("connection coefficient matrices must all be m x m");
  if (pairing_) check_pairing(*pairing_, m_);
}

Connection Connection::trivial(StructurePtr E, int m) {
  std::vector<PolyMatrix> g(E->r(), PolyMatrix(m, m));
  return Connection(std::move(E), std::move(g));
}

Connection Connection::with_pairing(RatMatrix h) const { return Connection(E_, gamma_, std::move(h)); }

PolyVec covariant_apply(const Connection& nabla, const Section& e, const PolyVec& b) {
  const auto& E = *nabla.structure();
  if (b.size() != static_cast<std::size_t>(nabla.m())) throw DomainError("fiber section has wrong rank");
  PolyVec out(nabla.m());
  for (int mu = 0; mu < nabla.m(); ++mu) out[mu] = anchor_apply(E, e, b[mu]);
  for (int a = 0; a < E.r(); ++a) {
    if (e[a].is_zero()) continue;
    out += e[a] * mat_apply(nabla.frame_matrix(a), b);
  }
  return out;
}

EndCochain connection_form(const Connection& nabla) {
  const auto& E = nabla.structure();
  const auto& ctx = E->context();
  const int m = nabla.m();
  EndCochain A(E, 1, m);
  for (int nu = 0; nu < m; ++nu)
    for (int mu = 0; mu < m; ++mu) {
      GradedElem body(ctx);
      for (int a = 0; a < E->r(); ++a) {
        const Poly& g = nabla.gamma(a, mu, nu);
        if (!g.is_zero()) body += g * GradedElem::eta(ctx, a);
      }
      A(nu, mu) = Cochain(E, std::move(body), 1);
    }
  return A;
}

BCochain covariant_derivative(const Connection& nabla, const BCochain& tau) {
  require_same_structure(*nabla.structure(), *tau.structure());
  if (tau.m() != nabla.m()) throw DomainError("fiber ranks differ");
  std::vector<Cochain> d;
  for (int i = 0; i < tau.m(); ++i) d.push_back(dE(tau[i]));
  return BCochain(std::move(d)) + connection_form(nabla) * tau;
}

PolyVec covariant_derivative_value(const Connection& nabla, const BCochain& tau, const std::vector<Section>& sections) {
  if (sections.size() != static_cast<std::size_t>(tau.degree() + 1)) throw DomainError("D tau takes k+1 sections");
  const auto& E = *nabla.structure();
  return cartan_differential<PolyVec>(
      sections, [&](const std::vector<Section>& s) { return evaluate(tau, s); },
      [&](const Section& e, const PolyVec& v) { return covariant_apply(nabla, e, v); },
      [&](const Section& a, const Section& b) { return bracket(E, a, b); });
}

EndCochain curvature(const Connection& nabla) {
  EndCochain A = connection_form(nabla);
  return apply_entrywise(A, 1, [](const Cochain& c) { return dE(c); }) + A * A;
}

PolyVec curvature_value(const Connection& nabla, const Section& e1, const Section& e2, const PolyVec& b) {
  const auto& E = *nabla.structure();
  return covariant_apply(nabla, e1, covariant_apply(nabla, e2, b)) -
         covariant_apply(nabla, e2, covariant_apply(nabla, e1, b)) -
         covariant_apply(nabla, bracket(E, e1, e2), b);
}

EndCochain end_derivative(const Connection& nabla, const EndCochain& phi) {
  require_same_structure(*nabla.structure(), *phi.structure());
  EndCochain A = connection_form(nabla);
  EndCochain d = apply_entrywise(phi, 1, [](const Cochain& c) { return dE(c); }) + A * phi;
  return phi.degree() % 2 == 0 ? d - phi * A : d + phi * A;
}

Connection end_connection(const Connection& nabla) {
  const int m = nabla.m(), r = nabla.structure()->r();
  std::vector<PolyMatrix> g(r, PolyMatrix(m * m, m * m));
  for (int a = 0; a < r; ++a) {
    PolyMatrix M = nabla.frame_matrix(a);
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < m; ++k) {
        int p = l * m + k;
        for (int nu = 0; nu < m; ++nu) g[a](p, nu * m + k) += M(nu, l);
        for (int mu = 0; mu < m; ++mu) g[a](p, l * m + mu) -= M(k, mu);
      }
  }
  return Connection(nabla.structure(), std::move(g));
}

BCochain flatten(const EndCochain& phi) {
  std::vector<Cochain> c;
  for (int i = 0; i < phi.m(); ++i)
    for (int j = 0; j < phi.m(); ++j) c.push_back(phi(i, j));
  return BCochain(std::move(c));
}

EndCochain unflatten(const BCochain& tau) {
  int m = 0;
  while (m * m < tau.m()) ++m;
  if (m * m != tau.m()) throw DomainError("B-valued cochain rank is not a square");
  EndCochain out(tau.structure(), tau.degree(), m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = tau[i * m + j];
  return out;
}

Connection adjoint(const Connection& nabla, const std::optional<RatMatrix>& h_in) {
  const auto& hopt = h_in ? h_in : nabla.fiber_pairing();
  if (!hopt) throw DomainError("adjoint needs a fiber pairing");
  const RatMatrix& h = *hopt;
  check_pairing(h, nabla.m());
  PolyMatrix hp = to_poly(h), hip = to_poly(inverse(h));
  std::vector<PolyMatrix> g;
  for (int a = 0; a < nabla.structure()->r(); ++a) {
    PolyMatrix M = nabla.frame_matrix(a);
    PolyMatrix Mdag = hip * M.transpose() * hp;
    g.push_back((PolyMatrix(M.rows(), M.cols()) - Mdag).transpose());
  }
  return Connection(nabla.structure(), std::move(g), h);
}

Connection gauge_transform(const Connection& nabla, const PolyMatrix& u, const PolyMatrix& ui) {
  const int m = nabla.m();
  if (u.rows() != static_cast<std::size_t>(m) || !u.is_square() || ui.rows() != u.rows() || !ui.is_square())
    throw DomainError("gauge matrices must be m x m");
  if (!(u * ui == to_poly(RatMatrix::identity(m))) || !(ui * u == to_poly(RatMatrix::identity(m))))
    throw DomainError("gauge matrix is not invertible with the given polynomial inverse");
  const auto& E = *nabla.structure();
  std::vector<PolyMatrix> g;
  for (int a = 0; a < E.r(); ++a) {
    PolyMatrix M = u * nabla.frame_matrix(a) * ui + u * rho_apply(E, a, ui);
    g.push_back(M.transpose());
  }
  return Connection(nabla.structure(), std::move(g), nabla.fiber_pairing());
}

namespace {

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace

Connection tensor_product(const Connection& a, const Connection& b) {
  require_same_structure(*a.structure(), *b.structure());
  PolyMatrix ia = to_poly(RatMatrix::identity(a.m())), ib = to_poly(RatMatrix::identity(b.m()));
  std::vector<PolyMatrix> g;
  for (int x = 0; x < a.structure()->r(); ++x) {
    PolyMatrix M = kron(a.frame_matrix(x), ib) + kron(ia, b.frame_matrix(x));
    g.push_back(M.transpose());
  }
  std::optional<RatMatrix> h;
  if (a.fiber_pairing() && b.fiber_pairing()) h = kron(*a.fiber_pairing(), *b.fiber_pairing());
  return Connection(a.structure(), std::move(g), h);
}

Connection top_exterior(const Connection& nabla) {
  std::vector<PolyMatrix> g;
  for (int a = 0; a < nabla.structure()->r(); ++a) {
    PolyMatrix c(1, 1);
    for (int mu = 0; mu < nabla.m(); ++mu) c(0, 0) += nabla.gamma(a, mu, mu);
    g.push_back(c);
  }
  std::optional<RatMatrix> h;
  if (nabla.fiber_pairing()) h = RatMatrix{{determinant(*nabla.fiber_pairing())}};
  return Connection(nabla.structure(), std::move(g), h);
}

Connection top_connection(StructurePtr E) {
  std::vector<PolyMatrix> g;
  for (int a = 0; a < E->r(); ++a) {
    PolyMatrix c(1, 1);
    for (int b = 0; b < E->r(); ++b) c(0, 0) += E->structure(a, b, b);
    g.push_back(c);
  }
  RatMatrix h{{determinant(E->pairing())}};
  return Connection(std::move(E), std::move(g), h);
}

LinearConnection zero_linear_connection(const CourantStructure& E) {
  return LinearConnection(E.n(), PolyMatrix(E.r(), E.r()));
}

BottConnections bott_connections(StructurePtr E, const LinearConnection& L) {
  const int n = E->n(), r = E->r();
  if (L.size() != static_cast<std::size_t>(n)) throw DomainError("linear connection needs n coefficient matrices");
  for (const auto& m : L)
    if (m.rows() != static_cast<std::size_t>(r) || m.cols() != static_cast<std::size_t>(r))
      throw DomainError("linear connection matrices must be r x r");
  const PolyMatrix g = to_poly(E->pairing()), gi = to_poly(E->inverse_pairing());
  const Var xs[] = {Var::x(1), Var::x(2), Var::x(3), Var::x(4), Var::x(5), Var::x(6)};

  std::vector<PolyMatrix> gE(r, PolyMatrix(r, r));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        Poly v = E->structure(a, b, c);
        for (int i = 0; i < n; ++i) {
          v += E->anchor(b, i) * L[i](a, c);
          Poly lg;  // <nabla_{d_i} e_a, e_b>
          for (int f = 0; f < r; ++f) lg += L[i](a, f) * g(f, b);
          if (lg.is_zero()) continue;
          for (int d = 0; d < r; ++d) v -= gi(c, d) * E->anchor(d, i) * lg;
        }
        gE[a](b, c) = v;
      }

  std::vector<PolyMatrix> gT(r, PolyMatrix(n, n)), gTs(r, PolyMatrix(n, n));
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Poly v = -partial(E->anchor(a, j), xs[i]);
        for (int b = 0; b < r; ++b) v += L[i](a, b) * E->anchor(b, j);
        gT[a](i, j) = v;
        gTs[a](j, i) = -v;
      }
  BottConnections out{Connection(E, std::move(gE), E->pairing()), std::nullopt, std::nullopt};
  if (n > 0) {
    out.on_TM = Connection(E, std::move(gT));
    out.on_TstarM = Connection(E, std::move(gTs));
  }
  return out;
}

}  // namespace courant
