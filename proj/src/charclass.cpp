#include "courant/charclass.hpp"

#include <algorithm>
#include <numeric>

#include "courant/error.hpp"

namespace courant {

namespace {

Poly integrate_t(const Poly& p) { return integrate_param(p, Var::t(), Rat(0), Rat(1)); }
Poly d_dt(const Poly& p) { return partial(p, Var::t()); }

PolyMatrix poly_identity(std::size_t m) { return to_poly(RatMatrix::identity(m)); }

PolyMatrix map_matrix(const PolyMatrix& a, Poly (*fn)(const Poly&)) {
  PolyMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = fn(a(i, j));
  return out;
}

}  // namespace

Cochain chern(const Connection& nabla, int k) {
  if (k < 1) throw DomainError("Chern forms are indexed by k >= 1");
  return trace(power(curvature(nabla), k));
}

Connection at_time(const Connection& path, const Rat& t) {
  return path.map_coefficients([&](const Poly& p) { return substitute(p, Var::t(), t); });
}

Connection straight_line(const Connection& nabla0, const Connection& nabla1) {
  require_same_structure(*nabla0.structure(), *nabla1.structure());
  if (nabla0.m() != nabla1.m()) throw DomainError("connections on bundles of different rank");
  const Poly t = Poly::variable(Var::t());
  std::vector<PolyMatrix> g;
  for (std::size_t a = 0; a < nabla0.coefficients().size(); ++a) {
    const auto& g0 = nabla0.coefficients()[a];
    const auto& g1 = nabla1.coefficients()[a];
    PolyMatrix mix(g0.rows(), g0.cols());
    for (std::size_t i = 0; i < g0.rows(); ++i)
      for (std::size_t j = 0; j < g0.cols(); ++j) mix(i, j) = g0(i, j) + t * (g1(i, j) - g0(i, j));
    g.push_back(mix);
  }
  return Connection(nabla0.structure(), std::move(g), nabla0.fiber_pairing());
}

EndCochain difference(const Connection& nabla0, const Connection& nabla1) {
  require_same_structure(*nabla0.structure(), *nabla1.structure());
  return connection_form(nabla1) - connection_form(nabla0);
}

Cochain chern_simons(const Connection& path, int k) {
  if (k < 1) throw DomainError("Chern-Simons forms are indexed by k >= 1");
  EndCochain phi = connection_form(path).map_coefficients(d_dt);
  Cochain integrand = trace(phi * power(curvature(path), k - 1));
  return Rat(k) * integrand.map_coefficients(integrate_t);
}

Cochain cs_between(const Connection& nabla0, const Connection& nabla1, int k) {
  return chern_simons(straight_line(nabla0, nabla1), k);
}

Cochain cs1_closed_form(const Connection& nabla0, const Connection& nabla1) {
  return trace(difference(nabla0, nabla1));
}

Cochain cs2_closed_form(const Connection& nabla0, const Connection& nabla1) {
  EndCochain phi = difference(nabla0, nabla1);
  EndCochain total = Rat(2) * (phi * curvature(nabla0)) + phi * end_derivative(nabla0, phi) +
                     make_rat(2, 3) * (phi * phi * phi);
  return trace(total);
}

PolyMatrix unipotent_inverse(const PolyMatrix& u) {
  if (!u.is_square()) throw DomainError("gauge matrix must be square");
  const std::size_t m = u.rows();
  PolyMatrix id = poly_identity(m);
  PolyMatrix N = u - id;
  PolyMatrix inv = id, term = id;
  for (std::size_t j = 1; j <= m; ++j) {
    term = term * N;
    term = PolyMatrix(m, m) - term;  // (-N)^j
    if (term.is_zero()) break;
    inv = inv + term;
  }
  if (!(u * inv == id)) throw DomainError("gauge path is not unipotent");
  return inv;
}

GaugeTransgression gauge_transgression(const Connection& nabla, const PolyMatrix& u, int k) {
  if (k < 1) throw DomainError("Chern-Simons forms are indexed by k >= 1");
  if (u.rows() != static_cast<std::size_t>(nabla.m()) || !u.is_square())
    throw DomainError("gauge matrix must be m x m");
  PolyMatrix u0(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) u0(i, j) = substitute(u(i, j), Var::t(), Rat(0));
  if (!(u0 == poly_identity(u.rows()))) throw DomainError("gauge path must start at the identity");
  PolyMatrix ui = unipotent_inverse(u);
  Connection path = gauge_transform(nabla, u, ui);
  const auto& E = nabla.structure();
  EndCochain a = EndCochain::from_matrix(E, ui * map_matrix(u, d_dt));
  Cochain integrand = trace(a * power(curvature(nabla), k - 1));
  Cochain primitive = Rat(-k) * integrand.map_coefficients(integrate_t);
  return {chern_simons(path, k), primitive};
}

ModularCocycle modular_cocycle(const Connection& line, const Rat& scale, const Poly& root) {
  if (line.m() != 1) throw DomainError("modular cocycles need a line bundle (m = 1)");
  if (is_zero(scale)) throw DomainError("trivialization scale must be nonzero");
  if (root.is_zero()) throw DomainError("trivialization must be nonvanishing");
  if (!curvature(line).is_zero()) throw DomainError("modular cocycles need a flat connection");
  const auto& E = line.structure();
  const auto& ctx = E->context();
  GradedElem body(ctx);
  for (int a = 0; a < E->r(); ++a) {
    Poly v = Poly(2) * anchor_apply(*E, unit_vector(E->r(), a), root) + root * line.gamma(a, 0, 0);
    if (!v.is_zero()) body += v * GradedElem::eta(ctx, a);
  }
  return {Cochain(E, std::move(body), 1), root, scale};
}

UnimodularityCertificate unimodularity_certificate(const StructurePtr& E, int bound) {
  UnimodularityCertificate out{modular_cocycle(top_connection(E)).xi, std::nullopt, bound};
  auto res = certify_exact(out.xi, bound);
  if (res.exact) out.witness = res.witness;
  return out;
}

Cochain secondary_class(const StructurePtr& E, const LinearConnection& L, const RatMatrix& g, int k) {
  if (k < 1) throw DomainError("secondary classes are indexed by k >= 1");
  if (g.rows() != static_cast<std::size_t>(E->r()) || !g.is_square()) throw DomainError("metric must be r x r");
  if (!g.is_symmetric() || !is_positive_definite(g)) throw DomainError("metric must be symmetric positive definite");
  Connection nE = bott_connections(E, L).on_E;
  Connection ng = adjoint(nE, g);
  return cs_between(nE, ng, 2 * k - 1);
}

Cochain alternating_ad_trace(const StructurePtr& g, int m) {
  const int r = g->r();
  std::vector<PolyMatrix> ad(r, PolyMatrix(r, r));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) ad[a](c, b) = g->structure(a, b, c);
  std::map<std::vector<int>, Poly> comp;
  if (m >= 1 && m <= r) {
    // increasing index tuples
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + m, true);
    do {
      std::vector<int> tuple;
      for (int i = 0; i < r; ++i)
        if (pick[i]) tuple.push_back(i);
      std::vector<int> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      Poly total;
      do {
        int sign = 1;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j)
            if (perm[i] > perm[j]) sign = -sign;
        PolyMatrix prod = poly_identity(r);
        for (int i = 0; i < m; ++i) prod = prod * ad[tuple[perm[i]]];
        Poly tr;
        for (int i = 0; i < r; ++i) tr += prod(i, i);
        total += sign > 0 ? tr : -tr;
      } while (std::next_permutation(perm.begin(), perm.end()));
      comp[tuple] = total;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return from_skew_tensor(g, m, comp);
}

}  // namespace courant
