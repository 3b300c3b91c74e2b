#pragma once

// Chern and Chern-Simons forms, gauge transgression, modular cocycles and secondary classes.
//
//   ch_k = tr(F^k)      cs_k(nabla_t) = k int_0^1 tr(d/dt[nabla_t] F_t^{k-1}) dt
//
// A path of connections is a Connection whose coefficients are polynomial in t.

#include <optional>

#include "courant/cohomology.hpp"
#include "courant/connection.hpp"

namespace courant {

Cochain chern(const Connection& nabla, int k);

/// Coefficients with t replaced by a rational value.
Connection at_time(const Connection& path, const Rat& t);
/// nabla_0 + t (nabla_1 - nabla_0); the pairing of nabla_0 is kept.
Connection straight_line(const Connection& nabla0, const Connection& nabla1);
/// nabla_1 - nabla_0 as an End-valued 1-cochain.
EndCochain difference(const Connection& nabla0, const Connection& nabla1);

Cochain chern_simons(const Connection& path, int k);
Cochain cs_between(const Connection& nabla0, const Connection& nabla1, int k);
/// Closed forms for the straight line: cs_1 = tr(phi), cs_2 = tr(2 phi F_0 + phi D~_0 phi + 2/3 phi^3).
Cochain cs1_closed_form(const Connection& nabla0, const Connection& nabla1);
Cochain cs2_closed_form(const Connection& nabla0, const Connection& nabla1);

/// Gauge path u(t) = id + N(t) with N(0) = 0 and N nilpotent (DomainError otherwise).
struct GaugeTransgression {
  Cochain cs;         // cs_k of the path u_t(nabla)
  Cochain primitive;  // -k int_0^1 tr(u^{-1} u' F^{k-1}) dt, with dE(primitive) = cs
};
GaugeTransgression gauge_transgression(const Connection& nabla, const PolyMatrix& u, int k);
/// Polynomial inverse of a unipotent matrix.
PolyMatrix unipotent_inverse(const PolyMatrix& u);

/// xi with <xi, e_a> = g_a for a flat line representation nabla_{e_a} lambda = g_a lambda.
/// For the trivialization lambda' = c q^2 lambda the cocycle is xi + 2 dE(q)/q; `xi` holds the numerator
/// q xi + 2 dE q and `denominator` holds q.
struct ModularCocycle {
  Cochain xi;
  Poly denominator;
  Rat scale;
};
ModularCocycle modular_cocycle(const Connection& line, const Rat& scale = Rat(1), const Poly& root = Poly(1));

struct UnimodularityCertificate {
  Cochain xi;                     // modular cocycle of the top representation
  std::optional<Cochain> witness; // f with dE f = xi, when found within the bound
  int bound = 0;
};
UnimodularityCertificate unimodularity_certificate(const StructurePtr& E, int bound);

/// Representative cs_{2k-1}(nabla^E, nabla^{E,g}) of degree 4k - 3; g must be positive definite.
Cochain secondary_class(const StructurePtr& E, const LinearConnection& L, const RatMatrix& g, int k);

/// sum over permutations pi of S_m of sgn(pi) tr(ad_{e_pi(1)} ... ad_{e_pi(m)}), as an m-cochain of a
/// quadratic Lie algebra.
Cochain alternating_ad_trace(const StructurePtr& g, int m);

}  // namespace courant
