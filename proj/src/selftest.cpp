#include "courant/selftest.hpp"

#include <functional>

#include "courant/charclass.hpp"
#include "courant/error.hpp"
#include "courant/random.hpp"

namespace courant {

namespace {

std::vector<Section> random_sections(RandomSource& rng, const CourantStructure& E, int k) {
  std::vector<Section> out;
  for (int i = 0; i < k; ++i) out.push_back(rng.vec(E.r(), E.n(), 1));
  return out;
}

Cochain random_cochain(RandomSource& rng, const StructurePtr& E, int k) {
  return Cochain(E, rng.graded(E->context(), k, 1, 3), k);
}

Connection random_connection(RandomSource& rng, const StructurePtr& E, int m) {
  std::vector<PolyMatrix> g(E->r(), PolyMatrix(m, m));
  for (auto& mat : g)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (rng.coin()) mat(i, j) = rng.poly(E->n(), 1, 2);
  return Connection(E, std::move(g));
}

/// Runs `body` per instance; the body returns an empty string on success.
SuiteCheck run(const std::string& name, int instances, const std::function<std::string(int)>& body) {
  SuiteCheck c{name, true, 0, ""};
  try {
    for (int i = 0; i < instances; ++i) {
      std::string fail = body(i);
      ++c.instances;
      if (!fail.empty()) {
        c.pass = false;
        c.detail = "instance " + std::to_string(i) + ": " + fail;
        break;
      }
    }
  } catch (const Error& e) {
    c.pass = false;
    c.detail = e.what();
  }
  return c;
}

}  // namespace

std::vector<SuiteCheck> invariant_suite(const StructurePtr& E, std::uint64_t seed, int instances) {
  std::vector<SuiteCheck> out;
  RandomSource rng(seed);
  const int r = E->r();

  {
    AxiomReport rep = check_axioms(*E, seed);
    SuiteCheck c{"axioms", rep.all_pass(), 0, ""};
    for (const auto& res : rep.results) {
      c.instances += res.instances;
      if (!res.pass && c.detail.empty())
        c.detail = axiom_name(res.axiom) + " fails" + (res.witness ? ": residual " + res.witness->residual : "");
    }
    out.push_back(c);
  }
  if (!E->has_theta()) {
    out.push_back({"master_equation", false, 0, E->theta_error()});
    return out;
  }
  out.push_back(run("master_equation", 1, [&](int) {
    return pbracket(E->theta(), E->theta()).is_zero() ? "" : "{theta, theta} != 0";
  }));
  out.push_back(run("derived_brackets", 1, [&](int) -> std::string {
    for (int a = 0; a < r; ++a) {
      Section ea = unit_vector(r, a);
      for (int i = 0; i < E->n(); ++i) {
        Poly xi = Poly::variable(Var::x(i + 1));
        if (!(derived_anchor(*E, ea, xi) == E->anchor(a, i))) return "anchor of e" + std::to_string(a + 1);
      }
      for (int b = 0; b < r; ++b) {
        Section d = derived_bracket(*E, ea, unit_vector(r, b));
        for (int c = 0; c < r; ++c)
          if (!(d[c] == E->structure(a, b, c)))
            return "bracket of e" + std::to_string(a + 1) + ", e" + std::to_string(b + 1);
      }
    }
    return "";
  }));
  out.push_back(run("structure_cocycle", 1, [&](int) -> std::string {
    Cochain T = structure_cocycle(E);
    if (!dE(T).is_zero()) return "dE T != 0";
    if (!pbracket(T.body(), T.body()).is_zero()) return "{T, T} != 0";
    return "";
  }));
  out.push_back(run("cartan_relations", instances, [&](int i) -> std::string {
    int k = 1 + i % 3;
    Cochain w = random_cochain(rng, E, k);
    Section e = rng.vec(r, E->n(), 1), f = rng.vec(r, E->n(), 1);
    auto I = [&](const Section& x) { return [&, x](const Cochain& c) { return contract(x, c); }; };
    auto L = [&](const Section& x) { return [&, x](const Cochain& c) { return lie(x, c); }; };
    auto D = [](const Cochain& c) { return dE(c); };
    if (!dE(dE(w)).is_zero()) return "dE^2 != 0";
    if (!(graded_commutator(I(e), -1, D, 1, w) == lie(e, w))) return "[i_e, dE] != L_e";
    if (!graded_commutator(L(e), 0, D, 1, w).is_zero()) return "[L_e, dE] != 0";
    if (!(graded_commutator(L(e), 0, L(f), 0, w) == lie(bracket(*E, e, f), w))) return "[L_e, L_f] != L_[[e,f]]";
    if (!(graded_commutator(L(e), 0, I(f), -1, w) == contract(bracket(*E, e, f), w)))
      return "[L_e, i_f] != i_[[e,f]]";
    Cochain ii = contract(e, contract(f, w)) + contract(f, contract(e, w));
    Cochain pf(E, pbracket(GradedElem(E->context(), pairing(*E, e, f)), w.body()), k - 2 < 0 ? 0 : k - 2);
    if (k >= 2 && !(ii == pf)) return "[i_e, i_f] != {<e,f>, .}";
    return "";
  }));
  out.push_back(run("cartan_formulas", instances, [&](int i) -> std::string {
    int k = 1 + i % 3;
    Cochain w = random_cochain(rng, E, k);
    auto s = random_sections(rng, *E, k + 1);
    if (!(evaluate(dE(w), s) == cartan_dE_value(w, s))) return "dE formula";
    Section e = s.back();
    s.pop_back();
    if (!(evaluate(lie(e, w), s) == cartan_lie_value(e, w, s))) return "Lie derivative formula";
    return "";
  }));
  out.push_back(run("cup_shuffle", instances, [&](int i) -> std::string {
    int k = i % 3, m = (i / 3) % 2 + 1;
    Cochain a = random_cochain(rng, E, k), b = random_cochain(rng, E, m);
    auto s = random_sections(rng, *E, k + m);
    if (!(evaluate(cup(a, b), s) == shuffle_cup_value(a, b, s))) return "cup != shuffle product";
    Cochain ba = cup(b, a);
    if (!(cup(a, b) == ((k * m) % 2 ? -ba : ba))) return "graded commutativity";
    return "";
  }));
  out.push_back(run("connection_identities", instances, [&](int i) -> std::string {
    int m = 1 + i % 2;
    Connection nabla = random_connection(rng, E, m);
    EndCochain F = curvature(nabla);
    if (!end_derivative(nabla, F).is_zero()) return "Bianchi identity";
    BCochain b0 = BCochain::from_fiber_section(E, rng.vec(m, E->n(), 1));
    if (!(covariant_derivative(nabla, covariant_derivative(nabla, b0)) == F * b0)) return "D^2 != F";
    if (!dE(chern(nabla, 1)).is_zero() || (r <= 4 && !dE(chern(nabla, 2)).is_zero())) return "ch_k not closed";
    return "";
  }));
  out.push_back(run("bott_self_adjoint", 1, [&](int) -> std::string {
    auto bott = bott_connections(E, zero_linear_connection(*E));
    if (!(adjoint(bott.on_E) == bott.on_E)) return "nabla^E is not self-adjoint";
    if (!chern(bott.on_E, 1).is_zero()) return "ch_1(nabla^E) != 0";
    return "";
  }));
  out.push_back(run("unimodular", 1, [&](int) -> std::string {
    auto cert = unimodularity_certificate(E, 2);
    if (!dE(cert.xi).is_zero()) return "xi_top not closed";
    if (!cert.witness) return "no primitive of xi_top at bound 2";
    return "";
  }));
  return out;
}

}  // namespace courant
