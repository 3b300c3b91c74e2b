#include "courant/courant.hpp"

#include <algorithm>
#include <sstream>

#include "courant/error.hpp"
#include "courant/random.hpp"

namespace courant {

std::string to_string(const PolyVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

StructurePtr CourantStructure::make(RatMatrix pairing, PolyMatrix anchor, std::vector<PolyMatrix> c, std::string name) {
  const int r = static_cast<int>(pairing.rows());
  const int n = static_cast<int>(anchor.cols());
  if (anchor.rows() != static_cast<std::size_t>(r))
    throw DomainError("anchor must have one row per frame element (" + std::to_string(r) + ")");
  if (c.size() != static_cast<std::size_t>(r)) throw DomainError("structure functions must form an r x r x r table");
  for (const auto& m : c)
    if (m.rows() != static_cast<std::size_t>(r) || m.cols() != static_cast<std::size_t>(r))
      throw DomainError("structure functions must form an r x r x r table");
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      if (coordinates_used(anchor(a, i)) > n) throw DomainError("anchor uses a coordinate beyond n");
  for (const auto& m : c)
    for (int b = 0; b < r; ++b)
      for (int d = 0; d < r; ++d)
        if (coordinates_used(m(b, d)) > n) throw DomainError("structure function uses a coordinate beyond n");

  std::shared_ptr<CourantStructure> E(new CourantStructure());
  E->ctx_ = GradedContext::make(n, r, std::move(pairing));
  E->anchor_ = std::move(anchor);
  E->c_ = std::move(c);
  E->name_ = std::move(name);

  GradedElem theta = build_theta_candidate(*E);
  std::ostringstream problem;
  const auto& ctx = E->ctx_;
  for (int a = 0; a < r && problem.str().empty(); ++a) {
    GradedElem ea_theta = pbracket(GradedElem::xi(ctx, a), theta);
    for (int i = 0; i < n; ++i) {
      GradedElem got = pbracket(ea_theta, GradedElem(ctx, Poly::variable(Var::x(i + 1))));
      if (!(got == GradedElem(ctx, E->anchor_(a, i)))) {
        problem << "derived anchor of e" << a + 1 << " on x" << i + 1 << " is " << got.to_string() << ", expected "
                << E->anchor_(a, i).to_string();
        break;
      }
    }
    for (int b = 0; b < r && problem.str().empty(); ++b) {
      GradedElem got = pbracket(ea_theta, GradedElem::xi(ctx, b));
      GradedElem want(ctx);
      for (int d = 0; d < r; ++d) want += E->c_[a](b, d) * GradedElem::xi(ctx, d);
      if (!(got == want))
        problem << "derived bracket [[e" << a + 1 << ", e" << b + 1 << "]] is " << got.to_string() << ", expected "
                << want.to_string();
    }
  }
  if (problem.str().empty()) {
    GradedElem tt = pbracket(theta, theta);
    if (!tt.is_zero()) problem << "{theta, theta} = " << tt.to_string();
  }
  if (problem.str().empty()) E->theta_ = std::move(theta);
  else E->theta_error_ = problem.str();
  return E;
}

const GradedElem& CourantStructure::theta() const {
  if (!theta_) throw StructureError("not a Courant algebroid: " + theta_error_);
  return *theta_;
}

int CourantStructure::data_degree() const {
  int d = 0;
  for (int a = 0; a < r(); ++a) {
    for (int i = 0; i < n(); ++i) d = std::max(d, anchor_(a, i).coordinate_degree());
    for (int b = 0; b < r(); ++b)
      for (int e = 0; e < r(); ++e) d = std::max(d, c_[a](b, e).coordinate_degree());
  }
  return d;
}

namespace {

std::vector<PolyMatrix> zero_tables(int r) { return std::vector<PolyMatrix>(r, PolyMatrix(r, r)); }

RatMatrix split_pairing(int n) {
  RatMatrix g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) g(i, n + i) = g(n + i, i) = 1;
  return g;
}

PolyMatrix standard_anchor(int n) {
  PolyMatrix rho(2 * n, n);
  for (int i = 0; i < n; ++i) rho(i, i) = Poly(1);
  return rho;
}

}  // namespace

StructurePtr standard(int n) {
  if (n < 1 || n > kMaxCoords) throw DomainError("standard(n) needs 1 <= n <= " + std::to_string(kMaxCoords));
  return CourantStructure::make(split_pairing(n), standard_anchor(n), zero_tables(2 * n),
                                "standard(" + std::to_string(n) + ")");
}

namespace {

StructurePtr twisted(int n, const std::vector<std::vector<std::vector<Poly>>>& H, std::string name) {
  if (n < 1 || n > kMaxCoords) throw DomainError("standard_twisted needs 1 <= n <= " + std::to_string(kMaxCoords));
  if (H.size() != static_cast<std::size_t>(n)) throw DomainError("H must be an n x n x n table");
  for (const auto& s : H) {
    if (s.size() != static_cast<std::size_t>(n)) throw DomainError("H must be an n x n x n table");
    for (const auto& t : s)
      if (t.size() != static_cast<std::size_t>(n)) throw DomainError("H must be an n x n x n table");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Poly& h = H[i][j][k];
        if (!(H[j][i][k] == -h) || !(H[i][k][j] == -h)) throw DomainError("H is not totally antisymmetric");
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          Poly dh = partial(H[j][k][l], Var::x(i + 1)) - partial(H[i][k][l], Var::x(j + 1)) +
                    partial(H[i][j][l], Var::x(k + 1)) - partial(H[i][j][k], Var::x(l + 1));
          if (!dh.is_zero()) throw DomainError("H is not closed");
        }
  auto c = zero_tables(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c[i](j, n + k) = H[j][i][k];
  return CourantStructure::make(split_pairing(n), standard_anchor(n), std::move(c), std::move(name));
}

}  // namespace

StructurePtr standard_twisted(int n, const std::vector<std::vector<std::vector<Poly>>>& H) {
  return twisted(n, H, "standard_twisted(" + std::to_string(n) + ")");
}

StructurePtr standard_twisted(int n, const Rat& c) {
  if (n < 3) throw DomainError("H = c dx1^dx2^dx3 needs n >= 3");
  std::vector<std::vector<std::vector<Poly>>> H(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n)));
  const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  for (int p = 0; p < 6; ++p) H[perm[p][0]][perm[p][1]][perm[p][2]] = Poly(p < 3 ? c : Rat(-c));
  return twisted(n, H, "standard_twisted(" + std::to_string(n) + ", " + to_string(c) + ")");
}

StructurePtr quadratic_lie(const std::string& name) {
  if (name == "so3") {
    auto c = zero_tables(3);
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      c[i](j, k) = Poly(1);
      c[j](i, k) = Poly(-1);
    }
    RatMatrix g(3, 3);
    for (int i = 0; i < 3; ++i) g(i, i) = -2;
    return CourantStructure::make(g, PolyMatrix(3, 0), std::move(c), "so3");
  }
  if (name == "sl2") {
    // basis h, e, f
    auto c = zero_tables(3);
    c[0](1, 1) = Poly(2);
    c[1](0, 1) = Poly(-2);
    c[0](2, 2) = Poly(-2);
    c[2](0, 2) = Poly(2);
    c[1](2, 0) = Poly(1);
    c[2](1, 0) = Poly(-1);
    RatMatrix g(3, 3);
    g(0, 0) = 8;
    g(1, 2) = g(2, 1) = 4;
    return CourantStructure::make(g, PolyMatrix(3, 0), std::move(c), "sl2");
  }
  if (name == "aff1_double") {
    // a, b span aff(1) with [a,b] = b; alpha, beta the dual basis, coadjoint action
    auto c = zero_tables(4);
    auto set = [&](int x, int y, int z, long v) {
      c[x](y, z) = Poly(v);
      c[y](x, z) = Poly(-v);
    };
    set(0, 1, 1, 1);
    set(0, 3, 3, -1);
    set(1, 3, 2, 1);
    return CourantStructure::make(split_pairing(2), PolyMatrix(4, 0), std::move(c), "aff1_double");
  }
  throw DomainError("unknown quadratic Lie algebra '" + name + "' (known: so3, sl2, aff1_double)");
}

StructurePtr abelian(int d) {
  if (d < 1 || d > kMaxRank) throw DomainError("abelian(d) needs 1 <= d <= " + std::to_string(kMaxRank));
  return CourantStructure::make(RatMatrix::identity(d), PolyMatrix(d, 0), zero_tables(d),
                                "abelian(" + std::to_string(d) + ")");
}

StructurePtr silent(int n, int r) {
  if (n < 0 || n > kMaxCoords || r < 1 || r > kMaxRank) throw DomainError("silent(n, r) out of range");
  return CourantStructure::make(RatMatrix::identity(r), PolyMatrix(r, n), zero_tables(r),
                                "silent(" + std::to_string(n) + ", " + std::to_string(r) + ")");
}

StructurePtr aff1_action() {
  auto D = quadratic_lie("aff1_double");
  PolyMatrix rho(4, 1);
  rho(0, 0) = Poly::parse("-x1");
  rho(1, 0) = Poly(1);
  std::vector<PolyMatrix> c;
  for (int a = 0; a < 4; ++a) {
    PolyMatrix m(4, 4);
    for (int b = 0; b < 4; ++b)
      for (int d = 0; d < 4; ++d) m(b, d) = D->structure(a, b, d);
    c.push_back(m);
  }
  return CourantStructure::make(D->pairing(), rho, std::move(c), "aff1_action");
}

StructurePtr direct_sum(const CourantStructure& E, const CourantStructure& F) {
  if (F.n() != 0) throw DomainError("direct_sum: second summand must live over a point");
  const int r = E.r() + F.r(), n = E.n();
  RatMatrix g(r, r);
  PolyMatrix rho(r, n);
  std::vector<PolyMatrix> c(r, PolyMatrix(r, r));
  for (int a = 0; a < E.r(); ++a) {
    for (int b = 0; b < E.r(); ++b) {
      g(a, b) = E.pairing()(a, b);
      for (int d = 0; d < E.r(); ++d) c[a](b, d) = E.structure(a, b, d);
    }
    for (int i = 0; i < n; ++i) rho(a, i) = E.anchor(a, i);
  }
  const int o = E.r();
  for (int a = 0; a < F.r(); ++a)
    for (int b = 0; b < F.r(); ++b) {
      g(o + a, o + b) = F.pairing()(a, b);
      for (int d = 0; d < F.r(); ++d) c[o + a](o + b, o + d) = F.structure(a, b, d);
    }
  return CourantStructure::make(g, rho, std::move(c), E.name() + " + " + F.name());
}

Section zero_section(const CourantStructure& E) { return Section(E.r()); }

namespace {

void check_len(const CourantStructure& E, const Section& s) {
  if (s.size() != static_cast<std::size_t>(E.r()))
    throw DomainError("section has " + std::to_string(s.size()) + " components, expected " + std::to_string(E.r()));
}

}  // namespace

Poly pairing(const CourantStructure& E, const Section& a, const Section& b) {
  check_len(E, a);
  check_len(E, b);
  Poly s;
  const auto& g = E.pairing();
  for (int i = 0; i < E.r(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < E.r(); ++j)
      if (!is_zero(g(i, j)) && !b[j].is_zero()) s += g(i, j) * (a[i] * b[j]);
  }
  return s;
}

VectorField anchor_of(const CourantStructure& E, const Section& e) {
  check_len(E, e);
  VectorField X(E.n());
  for (int a = 0; a < E.r(); ++a) {
    if (e[a].is_zero()) continue;
    for (int i = 0; i < E.n(); ++i)
      if (!E.anchor(a, i).is_zero()) X[i] += e[a] * E.anchor(a, i);
  }
  return X;
}

Poly anchor_apply(const CourantStructure& E, const Section& e, const Poly& f) { return apply_field(anchor_of(E, e), f); }

Section rho_star(const CourantStructure& E, const PolyVec& covector) {
  if (covector.size() != static_cast<std::size_t>(E.n())) throw DomainError("covector length must equal n");
  PolyVec w(E.r());  // rho^T alpha, a covector on E
  for (int b = 0; b < E.r(); ++b)
    for (int i = 0; i < E.n(); ++i)
      if (!E.anchor(b, i).is_zero() && !covector[i].is_zero()) w[b] += E.anchor(b, i) * covector[i];
  Section s(E.r());
  const auto& gi = E.inverse_pairing();
  for (int a = 0; a < E.r(); ++a)
    for (int b = 0; b < E.r(); ++b)
      if (!is_zero(gi(a, b)) && !w[b].is_zero()) s[a] += gi(a, b) * w[b];
  return s;
}

Section dee(const CourantStructure& E, const Poly& f) {
  PolyVec df(E.n());
  for (int i = 0; i < E.n(); ++i) df[i] = partial(f, Var::x(i + 1));
  return rho_star(E, df);
}

Section bracket(const CourantStructure& E, const Section& a, const Section& b) {
  check_len(E, a);
  check_len(E, b);
  const int r = E.r();
  Section out(r);
  for (int c = 0; c < r; ++c) {
    if (a[c].is_zero()) continue;
    // a^c [[e_c, b]]
    Section ecb(r);
    for (int d = 0; d < r; ++d) {
      if (b[d].is_zero()) continue;
      ecb[d] += anchor_apply(E, unit_vector(r, c), b[d]);
      for (int k = 0; k < r; ++k)
        if (!E.structure(c, d, k).is_zero()) ecb[k] += b[d] * E.structure(c, d, k);
    }
    out += a[c] * ecb;
    // <e_c, b> D a^c
    Poly ecb_pair = pairing(E, unit_vector(r, c), b);
    if (!ecb_pair.is_zero()) out += ecb_pair * dee(E, a[c]);
  }
  VectorField rb = anchor_of(E, b);
  for (int c = 0; c < r; ++c) out[c] -= apply_field(rb, a[c]);
  return out;
}

GradedElem lift(const CourantStructure& E, const Section& e) {
  check_len(E, e);
  GradedElem x(E.context());
  for (int a = 0; a < E.r(); ++a)
    if (!e[a].is_zero()) x += e[a] * GradedElem::xi(E.context(), a);
  return x;
}

Section section_of(const CourantStructure& E, const GradedElem& e) {
  require_same_context(E.context(), e.context());
  Section s(E.r());
  for (const auto& [k, c] : e.terms()) {
    if (k.degree() != 1) throw DomainError("not a degree-1 element: " + e.to_string());
    s[std::countr_zero(k.xi)] += c;
  }
  return s;
}

GradedElem build_theta_candidate(const CourantStructure& E) {
  const auto& ctx = E.context();
  const int r = E.r(), n = E.n();
  std::vector<GradedElem> eta;
  for (int a = 0; a < r; ++a) eta.push_back(GradedElem::eta(ctx, a));
  GradedElem theta(ctx);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      if (!E.anchor(a, i).is_zero()) theta += E.anchor(a, i) * (eta[a] * GradedElem::p(ctx, i));
  const auto& g = E.pairing();
  const Rat sixth(1, 6);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      if (a == b) continue;
      GradedElem ab = eta[a] * eta[b];
      for (int c = 0; c < r; ++c) {
        if (c == a || c == b) continue;
        Poly T;
        for (int d = 0; d < r; ++d)
          if (!is_zero(g(d, c)) && !E.structure(a, b, d).is_zero()) T += g(d, c) * E.structure(a, b, d);
        if (!T.is_zero()) theta -= (sixth * T) * (ab * eta[c]);
      }
    }
  return theta;
}

Poly derived_anchor(const CourantStructure& E, const Section& e, const Poly& f) {
  return pbracket(pbracket(lift(E, e), E.theta()), GradedElem(E.context(), f)).scalar_part();
}

Section derived_bracket(const CourantStructure& E, const Section& a, const Section& b) {
  return section_of(E, pbracket(pbracket(lift(E, a), E.theta()), lift(E, b)));
}

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::C1: return "C1";
    case Axiom::C2: return "C2";
    case Axiom::C3: return "C3";
    case Axiom::C4: return "C4";
    case Axiom::A1: return "A1";
    case Axiom::A2: return "A2";
  }
  return "?";
}

bool AxiomReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

const AxiomResult& AxiomReport::result(Axiom a) const {
  for (const auto& r : results)
    if (r.axiom == a) return r;
  throw DomainError("axiom not in report");
}

PolyVec axiom_residual(const CourantStructure& E, Axiom axiom, const std::vector<Section>& s, const Poly& f) {
  auto need = [&](std::size_t k) {
    if (s.size() != k) throw DomainError(axiom_name(axiom) + " takes " + std::to_string(k) + " sections");
  };
  switch (axiom) {
    case Axiom::C1: {
      need(2);
      return bracket(E, s[0], f * s[1]) - (anchor_apply(E, s[0], f) * s[1] + f * bracket(E, s[0], s[1]));
    }
    case Axiom::C2: {
      need(3);
      Poly lhs = anchor_apply(E, s[0], pairing(E, s[1], s[2]));
      Poly rhs = pairing(E, bracket(E, s[0], s[1]), s[2]) + pairing(E, s[1], bracket(E, s[0], s[2]));
      return {lhs - rhs};
    }
    case Axiom::C3: {
      need(3);
      return bracket(E, s[0], bracket(E, s[1], s[2])) -
             (bracket(E, bracket(E, s[0], s[1]), s[2]) + bracket(E, s[1], bracket(E, s[0], s[2])));
    }
    case Axiom::C4: {
      need(2);
      return bracket(E, s[0], s[1]) + bracket(E, s[1], s[0]) - dee(E, pairing(E, s[0], s[1]));
    }
    case Axiom::A1: {
      need(2);
      return anchor_of(E, bracket(E, s[0], s[1])) - lie_bracket(anchor_of(E, s[0]), anchor_of(E, s[1]));
    }
    case Axiom::A2: {
      need(0);
      return anchor_of(E, dee(E, f));
    }
  }
  return {};
}

bool replay(const CourantStructure& E, const AxiomWitness& w) {
  return !is_zero(axiom_residual(E, w.axiom, w.sections, w.function));
}

AxiomReport check_axioms(const CourantStructure& E, std::uint64_t seed, int random_instances) {
  AxiomReport report;
  report.seed = seed;
  const int r = E.r(), n = E.n();
  auto frame = [&](int a) { return unit_vector(r, a); };
  auto run = [&](AxiomResult& res, const std::vector<Section>& s, const Poly& f) {
    ++res.instances;
    if (!res.pass) return;
    PolyVec resid = axiom_residual(E, res.axiom, s, f);
    if (!is_zero(resid)) {
      res.pass = false;
      res.witness = AxiomWitness{res.axiom, s, f, to_string(resid)};
    }
  };
  RandomSource rng(seed);
  auto rand_section = [&] {
    Section s(r);
    for (auto& c : s) c = rng.poly(n, 2, 2);
    return s;
  };
  auto rand_fn = [&] { return rng.poly(n, 2, 3); };
  auto coord = [&](int i) { return n == 0 ? Poly(1) : Poly::variable(Var::x(i % n + 1)); };

  for (Axiom ax : {Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::A1, Axiom::A2}) {
    AxiomResult res;
    res.axiom = ax;
    switch (ax) {
      case Axiom::C1:
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) run(res, {frame(a), frame(b)}, coord(a + b) * coord(b));
        for (int k = 0; k < random_instances; ++k) run(res, {rand_section(), rand_section()}, rand_fn());
        break;
      case Axiom::C2:
      case Axiom::C3:
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c) run(res, {frame(a), frame(b), frame(c)}, Poly());
        for (int k = 0; k < random_instances; ++k) run(res, {rand_section(), rand_section(), rand_section()}, Poly());
        break;
      case Axiom::C4:
      case Axiom::A1:
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) run(res, {frame(a), frame(b)}, Poly());
        for (int k = 0; k < random_instances; ++k) run(res, {rand_section(), rand_section()}, Poly());
        break;
      case Axiom::A2:
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) run(res, {}, coord(i) * coord(j));
        for (int k = 0; k < random_instances; ++k) run(res, {}, rand_fn());
        break;
    }
    report.results.push_back(std::move(res));
  }
  return report;
}

StructurePtr mutate_structure(const CourantStructure& E, int a, int b, int d, const Rat& delta) {
  const int r = E.r();
  if (a < 0 || b < 0 || d < 0 || a >= r || b >= r || d >= r) throw DomainError("mutation index out of range");
  std::vector<PolyMatrix> c;
  for (int x = 0; x < r; ++x) {
    PolyMatrix m(r, r);
    for (int y = 0; y < r; ++y)
      for (int z = 0; z < r; ++z) m(y, z) = E.structure(x, y, z);
    c.push_back(m);
  }
  c[a](b, d) += Poly(delta);
  return CourantStructure::make(E.pairing(), E.anchor(), std::move(c), E.name() + " (mutated)");
}

}  // namespace courant
