#include "doctest.h"

#include "courant/cochain.hpp"
#include "courant/error.hpp"
#include "courant/random.hpp"

using namespace courant;

namespace {

std::vector<StructurePtr> family() {
  return {standard(1), standard(2), aff1_action(), direct_sum(*standard(1), *quadratic_lie("aff1_double")),
          silent(2, 3), quadratic_lie("so3")};
}

Cochain random_cochain(RandomSource& rng, const StructurePtr& E, int k) {
  return Cochain(E, rng.graded(E->context(), k, 2, 3), k);
}

std::vector<Section> random_sections(RandomSource& rng, const CourantStructure& E, int count) {
  std::vector<Section> s;
  for (int i = 0; i < count; ++i) s.push_back(rng.vec(E.r(), E.n(), 2));
  return s;
}

}  // namespace

TEST_CASE("T evaluates to the bracket pairing") {
  RandomSource rng(31);
  for (const auto& E : family()) {
    Cochain T = structure_cocycle(E);
    for (int k = 0; k < 5; ++k) {
      auto s = random_sections(rng, *E, 3);
      CHECK(evaluate(T, s) == pairing(*E, bracket(*E, s[0], s[1]), s[2]));
    }
    CHECK(dE(T).is_zero());
    CHECK(kw_poisson(T, T).is_zero());
  }
}

TEST_CASE("T matches the skew tensor of a quadratic Lie algebra") {
  for (auto name : {"so3", "sl2", "aff1_double"}) {
    auto E = quadratic_lie(name);
    std::map<std::vector<int>, Poly> comp;
    for (int a = 0; a < E->r(); ++a)
      for (int b = 0; b < E->r(); ++b)
        for (int c = 0; c < E->r(); ++c) {
          Poly t;
          for (int d = 0; d < E->r(); ++d) t += E->structure(a, b, d) * Poly(E->pairing()(d, c));
          comp[{a, b, c}] = t;
        }
    CHECK(from_skew_tensor(E, 3, comp) == structure_cocycle(E));
  }
}

TEST_CASE("low-degree constructors") {
  auto E = standard(2);
  RandomSource rng(8);
  CHECK(from_function(E, Poly()).is_zero());
  Poly f = rng.poly(2, 3);
  CHECK(evaluate(from_function(E, f), {}) == f);
  for (int k = 0; k < 10; ++k) {
    auto s = random_sections(rng, *E, 2);
    CHECK(evaluate(from_section(E, s[0]), {s[1]}) == pairing(*E, s[0], s[1]));
    CHECK(kw_poisson(from_section(E, s[0]), from_section(E, s[1])) ==
          from_function(E, pairing(*E, s[0], s[1])));
  }
  CHECK(kw_poisson(from_function(E, f), from_function(E, rng.poly(2, 2))).is_zero());
  CHECK_THROWS_AS(evaluate(from_section(E, rng.vec(4, 2, 1)), {}), DomainError);
}

TEST_CASE("skew tensors evaluate to their components") {
  auto E = quadratic_lie("aff1_double");
  std::map<std::vector<int>, Poly> comp{{{0, 1, 3}, Poly(2)}, {{1, 2, 3}, Poly(make_rat(-1, 2))}};
  Cochain w = from_skew_tensor(E, 3, comp);
  auto e = [&](int a) { return unit_vector(4, a); };
  CHECK(evaluate(w, {e(0), e(1), e(3)}) == Poly(2));
  CHECK(evaluate(w, {e(1), e(0), e(3)}) == Poly(-2));
  CHECK(evaluate(w, {e(3), e(1), e(0)}) == Poly(-2));
  CHECK(evaluate(w, {e(2), e(3), e(1)}) == Poly(make_rat(-1, 2)));
  CHECK(evaluate(w, {e(0), e(2), e(3)}).is_zero());
  CHECK(symbol(w, {e(2)}) == VectorField{});
  CHECK_THROWS_AS(from_skew_tensor(E, 2, {{{0, 1}, Poly(1)}, {{1, 0}, Poly(1)}}), DomainError);
  CHECK_THROWS_AS(from_skew_tensor(E, 2, {{{1, 1}, Poly(1)}}), DomainError);
}

TEST_CASE("symbols") {
  auto E = standard(1);
  const auto& ctx = E->context();
  // sigma of -p1 is d1
  Cochain w(E, -GradedElem::p(ctx, 0), 2);
  CHECK(symbol(w, {}) == VectorField{Poly(1)});
  // C-infinity-linear skew forms have zero symbol
  auto S = standard(2);
  Cochain skew = from_skew_tensor(S, 2, {{{0, 3}, Poly::parse("x1*x2")}, {{1, 2}, Poly(3)}});
  CHECK(is_zero(symbol(skew, {})));
  // the symbol of T is the anchor, by C2
  RandomSource rng(4);
  for (const auto& F : family()) {
    if (F->n() == 0) continue;
    Cochain T = structure_cocycle(F);
    for (int k = 0; k < 4; ++k) {
      Section e = rng.vec(F->r(), F->n(), 2);
      CHECK(symbol(T, {e}) == anchor_of(*F, e));
    }
    for (int a = 0; a < F->r(); ++a) CHECK(symbol(T, {unit_vector(F->r(), a)}) == anchor_of(*F, unit_vector(F->r(), a)));
  }
}

TEST_CASE("symbol defect identity on random cochains") {
  RandomSource rng(77);
  int checked = 0;
  for (const auto& E : family()) {
    for (int trial = 0; trial < 6; ++trial) {
      int k = rng.uniform(2, 4);
      Cochain w = random_cochain(rng, E, k);
      auto s = random_sections(rng, *E, k);
      for (int i = 0; i + 1 < k; ++i) {
        CHECK(symbol_defect(w, s, i).is_zero());
        ++checked;
      }
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("C-infinity linearity in the last entry") {
  RandomSource rng(12);
  for (const auto& E : family()) {
    int k = rng.uniform(1, 4);
    Cochain w = random_cochain(rng, E, k);
    auto s = random_sections(rng, *E, k);
    Poly f = rng.poly(E->n(), 2);
    auto fs = s;
    fs.back() = f * fs.back();
    CHECK(evaluate(w, fs) == f * evaluate(w, s));
  }
}

TEST_CASE("dE on functions and the T cocycle") {
  RandomSource rng(5);
  for (const auto& E : family()) {
    Poly f = rng.poly(E->n(), 3);
    Section e = rng.vec(E->r(), E->n(), 2);
    CHECK(evaluate(dE(from_function(E, f)), {e}) == anchor_apply(*E, e, f));
  }
}

TEST_CASE("contractions do not anticommute") {
  RandomSource rng(6);
  for (const auto& E : family()) {
    for (int trial = 0; trial < 3; ++trial) {
      int k = rng.uniform(2, 4);
      Cochain w = random_cochain(rng, E, k);
      Section e = rng.vec(E->r(), E->n(), 1), f = rng.vec(E->r(), E->n(), 1);
      Cochain lhs = contract(e, contract(f, w)) + contract(f, contract(e, w));
      Cochain rhs(E, pbracket(GradedElem(E->context(), pairing(*E, e, f)), w.body()), k - 2);
      CHECK(lhs == rhs);
      // contraction is insertion in the first slot
      auto s = random_sections(rng, *E, k - 1);
      std::vector<Section> full{e};
      full.insert(full.end(), s.begin(), s.end());
      CHECK(evaluate(contract(e, w), s) == evaluate(w, full));
    }
  }
}

TEST_CASE("Cartan relations and formulas on random instances") {
  RandomSource rng(2718);
  int instances = 0;
  auto fam = family();
  for (int trial = 0; trial < 120; ++trial) {
    const auto& E = fam[trial % fam.size()];
    int k = rng.uniform(1, 4);
    Cochain w = random_cochain(rng, E, k);
    Section e = rng.vec(E->r(), E->n(), 2), f = rng.vec(E->r(), E->n(), 2);
    auto I = [&](const Section& x) { return [&, x](const Cochain& c) { return contract(x, c); }; };
    auto L = [&](const Section& x) { return [&, x](const Cochain& c) { return lie(x, c); }; };
    auto D = [](const Cochain& c) { return dE(c); };
    CHECK(dE(dE(w)).is_zero());
    CHECK(graded_commutator(I(e), -1, D, 1, w) == lie(e, w));
    CHECK(graded_commutator(L(e), 0, D, 1, w).is_zero());
    CHECK(graded_commutator(L(e), 0, L(f), 0, w) == lie(bracket(*E, e, f), w));
    CHECK(graded_commutator(L(e), 0, I(f), -1, w) == contract(bracket(*E, e, f), w));
    auto s = random_sections(rng, *E, k + 1);
    CHECK(evaluate(dE(w), s) == cartan_dE_value(w, s));
    s.pop_back();
    CHECK(evaluate(lie(e, w), s) == cartan_lie_value(e, w, s));
    ++instances;
  }
  CHECK(instances >= 100);
}

TEST_CASE("cup product is the shuffle product") {
  RandomSource rng(161);
  auto fam = family();
  for (int trial = 0; trial < 100; ++trial) {
    const auto& E = fam[trial % fam.size()];
    int k = rng.uniform(0, 2), m = rng.uniform(0, 2);
    Cochain a = random_cochain(rng, E, k), b = random_cochain(rng, E, m);
    auto s = random_sections(rng, *E, k + m);
    CHECK(evaluate(cup(a, b), s) == shuffle_cup_value(a, b, s));
    Cochain ba = cup(b, a);
    CHECK(cup(a, b) == ((k * m) % 2 ? -ba : ba));
  }
  auto E = standard(2);
  Poly f = Poly::parse("x1 - x2^2");
  Cochain w = random_cochain(rng, E, 3);
  CHECK(cup(from_function(E, f), w) == f * w);
}

TEST_CASE("shuffles") {
  auto sh = shuffles(2, 1);
  REQUIRE(sh.size() == 3);
  CHECK(sh[0].perm == std::vector<int>{0, 1, 2});
  CHECK(sh[0].sign == 1);
  CHECK(sh[1].perm == std::vector<int>{0, 2, 1});
  CHECK(sh[1].sign == -1);
  CHECK(sh[2].perm == std::vector<int>{1, 2, 0});
  CHECK(sh[2].sign == 1);
  CHECK(shuffles(2, 2).size() == 6);
}

TEST_CASE("a 2-cochain with nonzero square in the zero-anchor case") {
  auto E = silent(1, 2);
  // Delta = X d/dx on sections, skew for the identity pairing
  VectorField X{Poly(1)};
  Cochain w = from_cdo(E, X, PolyMatrix(2, 2));
  CHECK(symbol(w, {}) == X);
  CHECK(dE(w).is_zero());
  RandomSource rng(2);
  for (int k = 0; k < 10; ++k) {
    Section e = rng.vec(2, 1, 2);
    Poly wee = evaluate(w, {e, e});
    CHECK(wee == make_rat(1, 2) * apply_field(symbol(w, {}), pairing(*E, e, e)));
    CHECK(evaluate(cup(w, w), {e, e, e, e}) == Poly(2) * wee * wee);
    if (!wee.is_zero()) CHECK_FALSE(evaluate(cup(w, w), {e, e, e, e}).is_zero());
  }
  Section e{Poly::parse("x1"), Poly()};
  CHECK(evaluate(cup(w, w), {e, e, e, e}) == Poly::parse("2*x1^2"));
}

TEST_CASE("CDO constructor checks skewness") {
  auto E = standard(1);
  PolyMatrix M(2, 2);
  M(0, 0) = Poly(1);  // M g = [[0, 1], [0, 0]]
  CHECK_THROWS_AS(from_cdo(E, VectorField{Poly()}, M), DomainError);
  PolyMatrix N(2, 2);
  N(0, 0) = Poly(1);
  N(1, 1) = Poly(-1);  // N g = [[0, 1], [-1, 0]]
  Cochain w = from_cdo(E, VectorField{Poly::parse("x1")}, N);
  auto e = [](int a) { return unit_vector(2, a); };
  CHECK(evaluate(w, {e(0), e(1)}) == Poly(1));
  CHECK(evaluate(w, {e(1), e(0)}) == Poly(-1));
  CHECK(symbol(w, {}) == VectorField{Poly::parse("x1")});
}
