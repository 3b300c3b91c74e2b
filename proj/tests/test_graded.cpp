#include "doctest.h"

#include "courant/error.hpp"
#include "courant/graded.hpp"
#include "courant/random.hpp"

using namespace courant;

namespace {

ContextPtr ctx_standard(int n) {
  RatMatrix g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) g(i, n + i) = g(n + i, i) = 1;
  return GradedContext::make(n, 2 * n, g);
}

int sgn_pow(int e) { return (e & 1) ? -1 : 1; }

}  // namespace

TEST_CASE("odd generators anticommute") {
  auto ctx = ctx_standard(2);
  auto x1 = GradedElem::xi(ctx, 0), x2 = GradedElem::xi(ctx, 1);
  CHECK(x1 * x2 == GradedElem::parse(ctx, "xi{1,2}"));
  CHECK(x2 * x1 == -GradedElem::parse(ctx, "xi{1,2}"));
  CHECK(GradedElem::parse(ctx, "xi{2,1}") == -GradedElem::parse(ctx, "xi{1,2}"));
  CHECK((x1 * x1).is_zero());
  auto p1 = GradedElem::p(ctx, 0), p2 = GradedElem::p(ctx, 1);
  CHECK((p1 * p2 - p2 * p1).is_zero());
}

TEST_CASE("generator brackets") {
  RatMatrix g{{Rat(2), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(-1)}};
  auto ctx = GradedContext::make(1, 3, g);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(pbracket(GradedElem::xi(ctx, a), GradedElem::xi(ctx, b)) == GradedElem(ctx, Poly(g(a, b))));
  auto x1sq = GradedElem(ctx, Poly::parse("x1^2"));
  CHECK(pbracket(GradedElem::p(ctx, 0), x1sq) == GradedElem(ctx, Poly::parse("2*x1")));
  CHECK(pbracket(GradedElem(ctx, Poly::parse("x1")), GradedElem::xi(ctx, 0)).is_zero());
  CHECK(pbracket(GradedElem::p(ctx, 0), GradedElem::xi(ctx, 0)).is_zero());
  CHECK(pbracket(GradedElem::xi(ctx, 2), GradedElem::eta(ctx, 2)) == GradedElem(ctx, Poly(1)));
  CHECK(pbracket(GradedElem::xi(ctx, 0), GradedElem::eta(ctx, 1)).is_zero());
}

TEST_CASE("contexts are validated") {
  CHECK_THROWS_AS(GradedContext::make(1, 2, RatMatrix{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}), DomainError);
  CHECK_THROWS_AS(GradedContext::make(1, 2, RatMatrix{{Rat(1), Rat(2)}, {Rat(0), Rat(1)}}), DomainError);
  auto a = ctx_standard(1), b = ctx_standard(2);
  CHECK_THROWS_AS(GradedElem::xi(a, 0) * GradedElem::xi(b, 0), ContextMismatch);
}

TEST_CASE("degree parts") {
  auto ctx = ctx_standard(1);
  auto e = GradedElem::parse(ctx, "xi{1} + p1");
  CHECK(degree_part(e, 2) == GradedElem::p(ctx, 0));
  CHECK(degree_part(GradedElem(ctx, Poly(5)), 0) == GradedElem(ctx, Poly(5)));
  CHECK(degree_part(GradedElem::parse(ctx, "xi{1,2}"), 3).is_zero());
  CHECK_FALSE(e.homogeneous_degree());
  CHECK(GradedElem::parse(ctx, "x1*xi{1,2}*p1").homogeneous_degree() == 4);
}

TEST_CASE("text round trip") {
  auto ctx = ctx_standard(2);
  const char* text = "1/2*x1*xi{1,3}*p2^2 - (x1 + 1)*xi{2}";
  auto e = GradedElem::parse(ctx, text);
  CHECK(GradedElem::parse(ctx, e.to_string()) == e);
  CHECK(GradedElem::parse(ctx, "xi{1}*p1").to_string() == "xi{1}*p1");
  CHECK_THROWS_AS(GradedElem::parse(ctx, "xi{5}"), ParseError);
  CHECK_THROWS_AS(GradedElem::parse(ctx, "p3"), ParseError);
  CHECK_THROWS_AS(GradedElem::parse(ctx, "x3"), ParseError);
}

TEST_CASE("keys of a degree") {
  auto ctx = ctx_standard(2);  // n=2, r=4
  CHECK(keys_of_degree(*ctx, 0).size() == 1);
  CHECK(keys_of_degree(*ctx, 1).size() == 4);
  CHECK(keys_of_degree(*ctx, 2).size() == 6 + 2);
  CHECK(keys_of_degree(*ctx, 3).size() == 4 + 4 * 2);
  for (const auto& k : keys_of_degree(*ctx, 4)) CHECK(k.degree() == 4);
}

TEST_CASE("Poisson algebra identities on random homogeneous elements") {
  RandomSource rng(1234);
  RatMatrix g{{Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(2)}};
  auto ctx = GradedContext::make(2, 3, g);
  for (int trial = 0; trial < 150; ++trial) {
    int da = rng.uniform(0, 4), db = rng.uniform(0, 4), dc = rng.uniform(0, 4);
    auto a = rng.graded(ctx, da, 2), b = rng.graded(ctx, db, 2), c = rng.graded(ctx, dc, 2);
    auto ab = pbracket(a, b);
    CHECK(ab.is_homogeneous(da + db - 2));
    CHECK(ab == -(sgn_pow(da * db) * pbracket(b, a)));
    CHECK(a * b == sgn_pow(da * db) * (b * a));
    CHECK((a * b) * c == a * (b * c));
    CHECK(pbracket(a, b * c) == pbracket(a, b) * c + sgn_pow(da * db) * (b * pbracket(a, c)));
    CHECK(pbracket(a, pbracket(b, c)) ==
          pbracket(pbracket(a, b), c) + sgn_pow((da - 2) * (db - 2)) * pbracket(b, pbracket(a, c)));
  }
}
