#include "courant/cochain.hpp"

#include <algorithm>
#include <numeric>

#include "courant/cartan.hpp"
#include "courant/error.hpp"

namespace courant {

void require_same_structure(const CourantStructure& a, const CourantStructure& b) {
  if (&a == &b) return;
  bool same = a.context()->same_as(*b.context()) && a.anchor() == b.anchor();
  for (int x = 0; same && x < a.r(); ++x)
    for (int y = 0; same && y < a.r(); ++y)
      for (int z = 0; same && z < a.r(); ++z) same = a.structure(x, y, z) == b.structure(x, y, z);
  if (!same) throw ContextMismatch("cochains over different Courant algebroids");
}

Cochain::Cochain(StructurePtr E, int k) : E_(std::move(E)), body_(E_->context()), k_(k) {
  if (k < 0) throw DomainError("cochain degree must be non-negative");
}

Cochain::Cochain(StructurePtr E, GradedElem body, int k) : E_(std::move(E)), body_(std::move(body)), k_(k) {
  if (k < 0) throw DomainError("cochain degree must be non-negative");
  require_same_context(E_->context(), body_.context());
  if (!body_.is_homogeneous(k)) throw DomainError("body is not homogeneous of degree " + std::to_string(k));
}

Cochain::Cochain(StructurePtr E, GradedElem body) : E_(std::move(E)), body_(std::move(body)), k_(0) {
  require_same_context(E_->context(), body_.context());
  auto d = body_.homogeneous_degree();
  if (!d) throw DomainError("cochain body must be nonzero and homogeneous to infer its degree");
  k_ = *d;
}

Cochain& Cochain::operator+=(const Cochain& o) {
  require_same_structure(*E_, *o.E_);
  if (k_ != o.k_) throw DomainError("adding cochains of different degree");
  body_ += o.body_;
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  require_same_structure(*E_, *o.E_);
  if (k_ != o.k_) throw DomainError("subtracting cochains of different degree");
  body_ -= o.body_;
  return *this;
}

namespace {

GradedElem contract_all(const Cochain& w, const std::vector<Section>& sections) {
  GradedElem x = w.body();
  for (const auto& e : sections) x = pbracket(lift(*w.structure(), e), x);
  return x;
}

}  // namespace

Poly evaluate(const Cochain& w, const std::vector<Section>& sections) {
  if (sections.size() != static_cast<std::size_t>(w.degree()))
    throw DomainError("a " + std::to_string(w.degree()) + "-cochain takes " + std::to_string(w.degree()) +
                      " sections, got " + std::to_string(sections.size()));
  return contract_all(w, sections).scalar_part();
}

VectorField symbol(const Cochain& w, const std::vector<Section>& sections) {
  if (w.degree() < 2) throw DomainError("symbols are defined for cochains of degree >= 2");
  if (sections.size() != static_cast<std::size_t>(w.degree() - 2))
    throw DomainError("symbol of a " + std::to_string(w.degree()) + "-cochain takes " +
                      std::to_string(w.degree() - 2) + " sections");
  GradedElem x = contract_all(w, sections);
  const auto& E = *w.structure();
  VectorField X(E.n());
  for (int i = 0; i < E.n(); ++i)
    X[i] = pbracket(GradedElem(E.context(), Poly::variable(Var::x(i + 1))), x).scalar_part();
  return X;
}

Cochain contract(const Section& e, const Cochain& w) {
  if (w.degree() == 0) return Cochain(w.structure(), 0);
  return Cochain(w.structure(), pbracket(lift(*w.structure(), e), w.body()), w.degree() - 1);
}

Cochain lie(const Section& e, const Cochain& w) {
  const auto& E = *w.structure();
  return Cochain(w.structure(), pbracket(pbracket(lift(E, e), E.theta()), w.body()), w.degree());
}

Cochain dE(const Cochain& w) {
  return Cochain(w.structure(), pbracket(w.structure()->theta(), w.body()), w.degree() + 1);
}

Cochain cup(const Cochain& a, const Cochain& b) {
  require_same_structure(*a.structure(), *b.structure());
  return Cochain(a.structure(), a.body() * b.body(), a.degree() + b.degree());
}

Cochain kw_poisson(const Cochain& a, const Cochain& b) {
  require_same_structure(*a.structure(), *b.structure());
  int k = a.degree() + b.degree() - 2;
  if (k < 0) return Cochain(a.structure(), 0);
  return Cochain(a.structure(), pbracket(a.body(), b.body()), k);
}

Cochain from_function(StructurePtr E, const Poly& f) {
  GradedElem b(E->context(), f);
  return Cochain(std::move(E), std::move(b), 0);
}

Cochain from_section(StructurePtr E, const Section& e) {
  GradedElem b = lift(*E, e);
  return Cochain(std::move(E), std::move(b), 1);
}

Cochain from_cdo(StructurePtr E, const VectorField& X, const PolyMatrix& M) {
  const int r = E->r(), n = E->n();
  if (X.size() != static_cast<std::size_t>(n)) throw DomainError("symbol must have n components");
  if (M.rows() != static_cast<std::size_t>(r) || M.cols() != static_cast<std::size_t>(r))
    throw DomainError("operator matrix must be r x r");
  PolyMatrix W = M * to_poly(E->pairing());
  for (int a = 0; a < r; ++a)
    for (int b = a; b < r; ++b)
      if (!(W(a, b) == -W(b, a)))
        throw DomainError("operator is not skew with respect to the pairing: (M g) is not antisymmetric");
  const auto& ctx = E->context();
  GradedElem body(ctx);
  for (int i = 0; i < n; ++i)
    if (!X[i].is_zero()) body -= X[i] * GradedElem::p(ctx, i);
  for (int c = 0; c < r; ++c)
    for (int d = c + 1; d < r; ++d)
      if (!W(c, d).is_zero()) body += W(c, d) * (GradedElem::eta(ctx, c) * GradedElem::eta(ctx, d));
  return Cochain(std::move(E), std::move(body), 2);
}

namespace {

int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) sign = -sign;
  return sign;
}

}  // namespace

Cochain from_skew_tensor(StructurePtr E, int k, const std::map<std::vector<int>, Poly>& components) {
  const int r = E->r();
  std::map<std::vector<int>, Poly> canonical;
  for (const auto& [idx, val] : components) {
    if (idx.size() != static_cast<std::size_t>(k)) throw DomainError("component index has wrong length");
    for (int a : idx)
      if (a < 0 || a >= r) throw DomainError("component index out of range");
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      if (!val.is_zero()) throw DomainError("skew tensor has a nonzero entry with a repeated index");
      continue;
    }
    Poly v = permutation_sign(idx) > 0 ? val : -val;
    auto [it, inserted] = canonical.emplace(sorted, v);
    if (!inserted && !(it->second == v)) throw DomainError("components are not totally antisymmetric");
  }
  const auto& ctx = E->context();
  GradedElem body(ctx);
  for (const auto& [idx, val] : canonical) {
    if (val.is_zero()) continue;
    GradedElem m(ctx, Poly(1));
    for (int a : idx) m = m * GradedElem::eta(ctx, a);
    body += val * m;
  }
  return Cochain(std::move(E), std::move(body), k);
}

Cochain structure_cocycle(StructurePtr E) {
  GradedElem body = -E->theta();
  return Cochain(std::move(E), std::move(body), 3);
}

Poly cartan_dE_value(const Cochain& w, const std::vector<Section>& sections) {
  if (sections.size() != static_cast<std::size_t>(w.degree() + 1)) throw DomainError("d_E w takes k+1 sections");
  const auto& E = *w.structure();
  return cartan_differential<Poly>(
      sections, [&](const std::vector<Section>& s) { return evaluate(w, s); },
      [&](const Section& e, const Poly& f) { return anchor_apply(E, e, f); },
      [&](const Section& a, const Section& b) { return bracket(E, a, b); });
}

Poly cartan_lie_value(const Section& e, const Cochain& w, const std::vector<Section>& sections) {
  const auto& E = *w.structure();
  return cartan_lie<Poly>(
      e, sections, [&](const std::vector<Section>& s) { return evaluate(w, s); },
      [&](const Section& x, const Poly& f) { return anchor_apply(E, x, f); },
      [&](const Section& a, const Section& b) { return bracket(E, a, b); });
}

std::vector<Shuffle> shuffles(int k, int m) {
  std::vector<Shuffle> out;
  std::vector<bool> pick(k + m, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  // lexicographic order of the first block
  do {
    Shuffle s;
    for (int i = 0; i < k + m; ++i)
      if (pick[i]) s.perm.push_back(i);
    for (int i = 0; i < k + m; ++i)
      if (!pick[i]) s.perm.push_back(i);
    s.sign = permutation_sign(s.perm);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

Poly shuffle_cup_value(const Cochain& a, const Cochain& b, const std::vector<Section>& sections) {
  const int k = a.degree(), m = b.degree();
  if (sections.size() != static_cast<std::size_t>(k + m)) throw DomainError("cup product takes k+m sections");
  Poly total;
  for (const auto& sh : shuffles(k, m)) {
    std::vector<Section> first, second;
    for (int i = 0; i < k; ++i) first.push_back(sections[sh.perm[i]]);
    for (int i = k; i < k + m; ++i) second.push_back(sections[sh.perm[i]]);
    Poly term = evaluate(a, first) * evaluate(b, second);
    if (sh.sign > 0) total += term;
    else total -= term;
  }
  return total;
}

Poly symbol_defect(const Cochain& w, const std::vector<Section>& sections, std::size_t i) {
  if (sections.size() != static_cast<std::size_t>(w.degree()) || i + 1 >= sections.size())
    throw DomainError("symbol_defect: bad arity or position");
  std::vector<Section> swapped = sections;
  std::swap(swapped[i], swapped[i + 1]);
  std::vector<Section> rest;
  for (std::size_t m = 0; m < sections.size(); ++m)
    if (m != i && m != i + 1) rest.push_back(sections[m]);
  const auto& E = *w.structure();
  Poly defect = evaluate(w, sections) + evaluate(w, swapped);
  return defect - apply_field(symbol(w, rest), pairing(E, sections[i], sections[i + 1]));
}

}  // namespace courant
