#include "courant/cohomology.hpp"

#include <algorithm>
#include <map>

#include "courant/error.hpp"

namespace courant {

std::vector<Monomial> monomials_up_to(int n, int bound) {
  std::vector<Monomial> out;
  if (bound < 0) return out;
  Monomial m;
  // enumerate exponent vectors by recursion on the variable index
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.exp[var] = static_cast<std::uint16_t>(e);
      self(self, var + 1, left - e);
    }
    m.exp[var] = 0;
  };
  rec(rec, 0, bound);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

namespace {

std::vector<BasisEntry> truncated_basis(const GradedContext& ctx, int k, int bound) {
  std::vector<BasisEntry> out;
  auto monos = monomials_up_to(ctx.n(), bound);
  for (const auto& key : keys_of_degree(ctx, k))
    for (const auto& m : monos) out.push_back({key, m});
  return out;
}

struct EntryLess {
  bool operator()(const BasisEntry& a, const BasisEntry& b) const {
    GradedKeyLess kl;
    if (kl(a.key, b.key)) return true;
    if (kl(b.key, a.key)) return false;
    return GrlexGreater{}(a.mono, b.mono);
  }
};

using EntryIndex = std::map<BasisEntry, std::size_t, EntryLess>;

EntryIndex index_of(const std::vector<BasisEntry>& basis) {
  EntryIndex idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

std::optional<RatVector> coordinates(const GradedElem& x, const EntryIndex& idx, std::size_t size) {
  RatVector v(size, Rat(0));
  for (const auto& [key, coeff] : x.terms())
    for (const auto& [mono, c] : coeff.terms()) {
      auto it = idx.find(BasisEntry{key, mono});
      if (it == idx.end()) return std::nullopt;
      v[it->second] = c;
    }
  return v;
}

GradedElem basis_element(const ContextPtr& ctx, const BasisEntry& e) {
  GradedElem x(ctx);
  x.add_term(e.key, Poly::monomial(e.mono, Rat(1)));
  return x;
}

}  // namespace

TruncatedComplex::TruncatedComplex(StructurePtr E, int k, int bound)
    : E_(std::move(E)), k_(k), N_(bound), target_N_(0) {
  if (k < 0) throw DomainError("cochain degree must be non-negative");
  if (bound < 0) throw DomainError("degree bound must be non-negative");
  const auto& ctx = E_->context();
  const GradedElem& theta = E_->theta();
  target_N_ = N_ + std::max(0, E_->data_degree());
  source_ = truncated_basis(*ctx, k, N_);
  target_ = truncated_basis(*ctx, k + 1, target_N_);
  EntryIndex tidx = index_of(target_);
  D_ = RatMatrix(target_.size(), source_.size());
  for (std::size_t j = 0; j < source_.size(); ++j) {
    GradedElem img = pbracket(theta, basis_element(ctx, source_[j]));
    auto col = coordinates(img, tidx, target_.size());
    if (!col) throw DomainError("internal: dE image leaves the truncation");
    for (std::size_t i = 0; i < target_.size(); ++i) D_(i, j) = (*col)[i];
  }
}

Cochain TruncatedComplex::source_element(const RatVector& coords) const {
  if (coords.size() != source_.size()) throw DomainError("coordinate vector has wrong length");
  GradedElem x(E_->context());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!is_zero(coords[i])) x.add_term(source_[i].key, Poly::monomial(source_[i].mono, coords[i]));
  return Cochain(E_, std::move(x), k_);
}

std::optional<RatVector> TruncatedComplex::target_coordinates(const Cochain& w) const {
  if (w.degree() != k_ + 1) throw DomainError("target cochain has wrong degree");
  return coordinates(w.body(), index_of(target_), target_.size());
}

bool certify_closed(const Cochain& w) { return dE(w).is_zero(); }

ExactnessResult certify_exact(const Cochain& w, int bound) {
  ExactnessResult res;
  res.bound = bound;
  if (w.is_zero()) {
    res.exact = true;
    if (w.degree() > 0) res.witness = Cochain(w.structure(), w.degree() - 1);
    return res;
  }
  if (w.degree() == 0) return res;
  TruncatedComplex tc(w.structure(), w.degree() - 1, bound);
  auto rhs = tc.target_coordinates(w);
  if (!rhs) return res;
  auto sol = solve_linear(tc.matrix(), *rhs);
  if (!sol) return res;
  Cochain eta = tc.source_element(*sol);
  if (!(dE(eta) == w)) throw DomainError("internal: exactness witness failed verification");
  res.exact = true;
  res.witness = std::move(eta);
  return res;
}

PointCohomology cohomology_point(const StructurePtr& g, int k) {
  if (g->n() != 0) throw DomainError("point cohomology needs n = 0; use certify_exact for n > 0");
  if (k < 0) throw DomainError("cochain degree must be non-negative");
  PointCohomology out;
  out.k = k;
  TruncatedComplex dk(g, k, 0);
  const std::size_t dim_k = dk.basis().size();
  if (dim_k == 0) return out;
  auto kernel = kernel_basis(dk.matrix());
  // image of d_{k-1} inside C^k, in the same basis
  std::vector<RatVector> span;
  if (k > 0) {
    TruncatedComplex prev(g, k - 1, 0);
    for (std::size_t j = 0; j < prev.basis().size(); ++j) {
      RatVector col(dim_k);
      for (std::size_t i = 0; i < dim_k; ++i) col[i] = prev.matrix()(i, j);
      span.push_back(col);
    }
  }
  auto rank_of = [&](const std::vector<RatVector>& vs) {
    if (vs.empty()) return std::size_t{0};
    RatMatrix m(dim_k, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t i = 0; i < dim_k; ++i) m(i, j) = vs[j][i];
    return rank(m);
  };
  std::size_t current = rank_of(span);
  for (const auto& v : kernel) {
    span.push_back(v);
    std::size_t next = rank_of(span);
    if (next > current) {
      current = next;
      out.representatives.push_back(dk.source_element(v));
    } else {
      span.pop_back();
    }
  }
  out.dimension = static_cast<int>(out.representatives.size());
  return out;
}

}  // namespace courant
