#include "courant/dirac.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "courant/cartan.hpp"
#include "courant/cohomology.hpp"
#include "courant/error.hpp"

namespace courant {

namespace {

std::vector<int> bits_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

std::uint32_t mask_of(const std::vector<int>& increasing, int m) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < increasing.size(); ++i) {
    int a = increasing[i];
    if (a < 0 || a >= m) throw DomainError("form index out of range");
    if (i > 0 && increasing[i - 1] >= a) throw DomainError("form indices must be strictly increasing");
    mask |= 1u << a;
  }
  return mask;
}

std::vector<std::uint32_t> masks_of_size(int m, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > m) return out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
    if (std::popcount(mask) == k) out.push_back(mask);
  return out;
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

/// Leibniz expansion; used on small minors only.
Poly det(const PolyMatrix& a) {
  const std::size_t k = a.rows();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Poly total;
  do {
    Poly term(1);
    for (std::size_t i = 0; i < k && !term.is_zero(); ++i) term = term * a(i, perm[i]);
    if (!term.is_zero()) total += permutation_sign(perm) > 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

PolyMatrix submatrix(const PolyMatrix& a, const std::vector<int>& rows) {
  PolyMatrix out(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(rows[i], j);
  return out;
}

/// Inverse of a square polynomial matrix with constant nonzero determinant, via the adjugate.
PolyMatrix unimodular_inverse(const PolyMatrix& a, const Rat& d) {
  const std::size_t k = a.rows();
  PolyMatrix inv(k, k);
  const Rat scale = Rat(1) / d;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      PolyMatrix minor(k - 1, k - 1);
      for (std::size_t r = 0, rr = 0; r < k; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < k; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      Poly cof = k == 1 ? Poly(1) : det(minor);
      inv(i, j) = ((i + j) % 2 ? -scale : scale) * cof;
    }
  return inv;
}

using FormKey = std::pair<std::uint32_t, Monomial>;
struct FormKeyLess {
  bool operator()(const FormKey& a, const FormKey& b) const {
    if (a.first != b.first) return a.first < b.first;
    return GrlexGreater{}(a.second, b.second);
  }
};

}  // namespace

Poly LieAlgebroid::act(const PolyVec& s, const Poly& f) const {
  Poly out;
  for (int a = 0; a < m; ++a)
    if (!s[a].is_zero()) out += s[a] * apply_field(anchor[a], f);
  return out;
}

PolyVec LieAlgebroid::bracket(const PolyVec& s, const PolyVec& t) const {
  PolyVec out(m);
  for (int d = 0; d < m; ++d) out[d] = act(s, t[d]) - act(t, s[d]);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (s[a].is_zero() || t[b].is_zero()) continue;
      out += (s[a] * t[b]) * c[a][b];
    }
  return out;
}

bool LieAlgebroid::satisfies_axioms() const {
  std::vector<PolyVec> l;
  for (int a = 0; a < m; ++a) l.push_back(unit_vector(m, a));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!(bracket(l[a], l[b]) == -bracket(l[b], l[a]))) return false;
      VectorField lhs(n);
      for (int d = 0; d < m; ++d) lhs += c[a][b][d] * anchor[d];
      if (!(lhs == lie_bracket(anchor[a], anchor[b]))) return false;
      for (int d = b + 1; d < m; ++d) {
        PolyVec jac = bracket(l[a], bracket(l[b], l[d])) + bracket(l[b], bracket(l[d], l[a])) +
                      bracket(l[d], bracket(l[a], l[b]));
        if (!is_zero(jac)) return false;
      }
    }
  return true;
}

LForm::LForm(int m, int k) : m_(m), k_(k) {
  if (m < 0 || m > 30) throw DomainError("form rank out of range");
  if (k < 0) throw DomainError("form degree must be non-negative");
}

Poly LForm::component(const std::vector<int>& increasing) const {
  if (static_cast<int>(increasing.size()) != k_) throw DomainError("wrong number of form indices");
  auto it = comp_.find(mask_of(increasing, m_));
  return it == comp_.end() ? Poly() : it->second;
}

void LForm::set(const std::vector<int>& increasing, const Poly& value) {
  if (static_cast<int>(increasing.size()) != k_) throw DomainError("wrong number of form indices");
  std::uint32_t mask = mask_of(increasing, m_);
  if (value.is_zero())
    comp_.erase(mask);
  else
    comp_[mask] = value;
}

Poly LForm::evaluate(const std::vector<PolyVec>& sections) const {
  if (static_cast<int>(sections.size()) != k_) throw DomainError("form evaluated on the wrong number of sections");
  for (const auto& s : sections)
    if (static_cast<int>(s.size()) != m_) throw DomainError("section has the wrong length");
  Poly total;
  for (const auto& [mask, w] : comp_) {
    auto idx = bits_of(mask);
    PolyMatrix a(k_, k_);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) a(i, j) = sections[i][idx[j]];
    total += w * (k_ == 0 ? Poly(1) : det(a));
  }
  return total;
}

LForm LForm::operator+(const LForm& o) const {
  if (m_ != o.m_ || k_ != o.k_) throw DomainError("adding forms of different shape");
  LForm out = *this;
  for (const auto& [mask, w] : o.comp_) {
    Poly v = out.comp_[mask] + w;
    if (v.is_zero())
      out.comp_.erase(mask);
    else
      out.comp_[mask] = v;
  }
  return out;
}

LForm LForm::operator-(const LForm& o) const { return *this + Poly(-1) * o; }

bool LForm::operator==(const LForm& o) const { return m_ == o.m_ && k_ == o.k_ && comp_ == o.comp_; }

LForm operator*(const Poly& f, const LForm& w) {
  LForm out(w.m(), w.degree());
  for (const auto& [mask, v] : w.components()) out.set(bits_of(mask), f * v);
  return out;
}

LForm wedge(const LForm& a, const LForm& b) {
  if (a.m() != b.m()) throw DomainError("wedge of forms on different bundles");
  LForm out(a.m(), a.degree() + b.degree());
  if (out.degree() > out.m()) return out;
  for (const auto& [ma, va] : a.components())
    for (const auto& [mb, vb] : b.components()) {
      if (ma & mb) continue;
      int swaps = 0;
      for (int x : bits_of(ma))
        for (int y : bits_of(mb))
          if (x > y) ++swaps;
      auto idx = bits_of(ma | mb);
      Poly prod = va * vb;
      LForm term(a.m(), out.degree());
      term.set(idx, swaps % 2 ? -prod : prod);
      out = out + term;
    }
  return out;
}

LForm lie_algebroid_differential(const LieAlgebroid& A, const LForm& w) {
  if (w.m() != A.m) throw DomainError("form and algebroid have different rank");
  LForm out(A.m, w.degree() + 1);
  auto eval = [&](const std::vector<PolyVec>& s) { return w.evaluate(s); };
  auto act = [&](const PolyVec& s, const Poly& f) { return A.act(s, f); };
  auto br = [&](const PolyVec& s, const PolyVec& t) { return A.bracket(s, t); };
  for (std::uint32_t mask : masks_of_size(A.m, w.degree() + 1)) {
    auto idx = bits_of(mask);
    std::vector<PolyVec> e;
    for (int a : idx) e.push_back(unit_vector(A.m, a));
    out.set(idx, cartan_differential<Poly>(e, eval, act, br));
  }
  return out;
}

Section DiracSubbundle::embed(const PolyVec& s) const {
  if (static_cast<int>(s.size()) != rank()) throw DomainError("section has the wrong length");
  Section out = zero_section(*E_);
  for (int a = 0; a < rank(); ++a)
    if (!s[a].is_zero()) out += s[a] * frame_[a];
  return out;
}

DiracReport check_dirac(const StructurePtr& E, const std::vector<Section>& frame) {
  const int r = E->r();
  if (r % 2 != 0) throw DomainError("odd rank bundles have no Dirac structures");
  const int m = r / 2;
  if (static_cast<int>(frame.size()) != m) throw DomainError("a Dirac frame needs exactly r/2 sections");
  PolyMatrix M(r, m);
  for (int j = 0; j < m; ++j) {
    if (static_cast<int>(frame[j].size()) != r) throw DomainError("frame section has the wrong length");
    for (int i = 0; i < r; ++i) M(i, j) = frame[j][i];
  }
  // a maximal minor that is a nonzero constant certifies rank m at every point
  std::vector<int> rows;
  Rat minor_det(0);
  {
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + m, true);
    do {
      std::vector<int> cand;
      for (int i = 0; i < r; ++i)
        if (pick[i]) cand.push_back(i);
      Poly d = m == 0 ? Poly(1) : det(submatrix(M, cand));
      if (d.is_constant() && !d.is_zero()) {
        rows = cand;
        minor_det = d.constant_term();
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  if (is_zero(minor_det)) throw DomainError("frame is rank deficient (no maximal minor is a nonzero constant)");

  DiracReport rep;
  for (int i = 0; i < m && !rep.witness; ++i)
    for (int j = i; j < m && !rep.witness; ++j) {
      Poly v = pairing(*E, frame[i], frame[j]);
      if (!v.is_zero()) rep.witness = DiracWitness{"isotropy", {i, j}, v};
    }
  if (rep.witness) return rep;
  rep.isotropic = true;

  std::vector<std::vector<Section>> br(m, std::vector<Section>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) br[i][j] = bracket(*E, frame[i], frame[j]);
  for (int i = 0; i < m && !rep.witness; ++i)
    for (int j = 0; j < m && !rep.witness; ++j)
      for (int k = 0; k < m && !rep.witness; ++k) {
        Poly v = pairing(*E, br[i][j], frame[k]);
        if (!v.is_zero()) rep.witness = DiracWitness{"closure", {i, j, k}, v};
      }
  if (rep.witness) return rep;
  rep.involutive = true;

  PolyMatrix inv = unimodular_inverse(submatrix(M, rows), minor_det);
  LieAlgebroid alg;
  alg.n = E->n();
  alg.m = m;
  for (int a = 0; a < m; ++a) alg.anchor.push_back(anchor_of(*E, frame[a]));
  alg.c.assign(m, std::vector<PolyVec>(m, PolyVec(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      PolyVec coeffs(m);
      for (int d = 0; d < m; ++d)
        for (int q = 0; q < m; ++q) coeffs[d] += inv(d, q) * br[i][j][rows[q]];
      Section back = zero_section(*E);
      for (int d = 0; d < m; ++d) back += coeffs[d] * frame[d];
      if (!(back == br[i][j])) throw DomainError("internal: closure coefficients failed verification");
      alg.c[i][j] = coeffs;
    }
  rep.jacobi = alg.satisfies_axioms();
  DiracSubbundle L;
  L.E_ = E;
  L.frame_ = frame;
  L.alg_ = std::move(alg);
  rep.subbundle = std::move(L);
  return rep;
}

bool replay(const CourantStructure& E, const std::vector<Section>& frame, const DiracWitness& w) {
  auto in_range = [&](int i) { return i >= 0 && i < static_cast<int>(frame.size()); };
  for (int i : w.indices)
    if (!in_range(i)) return false;
  if (w.value.is_zero()) return false;
  if (w.kind == "isotropy" && w.indices.size() == 2)
    return pairing(E, frame[w.indices[0]], frame[w.indices[1]]) == w.value;
  if (w.kind == "closure" && w.indices.size() == 3)
    return pairing(E, bracket(E, frame[w.indices[0]], frame[w.indices[1]]), frame[w.indices[2]]) == w.value;
  return false;
}

LForm restrict(const Cochain& w, const DiracSubbundle& L) {
  require_same_structure(*w.structure(), *L.structure());
  const int m = L.rank();
  LForm out(m, w.degree());
  for (std::uint32_t mask : masks_of_size(m, w.degree())) {
    auto idx = bits_of(mask);
    std::vector<Section> args;
    for (int a : idx) args.push_back(L.frame()[a]);
    out.set(idx, evaluate(w, args));
  }
  return out;
}

bool restriction_commutes(const Cochain& w, const DiracSubbundle& L) {
  return restrict(dE(w), L) == lie_algebroid_differential(L.algebroid(), restrict(w, L));
}

std::optional<LForm> lform_primitive(const LieAlgebroid& A, const LForm& w, int bound) {
  if (w.m() != A.m) throw DomainError("form and algebroid have different rank");
  if (bound < 0) throw DomainError("degree bound must be non-negative");
  const int k = w.degree() - 1;
  if (k < 0) return std::nullopt;
  if (w.is_zero()) return LForm(A.m, k);
  std::vector<FormKey> source;
  for (std::uint32_t mask : masks_of_size(A.m, k))
    for (const auto& mono : monomials_up_to(A.n, bound)) source.push_back({mask, mono});
  std::map<FormKey, std::size_t, FormKeyLess> rows;
  auto row_of = [&](const FormKey& key) {
    auto [it, fresh] = rows.emplace(key, rows.size());
    return it->second;
  };
  std::vector<std::vector<std::pair<std::size_t, Rat>>> columns;
  for (const auto& [mask, mono] : source) {
    LForm basis(A.m, k);
    basis.set(bits_of(mask), Poly::monomial(mono, Rat(1)));
    std::vector<std::pair<std::size_t, Rat>> col;
    LForm image = lie_algebroid_differential(A, basis);
    for (const auto& [tm, v] : image.components())
      for (const auto& [tmono, c] : v.terms()) col.push_back({row_of({tm, tmono}), c});
    columns.push_back(std::move(col));
  }
  std::vector<std::pair<std::size_t, Rat>> rhs_entries;
  for (const auto& [tm, v] : w.components())
    for (const auto& [tmono, c] : v.terms()) rhs_entries.push_back({row_of({tm, tmono}), c});
  RatMatrix D(rows.size(), source.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, c] : columns[j]) D(i, j) = c;
  RatVector rhs(rows.size(), Rat(0));
  for (const auto& [i, c] : rhs_entries) rhs[i] = c;
  auto sol = solve_linear(D, rhs);
  if (!sol) return std::nullopt;
  LForm f(A.m, k);
  for (std::size_t j = 0; j < source.size(); ++j)
    if (!is_zero((*sol)[j])) {
      auto idx = bits_of(source[j].first);
      f.set(idx, f.component(idx) + Poly::monomial(source[j].second, (*sol)[j]));
    }
  if (!(lie_algebroid_differential(A, f) == w)) throw DomainError("internal: primitive failed verification");
  return f;
}

RelativeModularClass relative_modular_class(const DiracSubbundle& L, int bound) {
  const auto& A = L.algebroid();
  RelativeModularClass out{LForm(A.m, 1), false, std::nullopt, bound};
  for (int a = 0; a < A.m; ++a) {
    Poly v;
    for (int b = 0; b < A.m; ++b) v += A.c[a][b][b];
    for (int i = 0; i < A.n; ++i) v += partial(A.anchor[a][i], Var::x(i + 1));
    out.xi.set({a}, v);
  }
  out.closed = lie_algebroid_differential(A, out.xi).is_zero();
  out.witness = lform_primitive(A, out.xi, bound);
  return out;
}

}  // namespace courant
