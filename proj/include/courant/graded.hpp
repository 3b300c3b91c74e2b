#pragma once

// Degree-2 graded Poisson algebra in a global trivialized frame.
//
// Generators: x^i (degree 0), xi^a (degree 1, anticommuting), p_i (degree 2, commuting).
// Brackets on generators: {xi^a, xi^b} = g_ab, {p_i, x^j} = delta_i^j, all others zero.
// Extended as a biderivation:
//
//   {F, G} = sum_i (dF/dp_i  dG/dx^i - dF/dx^i  dG/dp_i) + sum_ab g_ab (F d<-/dxi^a)(d->/dxi^b G)
//
// which gives {a, b} = -(-1)^{|a||b|} {b, a} and {a, bc} = {a,b}c + (-1)^{|a||b|} b{a,c}.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "courant/matrix.hpp"
#include "courant/poly.hpp"

namespace courant {

inline constexpr int kMaxRank = 32;

/// Fiber data shared by every element: base dimension n, rank r and the constant pairing g.
class GradedContext {
 public:
  /// Throws DomainError unless g is r x r, symmetric and invertible.
  static std::shared_ptr<const GradedContext> make(int n, int r, RatMatrix pairing);

  int n() const { return n_; }
  int r() const { return r_; }
  const RatMatrix& pairing() const { return g_; }
  const RatMatrix& inverse_pairing() const { return g_inv_; }
  bool same_as(const GradedContext& o) const;

 private:
  GradedContext(int n, int r, RatMatrix g, RatMatrix g_inv)
      : n_(n), r_(r), g_(std::move(g)), g_inv_(std::move(g_inv)) {}
  int n_, r_;
  RatMatrix g_, g_inv_;
};

using ContextPtr = std::shared_ptr<const GradedContext>;

/// Odd part as a bitmask of xi indices (bit a = xi^{a+1}); even part as p-exponents.
struct GradedKey {
  std::uint64_t xi = 0;
  std::array<std::uint8_t, kMaxCoords> p{};

  int odd_degree() const;
  int p_degree() const;
  int degree() const { return odd_degree() + 2 * p_degree(); }
  friend bool operator==(const GradedKey&, const GradedKey&) = default;
};

struct GradedKeyLess {
  bool operator()(const GradedKey& a, const GradedKey& b) const;
};

class GradedElem {
 public:
  using Terms = std::map<GradedKey, Poly, GradedKeyLess>;

  explicit GradedElem(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  GradedElem(ContextPtr ctx, const Poly& scalar);

  static GradedElem xi(ContextPtr ctx, int a);  // 0-based
  static GradedElem p(ContextPtr ctx, int i);   // 0-based
  /// eta^a = sum_b g^{ab} xi^b, the dual odd generator: {xi^a, eta^b} = delta_ab.
  static GradedElem eta(ContextPtr ctx, int a);
  /// Text form, e.g. `1/2*x1*xi{1,3}*p2^2 - (x1 + 1)*xi{2}`. Indices are 1-based.
  static GradedElem parse(ContextPtr ctx, std::string_view text);

  const ContextPtr& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree of a homogeneous nonzero element; nullopt for zero or mixed degree.
  std::optional<int> homogeneous_degree() const;
  /// True when every term has degree k (vacuously true for zero).
  bool is_homogeneous(int k) const;
  /// Coefficient of a pure degree-0 element (throws DomainError otherwise).
  Poly scalar_part() const;
  int max_coordinate_degree() const;

  void add_term(const GradedKey& key, const Poly& coeff);

  GradedElem& operator+=(const GradedElem& o);
  GradedElem& operator-=(const GradedElem& o);
  GradedElem operator-() const;
  friend GradedElem operator+(GradedElem a, const GradedElem& b) { return a += b; }
  friend GradedElem operator-(GradedElem a, const GradedElem& b) { return a -= b; }
  /// Graded-commutative product.
  friend GradedElem operator*(const GradedElem& a, const GradedElem& b);
  friend GradedElem operator*(const Poly& f, const GradedElem& a);
  friend GradedElem operator*(const Rat& c, const GradedElem& a) { return Poly(c) * a; }
  friend GradedElem operator*(int c, const GradedElem& a) { return Poly(Rat(c)) * a; }
  friend bool operator==(const GradedElem& a, const GradedElem& b);

  /// Applies a coefficient-wise map (partial in t, integration, substitution, ...).
  template <class Fn>
  GradedElem map_coefficients(Fn&& fn) const {
    GradedElem r(ctx_);
    for (const auto& [k, c] : terms_) r.add_term(k, fn(c));
    return r;
  }

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  Terms terms_;
};

GradedElem gmul(const GradedElem& a, const GradedElem& b);

/// Degree -2 Poisson bracket.
GradedElem pbracket(const GradedElem& a, const GradedElem& b);

/// Homogeneous component of degree k.
GradedElem degree_part(const GradedElem& a, int k);

/// Graded commutator sign helpers exposed for the cochain layer.
int xi_product_sign(std::uint64_t s, std::uint64_t t);

/// All keys of a given degree for the context (odd subsets times p-monomials).
std::vector<GradedKey> keys_of_degree(const GradedContext& ctx, int k);

void require_same_context(const ContextPtr& a, const ContextPtr& b);

}  // namespace courant
