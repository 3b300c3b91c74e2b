#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>

#include "courant/rational.hpp"

namespace courant {

/// Number of variable slots: base coordinates x1..x6 followed by the path parameters t and s.
inline constexpr int kMaxCoords = 6;
inline constexpr int kVarSlots = kMaxCoords + 2;

/// A polynomial variable. Coordinates are 1-based in text ("x1") and 0-based internally.
class Var {
 public:
  static Var x(int one_based);
  static Var t() { return Var(kMaxCoords); }
  static Var s() { return Var(kMaxCoords + 1); }
  static Var from_slot(int slot);
  /// Parses "x3", "t" or "s".
  static Var parse(std::string_view name);

  int slot() const { return slot_; }
  bool is_coordinate() const { return slot_ < kMaxCoords; }
  std::string name() const;
  friend bool operator==(Var a, Var b) { return a.slot_ == b.slot_; }

 private:
  explicit Var(int slot) : slot_(slot) {}
  int slot_;
};

/// Exponent vector over all variable slots.
struct Monomial {
  std::array<std::uint16_t, kVarSlots> exp{};

  int total_degree() const;
  /// Degree in the base coordinates only (path parameters excluded).
  int coordinate_degree() const;
  Monomial operator*(const Monomial& o) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lexicographic order, largest first: total degree, then lex with x1 > x2 > ... > t > s.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients. No zero coefficient is ever stored,
/// so structural equality is mathematical equality.
class Poly {
 public:
  using Terms = std::map<Monomial, Rat, GrlexGreater>;
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Poly() = default;
  Poly(const Rat& c);  // NOLINT: implicit constants read naturally in formulas
  Poly(long c) : Poly(Rat(c)) {}  // NOLINT
  static Poly variable(Var v, int power = 1);
  static Poly monomial(const Monomial& m, const Rat& c);
  /// Parses the ASCII grammar `3/2*x1^2*x2 - x1 + 7` (parentheses and integer powers allowed).
  static Poly parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (the coefficient of the empty monomial).
  Rat constant_term() const;
  /// Total degree; kZeroDegree for the zero polynomial.
  int degree() const;
  int coordinate_degree() const;
  bool depends_on(Var v) const;

  void add_term(const Monomial& m, const Rat& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  Terms terms_;
};

Poly pow(const Poly& p, int e);

/// Formal partial derivative.
Poly partial(const Poly& f, Var v);
/// Same, naming the variable; throws ParseError for an unknown name.
Poly partial(const Poly& f, std::string_view var_name);

/// Exact definite integral of f in `param` from lo to hi; the result is free of `param`.
/// Throws DomainError when `param` is not a path parameter (t or s).
Poly integrate_param(const Poly& f, Var param, const Rat& lo, const Rat& hi);

/// Substitutes a rational value for one variable.
Poly substitute(const Poly& f, Var v, const Rat& value);

/// Number of base coordinates named by the polynomial (1 + highest coordinate slot used).
int coordinates_used(const Poly& f);

}  // namespace courant
