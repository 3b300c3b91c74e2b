#pragma once

#include <vector>

#include "courant/error.hpp"
#include "courant/poly.hpp"

namespace courant {

/// Component vector over the polynomial ring: sections in the frame e_a, vector fields in the frame d_i.
using PolyVec = std::vector<Poly>;
using Section = PolyVec;
using VectorField = PolyVec;

inline PolyVec& operator+=(PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size()) throw DomainError("component vectors of different length");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline PolyVec& operator-=(PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size()) throw DomainError("component vectors of different length");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline PolyVec operator+(PolyVec a, const PolyVec& b) { return a += b; }
inline PolyVec operator-(PolyVec a, const PolyVec& b) { return a -= b; }
inline PolyVec operator*(const Poly& f, PolyVec a) {
  for (auto& c : a) c = f * c;
  return a;
}
inline PolyVec operator-(PolyVec a) {
  for (auto& c : a) c = -c;
  return a;
}
inline bool is_zero(const PolyVec& a) {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}
inline PolyVec unit_vector(std::size_t len, std::size_t i) {
  PolyVec v(len);
  v[i] = Poly(1);
  return v;
}

/// Vector field acting on a function.
inline Poly apply_field(const VectorField& X, const Poly& f) {
  Poly r;
  for (std::size_t i = 0; i < X.size(); ++i)
    if (!X[i].is_zero()) r += X[i] * partial(f, Var::x(static_cast<int>(i) + 1));
  return r;
}

inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  VectorField Z(X.size());
  for (std::size_t j = 0; j < X.size(); ++j) Z[j] = apply_field(X, Y[j]) - apply_field(Y, X[j]);
  return Z;
}

std::string to_string(const PolyVec& v);

}  // namespace courant
