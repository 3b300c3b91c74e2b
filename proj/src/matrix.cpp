#include "courant/matrix.hpp"

#include <utility>

namespace courant {

RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  if (pivots) pivots->clear();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero(a(i, c))) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j)
      if (!is_zero(a(r, j))) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

std::size_t rank(const RatMatrix& a) {
  std::vector<std::size_t> piv;
  rref(a, &piv);
  return piv.size();
}

Rat determinant(const RatMatrix& a) {
  if (!a.is_square()) throw DomainError("determinant of non-square matrix");
  RatMatrix m = a;
  const std::size_t n = m.rows();
  Rat det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return Rat(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& a) {
  if (!a.is_square()) throw DomainError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  RatMatrix red = rref(aug, &piv);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw DomainError("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
  return inv;
}

RatVector mat_vec(const RatMatrix& a, const RatVector& x) {
  if (a.cols() != x.size()) throw DomainError("matrix-vector dimension mismatch");
  RatVector y(a.rows(), Rat(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) y[i] += a(i, j) * x[j];
  return y;
}

std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw DomainError("solve_linear: right-hand side length mismatch");
  const std::size_t rows = a.rows(), cols = a.cols();
  RatMatrix aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
    aug(i, cols) = b[i];
  }
  std::vector<std::size_t> piv;
  RatMatrix red = rref(std::move(aug), &piv);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  RatVector x(cols, Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = red(r, cols);
  if (mat_vec(a, x) != b) throw Error("solve_linear: back-substitution check failed");
  return x;
}

std::vector<RatVector> kernel_basis(const RatMatrix& a) {
  const std::size_t cols = a.cols();
  std::vector<std::size_t> piv;
  RatMatrix red = rref(a, &piv);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -red(r, f);
    for (const auto& e : v)
      if (!is_zero(e)) {
        Rat lead = e;
        for (auto& x : v) x /= lead;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool is_positive_definite(const RatMatrix& a) {
  if (!a.is_symmetric()) return false;
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    RatMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = a(i, j);
    if (sgn(determinant(minor)) <= 0) return false;
  }
  return true;
}

PolyMatrix to_poly(const RatMatrix& a) {
  PolyMatrix p(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) p(i, j) = Poly(a(i, j));
  return p;
}

}  // namespace courant
