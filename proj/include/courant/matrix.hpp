#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "courant/error.hpp"
#include "courant/poly.hpp"
#include "courant/rational.hpp"

namespace courant {

/// Dense row-major matrix over an exact scalar ring (Rat or Poly).
template <class Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DomainError("ragged matrix initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik == Scalar(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const Scalar& c, Matrix a) {
    for (auto& v : a.data_) v = c * v;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == Scalar(0))) return false;
    return true;
  }

 private:
  void check_same(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DomainError("matrix sum dimension mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

using RatMatrix = Matrix<Rat>;
using PolyMatrix = Matrix<Poly>;
using RatVector = std::vector<Rat>;

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RatMatrix& a);
Rat determinant(const RatMatrix& a);
/// Throws DomainError when singular.
RatMatrix inverse(const RatMatrix& a);

/// Exact solution of A x = b, or nullopt when inconsistent. Throws DomainError on dimension mismatch.
/// Free variables are set to zero; the returned vector is re-substituted and verified.
std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b);

/// Basis of the null space; each vector is scaled so its first nonzero entry is 1.
std::vector<RatVector> kernel_basis(const RatMatrix& a);

RatVector mat_vec(const RatMatrix& a, const RatVector& x);

/// Sylvester's criterion on leading principal minors.
bool is_positive_definite(const RatMatrix& a);

PolyMatrix to_poly(const RatMatrix& a);

}  // namespace courant
