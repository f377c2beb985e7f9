#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tschur {

using Complex = std::complex<double>;

// Dense complex matrix, row-major storage. Immutable by convention once
// built: every operation below returns a fresh value.
class CMatrix {
public:
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("CMatrix: dimensions must be positive, got " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
  }

  // Matrix unit E_ij in M_n: single 1 at position (i, j).
  static CMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n)
      throw std::invalid_argument("CMatrix::matrix_unit: index out of range");
    CMatrix m(n, n);
    m(i, j) = Complex(1.0, 0.0);
    return m;
  }

  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    if (rows.size() == 0 || rows.begin()->size() == 0)
      throw std::invalid_argument("CMatrix::from_rows: empty initializer");
    CMatrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols_)
        throw std::invalid_argument("CMatrix::from_rows: ragged rows");
      std::size_t c = 0;
      for (const auto& v : row) m(r, c++) = v;
      ++r;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  // 0-based access; out-of-range indices are a contract violation.
  Complex& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  Complex entry(std::size_t r, std::size_t c) const { return (*this)(r, c); }

  const std::vector<Complex>& data() const { return data_; }

  bool same_shape(const CMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("CMatrix product: inner dimensions differ (" +
                                  shape_str(a) + " * " + shape_str(b) + ")");
    CMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  CMatrix transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  CMatrix conj() const {
    CMatrix t(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = std::conj(data_[k]);
    return t;
  }

  // Conjugate transpose.
  CMatrix adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

private:
  void require_same_shape(const CMatrix& o, const char* op) const {
    if (!same_shape(o))
      throw std::invalid_argument(std::string("CMatrix ") + op + ": shape mismatch (" +
                                  shape_str(*this) + " vs " + shape_str(o) + ")");
  }
  static std::string shape_str(const CMatrix& m) {
    return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
  }

  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

// Entrywise floating-point equality (treats +0 and -0 as equal; inputs are
// always finite here).
inline bool exact_equal(const CMatrix& a, const CMatrix& b) {
  if (!a.same_shape(b)) return false;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    if (a.data()[k] != b.data()[k]) return false;
  return true;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
  return a.same_shape(b) && max_abs_diff(a, b) <= tol;
}

// Kronecker product, left factor outer: entry ((i,alpha),(j,beta)) of the
// result is a(i,j)*b(alpha,beta) at row i*b.rows()+alpha, col j*b.cols()+beta.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t al = 0; al < b.rows(); ++al)
        for (std::size_t be = 0; be < b.cols(); ++be)
          k(i * b.rows() + al, j * b.cols() + be) = aij * b(al, be);
    }
  return k;
}

// Frobenius norm of a - a*.
inline double hermiticity_defect(const CMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("hermiticity_defect: matrix must be square");
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      s += std::norm(a(r, c) - std::conj(a(c, r)));
  return std::sqrt(s);
}

// (a + a*)/2, built from the upper triangle and mirrored so the result is
// exactly Hermitian on the stored entries.
inline CMatrix hermitize(const CMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("hermitize: matrix must be square");
  const std::size_t n = a.rows();
  CMatrix h(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = Complex(a(r, r).real(), 0.0);
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      h(r, c) = v;
      h(c, r) = std::conj(v);
    }
  }
  return h;
}

}  // namespace tschur
