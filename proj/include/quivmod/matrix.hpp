#pragma once

#include "quivmod/poly.hpp"

#include <optional>
#include <vector>

namespace quivmod {

// Dense matrix over a field K (K = Rat or Fp), row-major. A zero exemplar is
// carried so that 0x0 and 0xN matrices over F_p still know their modulus.
template <class K>
class Matrix {
 public:
  Matrix(int rows, int cols, const K& zero)
      : r_(rows), c_(cols), zero_(f_zero(zero)),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), f_zero(zero)) {
    if (rows < 0 || cols < 0) fail(Errc::Internal, "negative matrix shape");
  }

  static Matrix identity(int n, const K& zero) {
    Matrix m(n, n, zero);
    for (int i = 0; i < n; ++i) m.at(i, i) = f_one(zero);
    return m;
  }
  static Matrix from_rows(const K& zero, const std::vector<std::vector<K>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(r, c, zero);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) fail(Errc::ShapeMismatch, "ragged rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][static_cast<size_t>(j)];
    }
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const K& zero_exemplar() const { return zero_; }

  K& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const K& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
      if (!(a.a_[i] == b.a_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero() const {
    for (const K& x : a_)
      if (!f_is_zero(x)) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] + b.a_[i];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] - b.a_[i];
    return m;
  }
  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix m = a;
    for (K& x : m.a_) x = s * x;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) fail(Errc::ShapeMismatch, "matrix product shape mismatch");
    Matrix m(a.r_, b.c_, a.zero_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const K& aik = a.at(i, k);
        if (f_is_zero(aik)) continue;
        for (int j = 0; j < b.c_; ++j) m.at(i, j) = m.at(i, j) + aik * b.at(k, j);
      }
    return m;
  }
  std::vector<K> apply(const std::vector<K>& x) const {
    if (static_cast<int>(x.size()) != c_) fail(Errc::ShapeMismatch, "matrix-vector shape mismatch");
    std::vector<K> y(static_cast<size_t>(r_), zero_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) y[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] + at(i, j) * x[static_cast<size_t>(j)];
    return y;
  }

  Matrix transpose() const {
    Matrix m(c_, r_, zero_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Matrix submatrix(int r0, int r1, int c0, int c1) const {
    Matrix m(r1 - r0, c1 - c0, zero_);
    for (int i = r0; i < r1; ++i)
      for (int j = c0; j < c1; ++j) m.at(i - r0, j - c0) = at(i, j);
    return m;
  }
  std::vector<K> row(int i) const {
    std::vector<K> v(static_cast<size_t>(c_), zero_);
    for (int j = 0; j < c_; ++j) v[static_cast<size_t>(j)] = at(i, j);
    return v;
  }
  std::vector<K> col(int j) const {
    std::vector<K> v(static_cast<size_t>(r_), zero_);
    for (int i = 0; i < r_; ++i) v[static_cast<size_t>(i)] = at(i, j);
    return v;
  }

  friend Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_) fail(Errc::ShapeMismatch, "hstack row mismatch");
    Matrix m(a.r_, a.c_ + b.c_, a.zero_);
    for (int i = 0; i < a.r_; ++i) {
      for (int j = 0; j < a.c_; ++j) m.at(i, j) = a.at(i, j);
      for (int j = 0; j < b.c_; ++j) m.at(i, a.c_ + j) = b.at(i, j);
    }
    return m;
  }
  friend Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.c_) fail(Errc::ShapeMismatch, "vstack column mismatch");
    Matrix m(a.r_ + b.r_, a.c_, a.zero_);
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < a.c_; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.r_; ++i)
      for (int j = 0; j < b.c_; ++j) m.at(a.r_ + i, j) = b.at(i, j);
    return m;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) fail(Errc::ShapeMismatch, "matrix shape mismatch");
  }

  int r_, c_;
  K zero_;
  std::vector<K> a_;
};

// In-place reduced row echelon form; returns the pivot column list.
template <class K>
std::vector<int> rref_in_place(Matrix<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!f_is_zero(m.at(i, col))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    K inv = f_inv(m.at(row, col));
    for (int j = col; j < m.cols(); ++j) m.at(row, j) = inv * m.at(row, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || f_is_zero(m.at(i, col))) continue;
      K f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int rank(Matrix<K> m) {
  return static_cast<int>(rref_in_place(m).size());
}

// Canonical basis of the row space: RREF with zero rows dropped. Unique per
// subspace, so equality of canonical bases is equality of subspaces.
template <class K>
Matrix<K> row_space_basis(Matrix<K> m) {
  std::vector<int> piv = rref_in_place(m);
  return m.submatrix(0, static_cast<int>(piv.size()), 0, m.cols());
}

// Whether every row of sub lies in the row space of sup.
template <class K>
bool row_space_contains(const Matrix<K>& sup, const Matrix<K>& sub) {
  if (sub.rows() == 0) return true;
  Matrix<K> stacked = vstack(sup, sub);
  return rank(stacked) == rank(sup);
}

// Solves A X = B; returns a particular solution (free variables zero).
template <class K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) fail(Errc::ShapeMismatch, "solve shape mismatch");
  Matrix<K> aug = hstack(a, b);
  std::vector<int> piv = rref_in_place(aug);
  for (int p : piv)
    if (p >= a.cols()) return std::nullopt;  // inconsistent system
  Matrix<K> x(a.cols(), b.cols(), a.zero_exemplar());
  for (size_t i = 0; i < piv.size(); ++i)
    for (int j = 0; j < b.cols(); ++j) x.at(piv[i], j) = aug.at(static_cast<int>(i), a.cols() + j);
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& a) {
  if (a.rows() != a.cols()) fail(Errc::ShapeMismatch, "inverse of a non-square matrix");
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Matrix<K>::identity(a.rows(), a.zero_exemplar()));
}

// Columns form a basis of the null space {x : A x = 0}.
template <class K>
Matrix<K> kernel_basis(Matrix<K> a) {
  int n = a.cols();
  std::vector<int> piv = rref_in_place(a);
  std::vector<bool> is_piv(static_cast<size_t>(n), false);
  for (int p : piv) is_piv[static_cast<size_t>(p)] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!is_piv[static_cast<size_t>(j)]) free_cols.push_back(j);
  Matrix<K> ker(n, static_cast<int>(free_cols.size()), a.zero_exemplar());
  for (size_t fj = 0; fj < free_cols.size(); ++fj) {
    int j = free_cols[fj];
    ker.at(j, static_cast<int>(fj)) = f_one(a.zero_exemplar());
    for (size_t i = 0; i < piv.size(); ++i)
      ker.at(piv[i], static_cast<int>(fj)) = -a.at(static_cast<int>(i), j);
  }
  return ker;
}

template <class K>
K det(Matrix<K> m) {
  if (m.rows() != m.cols()) fail(Errc::ShapeMismatch, "determinant of a non-square matrix");
  K result = f_one(m.zero_exemplar());
  int n = m.rows();
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int i = col; i < n; ++i)
      if (!f_is_zero(m.at(i, col))) {
        sel = i;
        break;
      }
    if (sel < 0) return f_zero(m.zero_exemplar());
    if (sel != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
      result = -result;
    }
    result = result * m.at(col, col);
    K inv = f_inv(m.at(col, col));
    for (int i = col + 1; i < n; ++i) {
      if (f_is_zero(m.at(i, col))) continue;
      K f = inv * m.at(i, col);
      for (int j = col; j < n; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
    }
  }
  return result;
}

// Characteristic polynomial det(t*I - A) by the Berkowitz method
// (division-free; exact over any commutative coefficient field).
template <class K>
Poly<K> charpoly(const Matrix<K>& a) {
  if (a.rows() != a.cols()) fail(Errc::ShapeMismatch, "charpoly of a non-square matrix");
  int n = a.rows();
  const K zero = a.zero_exemplar();
  const K one = f_one(zero);
  std::vector<K> p{one};  // leading coefficient first
  for (int r = 1; r <= n; ++r) {
    // Toeplitz column for the r-th principal submatrix.
    std::vector<K> c(static_cast<size_t>(r) + 1, zero);
    c[0] = one;
    c[1] = -a.at(r - 1, r - 1);
    if (r >= 2) {
      std::vector<K> v(static_cast<size_t>(r) - 1, zero);  // M^k * S
      for (int i = 0; i < r - 1; ++i) v[static_cast<size_t>(i)] = a.at(i, r - 1);
      for (int k = 2; k <= r; ++k) {
        K dot = zero;
        for (int i = 0; i < r - 1; ++i) dot = dot + a.at(r - 1, i) * v[static_cast<size_t>(i)];
        c[static_cast<size_t>(k)] = -dot;
        if (k < r) {
          std::vector<K> w(static_cast<size_t>(r) - 1, zero);
          for (int i = 0; i < r - 1; ++i)
            for (int j = 0; j < r - 1; ++j) w[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] + a.at(i, j) * v[static_cast<size_t>(j)];
          v = w;
        }
      }
    }
    std::vector<K> q(static_cast<size_t>(r) + 1, zero);
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < p.size(); ++j)
        if (i >= j && i - j < c.size()) q[i] = q[i] + c[i - j] * p[j];
    p = std::move(q);
  }
  // p holds coefficients from t^n down to the constant term.
  std::vector<K> const_first(p.rbegin(), p.rend());
  return Poly<K>(zero, std::move(const_first));
}

}  // namespace quivmod
