#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "polyq/scalar.hpp"

namespace polyq {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : e_(n) {}
  Vector(std::initializer_list<Scalar> init) : e_(init) {}

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = Scalar(1);
    return v;
  }

  std::size_t size() const { return e_.size(); }
  Scalar& operator[](std::size_t i) { return e_[i]; }
  const Scalar& operator[](std::size_t i) const { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  bool is_zero() const {
    for (const auto& s : e_)
      if (!s.is_zero()) return false;
    return true;
  }

  bool is_exact() const {
    for (const auto& s : e_)
      if (!s.is_exact()) return false;
    return true;
  }

  friend Vector operator+(const Vector& x, const Vector& y) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
  }

  friend Vector operator-(const Vector& x, const Vector& y) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
  }

  friend Vector operator*(const Scalar& c, const Vector& v) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
  }

  friend bool operator==(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) return false;
    return true;
  }

 private:
  std::vector<Scalar> e_;
};

inline Scalar dot(const Vector& x, const Vector& y) {
  if (x.size() == 0) return Scalar(0);
  Scalar s = x[0] * y[0];  // first term fixes the field mode
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    return m;
  }

  static Matrix from_cols(const std::vector<Vector>& cols) {
    if (cols.empty()) return {};
    Matrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    Vector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }

  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector operator*(const Vector& v) const {
    Vector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Scalar s = cols_ == 0 ? Scalar(0) : (*this)(i, 0) * v[0];
      for (std::size_t j = 1; j < cols_; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        Scalar s = cols_ == 0 ? Scalar(0) : (*this)(i, 0) * o(0, j);
        for (std::size_t k = 1; k < cols_; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  bool is_exact() const {
    for (const auto& s : e_)
      if (!s.is_exact()) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& s : e_)
      if (!s.is_zero()) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

struct EchelonForm {
  Matrix rref;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

/**
 * Reduced row echelon form by Gauss-Jordan elimination with a fixed pivot
 * rule: in each column, the first not-yet-used row whose entry is nonzero of
 * maximal field degree. Deterministic across runs and platforms, so kernel
 * and solution bases are reproducible.
 */
inline EchelonForm reduced_echelon(Matrix a) {
  EchelonForm ef;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    int best_deg = 0;
    for (std::size_t r = row; r < a.rows(); ++r) {
      const int deg = a(r, col).degree();
      if (deg > best_deg) {
        best = r;
        best_deg = deg;
      }
    }
    if (best == a.rows()) continue;  // column is zero below current row
    if (best != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(best, j));
    const Scalar pivot = a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = a(row, j) / pivot;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Scalar f = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(r, j) = a(r, j) - f * a(row, j);
    }
    ef.pivot_cols.push_back(col);
    ++row;
  }
  ef.rref = std::move(a);
  return ef;
}

inline std::size_t rank(const Matrix& a) { return reduced_echelon(a).rank(); }

namespace detail {

/// Field the fill values (0s and 1s of bases and solutions) must live in so
/// they combine with the matrix entries.
inline FieldDesc matrix_field(const Matrix& a) {
  FieldDesc fd{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& s = a(i, j);
      if (s.kind() == FieldKind::floating)
        return {FieldKind::floating, 0, s.float_tol()};
      if (s.kind() == FieldKind::quadratic) fd = {FieldKind::quadratic, s.quad_d(), fd.tol};
    }
  return fd;
}

}  // namespace detail

/// Null-space basis in any field mode; the basis is the standard one read
/// off the reduced echelon form (one vector per free column), deterministic.
inline std::vector<Vector> kernel_basis(const Matrix& a, const FieldDesc& field) {
  const EchelonForm ef = reduced_echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (const auto c : ef.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) v[j] = field_scalar(field, 0);
    v[f] = field_scalar(field, 1);
    for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i)
      v[ef.pivot_cols[i]] = -ef.rref(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<Vector> kernel_basis(const Matrix& a) {
  return kernel_basis(a, detail::matrix_field(a));
}

/// Solve A x = b in any field mode: the particular solution with free
/// variables zero, or nullopt when b is outside the column span.
inline std::optional<Vector> solve_linear(const Matrix& a, const Vector& b,
                                          const FieldDesc& field) {
  if (a.rows() != b.size())
    throw ValidationError("bad_input", "linear solve: dimension mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const EchelonForm ef = reduced_echelon(std::move(aug));
  for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i)
    if (ef.pivot_cols[i] == a.cols()) return std::nullopt;  // inconsistent row
  Vector x(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) x[j] = field_scalar(field, 0);
  for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i)
    x[ef.pivot_cols[i]] = ef.rref(i, a.cols());
  return x;
}

inline std::optional<Vector> solve_linear(const Matrix& a, const Vector& b) {
  return solve_linear(a, b, detail::matrix_field(a));
}

/// Exact null-space basis: rejects float-mode input.
inline std::vector<Vector> exact_kernel(const Matrix& a) {
  if (!a.is_exact())
    throw ValidationError("exact_field_required", "exact kernel requires exact field");
  return kernel_basis(a);
}

/// Exact solve: rejects float-mode input.
inline std::optional<Vector> solve_exact(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size())
    throw ValidationError("bad_input", "solve_exact: dimension mismatch");
  if (!a.is_exact() || !b.is_exact())
    throw ValidationError("exact_field_required", "exact solve requires exact field");
  return solve_linear(a, b);
}

/**
 * Dimension of the Q-vector space spanned by the given vectors, expanding
 * each coordinate a + b*sqrt(D) into the rational pair (a, b). This is the
 * rank that decides whether the quasilattice they generate is discrete.
 */
inline std::size_t rational_relation_rank(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return 0;
  for (const auto& v : vectors)
    if (!v.is_exact())
      throw ValidationError("exact_field_required",
                            "rational relation rank requires exact field");
  const std::size_t n = vectors[0].size();
  bool any_quadratic = false;
  for (const auto& v : vectors)
    for (const auto& s : v)
      if (s.kind() == FieldKind::quadratic) any_quadratic = true;
  const std::size_t width = any_quadratic ? 2 * n : n;
  Matrix m(vectors.size(), width);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = Scalar(vectors[i][j].rat_part());
      if (any_quadratic) m(i, n + j) = Scalar(vectors[i][j].irr_part());
    }
  return rank(m);
}

namespace detail {

/// Visit every k-subset of {0,...,m-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int m, int k, Fn&& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

}  // namespace polyq
