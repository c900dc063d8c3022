#pragma once

#include <initializer_list>
#include <vector>

#include "favard/errors.hpp"
#include "favard/scalar.hpp"

namespace favard {

// Dense row-major matrix over S. Sized for the small graded blocks this
// library manipulates; no sparse or blocked storage.
template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}

  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), S(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * static_cast<size_t>(cols_));
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) {
        throw std::invalid_argument("ragged matrix initializer");
      }
      for (const auto& v : r) a_.push_back(v);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  static Matrix diagonal(const std::vector<S>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows_; ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  S& operator()(int i, int j) { return a_[idx(i, j)]; }
  const S& operator()(int i, int j) const { return a_[idx(i, j)]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(rows_, b.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const S& aik = (*this)(i, k);
        if (ScalarTraits<S>::is_zero(aik, 0.0)) continue;
        for (int j = 0; j < b.cols_; ++j) {
          out(i, j) += aik * b(k, j);
        }
      }
    }
    return out;
  }

  Matrix operator+(const Matrix& b) const {
    require_same_shape(b);
    Matrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += b.a_[i];
    return out;
  }

  Matrix operator-(const Matrix& b) const {
    require_same_shape(b);
    Matrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= b.a_[i];
    return out;
  }

  Matrix& operator*=(const S& s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator*(const S& s, Matrix m) { return m *= s; }

  std::vector<S> apply(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != cols_) {
      throw std::invalid_argument("matrix-vector shape mismatch");
    }
    std::vector<S> y(static_cast<size_t>(rows_), S(0));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) y[static_cast<size_t>(i)] += (*this)(i, j) * x[static_cast<size_t>(j)];
    }
    return y;
  }

  std::vector<S> column(int j) const {
    std::vector<S> c(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[static_cast<size_t>(i)] = (*this)(i, j);
    return c;
  }

  void set_column(int j, const std::vector<S>& c) {
    if (static_cast<int>(c.size()) != rows_) throw std::invalid_argument("column size mismatch");
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[static_cast<size_t>(i)];
  }

  bool operator==(const Matrix&) const = default;

  S max_abs() const {
    S m(0);
    for (const auto& v : a_) {
      S a = ScalarTraits<S>::abs(v);
      if (a > m) m = a;
    }
    return m;
  }

 private:
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
  }

  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw std::invalid_argument("matrix shape mismatch");
    }
  }

  int rows_;
  int cols_;
  std::vector<S> a_;
};

}  // namespace favard
