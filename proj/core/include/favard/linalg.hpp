#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <optional>
#include <string>
#include <vector>

#include "favard/matrix.hpp"

namespace favard {
namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  }
  return e;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> a(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) a(i, j) = e(i, j);
  }
  return a;
}

// Reduced row echelon form of m, pivoting restricted to the first lead_cols
// columns. Row swaps only; pivot choice is the largest |entry| of the
// column (ties to the first row), so the result is deterministic.
// Returns the pivot columns in ascending order. Exact scalars only.
template <class S>
std::vector<int> rref_in_place(Matrix<S>& m, int lead_cols) {
  static_assert(ScalarTraits<S>::kExact);
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < lead_cols && row < m.rows(); ++col) {
    int best = -1;
    S best_abs(0);
    for (int r = row; r < m.rows(); ++r) {
      S a = ScalarTraits<S>::abs(m(r, col));
      if (sgn(a) != 0 && (best < 0 || a > best_abs)) {
        best = r;
        best_abs = a;
      }
    }
    if (best < 0) continue;
    if (best != row) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
    }
    S inv_pivot = S(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv_pivot;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      S f = m(r, col);
      for (int j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::vector<double> singular_values(const Matrix<double>& a) {
  if (a.empty()) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  std::vector<double> s(svd.singularValues().data(),
                        svd.singularValues().data() + svd.singularValues().size());
  return s;
}

}  // namespace detail

template <class S>
Matrix<S> min_norm_least_squares(const Matrix<S>& a, const Matrix<S>& rhs,
                                 double tol = kRankTolerance);

template <class S>
int rank(const Matrix<S>& a, double tol = kRankTolerance) {
  if (a.empty()) return 0;
  if constexpr (ScalarTraits<S>::kExact) {
    Matrix<S> m = a;
    return static_cast<int>(detail::rref_in_place(m, m.cols()).size());
  } else {
    auto sv = detail::singular_values(a);
    if (sv.empty() || sv.front() == 0.0) return 0;
    int r = 0;
    for (double s : sv) {
      if (s > tol * sv.front()) ++r;
    }
    return r;
  }
}

// Columns form a basis of the null space (zero-column matrix if trivial).
template <class S>
Matrix<S> kernel_basis(const Matrix<S>& a, double tol = kRankTolerance) {
  if (a.cols() == 0) return Matrix<S>(0, 0);
  if (a.rows() == 0) return Matrix<S>::identity(a.cols());
  if constexpr (ScalarTraits<S>::kExact) {
    Matrix<S> m = a;
    std::vector<int> pivots = detail::rref_in_place(m, m.cols());
    std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    Matrix<S> k(a.cols(), a.cols() - static_cast<int>(pivots.size()));
    int out = 0;
    for (int f = 0; f < a.cols(); ++f) {
      if (is_pivot[static_cast<size_t>(f)]) continue;
      k(f, out) = S(1);
      for (size_t p = 0; p < pivots.size(); ++p) {
        k(pivots[p], out) = -m(static_cast<int>(p), f);
      }
      ++out;
    }
    return k;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::to_eigen(a), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i) {
      if (smax > 0.0 && sv(i) > tol * smax) ++r;
    }
    Eigen::MatrixXd v = svd.matrixV();
    return detail::from_eigen(v.rightCols(v.cols() - r));
  }
}

// A particular solution of a*x = rhs, or nullopt when inconsistent. The
// exact path sets free variables to zero; the float path returns the
// min-norm least squares solution when its residual passes the tolerance.
template <class S>
std::optional<Matrix<S>> solve_any(const Matrix<S>& a, const Matrix<S>& rhs,
                                   double tol = kRankTolerance) {
  if (a.rows() != rhs.rows()) throw std::invalid_argument("solve shape mismatch");
  if (a.rows() == 0) return Matrix<S>(a.cols(), rhs.cols());
  if (a.cols() == 0) {
    if constexpr (ScalarTraits<S>::kExact) {
      if (sgn(rhs.max_abs()) != 0) return std::nullopt;
    } else {
      if (rhs.max_abs() > tol) return std::nullopt;
    }
    return Matrix<S>(0, rhs.cols());
  }
  if constexpr (ScalarTraits<S>::kExact) {
    Matrix<S> m(a.rows(), a.cols() + rhs.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
      for (int j = 0; j < rhs.cols(); ++j) m(i, a.cols() + j) = rhs(i, j);
    }
    std::vector<int> pivots = detail::rref_in_place(m, a.cols());
    for (int r = static_cast<int>(pivots.size()); r < m.rows(); ++r) {
      for (int j = 0; j < rhs.cols(); ++j) {
        if (sgn(m(r, a.cols() + j)) != 0) return std::nullopt;
      }
    }
    Matrix<S> x(a.cols(), rhs.cols());
    for (size_t p = 0; p < pivots.size(); ++p) {
      for (int j = 0; j < rhs.cols(); ++j) {
        x(pivots[p], j) = m(static_cast<int>(p), a.cols() + j);
      }
    }
    return x;
  } else {
    Matrix<S> x = min_norm_least_squares(a, rhs, tol);
    Matrix<S> residual = a * x - rhs;
    double scale = 1.0 + rhs.max_abs() + a.max_abs() * x.max_abs() * a.cols();
    if (residual.max_abs() > tol * scale) return std::nullopt;
    return x;
  }
}

// Minimum-norm least squares solution of a*x = rhs. Exact path: any
// solution of the normal equations with the kernel component removed;
// float path: truncated-SVD pseudo-inverse solve.
template <class S>
Matrix<S> min_norm_least_squares(const Matrix<S>& a, const Matrix<S>& rhs,
                                 double tol) {
  if (a.rows() != rhs.rows()) throw std::invalid_argument("solve shape mismatch");
  if (a.cols() == 0) return Matrix<S>(0, rhs.cols());
  if (a.rows() == 0) return Matrix<S>(a.cols(), rhs.cols());
  if constexpr (ScalarTraits<S>::kExact) {
    Matrix<S> at = a.transpose();
    Matrix<S> normal = at * a;
    auto x0 = solve_any(normal, at * rhs, tol);
    if (!x0) throw InternalError("normal equations are always consistent");
    Matrix<S> k = kernel_basis(normal, tol);
    if (k.cols() == 0) return *x0;
    Matrix<S> kt = k.transpose();
    auto c = solve_any(kt * k, kt * *x0, tol);
    if (!c) throw InternalError("kernel Gram is invertible");
    return *x0 - k * *c;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::to_eigen(a),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol);
    return detail::from_eigen(svd.solve(detail::to_eigen(rhs)));
  }
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a, double tol = kRankTolerance) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  if (a.rows() == 0) return Matrix<S>(0, 0);
  if constexpr (ScalarTraits<S>::kExact) {
    return solve_any(a, Matrix<S>::identity(a.rows()), tol);
  } else {
    if (rank(a, tol) < a.rows()) return std::nullopt;
    Eigen::MatrixXd inv = detail::to_eigen(a).partialPivLu().inverse();
    return detail::from_eigen(inv);
  }
}

// nullopt when positive semidefinite; otherwise a short description of the
// violation. Exact path: diagonal-pivot Schur elimination (a symmetric
// matrix is PSD iff the pivot sequence never produces a negative diagonal
// entry or a zero diagonal entry with a nonzero row).
template <class S>
std::optional<std::string> psd_violation(const Matrix<S>& a, double tol = kDefaultTolerance) {
  if (a.rows() != a.cols()) return "not square";
  int n = a.rows();
  if (n == 0) return std::nullopt;
  if constexpr (ScalarTraits<S>::kExact) {
    if (a != a.transpose()) return "not symmetric";
    Matrix<S> m = a;
    std::vector<int> active(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) active[static_cast<size_t>(i)] = i;
    while (!active.empty()) {
      int pivot_pos = -1;
      for (size_t t = 0; t < active.size(); ++t) {
        int i = active[t];
        int s = sgn(m(i, i));
        if (s < 0) {
          return "negative diagonal entry at index " + std::to_string(i) +
                 " after elimination";
        }
        if (s > 0 && (pivot_pos < 0 || m(i, i) > m(active[static_cast<size_t>(pivot_pos)],
                                                   active[static_cast<size_t>(pivot_pos)]))) {
          pivot_pos = static_cast<int>(t);
        }
      }
      if (pivot_pos < 0) {
        // All remaining diagonal entries vanish: the block must be zero.
        for (int i : active) {
          for (int j : active) {
            if (sgn(m(i, j)) != 0) {
              return "zero diagonal with nonzero entry at (" + std::to_string(i) +
                     "," + std::to_string(j) + ")";
            }
          }
        }
        return std::nullopt;
      }
      int p = active[static_cast<size_t>(pivot_pos)];
      active.erase(active.begin() + pivot_pos);
      S d = m(p, p);
      for (int i : active) {
        for (int j : active) m(i, j) -= m(i, p) * m(p, j) / d;
      }
    }
    return std::nullopt;
  } else {
    Matrix<S> sym_residual = a - a.transpose();
    double scale = std::max(1.0, a.max_abs());
    if (sym_residual.max_abs() > tol * scale) return "not symmetric";
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(a),
                                                      Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    double hi = std::max(std::abs(es.eigenvalues().minCoeff()),
                         std::abs(es.eigenvalues().maxCoeff()));
    if (lo < -tol * std::max(1.0, hi)) {
      return "eigenvalue " + std::to_string(lo) + " below tolerance";
    }
    return std::nullopt;
  }
}

template <class S>
bool is_psd(const Matrix<S>& a, double tol = kDefaultTolerance) {
  return !psd_violation(a, tol).has_value();
}

}  // namespace favard
