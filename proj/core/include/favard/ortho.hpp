#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "favard/linalg.hpp"
#include "favard/moments.hpp"

namespace favard {

// One level of the graded orthogonal decomposition: the monic basis
// polynomial q_M for every degree-n monomial label M, its Gram matrix, and
// the numeric rank of that Gram (deficient for finitely supported states).
template <class S>
struct LevelBasis {
  SymBasis labels;
  std::vector<Polynomial<S>> monic;
  Matrix<S> gram;
  int rank = 0;
};

template <class S>
class OrthogonalDecomposition {
 public:
  OrthogonalDecomposition(int dimension, std::vector<LevelBasis<S>> levels)
      : d_(dimension), levels_(std::move(levels)) {}

  int dimension() const { return d_; }
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const LevelBasis<S>& level(int n) const { return levels_.at(static_cast<size_t>(n)); }
  int dim(int n) const { return level(n).labels.size(); }

 private:
  int d_;
  std::vector<LevelBasis<S>> levels_;
};

namespace detail {

// orders, when given, permutes the processing sequence inside each level
// (testing hook: the monic representatives must not depend on it). Results
// are stored by canonical position regardless.
template <class S>
OrthogonalDecomposition<S> decompose_ordered(const MomentFunctional<S>& m, int max_level,
                                             const std::vector<std::vector<int>>* orders,
                                             double tol) {
  if (max_level < 0) throw ConfigError("level must be nonnegative");
  if (m.max_degree() < 2 * max_level) {
    throw ValidationError("decomposition to level " + std::to_string(max_level) +
                          " needs moments of degree " + std::to_string(2 * max_level) +
                          ", table covers degree " + std::to_string(m.max_degree()));
  }
  int d = m.dimension();
  std::vector<LevelBasis<S>> levels;
  levels.reserve(static_cast<size_t>(max_level) + 1);

  for (int n = 0; n <= max_level; ++n) {
    SymBasis labels(d, n);
    int dim = labels.size();
    LevelBasis<S> lvl{labels, std::vector<Polynomial<S>>(static_cast<size_t>(dim), Polynomial<S>(d)),
                      Matrix<S>(dim, dim), 0};

    std::vector<int> order(static_cast<size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    if (orders) order = orders->at(static_cast<size_t>(n));

    for (int pos : order) {
      // q_M = M minus its projection onto every lower level, one level at a
      // time against the current residual. Lower levels are mutually
      // orthogonal, so the order of h does not matter.
      Polynomial<S> p = Polynomial<S>::monomial(labels[pos]);
      for (int h = 0; h < n; ++h) {
        const LevelBasis<S>& lower = levels[static_cast<size_t>(h)];
        Matrix<S> b(lower.labels.size(), 1);
        for (int i = 0; i < lower.labels.size(); ++i) {
          b(i, 0) = inner(p, lower.monic[static_cast<size_t>(i)], m);
        }
        auto c = solve_any(lower.gram, b, tol);
        if (!c) {
          throw ValidationError(
              "projection onto level " + std::to_string(h) +
              " has no solution: input moments do not define a state");
        }
        for (int i = 0; i < lower.labels.size(); ++i) {
          if (ScalarTraits<S>::is_zero((*c)(i, 0), 0.0)) continue;
          p -= (*c)(i, 0) * lower.monic[static_cast<size_t>(i)];
        }
      }
      lvl.monic[static_cast<size_t>(pos)] = std::move(p);
    }

    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        S v = inner(lvl.monic[static_cast<size_t>(i)], lvl.monic[static_cast<size_t>(j)], m);
        lvl.gram(i, j) = v;
        lvl.gram(j, i) = v;
      }
    }
    if (auto violation = psd_violation(lvl.gram, tol)) {
      throw ValidationError("level-" + std::to_string(n) +
                            " Gram matrix is not positive semidefinite: " + *violation);
    }
    lvl.rank = rank(lvl.gram);
    levels.push_back(std::move(lvl));
  }
  return OrthogonalDecomposition<S>(d, std::move(levels));
}

}  // namespace detail

// Monic orthogonalization by total degree against the state's moments.
// Degenerate level Grams are handled by taking any solution of the
// projection equations (they are always consistent for a genuine state).
template <class S>
OrthogonalDecomposition<S> decompose(const MomentFunctional<S>& m, int max_level,
                                     double tol = kDefaultTolerance) {
  return detail::decompose_ordered(m, max_level, nullptr, tol);
}

// Coordinates of p in the monic bases, one vector per level 0..max_level.
// Triangular elimination on leading terms: exact, Gram-independent, and
// valid in both arithmetic modes (leading coefficients are exactly 1).
template <class S>
std::vector<std::vector<S>> project_coeffs(const Polynomial<S>& p,
                                           const OrthogonalDecomposition<S>& dec) {
  if (p.degree() > dec.max_level()) {
    throw std::invalid_argument("degree " + std::to_string(p.degree()) +
                                " exceeds decomposition depth " +
                                std::to_string(dec.max_level()));
  }
  std::vector<std::vector<S>> coords(static_cast<size_t>(dec.max_level()) + 1);
  for (int n = 0; n <= dec.max_level(); ++n) {
    coords[static_cast<size_t>(n)].assign(static_cast<size_t>(dec.dim(n)), S(0));
  }
  Polynomial<S> rest = p;
  for (int n = dec.max_level(); n >= 0; --n) {
    if (rest.degree() < n) continue;
    const LevelBasis<S>& lvl = dec.level(n);
    std::vector<std::pair<int, S>> slice;
    for (const auto& [idx, c] : rest.terms()) {
      if (idx.degree() == n) slice.emplace_back(lvl.labels.position(idx), c);
    }
    for (const auto& [pos, c] : slice) {
      coords[static_cast<size_t>(n)][static_cast<size_t>(pos)] = c;
      rest -= c * lvl.monic[static_cast<size_t>(pos)];
    }
  }
  if (!rest.is_zero()) throw InternalError("leading-term elimination left a residue");
  return coords;
}

}  // namespace favard
