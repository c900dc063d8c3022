#pragma once

#include <span>
#include <utility>
#include <vector>

#include "favard/cap.hpp"

namespace favard {

// Level-n slice of the Jacobi data of a state:
//  - omega_form W_n: the bilinear form <xi, Omega_n eta> on the multiset
//    basis, i.e. the Gram of the canonical creator words. The operator
//    matrix in the non-orthonormal multiset basis differs by the canonical
//    Gram and is derived on demand.
//  - creator_words C_n: monic coordinates of the canonical words
//    (one column per class), so W_n = C_n^T G_n C_n.
//  - alpha: the level-preserving operators, conjugated back from the
//    preservation blocks through C_n; defined modulo ker W_n when C_n is
//    singular (finitely supported states), in which case creator_singular
//    is set and a least-squares representative is stored.
template <class S>
struct JacobiLevel {
  SymBasis basis;
  Matrix<S> omega_form;
  Matrix<S> creator_words;
  std::vector<Matrix<S>> alpha;  // empty at the top level
  int omega_rank = 0;
  int creator_rank = 0;
  bool creator_singular = false;
};

template <class S>
class JacobiSequences {
 public:
  JacobiSequences(int dimension, std::vector<JacobiLevel<S>> levels)
      : d_(dimension), levels_(std::move(levels)) {}

  int dimension() const { return d_; }
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const JacobiLevel<S>& level(int n) const { return levels_.at(static_cast<size_t>(n)); }

  // Operator matrix of the level-n form in the multiset basis: the diagonal
  // canonical Gram moved to the other side.
  Matrix<S> omega_operator(int n) const {
    const JacobiLevel<S>& lvl = level(n);
    Matrix<S> gram = canonical_sym_gram<S>(lvl.basis);
    Matrix<S> out = lvl.omega_form;
    for (int i = 0; i < out.rows(); ++i) {
      for (int j = 0; j < out.cols(); ++j) out(i, j) = out(i, j) / gram(i, i);
    }
    return out;
  }

 private:
  int d_;
  std::vector<JacobiLevel<S>> levels_;
};

// xi -> e_j (symmetrized with) xi in multiset coordinates: the 0/1 inclusion
// that bumps the j-th multiplicity. Identical for every state.
template <class S>
Matrix<S> raising_matrix(int d, int level, int j) {
  SymBasis from(d, level);
  SymBasis to(d, level + 1);
  Matrix<S> e(to.size(), from.size());
  for (int col = 0; col < from.size(); ++col) {
    e(to.position(from[col].plus(j)), col) = S(1);
  }
  return e;
}

// Assembles the Jacobi data from the decomposition and the CAP blocks. The
// canonical word for the class with multiplicities (m_1,...,m_d) applies the
// creation blocks variable by variable in increasing index order; creator
// commutation makes any other representative equivalent.
template <class S>
JacobiSequences<S> build_jacobi(const OrthogonalDecomposition<S>& dec,
                                const std::vector<CapLevel<S>>& cap,
                                double tol = kDefaultTolerance) {
  int top = dec.max_level();
  int d = dec.dimension();
  if (static_cast<int>(cap.size()) != top) {
    throw std::invalid_argument("CAP blocks do not match the decomposition depth");
  }
  std::vector<JacobiLevel<S>> levels;
  levels.reserve(static_cast<size_t>(top) + 1);

  Matrix<S> prev_words;
  for (int n = 0; n <= top; ++n) {
    JacobiLevel<S> lvl{SymBasis(d, n), Matrix<S>(), Matrix<S>(), {}, 0, 0, false};
    int dim = lvl.basis.size();
    if (n == 0) {
      lvl.creator_words = Matrix<S>::identity(1);
    } else {
      SymBasis prev_basis(d, n - 1);
      lvl.creator_words = Matrix<S>(dim, dim);
      for (int col = 0; col < dim; ++col) {
        const MultiIndex& cls = lvl.basis[col];
        int j = cls.first_nonzero();
        std::vector<S> word = cap[static_cast<size_t>(n) - 1].creation[static_cast<size_t>(j)].apply(
            prev_words.column(prev_basis.position(cls.minus(j))));
        lvl.creator_words.set_column(col, word);
      }
    }

    Matrix<S> product =
        lvl.creator_words.transpose() * dec.level(n).gram * lvl.creator_words;
    // Exactly symmetric in rational mode; enforced against roundoff in float.
    Matrix<S> sym = product + product.transpose();
    sym *= S(1) / S(2);
    lvl.omega_form = std::move(sym);
    lvl.omega_rank = rank(lvl.omega_form);
    lvl.creator_rank = rank(lvl.creator_words);
    lvl.creator_singular = lvl.creator_rank < dim;

    if (n < top) {
      for (int j = 0; j < d; ++j) {
        Matrix<S> rhs = cap[static_cast<size_t>(n)].preservation[static_cast<size_t>(j)] *
                        lvl.creator_words;
        if (!lvl.creator_singular) {
          auto solved = solve_any(lvl.creator_words, rhs, tol);
          if (!solved) throw InternalError("invertible creator-word matrix failed to solve");
          lvl.alpha.push_back(std::move(*solved));
        } else {
          lvl.alpha.push_back(min_norm_least_squares(lvl.creator_words, rhs, tol));
        }
      }
    }
    prev_words = lvl.creator_words;
    levels.push_back(std::move(lvl));
  }
  return JacobiSequences<S>(d, std::move(levels));
}

// Creation fields are structural inclusions; annihilation fields are their
// adjoints for the level forms, solved from W_{n-1} F = (F+)^T W_n. The
// system is always consistent; when W_{n-1} is singular the minimum-norm
// representative is taken and the field is determined on the complement of
// the kernel.
template <class S>
struct FockFields {
  std::vector<std::vector<Matrix<S>>> creation;      // [n][j], n = 0..N-1
  std::vector<std::vector<Matrix<S>>> annihilation;  // [n][j], n = 1..N ([0] unused)
};

template <class S>
FockFields<S> build_fock_fields(const JacobiSequences<S>& jac, double tol = kDefaultTolerance) {
  int top = jac.max_level();
  int d = jac.dimension();
  FockFields<S> fields;
  fields.creation.resize(static_cast<size_t>(top));
  fields.annihilation.resize(static_cast<size_t>(top) + 1);
  for (int n = 0; n < top; ++n) {
    for (int j = 0; j < d; ++j) {
      fields.creation[static_cast<size_t>(n)].push_back(raising_matrix<S>(d, n, j));
    }
  }
  for (int n = 1; n <= top; ++n) {
    const Matrix<S>& w_low = jac.level(n - 1).omega_form;
    const Matrix<S>& w = jac.level(n).omega_form;
    for (int j = 0; j < d; ++j) {
      Matrix<S> rhs =
          fields.creation[static_cast<size_t>(n) - 1][static_cast<size_t>(j)].transpose() * w;
      Matrix<S> f = min_norm_least_squares(w_low, rhs, tol);
      if constexpr (ScalarTraits<S>::kExact) {
        if (!(w_low * f == rhs)) {
          throw InternalError("annihilation field equation is inconsistent");
        }
      }
      fields.annihilation[static_cast<size_t>(n)].push_back(std::move(f));
    }
  }
  return fields;
}

// Applies the level-graded blocks of the word's coordinates right to left to
// the vacuum and returns the vacuum component: the state evaluated on the
// word, rebuilt purely from the Jacobi data.
template <class S>
S reconstruct_moment(const JacobiSequences<S>& jac, const FockFields<S>& fields,
                     std::span<const int> word) {
  int top = jac.max_level();
  int d = jac.dimension();
  if (static_cast<int>(word.size()) > top) {
    throw std::invalid_argument("word of length " + std::to_string(word.size()) +
                                " exceeds the decomposition depth " + std::to_string(top));
  }
  for (int j : word) {
    if (j < 0 || j >= d) throw std::invalid_argument("word letter outside the dimension");
  }

  std::vector<std::vector<S>> state(static_cast<size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    state[static_cast<size_t>(n)].assign(static_cast<size_t>(jac.level(n).basis.size()), S(0));
  }
  state[0][0] = S(1);
  int occupied = 0;

  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int j = *it;
    std::vector<std::vector<S>> next(state.size());
    for (size_t n = 0; n < state.size(); ++n) {
      next[n].assign(state[n].size(), S(0));
    }
    for (int n = 0; n <= occupied; ++n) {
      const auto& cur = state[static_cast<size_t>(n)];
      bool live = false;
      for (const S& v : cur) {
        if (!ScalarTraits<S>::is_zero(v, 0.0)) live = true;
      }
      if (!live) continue;
      if (n >= top) throw InternalError("word walk escaped the decomposition depth");
      auto up = fields.creation[static_cast<size_t>(n)][static_cast<size_t>(j)].apply(cur);
      auto& up_dst = next[static_cast<size_t>(n) + 1];
      for (size_t i = 0; i < up.size(); ++i) up_dst[i] += up[i];

      const auto& alpha = jac.level(n).alpha;
      if (alpha.empty()) throw InternalError("missing alpha block during word walk");
      auto keep = alpha[static_cast<size_t>(j)].apply(cur);
      auto& keep_dst = next[static_cast<size_t>(n)];
      for (size_t i = 0; i < keep.size(); ++i) keep_dst[i] += keep[i];

      if (n > 0) {
        auto down = fields.annihilation[static_cast<size_t>(n)][static_cast<size_t>(j)].apply(cur);
        auto& down_dst = next[static_cast<size_t>(n) - 1];
        for (size_t i = 0; i < down.size(); ++i) down_dst[i] += down[i];
      }
    }
    state = std::move(next);
    occupied = std::min(occupied + 1, top);
  }
  return state[0][0];
}

// Verifies the transformation law of the Jacobi data under the invertible
// change of coordinates r at one level, in the orientation the transformed
// pipeline realizes (primed coordinate j is the form sum_k r[k,j] X_k):
//   W' = L^T W L        with L the lifted map of r,
//   alpha'_j = L^{-1} (sum_k r[k,j] alpha_k) L
// (the alpha of the same vector, re-expressed and conjugated back). When
// either side is degenerate the alpha comparison is taken as forms on the
// quotient by ker(omega), which is exactly what remains well defined there.
template <class S>
CheckResult check_basis_covariance(const JacobiSequences<S>& base,
                                   const JacobiSequences<S>& primed, const Matrix<S>& r,
                                   int level, double tol = kDefaultTolerance) {
  CheckResult res;
  res.name = "basis_covariance";
  if (level > base.max_level() || level > primed.max_level()) {
    throw std::invalid_argument("level outside both Jacobi sequences");
  }
  int d = base.dimension();
  Matrix<S> lift = sym_lift(r, level);
  const Matrix<S>& w = base.level(level).omega_form;
  const Matrix<S>& wp = primed.level(level).omega_form;

  DeviationTracker<S> dev;
  Matrix<S> pushed = lift.transpose() * w * lift;
  for (int i = 0; i < wp.rows(); ++i) {
    for (int j = 0; j < wp.cols(); ++j) dev.update_diff(wp(i, j), pushed(i, j));
  }

  bool compare_alpha = level < base.max_level() && level < primed.max_level();
  if (compare_alpha) {
    auto lift_inv = inverse(lift, tol);
    if (!lift_inv) throw InternalError("lift of an invertible matrix must invert");
    bool degenerate = base.level(level).creator_singular ||
                      primed.level(level).creator_singular ||
                      primed.level(level).omega_rank < wp.rows();
    for (int j = 0; j < d; ++j) {
      // alpha of the vector r e_j expressed in the base data ...
      Matrix<S> mixed(w.rows(), w.cols());
      for (int k = 0; k < d; ++k) {
        Matrix<S> term = base.level(level).alpha[static_cast<size_t>(k)];
        term *= r(k, j);
        mixed = mixed + term;
      }
      // ... conjugated into the transformed coordinates must be alpha of
      // direction j there.
      Matrix<S> conj = *lift_inv * mixed * lift;
      Matrix<S> delta = primed.level(level).alpha[static_cast<size_t>(j)] - conj;
      if (!degenerate) {
        for (int a = 0; a < delta.rows(); ++a) {
          for (int b = 0; b < delta.cols(); ++b) dev.update(delta(a, b), conj(a, b));
        }
      } else {
        Matrix<S> quotient = wp * delta * wp;
        S scale = wp.max_abs();
        for (int a = 0; a < quotient.rows(); ++a) {
          for (int b = 0; b < quotient.cols(); ++b) {
            dev.update(quotient(a, b), scale * scale);
          }
        }
      }
    }
    if (base.level(level).creator_singular || primed.level(level).creator_singular) {
      res.notes.push_back("level " + std::to_string(level) +
                          ": alpha compared as forms modulo ker(omega)");
    }
  }
  res.passed = dev.ok(tol);
  res.max_deviation = dev.str();
  return res;
}

}  // namespace favard
