#pragma once

#include <vector>

#include "favard/check_result.hpp"
#include "favard/ortho.hpp"

namespace favard {

// Level-n blocks of multiplication by each coordinate in monic coordinates:
// creation raises the level, preservation keeps it, annihilation lowers it.
// The Gram matrices of the decomposition twist the adjoint relations.
template <class S>
struct CapLevel {
  int level = 0;
  std::vector<Matrix<S>> creation;      // [j]: dim_{n+1} x dim_n
  std::vector<Matrix<S>> preservation;  // [j]: dim_n x dim_n
  std::vector<Matrix<S>> annihilation;  // [j]: dim_{n-1} x dim_n (zero rows at level 0)
};

// Splits X_j * q into its level components for every monic basis element q
// of every level below max_level. Components outside the three adjacent
// levels must vanish; anything else is an internal inconsistency.
template <class S>
std::vector<CapLevel<S>> build_cap(const OrthogonalDecomposition<S>& dec,
                                   double tol = kDefaultTolerance) {
  int top = dec.max_level();
  int d = dec.dimension();
  std::vector<CapLevel<S>> cap;
  cap.reserve(static_cast<size_t>(top));
  for (int n = 0; n < top; ++n) {
    int dim = dec.dim(n);
    CapLevel<S> lvl;
    lvl.level = n;
    for (int j = 0; j < d; ++j) {
      lvl.creation.emplace_back(dec.dim(n + 1), dim);
      lvl.preservation.emplace_back(dim, dim);
      lvl.annihilation.emplace_back(n > 0 ? dec.dim(n - 1) : 0, dim);
    }
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < dim; ++i) {
        Polynomial<S> r = Polynomial<S>::variable(d, j) * dec.level(n).monic[static_cast<size_t>(i)];
        auto coords = project_coeffs(r, dec);
        S scale = r.max_abs_coeff() + S(1);
        for (int h = 0; h <= top; ++h) {
          if (h >= n - 1 && h <= n + 1) continue;
          for (const S& c : coords[static_cast<size_t>(h)]) {
            bool zero;
            if constexpr (ScalarTraits<S>::kExact) {
              zero = sgn(c) == 0;
            } else {
              zero = ScalarTraits<S>::abs(c) <= tol * ScalarTraits<S>::to_double(scale);
            }
            if (!zero) {
              throw InternalError("multiplication by a coordinate leaked from level " +
                                  std::to_string(n) + " to level " + std::to_string(h));
            }
          }
        }
        for (int k = 0; k < dec.dim(n + 1); ++k) {
          lvl.creation[static_cast<size_t>(j)](k, i) = coords[static_cast<size_t>(n) + 1][static_cast<size_t>(k)];
        }
        for (int k = 0; k < dim; ++k) {
          lvl.preservation[static_cast<size_t>(j)](k, i) = coords[static_cast<size_t>(n)][static_cast<size_t>(k)];
        }
        if (n > 0) {
          for (int k = 0; k < dec.dim(n - 1); ++k) {
            lvl.annihilation[static_cast<size_t>(j)](k, i) = coords[static_cast<size_t>(n) - 1][static_cast<size_t>(k)];
          }
        }
      }
    }
    cap.push_back(std::move(lvl));
  }
  return cap;
}

// Rebuilds X_j * q from the three matrix blocks as a polynomial and compares
// coefficients. Zero residual certifies the three-block decomposition of
// every coordinate multiplication.
template <class S>
CheckResult check_quantum_decomposition(const std::vector<CapLevel<S>>& cap,
                                        const OrthogonalDecomposition<S>& dec,
                                        double tol = kDefaultTolerance) {
  CheckResult res;
  res.name = "quantum_decomposition";
  DeviationTracker<S> dev;
  int d = dec.dimension();
  for (const CapLevel<S>& lvl : cap) {
    int n = lvl.level;
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < dec.dim(n); ++i) {
        Polynomial<S> expected =
            Polynomial<S>::variable(d, j) * dec.level(n).monic[static_cast<size_t>(i)];
        Polynomial<S> rebuilt(d);
        for (int k = 0; k < dec.dim(n + 1); ++k) {
          rebuilt += lvl.creation[static_cast<size_t>(j)](k, i) *
                     dec.level(n + 1).monic[static_cast<size_t>(k)];
        }
        for (int k = 0; k < dec.dim(n); ++k) {
          rebuilt += lvl.preservation[static_cast<size_t>(j)](k, i) *
                     dec.level(n).monic[static_cast<size_t>(k)];
        }
        if (n > 0) {
          for (int k = 0; k < dec.dim(n - 1); ++k) {
            rebuilt += lvl.annihilation[static_cast<size_t>(j)](k, i) *
                       dec.level(n - 1).monic[static_cast<size_t>(k)];
          }
        }
        Polynomial<S> residual = expected - rebuilt;
        S scale = expected.max_abs_coeff();
        for (const auto& [idx, c] : residual.terms()) dev.update(c, scale);
      }
    }
  }
  res.passed = dev.ok(tol);
  res.max_deviation = dev.str();
  return res;
}

struct InjectivityWitness {
  bool injective = false;
  int rank = 0;
  int required = 0;
};

// Column rank of the creation block in direction v at the given level. The
// statement is about coefficient vectors, so rank is taken in the plain
// coordinate sense, not against the (possibly degenerate) state norm.
template <class S>
InjectivityWitness check_creator_injectivity(const std::vector<CapLevel<S>>& cap,
                                             const std::vector<S>& direction, int level,
                                             double tol = kRankTolerance) {
  if (level < 0 || level >= static_cast<int>(cap.size())) {
    throw std::invalid_argument("level outside the built range");
  }
  const CapLevel<S>& lvl = cap[static_cast<size_t>(level)];
  if (direction.size() != lvl.creation.size()) {
    throw std::invalid_argument("direction dimension mismatch");
  }
  bool all_zero = true;
  for (const S& v : direction) {
    if (!ScalarTraits<S>::is_zero(v, 0.0)) all_zero = false;
  }
  if (all_zero) throw std::invalid_argument("direction vector must be nonzero");

  Matrix<S> a(lvl.creation[0].rows(), lvl.creation[0].cols());
  for (size_t j = 0; j < direction.size(); ++j) {
    Matrix<S> term = lvl.creation[j];
    term *= direction[j];
    a = a + term;
  }
  InjectivityWitness w;
  w.required = a.cols();
  w.rank = rank(a, tol);
  w.injective = w.rank == w.required;
  return w;
}

}  // namespace favard
