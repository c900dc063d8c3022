#pragma once

#include <optional>
#include <utility>

#include "favard/favard1d.hpp"
#include "favard/fock.hpp"

namespace favard {

// Everything the verification layer and the CLI consume: the state's moment
// table, the graded monic decomposition, the CAP blocks, and the Jacobi
// data, all computed to the same depth. Immutable once built.
template <class S>
struct Pipeline {
  MeasureSpec measure;
  int dimension;
  int max_level;
  double tol;
  MomentFunctional<S> moments;
  OrthogonalDecomposition<S> decomposition;
  std::vector<CapLevel<S>> cap;
  JacobiSequences<S> jacobi;
};

namespace detail {

template <class S>
Pipeline<S> run_pipeline_on(const MeasureSpec& spec, MomentFunctional<S> moments,
                            int max_level, double tol) {
  auto dec = decompose(moments, max_level, tol);
  auto cap = build_cap(dec, tol);
  auto jac = build_jacobi(dec, cap, tol);
  return Pipeline<S>{spec,          spec.dimension(), max_level,     tol,
                     std::move(moments), std::move(dec),   std::move(cap), std::move(jac)};
}

}  // namespace detail

// Moments are built to degree 2N so every Gram and every CAP block through
// level N is computable.
template <class S>
Pipeline<S> run_pipeline(const MeasureSpec& spec, int max_level,
                         double tol = kDefaultTolerance) {
  if (max_level < 1) throw ConfigError("max level must be at least 1");
  auto moments = build_moments<S>(spec, 2 * max_level);
  return detail::run_pipeline_on(spec, std::move(moments), max_level, tol);
}

// The same pipeline on the coordinates transformed by the invertible matrix
// r (new variable j is the form sum_k r[k,j] X_k).
template <class S>
Pipeline<S> run_pipeline_transformed(const MeasureSpec& spec, const Matrix<S>& r,
                                     int max_level, double tol = kDefaultTolerance) {
  if (max_level < 1) throw ConfigError("max level must be at least 1");
  auto base = build_moments<S>(spec, 2 * max_level);
  auto pulled = pullback_moments(base, r, tol);
  return detail::run_pipeline_on(spec, std::move(pulled), max_level, tol);
}

// Jacobi data of the state in the transformed coordinates.
template <class S>
JacobiSequences<S> jacobi_in_basis(const MeasureSpec& spec, const Matrix<S>& r,
                                   int max_level, double tol = kDefaultTolerance) {
  return run_pipeline_transformed<S>(spec, r, max_level, tol).jacobi;
}

// Recurrence data of every factor of a product measure, to the pipeline's
// depth. Empty for non-product measures.
template <class S>
std::vector<Recurrence1D<S>> factor_recurrences(const MeasureSpec& spec, int max_level,
                                                double tol = kDefaultTolerance) {
  std::vector<Recurrence1D<S>> recs;
  if (!spec.is_product()) return recs;
  for (const FactorSpec& f : spec.product().factors) {
    std::vector<S> moments;
    for (const Rational& q : factor_moments(f, 2 * max_level)) {
      moments.push_back(scalar_cast<S>(q));
    }
    recs.push_back(stieltjes(moments, max_level, tol));
  }
  return recs;
}

}  // namespace favard
