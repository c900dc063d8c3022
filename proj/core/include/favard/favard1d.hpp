#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "favard/scalar.hpp"
#include "favard/sym_basis.hpp"

namespace favard {

// Classical three-term recurrence data of a one-dimensional moment sequence,
// on monic polynomials:
//   p_{n+1} = (x - alpha_n) p_n - b_n p_{n-1},   b_n = |p_n|^2 / |p_{n-1}|^2.
// beta_sq[n] = |p_{n+1}|^2 / |p_n|^2 is the squared off-diagonal recurrence
// coefficient of the orthonormal normalization. Once a squared norm hits
// zero the sequence has terminated; alpha and beta_sq are 0 beyond that
// point by convention.
template <class S>
struct Recurrence1D {
  std::vector<S> alpha;         // alpha_0 .. alpha_{N-1}
  std::vector<S> beta_sq;       // beta_0^2 .. beta_{N-1}^2
  std::vector<S> squared_norm;  // |p_n|^2, n = 0..N
  int termination = 0;          // first n with |p_n|^2 = 0, or N if none

  // alpha_n carries the 0-by-convention flag from this index on.
  bool alpha_is_conventional(int n) const { return n >= termination; }

  double beta(int n) const {
    return std::sqrt(ScalarTraits<S>::to_double(beta_sq[static_cast<size_t>(n)]));
  }
};

namespace detail {

// Dense 1-D polynomials keep this module independent of the multivariate
// pipeline it cross-checks.
template <class S>
S inner_1d(const std::vector<S>& u, const std::vector<S>& v, const std::vector<S>& moments) {
  S sum(0);
  for (size_t i = 0; i < u.size(); ++i) {
    if (ScalarTraits<S>::is_zero(u[i], 0.0)) continue;
    for (size_t j = 0; j < v.size(); ++j) {
      sum += u[i] * v[j] * moments.at(i + j);
    }
  }
  return sum;
}

template <class S>
std::vector<S> shift_up(const std::vector<S>& p) {
  std::vector<S> out(p.size() + 1, S(0));
  for (size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i];
  return out;
}

template <class S>
void axpy(std::vector<S>& p, const S& c, const std::vector<S>& q) {
  if (p.size() < q.size()) p.resize(q.size(), S(0));
  for (size_t i = 0; i < q.size(); ++i) p[i] -= c * q[i];
}

}  // namespace detail

// Stieltjes procedure: monic recurrence coefficients from raw moments
// (degrees 0..2*levels required, moments[0] = 1). Terminates cleanly when a
// squared norm vanishes; a negative squared norm means the input is not a
// moment sequence.
template <class S>
Recurrence1D<S> stieltjes(const std::vector<S>& moments, int levels,
                          double tol = kDefaultTolerance) {
  if (levels < 0) throw ConfigError("levels must be nonnegative");
  if (static_cast<int>(moments.size()) < 2 * levels + 1) {
    throw ValidationError("stieltjes needs moments to degree " + std::to_string(2 * levels) +
                          ", got " + std::to_string(moments.size() - 1));
  }
  if (!approx_equal(moments[0], S(1), tol)) {
    throw ValidationError("moment sequence must start with 1");
  }

  Recurrence1D<S> rec;
  rec.termination = levels;
  std::vector<S> prev;                 // p_{n-1}
  std::vector<S> cur{S(1)};            // p_n
  rec.squared_norm.push_back(moments[0]);

  auto is_null = [&](const S& sq, const S& scale) {
    if constexpr (ScalarTraits<S>::kExact) {
      (void)scale;
      return sgn(sq) == 0;
    } else {
      return std::fabs(sq) <= tol * std::max(1.0, std::fabs(scale));
    }
  };

  bool dead = false;
  for (int n = 0; n < levels; ++n) {
    S sn = rec.squared_norm[static_cast<size_t>(n)];
    S prev_scale = n > 0 ? rec.squared_norm[static_cast<size_t>(n - 1)] : S(1);
    if (!dead && is_null(sn, prev_scale)) {
      dead = true;
      rec.termination = n;
    }
    std::vector<S> next;
    if (dead) {
      rec.alpha.push_back(S(0));
      next = detail::shift_up(cur);  // any degree-(n+1) continuation; all norms stay 0
    } else {
      std::vector<S> xp = detail::shift_up(cur);
      S a = detail::inner_1d(xp, cur, moments) / sn;
      rec.alpha.push_back(a);
      next = std::move(xp);
      detail::axpy(next, a, cur);
      if (n > 0) {
        S b = sn / rec.squared_norm[static_cast<size_t>(n - 1)];
        detail::axpy(next, b, prev);
      }
    }
    S sq = detail::inner_1d(next, next, moments);
    if constexpr (ScalarTraits<S>::kExact) {
      if (sgn(sq) < 0) throw ValidationError("negative squared norm: invalid moment sequence");
      if (dead && sgn(sq) != 0) {
        throw ValidationError("squared norm revives after termination: invalid moment sequence");
      }
    } else {
      double scale = std::max(1.0, std::fabs(ScalarTraits<S>::to_double(sn)));
      double sqd = ScalarTraits<S>::to_double(sq);
      if (sqd < -tol * scale) {
        throw ValidationError("negative squared norm: invalid moment sequence");
      }
      if (dead && std::fabs(sqd) > tol * scale) {
        throw ValidationError("squared norm revives after termination: invalid moment sequence");
      }
      if (dead) sq = S(0);
    }
    rec.beta_sq.push_back(dead ? S(0) : sq / sn);
    rec.squared_norm.push_back(sq);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return rec;
}

// Diagonal of the level-n Jacobi form of a product measure in the multiset
// basis: the class with multiplicities (m_1,...,m_d) carries
// prod_l (prod_{k<m_l} beta_{l,k})^2, with empty products equal to 1.
template <class S>
std::vector<S> product_omega_diagonal(const std::vector<Recurrence1D<S>>& factors,
                                      const SymBasis& basis) {
  if (static_cast<int>(factors.size()) != basis.dimension()) {
    throw std::invalid_argument("factor count must match dimension");
  }
  std::vector<S> diag;
  diag.reserve(static_cast<size_t>(basis.size()));
  for (int i = 0; i < basis.size(); ++i) {
    S value(1);
    for (int l = 0; l < basis.dimension(); ++l) {
      const auto& rec = factors[static_cast<size_t>(l)];
      int ml = basis[i][l];
      if (ml > static_cast<int>(rec.beta_sq.size())) {
        throw std::invalid_argument("recurrence depth insufficient for class " + basis[i].str());
      }
      for (int k = 0; k < ml; ++k) value *= rec.beta_sq[static_cast<size_t>(k)];
    }
    diag.push_back(std::move(value));
  }
  return diag;
}

// Diagonals of the level-n alpha operators of a product measure: direction l
// acts on the class with multiplicities m as alpha_{l, m_l}.
template <class S>
std::vector<std::vector<S>> product_alpha_diagonal(const std::vector<Recurrence1D<S>>& factors,
                                                   const SymBasis& basis) {
  if (static_cast<int>(factors.size()) != basis.dimension()) {
    throw std::invalid_argument("factor count must match dimension");
  }
  std::vector<std::vector<S>> out(factors.size());
  for (int l = 0; l < basis.dimension(); ++l) {
    const auto& rec = factors[static_cast<size_t>(l)];
    auto& diag = out[static_cast<size_t>(l)];
    diag.reserve(static_cast<size_t>(basis.size()));
    for (int i = 0; i < basis.size(); ++i) {
      int ml = basis[i][l];
      if (ml >= static_cast<int>(rec.alpha.size())) {
        throw std::invalid_argument("recurrence depth insufficient for class " + basis[i].str());
      }
      diag.push_back(rec.alpha[static_cast<size_t>(ml)]);
    }
  }
  return out;
}

}  // namespace favard
