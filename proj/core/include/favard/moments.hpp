#pragma once

#include <map>
#include <utility>

#include "favard/matrix.hpp"
#include "favard/measure.hpp"
#include "favard/polynomial.hpp"
#include "favard/sym_basis.hpp"

namespace favard {

// The state in coordinates: an eagerly built table of mixed moments mu[alpha]
// for all |alpha| <= max_degree. Immutable after construction; accessors are
// plain reads.
template <class S>
class MomentFunctional {
 public:
  using Table = std::map<MultiIndex, S, MultiIndexLess>;

  MomentFunctional(int dimension, int max_degree, Table table)
      : d_(dimension), max_degree_(max_degree), table_(std::move(table)) {}

  int dimension() const { return d_; }
  int max_degree() const { return max_degree_; }

  const S& mu(const MultiIndex& alpha) const {
    if (alpha.degree() > max_degree_) {
      throw ValidationError("moment of degree " + std::to_string(alpha.degree()) +
                            " requested, table covers degree " +
                            std::to_string(max_degree_));
    }
    auto it = table_.find(alpha);
    if (it == table_.end()) throw InternalError("moment table gap at " + alpha.str());
    return it->second;
  }

 private:
  int d_;
  int max_degree_;
  Table table_;
};

// Evaluates every mixed moment of total degree <= max_degree from the
// measure description: closed-form factor moments for products, weighted
// point evaluations for atomic measures, lookups for explicit tables.
template <class S>
MomentFunctional<S> build_moments(const MeasureSpec& spec, int max_degree) {
  if (max_degree < 0) throw ConfigError("moment degree must be nonnegative");
  if (spec.available_degree() < max_degree) {
    throw ValidationError("measure provides moments to degree " +
                          std::to_string(spec.available_degree()) + ", degree " +
                          std::to_string(max_degree) + " required");
  }
  int d = spec.dimension();
  typename MomentFunctional<S>::Table table;

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ProductMeasure>) {
          std::vector<std::vector<Rational>> factors;
          factors.reserve(m.factors.size());
          for (const auto& f : m.factors) factors.push_back(factor_moments(f, max_degree));
          for (int n = 0; n <= max_degree; ++n) {
            for (const auto& alpha : SymBasis(d, n)) {
              Rational value(1);
              for (int j = 0; j < d; ++j) {
                value *= factors[static_cast<size_t>(j)][static_cast<size_t>(alpha[j])];
              }
              table.emplace(alpha, scalar_cast<S>(value));
            }
          }
        } else if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (int n = 0; n <= max_degree; ++n) {
            for (const auto& alpha : SymBasis(d, n)) {
              Rational value(0);
              for (const auto& atom : m.atoms) {
                Rational term = atom.weight;
                for (int j = 0; j < d; ++j) {
                  term *= pow_rational(atom.point[static_cast<size_t>(j)],
                                       static_cast<unsigned long>(alpha[j]));
                }
                value += term;
              }
              table.emplace(alpha, scalar_cast<S>(value));
            }
          }
        } else {
          for (int n = 0; n <= max_degree; ++n) {
            for (const auto& alpha : SymBasis(d, n)) {
              auto it = m.entries.find(alpha);
              if (it == m.entries.end()) {
                throw ValidationError("moment table is missing entry " + alpha.str());
              }
              table.emplace(alpha, scalar_cast<S>(it->second));
            }
          }
        }
      },
      spec.value());

  return MomentFunctional<S>(d, max_degree, std::move(table));
}

// <p, q> = phi(p q): expand the product into monomials and sum against the
// moment table. Symmetric bilinear; <1,1> = 1.
template <class S>
S inner(const Polynomial<S>& p, const Polynomial<S>& q, const MomentFunctional<S>& m) {
  if (p.is_zero() || q.is_zero()) return S(0);
  if (p.degree() + q.degree() > m.max_degree()) {
    throw ValidationError("inner product needs moments of degree " +
                          std::to_string(p.degree() + q.degree()) +
                          ", table covers degree " + std::to_string(m.max_degree()));
  }
  S sum(0);
  Polynomial<S> product = p * q;
  for (const auto& [im, ic] : product.terms()) {
    sum += ic * m.mu(im);
  }
  return sum;
}

// Pulls the functional back through the linear substitution that sends the
// j-th new variable to the form sum_k r[k,j] * X_k. The resulting table
// holds the mixed moments of the transformed coordinates.
template <class S>
MomentFunctional<S> pullback_moments(const MomentFunctional<S>& m, const Matrix<S>& r,
                                     double tol = kRankTolerance) {
  int d = m.dimension();
  if (r.rows() != d || r.cols() != d) {
    throw std::invalid_argument("basis-change matrix shape mismatch");
  }
  if (rank(r, tol) < d) throw std::invalid_argument("basis-change matrix is singular");

  std::vector<Polynomial<S>> forms;
  forms.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    Polynomial<S> f(d);
    for (int k = 0; k < d; ++k) f.add_term(MultiIndex::unit(d, k), r(k, j));
    forms.push_back(std::move(f));
  }

  // Expansions of the transformed monomials, built one variable at a time.
  std::map<MultiIndex, Polynomial<S>, MultiIndexLess> expansion;
  typename MomentFunctional<S>::Table table;
  for (int n = 0; n <= m.max_degree(); ++n) {
    for (const auto& alpha : SymBasis(d, n)) {
      Polynomial<S> p(d);
      if (n == 0) {
        p = Polynomial<S>::one(d);
      } else {
        int j = alpha.first_nonzero();
        p = expansion.at(alpha.minus(j)) * forms[static_cast<size_t>(j)];
      }
      S value(0);
      for (const auto& [im, ic] : p.terms()) value += ic * m.mu(im);
      table.emplace(alpha, std::move(value));
      expansion.emplace(alpha, std::move(p));
    }
  }
  return MomentFunctional<S>(d, m.max_degree(), std::move(table));
}

}  // namespace favard
