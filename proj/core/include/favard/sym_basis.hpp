#pragma once

#include <map>
#include <vector>

#include "favard/linalg.hpp"
#include "favard/matrix.hpp"
#include "favard/multi_index.hpp"
#include "favard/polynomial.hpp"

namespace favard {

// Ordered basis of the degree-n slice: every exponent vector of total
// degree n, in decreasing lexicographic order. Size C(n+d-1, d-1). The
// entries label both the degree-n monomials and the multiset classes of
// the n-th symmetric power.
class SymBasis {
 public:
  SymBasis(int dimension, int level) : d_(dimension), level_(level) {
    if (dimension < 1) throw ConfigError("dimension must be at least 1");
    if (level < 0) throw ConfigError("level must be nonnegative");
    std::vector<int> scratch(static_cast<size_t>(dimension), 0);
    emit(scratch, 0, level);
    for (size_t i = 0; i < entries_.size(); ++i) {
      positions_.emplace(entries_[i], static_cast<int>(i));
    }
  }

  int dimension() const { return d_; }
  int level() const { return level_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const MultiIndex& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<MultiIndex>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  int position(const MultiIndex& m) const {
    auto it = positions_.find(m);
    if (it == positions_.end()) {
      throw InternalError("multi-index " + m.str() + " not in level-" +
                          std::to_string(level_) + " basis");
    }
    return it->second;
  }

  bool contains(const MultiIndex& m) const { return positions_.contains(m); }

 private:
  void emit(std::vector<int>& scratch, int pos, int remaining) {
    if (pos == d_ - 1) {
      scratch[static_cast<size_t>(pos)] = remaining;
      entries_.emplace_back(scratch);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      scratch[static_cast<size_t>(pos)] = e;
      emit(scratch, pos + 1, remaining - e);
    }
  }

  int d_;
  int level_;
  std::vector<MultiIndex> entries_;
  std::map<MultiIndex, int, MultiIndexLess> positions_;
};

inline SymBasis enumerate_monomials(int dimension, int level) {
  return SymBasis(dimension, level);
}

// C(n+d-1, d-1), the dimension of the n-th symmetric power.
inline std::size_t sym_dimension(int d, int n) {
  Rational b = binomial(static_cast<unsigned long>(n + d - 1),
                        static_cast<unsigned long>(d - 1));
  return static_cast<std::size_t>(b.get_num().get_ui());
}

// Gram matrix of the averaged symmetrized basis vectors under the canonical
// tensor inner product: diagonal with entry (prod_l m_l!)/n! for the class
// with multiplicities (m_1,...,m_d).
template <class S>
Matrix<S> canonical_sym_gram(const SymBasis& basis) {
  Matrix<S> g(basis.size(), basis.size());
  Rational nf = factorial(static_cast<unsigned long>(basis.level()));
  for (int i = 0; i < basis.size(); ++i) {
    Rational num(1);
    for (int j = 0; j < basis.dimension(); ++j) {
      num *= factorial(static_cast<unsigned long>(basis[i][j]));
    }
    g(i, i) = scalar_cast<S>(num / nf);
  }
  return g;
}

// Matrix of the n-th tensor power of r restricted to the symmetric power,
// in multiset coordinates. The column for the class with multiplicities
// (c_1,...,c_d) holds the monomial coefficients of
// prod_j (sum_k r[k,j] z_k)^{c_j}. Multiplicative in r by construction.
template <class S>
Matrix<S> sym_lift(const Matrix<S>& r, int level, double tol = kRankTolerance) {
  if (r.rows() != r.cols()) throw std::invalid_argument("basis-change matrix must be square");
  int d = r.rows();
  if (d < 1) throw std::invalid_argument("basis-change matrix must be nonempty");
  if (rank(r, tol) < d) throw std::invalid_argument("basis-change matrix is singular");

  std::vector<Polynomial<S>> forms;
  forms.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    Polynomial<S> f(d);
    for (int k = 0; k < d; ++k) {
      f.add_term(MultiIndex::unit(d, k), r(k, j));
    }
    forms.push_back(std::move(f));
  }

  SymBasis basis(d, level);
  Matrix<S> lift(basis.size(), basis.size());
  for (int col = 0; col < basis.size(); ++col) {
    Polynomial<S> p = Polynomial<S>::one(d);
    for (int j = 0; j < d; ++j) {
      for (int e = 0; e < basis[col][j]; ++e) p = p * forms[static_cast<size_t>(j)];
    }
    for (const auto& [m, c] : p.terms()) {
      lift(basis.position(m), col) = c;
    }
  }
  return lift;
}

}  // namespace favard
