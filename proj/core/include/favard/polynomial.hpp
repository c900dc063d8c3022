#pragma once

#include <map>
#include <utility>

#include "favard/multi_index.hpp"
#include "favard/scalar.hpp"

namespace favard {

// Sparse polynomial over the scalar S in d commuting variables. Zero
// coefficients are never stored; the term map iterates in canonical order.
template <class S>
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, S, MultiIndexLess>;

  explicit Polynomial(int dimension) : d_(dimension) {
    if (dimension < 1) throw ConfigError("dimension must be at least 1");
  }

  static Polynomial constant(int dimension, S value) {
    Polynomial p(dimension);
    p.add_term(MultiIndex(dimension), value);
    return p;
  }

  static Polynomial one(int dimension) { return constant(dimension, S(1)); }

  static Polynomial monomial(const MultiIndex& index, S coeff = S(1)) {
    Polynomial p(index.dimension());
    p.add_term(index, coeff);
    return p;
  }

  static Polynomial variable(int dimension, int j) {
    return monomial(MultiIndex::unit(dimension, j));
  }

  int dimension() const { return d_; }
  bool is_zero() const { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
  }

  S coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  const TermMap& terms() const { return terms_; }

  void add_term(const MultiIndex& m, const S& c) {
    if (m.dimension() != d_) throw std::invalid_argument("dimension mismatch");
    if (ScalarTraits<S>::is_zero(c, 0.0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<S>::is_zero(it->second, 0.0)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& other) {
    require_same_dimension(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    require_same_dimension(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }

  Polynomial& operator*=(const S& s) {
    if (ScalarTraits<S>::is_zero(s, 0.0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
  friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }

  // Coefficient-wise convolution over exponent vectors.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_dimension(b);
    Polynomial out(a.d_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        out.add_term(ma.plus(mb), ca * cb);
      }
    }
    return out;
  }

  bool operator==(const Polynomial&) const = default;

  S max_abs_coeff() const {
    S m(0);
    for (const auto& [idx, c] : terms_) {
      S a = ScalarTraits<S>::abs(c);
      if (a > m) m = a;
    }
    return m;
  }

 private:
  void require_same_dimension(const Polynomial& other) const {
    if (d_ != other.d_) throw std::invalid_argument("dimension mismatch");
  }

  int d_;
  TermMap terms_;
};

}  // namespace favard
