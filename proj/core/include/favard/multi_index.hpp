#pragma once

#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "favard/errors.hpp"

namespace favard {

// Exponent vector of a monomial in d commuting variables. Doubles as the
// multiplicity label of a symmetric-power basis class.
class MultiIndex {
 public:
  explicit MultiIndex(int dimension) : exp_(check_dim(dimension), 0) {}

  explicit MultiIndex(std::vector<int> exponents) : exp_(std::move(exponents)) {
    check_dim(static_cast<int>(exp_.size()));
    for (int e : exp_) {
      if (e < 0) throw ConfigError("multi-index exponents must be nonnegative");
    }
  }

  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex unit(int dimension, int j) {
    MultiIndex m(dimension);
    m.exp_.at(static_cast<size_t>(j)) = 1;
    return m;
  }

  int dimension() const { return static_cast<int>(exp_.size()); }
  int degree() const { return std::accumulate(exp_.begin(), exp_.end(), 0); }
  int operator[](int j) const { return exp_[static_cast<size_t>(j)]; }
  bool is_zero() const { return degree() == 0; }
  const std::vector<int>& exponents() const { return exp_; }

  MultiIndex plus(int j) const {
    MultiIndex m = *this;
    m.exp_[static_cast<size_t>(j)] += 1;
    return m;
  }

  MultiIndex plus(const MultiIndex& other) const {
    MultiIndex m = *this;
    for (size_t j = 0; j < exp_.size(); ++j) m.exp_[j] += other.exp_[j];
    return m;
  }

  MultiIndex minus(int j) const {
    if (exp_[static_cast<size_t>(j)] == 0) {
      throw InternalError("multi-index decrement below zero");
    }
    MultiIndex m = *this;
    m.exp_[static_cast<size_t>(j)] -= 1;
    return m;
  }

  // Smallest variable index with positive exponent, -1 for the zero index.
  int first_nonzero() const {
    for (size_t j = 0; j < exp_.size(); ++j) {
      if (exp_[j] > 0) return static_cast<int>(j);
    }
    return -1;
  }

  bool operator==(const MultiIndex&) const = default;

  std::string str() const {
    std::string s = "(";
    for (size_t j = 0; j < exp_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(exp_[j]);
    }
    return s + ")";
  }

 private:
  static int check_dim(int d) {
    if (d < 1) throw ConfigError("dimension must be at least 1");
    return d;
  }

  std::vector<int> exp_;
};

// Canonical term order: graded by total degree; within a degree, exponent
// vectors in decreasing lexicographic order. All bases and matrix indices
// follow this order, so outputs are reproducible bit for bit.
struct MultiIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exponents() > b.exponents();
  }
};

}  // namespace favard
