#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "favard/linalg.hpp"
#include "favard/polynomial.hpp"
#include "favard/sym_basis.hpp"

using namespace favard;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  return make_rational(num(rng), den(rng));
}

Polynomial<Rational> random_polynomial(std::mt19937_64& rng, int d, int max_degree) {
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  Polynomial<Rational> p(d);
  for (int n = 0; n <= max_degree; ++n) {
    for (const auto& m : SymBasis(d, n)) {
      if (keep(rng) < 0.45) p.add_term(m, random_rational(rng));
    }
  }
  return p;
}

Matrix<Rational> random_invertible(std::mt19937_64& rng, int d) {
  while (true) {
    Matrix<Rational> r(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) r(i, j) = random_rational(rng);
    }
    if (rank(r) == d) return r;
  }
}

// Direct Gram of the averaged symmetrization sums: expand each class as a
// weighted sum of index words and pair words in the plain tensor basis.
std::map<std::vector<int>, Rational> symmetrized_word_expansion(const MultiIndex& cls) {
  int n = cls.degree();
  std::vector<int> word;
  for (int j = 0; j < cls.dimension(); ++j) {
    word.insert(word.end(), static_cast<size_t>(cls[j]), j);
  }
  Rational stabilizer(1);
  for (int j = 0; j < cls.dimension(); ++j) {
    stabilizer *= factorial(static_cast<unsigned long>(cls[j]));
  }
  Rational coeff = stabilizer / factorial(static_cast<unsigned long>(n));
  std::map<std::vector<int>, Rational> out;
  std::sort(word.begin(), word.end());
  do {
    out[word] = coeff;
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

}  // namespace

TEST_CASE("multi-index basics and canonical order") {
  MultiIndex a{2, 0, 1};
  CHECK(a.degree() == 3);
  CHECK(a.dimension() == 3);
  CHECK(a[0] == 2);
  CHECK(a.plus(1) == MultiIndex{2, 1, 1});
  CHECK(a.minus(0) == MultiIndex{1, 0, 1});
  CHECK(a.first_nonzero() == 0);
  CHECK(MultiIndex(3).first_nonzero() == -1);

  MultiIndexLess less;
  CHECK(less(MultiIndex{1, 0}, MultiIndex{1, 1}));       // lower degree first
  CHECK(less(MultiIndex{2, 0}, MultiIndex{1, 1}));       // within a degree: lex decreasing
  CHECK(less(MultiIndex{1, 1, 0}, MultiIndex{1, 0, 1}));
  CHECK_FALSE(less(a, a));
}

TEST_CASE("monomial enumeration follows the documented order") {
  SymBasis b(3, 2);
  std::vector<MultiIndex> expected{{2, 0, 0}, {1, 1, 0}, {1, 0, 1},
                                   {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  REQUIRE(b.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(b[i] == expected[static_cast<size_t>(i)]);
    CHECK(b.position(expected[static_cast<size_t>(i)]) == i);
  }

  SymBasis one_dim(1, 5);
  REQUIRE(one_dim.size() == 1);
  CHECK(one_dim[0] == MultiIndex{5});

  CHECK(SymBasis(2, 3).size() == 4);
}

TEST_CASE("symmetric power dimensions match the binomial count") {
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 8; ++n) {
      CHECK(static_cast<size_t>(SymBasis(d, n).size()) == sym_dimension(d, n));
    }
  }
}

TEST_CASE("polynomial product") {
  int d = 2;
  auto x1 = Polynomial<Rational>::variable(d, 0);
  auto x2 = Polynomial<Rational>::variable(d, 1);

  CHECK(x1 * x2 == Polynomial<Rational>::monomial(MultiIndex{1, 1}));
  CHECK(Polynomial<Rational>::one(d) * x2 == x2);

  auto lhs = (x1 + x2) * (x1 - x2);
  Polynomial<Rational> expected(d);
  expected.add_term(MultiIndex{2, 0}, 1);
  expected.add_term(MultiIndex{0, 2}, -1);
  CHECK(lhs == expected);

  CHECK(Polynomial<Rational>(d).degree() == -1);
  CHECK((x1 - x1).is_zero());
  CHECK_THROWS_AS(x1 * Polynomial<Rational>::variable(3, 0), std::invalid_argument);
}

TEST_CASE("polynomial product is commutative and associative") {
  std::mt19937_64 rng(7001);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = random_polynomial(rng, 3, 3);
    auto q = random_polynomial(rng, 3, 3);
    auto r = random_polynomial(rng, 3, 2);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
  }
}

TEST_CASE("canonical symmetric gram") {
  auto g1 = canonical_sym_gram<Rational>(SymBasis(1, 4));
  CHECK(g1(0, 0) == 1);

  auto g2 = canonical_sym_gram<Rational>(SymBasis(2, 2));
  CHECK(g2 == Matrix<Rational>{{1, 0, 0}, {0, Rational(1, 2), 0}, {0, 0, 1}});

  CHECK(canonical_sym_gram<Rational>(SymBasis(2, 1)) == Matrix<Rational>::identity(2));
}

TEST_CASE("canonical symmetric gram equals the brute-force word expansion") {
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 4; ++n) {
      SymBasis basis(d, n);
      auto gram = canonical_sym_gram<Rational>(basis);
      for (int i = 0; i < basis.size(); ++i) {
        auto wi = symmetrized_word_expansion(basis[i]);
        for (int j = 0; j < basis.size(); ++j) {
          auto wj = symmetrized_word_expansion(basis[j]);
          Rational dot(0);
          for (const auto& [word, c] : wi) {
            auto it = wj.find(word);
            if (it != wj.end()) dot += c * it->second;
          }
          CHECK(gram(i, j) == dot);
        }
        CHECK(gram(i, i) > 0);
      }
    }
  }
}

TEST_CASE("symmetric lift examples") {
  CHECK(sym_lift(Matrix<Rational>::identity(3), 3) ==
        Matrix<Rational>::identity(SymBasis(3, 3).size()));

  Matrix<Rational> scale{{Rational(2)}};
  CHECK(sym_lift(scale, 3) == Matrix<Rational>{{8}});

  Matrix<Rational> shear{{1, 1}, {0, 1}};
  CHECK(sym_lift(shear, 2) == Matrix<Rational>{{1, 1, 1}, {0, 1, 2}, {0, 0, 1}});

  Matrix<Rational> singular{{1, 1}, {1, 1}};
  CHECK_THROWS_AS(sym_lift(singular, 2), std::invalid_argument);
}

TEST_CASE("symmetric lift is multiplicative and inverts") {
  std::mt19937_64 rng(7002);
  for (int d = 1; d <= 3; ++d) {
    for (int trial = 0; trial < 6; ++trial) {
      auto r = random_invertible(rng, d);
      auto q = random_invertible(rng, d);
      for (int n = 0; n <= 4; ++n) {
        CHECK(sym_lift(r * q, n) == sym_lift(r, n) * sym_lift(q, n));
        auto rinv = inverse(r);
        REQUIRE(rinv.has_value());
        CHECK(sym_lift(r, n) * sym_lift(*rinv, n) ==
              Matrix<Rational>::identity(SymBasis(d, n).size()));
      }
    }
  }
}

TEST_CASE("exact rank, kernel, and solve") {
  Matrix<Rational> a{{1, 2, 3}, {2, 4, 6}, {1, 1, 1}};
  CHECK(rank(a) == 2);

  auto k = kernel_basis(a);
  REQUIRE(k.cols() == 1);
  CHECK((a * k).max_abs() == 0);

  Matrix<Rational> rhs{{6}, {12}, {3}};  // consistent: x = (1,1,1)
  auto x = solve_any(a, rhs);
  REQUIRE(x.has_value());
  CHECK(a * *x == rhs);

  Matrix<Rational> bad{{6}, {11}, {3}};  // breaks the duplicated row
  CHECK_FALSE(solve_any(a, bad).has_value());

  auto inv = inverse(Matrix<Rational>{{2, 1}, {1, 1}});
  REQUIRE(inv.has_value());
  CHECK(*inv == Matrix<Rational>{{1, -1}, {-1, 2}});
  CHECK_FALSE(inverse(Matrix<Rational>{{1, 1}, {1, 1}}).has_value());
}

TEST_CASE("exact minimum-norm least squares") {
  // Singular consistent system: solutions (1,0)+t(1,-1); min-norm at t=-1/2.
  Matrix<Rational> a{{1, 1}, {1, 1}};
  Matrix<Rational> rhs{{1}, {1}};
  auto x = min_norm_least_squares(a, rhs);
  CHECK(x == Matrix<Rational>{{Rational(1, 2)}, {Rational(1, 2)}});

  // Inconsistent system: normal-equation solution.
  Matrix<Rational> b{{1}, {1}};
  Matrix<Rational> y{{0}, {2}};
  CHECK(min_norm_least_squares(b, y) == Matrix<Rational>{{1}});
}

TEST_CASE("exact PSD detection") {
  CHECK(is_psd(Matrix<Rational>{{2, -1}, {-1, 2}}));
  CHECK(is_psd(Matrix<Rational>{{1, 1}, {1, 1}}));
  CHECK(is_psd(Matrix<Rational>{{0, 0}, {0, 0}}));
  CHECK_FALSE(is_psd(Matrix<Rational>{{1, 2}, {2, 1}}));
  CHECK_FALSE(is_psd(Matrix<Rational>{{0, 1}, {1, 0}}));
  CHECK_FALSE(is_psd(Matrix<Rational>{{-1}}));
  CHECK(psd_violation(Matrix<Rational>{{1, 2}, {2, 1}}).has_value());
}

TEST_CASE("float linear algebra mirrors the exact results") {
  Matrix<double> a{{1, 2, 3}, {2, 4, 6}, {1, 1, 1}};
  CHECK(rank(a) == 2);
  auto k = kernel_basis(a);
  REQUIRE(k.cols() == 1);
  CHECK((a * k).max_abs() < 1e-12);

  Matrix<double> rhs{{6}, {12}, {3}};
  auto x = solve_any(a, rhs);
  REQUIRE(x.has_value());
  CHECK((a * *x - rhs).max_abs() < 1e-9);
  CHECK_FALSE(solve_any(a, Matrix<double>{{6}, {11}, {3}}).has_value());

  auto mn = min_norm_least_squares(Matrix<double>{{1, 1}, {1, 1}}, Matrix<double>{{1}, {1}});
  CHECK(std::abs(mn(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(mn(1, 0) - 0.5) < 1e-12);

  CHECK(is_psd(Matrix<double>{{2, -1}, {-1, 2}}));
  CHECK_FALSE(is_psd(Matrix<double>{{1, 2}, {2, 1}}));
}
