#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "favard/ortho.hpp"

using namespace favard;

namespace {

MeasureSpec uniform_sym() { return MeasureSpec(ProductMeasure{{UniformFactor{-1, 1}}}); }

MeasureSpec gaussian_pair() {
  return MeasureSpec(ProductMeasure{{GaussianFactor{0, 1}, GaussianFactor{0, 1}}});
}

MeasureSpec rademacher() {
  return MeasureSpec(AtomicMeasure{1, {{{Rational(1)}, Rational(1, 2)},
                                       {{Rational(-1)}, Rational(1, 2)}}});
}

MeasureSpec rademacher_pair() {
  return MeasureSpec(ProductMeasure{{TwoPointFactor{1, -1, Rational(1, 2)},
                                     TwoPointFactor{1, -1, Rational(1, 2)}}});
}

std::vector<MeasureSpec> sample_specs() {
  std::vector<MeasureSpec> specs;
  specs.push_back(uniform_sym());
  specs.push_back(gaussian_pair());
  specs.push_back(rademacher());
  specs.push_back(rademacher_pair());
  specs.push_back(MeasureSpec(ProductMeasure{{GaussianFactor{Rational(1, 2), 1},
                                              ExponentialFactor{2}}}));
  return specs;
}

}  // namespace

TEST_CASE("symmetric uniform monic basis and grams") {
  auto m = build_moments<Rational>(uniform_sym(), 4);
  auto dec = decompose(m, 2);

  CHECK(dec.level(0).monic[0] == Polynomial<Rational>::one(1));
  CHECK(dec.level(1).monic[0] == Polynomial<Rational>::variable(1, 0));

  Polynomial<Rational> legendre2(1);
  legendre2.add_term(MultiIndex{2}, 1);
  legendre2.add_term(MultiIndex{0}, Rational(-1, 3));
  CHECK(dec.level(2).monic[0] == legendre2);

  CHECK(dec.level(0).gram == Matrix<Rational>{{1}});
  CHECK(dec.level(1).gram == Matrix<Rational>{{Rational(1, 3)}});
  CHECK(dec.level(2).gram == Matrix<Rational>{{Rational(4, 45)}});
  CHECK(dec.level(2).rank == 1);
}

TEST_CASE("centered unit-variance product has orthonormal level one") {
  auto m = build_moments<Rational>(gaussian_pair(), 4);
  auto dec = decompose(m, 2);
  CHECK(dec.level(1).monic[0] == Polynomial<Rational>::variable(2, 0));
  CHECK(dec.level(1).monic[1] == Polynomial<Rational>::variable(2, 1));
  CHECK(dec.level(1).gram == Matrix<Rational>::identity(2));
}

TEST_CASE("two-point state degenerates at level two") {
  auto m = build_moments<Rational>(rademacher(), 8);
  auto dec = decompose(m, 4);

  Polynomial<Rational> q2(1);
  q2.add_term(MultiIndex{2}, 1);
  q2.add_term(MultiIndex{0}, -1);
  CHECK(dec.level(2).monic[0] == q2);
  CHECK(dec.level(2).gram == Matrix<Rational>{{0}});
  CHECK(dec.level(2).rank == 0);

  // X^3 - X and X^4 - X^2 continue the null levels.
  Polynomial<Rational> q3(1);
  q3.add_term(MultiIndex{3}, 1);
  q3.add_term(MultiIndex{1}, -1);
  CHECK(dec.level(3).monic[0] == q3);
}

TEST_CASE("monicity and cross-level orthogonality") {
  for (const auto& spec : sample_specs()) {
    int levels = 4;
    auto m = build_moments<Rational>(spec, 2 * levels);
    auto dec = decompose(m, levels);
    for (int n = 0; n <= levels; ++n) {
      const auto& lvl = dec.level(n);
      for (int i = 0; i < lvl.labels.size(); ++i) {
        const auto& q = lvl.monic[static_cast<size_t>(i)];
        CHECK(q.degree() == n);
        CHECK(q.coeff(lvl.labels[i]) == 1);
        // no other degree-n monomial appears
        for (const auto& [idx, c] : q.terms()) {
          if (idx.degree() == n) CHECK(idx == lvl.labels[i]);
        }
      }
      for (int h = 0; h < n; ++h) {
        for (const auto& qlow : dec.level(h).monic) {
          for (const auto& q : lvl.monic) CHECK(inner(q, qlow, m) == 0);
        }
      }
      CHECK(is_psd(lvl.gram));
    }
  }
}

TEST_CASE("every monomial is an exact combination of monic elements up to its degree") {
  auto m = build_moments<Rational>(gaussian_pair(), 8);
  auto dec = decompose(m, 4);
  for (int n = 0; n <= 4; ++n) {
    for (const auto& idx : SymBasis(2, n)) {
      auto coords = project_coeffs(Polynomial<Rational>::monomial(idx), dec);
      Polynomial<Rational> rebuilt(2);
      for (int h = 0; h <= 4; ++h) {
        for (int i = 0; i < dec.dim(h); ++i) {
          rebuilt += coords[static_cast<size_t>(h)][static_cast<size_t>(i)] *
                     dec.level(h).monic[static_cast<size_t>(i)];
        }
        if (h > n) {
          for (const auto& c : coords[static_cast<size_t>(h)]) CHECK(c == 0);
        }
      }
      CHECK(rebuilt == Polynomial<Rational>::monomial(idx));
    }
  }
}

TEST_CASE("projection coordinate examples") {
  auto m = build_moments<Rational>(uniform_sym(), 4);
  auto dec = decompose(m, 2);

  auto unit = project_coeffs(dec.level(2).monic[0], dec);
  CHECK(unit[2] == std::vector<Rational>{1});
  CHECK(unit[1] == std::vector<Rational>{0});
  CHECK(unit[0] == std::vector<Rational>{0});

  auto xsq = project_coeffs(Polynomial<Rational>::monomial(MultiIndex{2}), dec);
  CHECK(xsq[2] == std::vector<Rational>{1});
  CHECK(xsq[0] == std::vector<Rational>{Rational(1, 3)});

  auto one = project_coeffs(Polynomial<Rational>::one(1), dec);
  CHECK(one[0] == std::vector<Rational>{1});

  CHECK_THROWS_AS(project_coeffs(Polynomial<Rational>::monomial(MultiIndex{3}), dec),
                  std::invalid_argument);
}

TEST_CASE("monic representatives do not depend on the processing order") {
  std::mt19937_64 rng(4242);
  for (const auto& spec : sample_specs()) {
    int levels = 3;
    auto m = build_moments<Rational>(spec, 2 * levels);
    auto canonical = decompose(m, levels);

    std::vector<std::vector<int>> orders;
    for (int n = 0; n <= levels; ++n) {
      std::vector<int> order(static_cast<size_t>(canonical.dim(n)));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      orders.push_back(std::move(order));
    }
    auto permuted = detail::decompose_ordered(m, levels, &orders, kDefaultTolerance);
    for (int n = 0; n <= levels; ++n) {
      for (int i = 0; i < canonical.dim(n); ++i) {
        CHECK(canonical.level(n).monic[static_cast<size_t>(i)] ==
              permuted.level(n).monic[static_cast<size_t>(i)]);
      }
      CHECK(canonical.level(n).gram == permuted.level(n).gram);
    }
  }
}

TEST_CASE("invalid inputs are rejected with the failing level named") {
  MomentTableMeasure bad;
  bad.dimension = 1;
  bad.max_degree = 2;
  bad.entries.emplace(MultiIndex{0}, 1);
  bad.entries.emplace(MultiIndex{1}, 0);
  bad.entries.emplace(MultiIndex{2}, -1);
  auto m = build_moments<Rational>(MeasureSpec(bad), 2);
  CHECK_THROWS_WITH_AS(static_cast<void>(decompose(m, 1)),
                       doctest::Contains("level-1 Gram"), ValidationError);

  auto short_m = build_moments<Rational>(uniform_sym(), 2);
  CHECK_THROWS_AS(static_cast<void>(decompose(short_m, 2)), ValidationError);
}

TEST_CASE("float mode decomposition tracks the exact one") {
  auto exact = decompose(build_moments<Rational>(gaussian_pair(), 8), 4);
  auto approx = decompose(build_moments<double>(gaussian_pair(), 8), 4);
  for (int n = 0; n <= 4; ++n) {
    for (int i = 0; i < exact.dim(n); ++i) {
      for (int j = 0; j < exact.dim(n); ++j) {
        CHECK(approx.level(n).gram(i, j) ==
              doctest::Approx(to_double(exact.level(n).gram(i, j))).epsilon(1e-10));
      }
    }
  }
}
