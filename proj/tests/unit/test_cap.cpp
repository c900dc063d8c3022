#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "favard/cap.hpp"
#include "favard/favard1d.hpp"

using namespace favard;

namespace {

struct Built {
  MomentFunctional<Rational> moments;
  OrthogonalDecomposition<Rational> dec;
  std::vector<CapLevel<Rational>> cap;
};

Built build(const MeasureSpec& spec, int levels) {
  auto m = build_moments<Rational>(spec, 2 * levels);
  auto dec = decompose(m, levels);
  auto cap = build_cap(dec);
  return Built{std::move(m), std::move(dec), std::move(cap)};
}

MeasureSpec gaussian_1d() { return MeasureSpec(ProductMeasure{{GaussianFactor{0, 1}}}); }
MeasureSpec exponential_1d() { return MeasureSpec(ProductMeasure{{ExponentialFactor{1}}}); }
MeasureSpec twopoint_1d() {
  return MeasureSpec(ProductMeasure{{TwoPointFactor{1, -1, Rational(1, 2)}}});
}
MeasureSpec gaussian_pair() {
  return MeasureSpec(ProductMeasure{{GaussianFactor{0, 1}, GaussianFactor{0, 1}}});
}
MeasureSpec twopoint_pair() {
  return MeasureSpec(ProductMeasure{{TwoPointFactor{1, -1, Rational(1, 2)},
                                     TwoPointFactor{1, -1, Rational(1, 2)}}});
}
MeasureSpec gauss_uniform() {
  return MeasureSpec(ProductMeasure{{GaussianFactor{0, 1}, UniformFactor{-1, 1}}});
}

std::vector<MeasureSpec> sample_specs() {
  std::vector<MeasureSpec> s;
  s.push_back(gaussian_1d());
  s.push_back(exponential_1d());
  s.push_back(twopoint_1d());
  s.push_back(gaussian_pair());
  s.push_back(twopoint_pair());
  s.push_back(gauss_uniform());
  return s;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  return make_rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("one-dimensional blocks reproduce the classical recurrence") {
  struct Family {
    MeasureSpec spec;
    FactorSpec factor;
  };
  std::vector<Family> families{{gaussian_1d(), GaussianFactor{0, 1}},
                               {exponential_1d(), ExponentialFactor{1}},
                               {MeasureSpec(ProductMeasure{{UniformFactor{-1, 1}}}),
                                UniformFactor{-1, 1}}};
  int levels = 6;
  for (const auto& fam : families) {
    auto built = build(fam.spec, levels);
    auto rec = stieltjes(factor_moments(fam.factor, 2 * levels), levels);
    for (int n = 0; n < levels; ++n) {
      const auto& lvl = built.cap[static_cast<size_t>(n)];
      CHECK(lvl.creation[0] == Matrix<Rational>{{1}});
      CHECK(lvl.preservation[0](0, 0) == rec.alpha[static_cast<size_t>(n)]);
      if (n > 0) {
        CHECK(lvl.annihilation[0](0, 0) == rec.beta_sq[static_cast<size_t>(n) - 1]);
      }
    }
  }
}

TEST_CASE("gaussian blocks are the ladder coefficients") {
  auto built = build(gaussian_1d(), 6);
  for (int n = 0; n < 6; ++n) {
    CHECK(built.cap[static_cast<size_t>(n)].creation[0] == Matrix<Rational>{{1}});
    CHECK(built.cap[static_cast<size_t>(n)].preservation[0] == Matrix<Rational>{{0}});
    if (n > 0) {
      CHECK(built.cap[static_cast<size_t>(n)].annihilation[0] == Matrix<Rational>{{n}});
    }
  }
}

TEST_CASE("exponential preservation diagonal") {
  auto built = build(exponential_1d(), 6);
  for (int n = 0; n < 6; ++n) {
    CHECK(built.cap[static_cast<size_t>(n)].preservation[0] == Matrix<Rational>{{2 * n + 1}});
  }
}

TEST_CASE("centered symmetric products have vanishing preservation blocks") {
  for (const auto& spec : {gaussian_pair(), twopoint_pair(),
                           MeasureSpec(ProductMeasure{{UniformFactor{-1, 1},
                                                       UniformFactor{-1, 1}}})}) {
    auto built = build(spec, 4);
    for (const auto& lvl : built.cap) {
      for (const auto& block : lvl.preservation) {
        CHECK(block.max_abs() == 0);
      }
    }
  }
}

TEST_CASE("level-zero multiplication splits into mean and first-level element") {
  auto built = build(gauss_uniform(), 3);
  for (int j = 0; j < 2; ++j) {
    CHECK(built.cap[0].preservation[static_cast<size_t>(j)](0, 0) ==
          built.moments.mu(MultiIndex::unit(2, j)));
    // creation column is the unit vector at the level-1 monomial e_j
    for (int k = 0; k < 2; ++k) {
      CHECK(built.cap[0].creation[static_cast<size_t>(j)](k, 0) ==
            (built.dec.level(1).labels.position(MultiIndex::unit(2, j)) == k ? 1 : 0));
    }
  }
}

TEST_CASE("quantum decomposition rebuilds every coordinate multiplication") {
  for (const auto& spec : sample_specs()) {
    auto built = build(spec, 4);
    auto report = check_quantum_decomposition(built.cap, built.dec);
    CHECK(report.passed);
    CHECK(report.max_deviation == "0");
  }

  SUBCASE("explicit ladder identity at level two") {
    auto built = build(gaussian_1d(), 4);
    auto x = Polynomial<Rational>::variable(1, 0);
    auto lhs = x * built.dec.level(2).monic[0];
    auto rhs = built.dec.level(3).monic[0] + Rational(2) * built.dec.level(1).monic[0];
    CHECK(lhs == rhs);
  }
}

TEST_CASE("gram-twisted adjointness of the blocks") {
  for (const auto& spec : sample_specs()) {
    auto built = build(spec, 5);
    int d = built.dec.dimension();
    for (int n = 0; n + 1 <= 4; ++n) {
      for (int j = 0; j < d; ++j) {
        // G_n A-_j@(n+1) = (A+_j@n)^T G_{n+1}
        auto lhs = built.dec.level(n).gram *
                   built.cap[static_cast<size_t>(n) + 1].annihilation[static_cast<size_t>(j)];
        auto rhs = built.cap[static_cast<size_t>(n)].creation[static_cast<size_t>(j)].transpose() *
                   built.dec.level(n + 1).gram;
        CHECK(lhs == rhs);
      }
    }
    for (const auto& lvl : built.cap) {
      const auto& gram = built.dec.level(lvl.level).gram;
      for (const auto& block : lvl.preservation) {
        CHECK(gram * block == block.transpose() * gram);
      }
    }
  }
}

TEST_CASE("creation blocks commute") {
  for (const auto& spec : sample_specs()) {
    auto built = build(spec, 5);
    int d = built.dec.dimension();
    for (int n = 0; n + 1 < static_cast<int>(built.cap.size()); ++n) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          auto jk = built.cap[static_cast<size_t>(n) + 1].creation[static_cast<size_t>(j)] *
                    built.cap[static_cast<size_t>(n)].creation[static_cast<size_t>(k)];
          auto kj = built.cap[static_cast<size_t>(n) + 1].creation[static_cast<size_t>(k)] *
                    built.cap[static_cast<size_t>(n)].creation[static_cast<size_t>(j)];
          CHECK(jk == kj);
        }
      }
    }
  }
}

TEST_CASE("creator injectivity witnesses") {
  auto pair = build(gaussian_pair(), 4);
  auto w = check_creator_injectivity(pair.cap, {Rational(1), Rational(0)}, 1);
  CHECK(w.injective);
  CHECK(w.rank == 2);
  CHECK(w.required == 2);

  auto two = build(twopoint_1d(), 4);
  CHECK(check_creator_injectivity(two.cap, {Rational(1)}, 1).injective);
  CHECK(check_creator_injectivity(two.cap, {Rational(1)}, 3).injective);

  CHECK(check_creator_injectivity(pair.cap, {Rational(1), Rational(0)}, 0).injective);

  CHECK_THROWS_AS(check_creator_injectivity(pair.cap, {Rational(0), Rational(0)}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_creator_injectivity(pair.cap, {Rational(1), Rational(0)}, 9),
                  std::invalid_argument);
}

TEST_CASE("random directions stay injective, degenerate states included") {
  std::mt19937_64 rng(20240);
  for (const auto& spec : {gaussian_pair(), twopoint_pair()}) {
    auto built = build(spec, 4);
    int d = built.dec.dimension();
    for (int level = 0; level < 4; ++level) {
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> v;
        bool zero = true;
        for (int j = 0; j < d; ++j) {
          v.push_back(random_rational(rng));
          if (v.back() != 0) zero = false;
        }
        if (zero) v[0] = 1;
        CHECK(check_creator_injectivity(built.cap, v, level).injective);
      }
    }
  }
}

TEST_CASE("float mode blocks track the exact ones") {
  auto exact = build(gauss_uniform(), 4);
  auto m = build_moments<double>(gauss_uniform(), 8);
  auto dec = decompose(m, 4);
  auto cap = build_cap(dec);
  CHECK(check_quantum_decomposition(cap, dec).passed);
  for (size_t n = 0; n < cap.size(); ++n) {
    for (int j = 0; j < 2; ++j) {
      const auto& ap = cap[n].creation[static_cast<size_t>(j)];
      const auto& ex = exact.cap[n].creation[static_cast<size_t>(j)];
      for (int r = 0; r < ap.rows(); ++r) {
        for (int c = 0; c < ap.cols(); ++c) {
          CHECK(ap(r, c) == doctest::Approx(to_double(ex(r, c))).epsilon(1e-9));
        }
      }
    }
  }
}
