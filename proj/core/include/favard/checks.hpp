#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "favard/pipeline.hpp"

namespace favard {
namespace detail {

inline constexpr std::uint64_t kCheckSeed = 0x0f0ca15eedULL;

inline Rational random_rational(std::mt19937_64& rng, int lo, int hi, int den_hi) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, den_hi);
  return make_rational(num(rng), den(rng));
}

template <class S>
std::vector<S> random_direction(std::mt19937_64& rng, int d) {
  std::vector<S> v;
  bool zero = true;
  for (int j = 0; j < d; ++j) {
    Rational q = random_rational(rng, -9, 9, 9);
    if (sgn(q) != 0) zero = false;
    v.push_back(scalar_cast<S>(q));
  }
  if (zero) v[0] = S(1);
  return v;
}

// Small-entry invertible rational matrices keep exact reruns cheap.
template <class S>
Matrix<S> random_change_of_basis(std::mt19937_64& rng, int d) {
  while (true) {
    Matrix<Rational> r(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) r(i, j) = random_rational(rng, -2, 2, 2);
    }
    if (rank(r) < d) continue;
    Matrix<S> out(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) out(i, j) = scalar_cast<S>(r(i, j));
    }
    return out;
  }
}

}  // namespace detail

inline const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names{
      "quantum_decomposition", "jacobi_relation",   "adjointness",
      "creator_commutation",   "injectivity",       "omega_psd",
      "alpha_symmetry",        "null_propagation",  "basis_covariance",
      "product_diagonality",   "d1_consistency",    "roundtrip"};
  return names;
}

// Multiplication by a coordinate must not reach past the adjacent levels.
template <class S>
CheckResult check_jacobi_relation(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "jacobi_relation";
  DeviationTracker<S> dev;
  for (int n = 0; n < p.max_level; ++n) {
    for (int j = 0; j < p.dimension; ++j) {
      for (int i = 0; i < p.decomposition.dim(n); ++i) {
        Polynomial<S> r = Polynomial<S>::variable(p.dimension, j) *
                          p.decomposition.level(n).monic[static_cast<size_t>(i)];
        auto coords = project_coeffs(r, p.decomposition);
        S scale = r.max_abs_coeff();
        for (int h = 0; h <= p.max_level; ++h) {
          if (h >= n - 1 && h <= n + 1) continue;
          for (const S& c : coords[static_cast<size_t>(h)]) dev.update(c, scale);
        }
      }
    }
  }
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

// Gram-twisted adjoint relations of the ladder blocks:
// G_n A-_j@(n+1) = (A+_j@n)^T G_{n+1} and G_n A0_j = (A0_j)^T G_n.
template <class S>
CheckResult check_adjointness(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "adjointness";
  DeviationTracker<S> dev;
  for (int n = 0; n < static_cast<int>(p.cap.size()); ++n) {
    const auto& gram = p.decomposition.level(n).gram;
    for (int j = 0; j < p.dimension; ++j) {
      if (n + 1 < static_cast<int>(p.cap.size())) {
        Matrix<S> lhs =
            gram * p.cap[static_cast<size_t>(n) + 1].annihilation[static_cast<size_t>(j)];
        Matrix<S> rhs =
            p.cap[static_cast<size_t>(n)].creation[static_cast<size_t>(j)].transpose() *
            p.decomposition.level(n + 1).gram;
        for (int a = 0; a < lhs.rows(); ++a) {
          for (int b = 0; b < lhs.cols(); ++b) dev.update_diff(lhs(a, b), rhs(a, b));
        }
      }
      const auto& keep = p.cap[static_cast<size_t>(n)].preservation[static_cast<size_t>(j)];
      Matrix<S> lhs = gram * keep;
      Matrix<S> rhs = keep.transpose() * gram;
      for (int a = 0; a < lhs.rows(); ++a) {
        for (int b = 0; b < lhs.cols(); ++b) dev.update_diff(lhs(a, b), rhs(a, b));
      }
    }
  }
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

template <class S>
CheckResult check_creator_commutation(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "creator_commutation";
  DeviationTracker<S> dev;
  for (int n = 0; n + 1 < static_cast<int>(p.cap.size()); ++n) {
    for (int j = 0; j < p.dimension; ++j) {
      for (int k = j + 1; k < p.dimension; ++k) {
        Matrix<S> jk = p.cap[static_cast<size_t>(n) + 1].creation[static_cast<size_t>(j)] *
                       p.cap[static_cast<size_t>(n)].creation[static_cast<size_t>(k)];
        Matrix<S> kj = p.cap[static_cast<size_t>(n) + 1].creation[static_cast<size_t>(k)] *
                       p.cap[static_cast<size_t>(n)].creation[static_cast<size_t>(j)];
        for (int a = 0; a < jk.rows(); ++a) {
          for (int b = 0; b < jk.cols(); ++b) dev.update_diff(jk(a, b), kj(a, b));
        }
      }
    }
  }
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

// Full column rank of the creation block of random nonzero directions at
// every level: a zero combination of creators annihilates only zero.
template <class S>
CheckResult check_injectivity(const Pipeline<S>& p, int samples = 100,
                              std::uint64_t seed = detail::kCheckSeed) {
  CheckResult res;
  res.name = "injectivity";
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int n = 0; n < static_cast<int>(p.cap.size()); ++n) {
    for (int s = 0; s < samples; ++s) {
      auto v = detail::random_direction<S>(rng, p.dimension);
      auto w = check_creator_injectivity(p.cap, v, n);
      if (!w.injective) ++failures;
    }
  }
  res.notes.push_back(std::to_string(samples) + " random directions per level, levels 0.." +
                      std::to_string(p.max_level - 1));
  if (failures > 0) {
    res.notes.push_back(std::to_string(failures) + " rank-deficient directions");
    res.max_deviation = std::to_string(failures);
  }
  res.passed = failures == 0;
  return res;
}

template <class S>
CheckResult check_omega_psd(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "omega_psd";
  res.passed = true;
  for (int n = 0; n <= p.max_level; ++n) {
    const auto& lvl = p.jacobi.level(n);
    if (auto violation = psd_violation(lvl.omega_form, p.tol)) {
      res.passed = false;
      res.notes.push_back("level " + std::to_string(n) + ": " + *violation);
    }
    res.notes.push_back("level " + std::to_string(n) + " rank " +
                        std::to_string(lvl.omega_rank) + "/" +
                        std::to_string(lvl.omega_form.rows()));
  }
  return res;
}

// The level-preserving operators are symmetric for the level form.
template <class S>
CheckResult check_alpha_symmetry(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "alpha_symmetry";
  DeviationTracker<S> dev;
  for (int n = 0; n < p.max_level; ++n) {
    const auto& lvl = p.jacobi.level(n);
    for (const auto& alpha : lvl.alpha) {
      Matrix<S> lhs = lvl.omega_form * alpha;
      Matrix<S> rhs = alpha.transpose() * lvl.omega_form;
      for (int a = 0; a < lhs.rows(); ++a) {
        for (int b = 0; b < lhs.cols(); ++b) dev.update_diff(lhs(a, b), rhs(a, b));
      }
    }
  }
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

// Null vectors of the level form stay null after any coordinate raise.
template <class S>
CheckResult check_null_propagation(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "null_propagation";
  DeviationTracker<S> dev;
  for (int n = 1; n <= p.max_level; ++n) {
    Matrix<S> kernel = kernel_basis(p.jacobi.level(n - 1).omega_form);
    res.notes.push_back("level " + std::to_string(n - 1) + " kernel dimension " +
                        std::to_string(kernel.cols()));
    if (kernel.cols() == 0) continue;
    const auto& w = p.jacobi.level(n).omega_form;
    S scale = w.max_abs();
    for (int col = 0; col < kernel.cols(); ++col) {
      auto eta = kernel.column(col);
      for (int j = 0; j < p.dimension; ++j) {
        auto lifted = raising_matrix<S>(p.dimension, n - 1, j).apply(eta);
        auto weighted = w.apply(lifted);
        S quad(0);
        for (size_t i = 0; i < lifted.size(); ++i) quad += lifted[i] * weighted[i];
        dev.update(quad, scale);
      }
    }
  }
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

// Transformation law of the Jacobi data under changes of coordinates; uses
// the supplied matrices, or seeded random invertible ones when none given.
template <class S>
CheckResult check_basis_covariance_suite(const Pipeline<S>& p,
                                         const std::vector<Matrix<S>>& changes,
                                         int default_count = 5,
                                         std::uint64_t seed = detail::kCheckSeed) {
  CheckResult res;
  res.name = "basis_covariance";
  std::vector<Matrix<S>> rs = changes;
  if (rs.empty()) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < default_count; ++i) {
      rs.push_back(detail::random_change_of_basis<S>(rng, p.dimension));
    }
    res.notes.push_back(std::to_string(default_count) +
                        " seeded random invertible matrices");
  }
  res.passed = true;
  std::string worst = "0";
  for (const auto& r : rs) {
    auto primed = run_pipeline_transformed<S>(p.measure, r, p.max_level, p.tol);
    for (int n = 0; n <= p.max_level; ++n) {
      auto one = check_basis_covariance(p.jacobi, primed.jacobi, r, n, p.tol);
      if (!one.passed) {
        res.passed = false;
        worst = one.max_deviation;
        res.notes.push_back("level " + std::to_string(n) + " deviation " +
                            one.max_deviation);
      }
      for (auto& note : one.notes) res.notes.push_back(std::move(note));
    }
  }
  res.max_deviation = res.passed ? "0" : worst;
  return res;
}

// Product states: the level forms and alpha operators must be diagonal in
// the multiset basis with the factor-recurrence closed-form entries.
template <class S>
CheckResult check_product_diagonality(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "product_diagonality";
  if (!p.measure.is_product() || p.dimension < 1) {
    res.applicable = false;
    res.passed = true;
    res.notes.push_back("not a product measure");
    return res;
  }
  auto recs = factor_recurrences<S>(p.measure, p.max_level, p.tol);
  DeviationTracker<S> dev;
  for (int n = 0; n <= p.max_level; ++n) {
    const auto& lvl = p.jacobi.level(n);
    auto omega_diag = product_omega_diagonal(recs, lvl.basis);
    for (int i = 0; i < lvl.basis.size(); ++i) {
      for (int j = 0; j < lvl.basis.size(); ++j) {
        S expected = i == j ? omega_diag[static_cast<size_t>(i)] : S(0);
        dev.update_diff(lvl.omega_form(i, j), expected);
      }
    }
    if (n < p.max_level) {
      auto alpha_diag = product_alpha_diagonal(recs, lvl.basis);
      for (int j = 0; j < p.dimension; ++j) {
        const auto& alpha = lvl.alpha[static_cast<size_t>(j)];
        for (int a = 0; a < alpha.rows(); ++a) {
          for (int b = 0; b < alpha.cols(); ++b) {
            S expected =
                a == b ? alpha_diag[static_cast<size_t>(j)][static_cast<size_t>(a)] : S(0);
            dev.update_diff(alpha(a, b), expected);
          }
        }
      }
    }
  }
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

// d = 1: the generic pipeline must reproduce the classical recurrence data,
// W_n = beta_0^2...beta_{n-1}^2 and alpha block alpha_n (0 by convention
// past termination on both sides).
template <class S>
CheckResult check_d1_consistency(const Pipeline<S>& p) {
  CheckResult res;
  res.name = "d1_consistency";
  if (p.dimension != 1) {
    res.applicable = false;
    res.passed = true;
    res.notes.push_back("dimension is not 1");
    return res;
  }
  std::vector<S> moments;
  for (int k = 0; k <= 2 * p.max_level; ++k) {
    moments.push_back(p.moments.mu(MultiIndex{k}));
  }
  auto rec = stieltjes(moments, p.max_level, p.tol);
  if (rec.termination < p.max_level) {
    res.notes.push_back("terminates at level " + std::to_string(rec.termination) +
                        "; alpha beyond is the 0 convention");
  }
  DeviationTracker<S> dev;
  S run(1);
  for (int n = 0; n <= p.max_level; ++n) {
    dev.update_diff(p.jacobi.level(n).omega_form(0, 0), run);
    if (n < p.max_level) {
      dev.update_diff(p.jacobi.level(n).alpha[0](0, 0), rec.alpha[static_cast<size_t>(n)]);
      run = run * rec.beta_sq[static_cast<size_t>(n)];
    }
  }
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

// The Jacobi data reproduces every mixed moment up to the depth: apply the
// graded blocks of each word to the vacuum and compare with the table.
template <class S>
CheckResult check_roundtrip(const Pipeline<S>& p, std::uint64_t seed = detail::kCheckSeed) {
  CheckResult res;
  res.name = "roundtrip";
  auto fields = build_fock_fields(p.jacobi, p.tol);
  std::mt19937_64 rng(seed);
  DeviationTracker<S> dev;
  int words = 0;
  for (int n = 0; n <= p.max_level; ++n) {
    for (const auto& alpha : SymBasis(p.dimension, n)) {
      std::vector<int> word;
      for (int j = 0; j < p.dimension; ++j) {
        word.insert(word.end(), static_cast<size_t>(alpha[j]), j);
      }
      const S& expected = p.moments.mu(alpha);
      dev.update_diff(reconstruct_moment(p.jacobi, fields, word), expected);
      std::shuffle(word.begin(), word.end(), rng);
      dev.update_diff(reconstruct_moment(p.jacobi, fields, word), expected);
      ++words;
    }
  }
  res.notes.push_back(std::to_string(words) + " words up to length " +
                      std::to_string(p.max_level) + ", each in two letter orders");
  res.passed = dev.ok(p.tol);
  res.max_deviation = dev.str();
  return res;
}

template <class S>
CheckResult run_named_check(const std::string& name, const Pipeline<S>& p,
                            const std::vector<Matrix<S>>& basis_changes = {}) {
  if (name == "quantum_decomposition") return check_quantum_decomposition(p.cap, p.decomposition, p.tol);
  if (name == "jacobi_relation") return check_jacobi_relation(p);
  if (name == "adjointness") return check_adjointness(p);
  if (name == "creator_commutation") return check_creator_commutation(p);
  if (name == "injectivity") return check_injectivity(p);
  if (name == "omega_psd") return check_omega_psd(p);
  if (name == "alpha_symmetry") return check_alpha_symmetry(p);
  if (name == "null_propagation") return check_null_propagation(p);
  if (name == "basis_covariance") return check_basis_covariance_suite(p, basis_changes);
  if (name == "product_diagonality") return check_product_diagonality(p);
  if (name == "d1_consistency") return check_d1_consistency(p);
  if (name == "roundtrip") return check_roundtrip(p);
  throw ConfigError("unknown check \"" + name + "\"");
}

}  // namespace favard
