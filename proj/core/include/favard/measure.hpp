#pragma once

#include <limits>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "favard/multi_index.hpp"
#include "favard/rational.hpp"

namespace favard {

struct GaussianFactor {
  Rational mean;
  Rational variance;  // > 0
};

struct UniformFactor {
  Rational lower;
  Rational upper;  // lower < upper
};

struct ExponentialFactor {
  Rational rate;  // > 0
};

struct TwoPointFactor {
  Rational x1;
  Rational x2;
  Rational p;  // 0 < p < 1
};

struct MomentListFactor {
  std::vector<Rational> moments;  // moments[0] == 1
};

using FactorSpec = std::variant<GaussianFactor, UniformFactor, ExponentialFactor,
                                TwoPointFactor, MomentListFactor>;

struct ProductMeasure {
  std::vector<FactorSpec> factors;
};

struct Atom {
  std::vector<Rational> point;
  Rational weight;  // > 0
};

struct AtomicMeasure {
  int dimension = 0;
  std::vector<Atom> atoms;  // weights sum to 1
};

struct MomentTableMeasure {
  int dimension = 0;
  int max_degree = 0;
  std::map<MultiIndex, Rational, MultiIndexLess> entries;  // complete through max_degree
};

inline void validate_factor(const FactorSpec& f) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussianFactor>) {
          if (v.variance <= 0) throw ConfigError("gaussian variance must be positive");
        } else if constexpr (std::is_same_v<T, UniformFactor>) {
          if (!(v.lower < v.upper)) throw ConfigError("uniform requires lower < upper");
        } else if constexpr (std::is_same_v<T, ExponentialFactor>) {
          if (v.rate <= 0) throw ConfigError("exponential rate must be positive");
        } else if constexpr (std::is_same_v<T, TwoPointFactor>) {
          if (!(v.p > 0 && v.p < 1)) throw ConfigError("two-point weight must satisfy 0 < p < 1");
        } else if constexpr (std::is_same_v<T, MomentListFactor>) {
          if (v.moments.empty() || v.moments.front() != 1) {
            throw ConfigError("moment list must start with 1");
          }
        }
      },
      f);
}

// Highest moment degree the factor can serve (unbounded for closed forms).
inline int factor_available_degree(const FactorSpec& f) {
  if (const auto* ml = std::get_if<MomentListFactor>(&f)) {
    return static_cast<int>(ml->moments.size()) - 1;
  }
  return std::numeric_limits<int>::max();
}

// Power moments of a single factor, degrees 0..max_degree, in closed form.
inline std::vector<Rational> factor_moments(const FactorSpec& f, int max_degree) {
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(max_degree) + 1);
  for (int m = 0; m <= max_degree; ++m) {
    auto mm = static_cast<unsigned long>(m);
    Rational value = std::visit(
        [&](const auto& v) -> Rational {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, GaussianFactor>) {
            // Central moments sigma^{2k}(2k-1)!! spread over the mean by the
            // binomial expansion; exact because only even powers of sigma
            // survive.
            Rational sum(0);
            for (unsigned long k = 0; k <= mm; k += 2) {
              Rational term = binomial(mm, k) * pow_rational(v.mean, mm - k) *
                              pow_rational(v.variance, k / 2);
              if (k >= 2) term *= semifactorial(k - 1);
              sum += term;
            }
            return sum;
          } else if constexpr (std::is_same_v<T, UniformFactor>) {
            Rational num = pow_rational(v.upper, mm + 1) - pow_rational(v.lower, mm + 1);
            return num / ((v.upper - v.lower) * Rational(m + 1));
          } else if constexpr (std::is_same_v<T, ExponentialFactor>) {
            return factorial(mm) / pow_rational(v.rate, mm);
          } else if constexpr (std::is_same_v<T, TwoPointFactor>) {
            return v.p * pow_rational(v.x1, mm) + (1 - v.p) * pow_rational(v.x2, mm);
          } else {
            if (m >= static_cast<int>(v.moments.size())) {
              throw ValidationError("moment list covers degree " +
                                    std::to_string(v.moments.size() - 1) +
                                    ", degree " + std::to_string(m) + " requested");
            }
            return v.moments[static_cast<size_t>(m)];
          }
        },
        f);
    out.push_back(std::move(value));
  }
  return out;
}

// The state: a probability measure described either by independent factors,
// by a finite set of weighted atoms, or by an explicit mixed-moment table.
class MeasureSpec {
 public:
  using Variant = std::variant<ProductMeasure, AtomicMeasure, MomentTableMeasure>;

  explicit MeasureSpec(ProductMeasure p) : v_(std::move(p)) { validate(); }
  explicit MeasureSpec(AtomicMeasure a) : v_(std::move(a)) { validate(); }
  explicit MeasureSpec(MomentTableMeasure t) : v_(std::move(t)) { validate(); }

  const Variant& value() const { return v_; }

  bool is_product() const { return std::holds_alternative<ProductMeasure>(v_); }

  const ProductMeasure& product() const { return std::get<ProductMeasure>(v_); }

  int dimension() const {
    return std::visit(
        [](const auto& m) -> int {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, ProductMeasure>) {
            return static_cast<int>(m.factors.size());
          } else {
            return m.dimension;
          }
        },
        v_);
  }

  // Largest total degree for which every mixed moment is available.
  int available_degree() const {
    return std::visit(
        [](const auto& m) -> int {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, ProductMeasure>) {
            int lim = std::numeric_limits<int>::max();
            for (const auto& f : m.factors) lim = std::min(lim, factor_available_degree(f));
            return lim;
          } else if constexpr (std::is_same_v<T, AtomicMeasure>) {
            return std::numeric_limits<int>::max();
          } else {
            return m.max_degree;
          }
        },
        v_);
  }

 private:
  void validate() const {
    std::visit(
        [](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, ProductMeasure>) {
            if (m.factors.empty()) throw ConfigError("product measure needs at least one factor");
            for (const auto& f : m.factors) validate_factor(f);
          } else if constexpr (std::is_same_v<T, AtomicMeasure>) {
            if (m.dimension < 1) throw ConfigError("dimension must be at least 1");
            if (m.atoms.empty()) throw ConfigError("atomic measure needs at least one atom");
            Rational total(0);
            for (const auto& atom : m.atoms) {
              if (static_cast<int>(atom.point.size()) != m.dimension) {
                throw ConfigError("atom point dimension mismatch");
              }
              if (atom.weight <= 0) throw ConfigError("atom weights must be positive");
              total += atom.weight;
            }
            if (total != 1) throw ConfigError("atom weights must sum to 1");
          } else {
            if (m.dimension < 1) throw ConfigError("dimension must be at least 1");
            if (m.max_degree < 0) throw ConfigError("moment table degree must be nonnegative");
            MultiIndex zero(m.dimension);
            auto it = m.entries.find(zero);
            if (it == m.entries.end() || it->second != 1) {
              throw ConfigError("moment table must contain mu[0] = 1");
            }
            for (const auto& [idx, value] : m.entries) {
              if (idx.dimension() != m.dimension) {
                throw ConfigError("moment table index dimension mismatch");
              }
            }
          }
        },
        v_);
  }

  Variant v_;
};

}  // namespace favard
