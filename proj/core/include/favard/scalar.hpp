#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "favard/rational.hpp"

namespace favard {

// Float-mode equality tolerance (configurable per run) and the pinned
// relative threshold for rank decisions. Rational mode ignores both.
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kRankTolerance = 1e-10;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static double from_rational(const Rational& q) { return q.get_d(); }
  static bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static std::string str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <class S>
S scalar_cast(const Rational& q) {
  return ScalarTraits<S>::from_rational(q);
}

// Equality up to the run tolerance: exact for rationals, |a-b| <=
// tol*max(1,|a|,|b|) for binary64.
template <class S>
bool approx_equal(const S& a, const S& b, double tol) {
  if constexpr (ScalarTraits<S>::kExact) {
    (void)tol;
    return a == b;
  } else {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
  }
}

// Accumulates the largest deviation seen by a structural check. Rational
// deviations are absolute (must end at exactly zero); float deviations are
// scaled relative to max(1, |reference|).
template <class S>
struct DeviationTracker {
  S worst = S(0);

  void update(const S& deviation, const S& reference) {
    if constexpr (ScalarTraits<S>::kExact) {
      (void)reference;
      S a = ScalarTraits<S>::abs(deviation);
      if (a > worst) worst = a;
    } else {
      double scale = std::max(1.0, std::fabs(reference));
      double a = std::fabs(deviation) / scale;
      if (a > worst) worst = a;
    }
  }

  // Deviation between two values that should agree, scaled by their size.
  void update_diff(const S& lhs, const S& rhs) {
    if constexpr (ScalarTraits<S>::kExact) {
      update(lhs - rhs, S(0));
    } else {
      update(lhs - rhs, std::max(ScalarTraits<S>::abs(lhs), ScalarTraits<S>::abs(rhs)));
    }
  }

  bool ok(double tol) const {
    if constexpr (ScalarTraits<S>::kExact) {
      (void)tol;
      return sgn(worst) == 0;
    } else {
      return worst <= tol;
    }
  }

  std::string str() const { return ScalarTraits<S>::str(worst); }
};

}  // namespace favard
