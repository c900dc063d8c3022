#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "favard/errors.hpp"

namespace favard {

// Exact scalar of the rational arithmetic mode.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

// mpq_class(num, den) does not reduce the fraction; this does.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;  // base is canonical, so num^e / den^e is canonical
}

inline Rational factorial(unsigned long n) {
  Rational out;
  mpz_fac_ui(out.get_num_mpz_t(), n);
  return out;
}

inline Rational binomial(unsigned long n, unsigned long k) {
  Rational out;
  mpz_bin_uiui(out.get_num_mpz_t(), n, k);
  return out;
}

// n!! = n(n-2)(n-4)...; semifactorial(2m-1) is the Gaussian moment factor.
inline Rational semifactorial(unsigned long n) {
  Rational out;
  mpz_2fac_ui(out.get_num_mpz_t(), n);
  return out;
}

// Parses "p/q", integers, and plain decimal strings ("-3", "2.5", "1e-3")
// into an exact rational. Decimal forms are converted exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw ConfigError("cannot parse rational scalar from \"" + std::string(text) + "\"");
  };
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) fail();
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      mpz_class num(s.substr(0, slash));
      mpz_class den(s.substr(slash + 1));
      if (den == 0) fail();
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    std::string digits = s;
    long exponent = 0;
    auto epos = digits.find_first_of("eE");
    if (epos != std::string::npos) {
      exponent = std::stol(digits.substr(epos + 1));
      digits = digits.substr(0, epos);
    }
    auto dot = digits.find('.');
    if (dot != std::string::npos) {
      exponent -= static_cast<long>(digits.size() - dot - 1);
      digits.erase(dot, 1);
    }
    if (digits.empty() || digits == "-" || digits == "+") fail();
    mpz_class mantissa(digits);
    Rational q(mantissa);
    if (exponent != 0) {
      Rational shift;
      mpz_ui_pow_ui(shift.get_num_mpz_t(), 10,
                    static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
      if (exponent > 0) {
        q *= shift;
      } else {
        q /= shift;
      }
    }
    return q;
  } catch (const std::invalid_argument&) {
    fail();
  } catch (const std::out_of_range&) {
    fail();
  }
  return Rational(0);  // unreachable
}

}  // namespace favard
