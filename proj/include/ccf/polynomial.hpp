#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ccf/real.hpp"

namespace ccf {

/// Monic x^3 + c2 x^2 + c1 x + c0.
struct CubicPolynomial {
  mpz_class c2, c1, c0;

  mpz_class discriminant() const;
  mpz_class eval(const mpz_class& x) const;
  /// "x^3 - x^2 - 24*x + 27"
  std::string str() const;

  friend bool operator==(const CubicPolynomial& a, const CubicPolynomial& b) {
    return a.c2 == b.c2 && a.c1 == b.c1 && a.c0 == b.c0;
  }
};

/// Accepts "x^3 + c2*x^2 + c1*x + c0" (the '*' optional, terms in any order,
/// missing terms zero) or the comma triple "c2,c1,c0".
CubicPolynomial parse_polynomial(std::string_view text);

/// Real roots in increasing order; requires a positive discriminant.
std::array<Real, 3> real_roots(const CubicPolynomial& poly, mpfr_prec_t bits);

/// Integer root if the polynomial is reducible over Q.
bool has_rational_root(const CubicPolynomial& poly);

/// Roots of a monic cubic over F_p with multiplicity, ascending.
std::vector<std::uint64_t> roots_mod_p(const std::array<std::uint64_t, 3>& coeffs_c2_c1_c0, std::uint64_t p);

}  // namespace ccf
