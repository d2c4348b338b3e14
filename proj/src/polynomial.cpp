#include "ccf/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"

namespace ccf {

mpz_class CubicPolynomial::discriminant() const {
  const mpz_class& b = c2;
  const mpz_class& c = c1;
  const mpz_class& d = c0;
  return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
}

mpz_class CubicPolynomial::eval(const mpz_class& x) const { return ((x + c2) * x + c1) * x + c0; }

namespace {

void append_term(std::string& out, const mpz_class& coeff, std::string_view monomial) {
  if (coeff == 0) return;
  mpz_class mag = abs(coeff);
  out += coeff < 0 ? " - " : " + ";
  if (monomial.empty()) {
    out += mag.get_str();
  } else {
    if (mag != 1) out += mag.get_str() + "*";
    out += monomial;
  }
}

}  // namespace

std::string CubicPolynomial::str() const {
  std::string out = "x^3";
  append_term(out, c2, "x^2");
  append_term(out, c1, "x");
  append_term(out, c0, "");
  return out;
}

CubicPolynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw Error(ErrorKind::parse, "empty polynomial");

  if (s.find('x') == std::string::npos) {
    CubicPolynomial p;
    std::array<mpz_class*, 3> slots{&p.c2, &p.c1, &p.c0};
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      std::size_t comma = s.find(',', start);
      if ((i < 2) != (comma != std::string::npos)) {
        throw Error(ErrorKind::parse, "expected three comma-separated coefficients at offset " + std::to_string(start));
      }
      std::string field = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (field.empty() || slots[i]->set_str(field[0] == '+' ? field.substr(1) : field, 10) != 0) {
        throw Error(ErrorKind::parse, "bad integer '" + field + "' at offset " + std::to_string(start));
      }
      start = comma + 1;
    }
    return p;
  }

  std::array<mpz_class, 4> coeff;
  std::array<bool, 4> seen{};
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t term_start = pos;
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (term_start != 0) {
      throw Error(ErrorKind::parse, "expected '+' or '-' at offset " + std::to_string(pos));
    }
    std::size_t digits_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    mpz_class c = 1;
    bool has_number = pos > digits_start;
    if (has_number) c = mpz_class(s.substr(digits_start, pos - digits_start));
    int degree = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_number) throw Error(ErrorKind::parse, "dangling '*' at offset " + std::to_string(pos));
      ++pos;
      if (pos >= s.size() || s[pos] != 'x') throw Error(ErrorKind::parse, "expected 'x' at offset " + std::to_string(pos));
    }
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      degree = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        if (pos >= s.size() || s[pos] < '0' || s[pos] > '3') {
          throw Error(ErrorKind::parse, "exponent must be 0..3 at offset " + std::to_string(pos));
        }
        degree = s[pos] - '0';
        ++pos;
      }
    } else if (!has_number) {
      throw Error(ErrorKind::parse, "empty term at offset " + std::to_string(term_start));
    }
    coeff[degree] += sign * c;
    seen[degree] = true;
  }
  if (!seen[3] || coeff[3] != 1) throw Error(ErrorKind::parse, "polynomial must be monic of degree 3");
  return {coeff[2], coeff[1], coeff[0]};
}

namespace {

Real eval_real(const CubicPolynomial& p, const Real& x) {
  mpfr_prec_t bits = x.precision();
  return ((x + Real(p.c2, bits)) * x + Real(p.c1, bits)) * x + Real(p.c0, bits);
}

Real eval_deriv(const CubicPolynomial& p, const Real& x) {
  mpfr_prec_t bits = x.precision();
  return (Real(3.0, bits) * x + Real(mpz_class(2 * p.c2), bits)) * x + Real(p.c1, bits);
}

// Bisection on [lo, hi] where p changes sign, then Newton to full precision.
Real refine_root(const CubicPolynomial& p, Real lo, Real hi, mpfr_prec_t bits) {
  int s_lo = eval_real(p, lo).sign();
  for (int i = 0; i < 200; ++i) {
    Real mid = (lo + hi) / Real(2.0, bits);
    int s = eval_real(p, mid).sign();
    if (s == 0) return mid;
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (abs(hi - lo) < ulp_bound(60, 0) * (abs(lo) + Real(1.0, bits))) break;
  }
  Real x = (lo + hi) / Real(2.0, bits);
  for (int i = 0; i < 64; ++i) {
    Real step = eval_real(p, x) / eval_deriv(p, x);
    x -= step;
    if (step.is_zero() || abs(step) < ulp_bound(bits - 4, 0) * (abs(x) + Real(1.0, bits))) break;
  }
  return x;
}

}  // namespace

std::array<Real, 3> real_roots(const CubicPolynomial& p, mpfr_prec_t bits) {
  if (p.discriminant() <= 0) throw Error(ErrorKind::domain, "polynomial does not have three distinct real roots");
  // Critical points (-c2 -+ sqrt(c2^2 - 3 c1)) / 3 separate the roots.
  Real d = sqrt(Real(mpz_class(p.c2 * p.c2 - 3 * p.c1), bits));
  Real three(3.0, bits);
  Real x_lo = (Real(mpz_class(-p.c2), bits) - d) / three;
  Real x_hi = (Real(mpz_class(-p.c2), bits) + d) / three;
  mpz_class cauchy = 1 + std::max({abs(p.c2), abs(p.c1), abs(p.c0)});
  Real bound(cauchy, bits);
  return {refine_root(p, -bound, x_lo, bits), refine_root(p, x_lo, x_hi, bits), refine_root(p, x_hi, bound, bits)};
}

bool has_rational_root(const CubicPolynomial& p) {
  // A cubic always has a real root, and a rational root of a monic integer
  // polynomial is an integer; test integers next to every real root.
  mpz_class cauchy = 1 + std::max({abs(p.c2), abs(p.c1), abs(p.c0)});
  mpfr_prec_t bits = 64 + 2 * static_cast<mpfr_prec_t>(mpz_sizeinbase(cauchy.get_mpz_t(), 2));
  auto sign_at = [&](const mpz_class& x) { return sgn(p.eval(x)); };
  // Scan sign changes between consecutive critical-point-delimited intervals
  // using exact integer evaluation around Real approximations.
  std::vector<Real> candidates;
  mpz_class disc_crit = p.c2 * p.c2 - 3 * p.c1;
  Real lo = -Real(cauchy, bits), hi = Real(cauchy, bits);
  std::vector<std::pair<Real, Real>> brackets;
  if (disc_crit > 0) {
    Real d = sqrt(Real(disc_crit, bits));
    Real x1 = (Real(mpz_class(-p.c2), bits) - d) / Real(3.0, bits);
    Real x2 = (Real(mpz_class(-p.c2), bits) + d) / Real(3.0, bits);
    brackets = {{lo, x1}, {x1, x2}, {x2, hi}};
  } else {
    brackets = {{lo, hi}};
  }
  for (auto& [a, b] : brackets) {
    if (eval_real(p, a).sign() * eval_real(p, b).sign() > 0) continue;
    candidates.push_back(refine_root(p, a, b, bits));
  }
  for (const Real& r : candidates) {
    mpz_class z = r.round();
    for (int delta = -1; delta <= 1; ++delta) {
      if (sign_at(z + delta) == 0) return true;
    }
  }
  return false;
}

namespace {

using PolyModP = std::vector<std::uint64_t>;  // low degree first

void trim(PolyModP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyModP poly_mod(PolyModP a, const PolyModP& m, std::uint64_t p) {
  trim(a);
  std::uint64_t inv_lead = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    std::uint64_t k = mul_mod(a.back(), inv_lead, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mul_mod(k, m[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

PolyModP poly_mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyModP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul_mod(a[i], b[j], p)) % p;
  return poly_mod(r, m, p);
}

PolyModP poly_powmod(PolyModP base, std::uint64_t e, const PolyModP& m, std::uint64_t p) {
  PolyModP r{1};
  base = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PolyModP poly_gcd(PolyModP a, PolyModP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyModP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = inv_mod(a.back(), p);
    for (auto& x : a) x = mul_mod(x, inv, p);
  }
  return a;
}

PolyModP poly_sub(PolyModP a, const PolyModP& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

PolyModP poly_div_exact(PolyModP a, const PolyModP& b, std::uint64_t p) {
  trim(a);
  PolyModP q(a.size() - b.size() + 1, 0);
  std::uint64_t inv_lead = inv_mod(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    std::uint64_t k = mul_mod(a.back(), inv_lead, p);
    std::size_t shift = a.size() - b.size();
    q[shift] = k;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mul_mod(k, b[i], p)) % p;
    trim(a);
  }
  return q;
}

// Roots of a squarefree product of distinct linear factors over F_p.
void split_linear(const PolyModP& g, std::uint64_t p, std::vector<std::uint64_t>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back((p - mul_mod(g[0], inv_mod(g[1], p), p)) % p);
    return;
  }
  for (std::uint64_t delta = 0; delta < p; ++delta) {
    PolyModP h = poly_powmod({delta, 1}, (p - 1) / 2, g, p);
    h = poly_sub(h, {1}, p);
    PolyModP d = poly_gcd(g, h, p);
    if (d.size() > 1 && d.size() < g.size()) {
      split_linear(d, p, out);
      split_linear(poly_div_exact(g, d, p), p, out);
      return;
    }
  }
  throw Error(ErrorKind::internal, "equal-degree splitting failed");
}

}  // namespace

std::vector<std::uint64_t> roots_mod_p(const std::array<std::uint64_t, 3>& c, std::uint64_t p) {
  std::vector<std::uint64_t> roots;
  auto eval = [&](std::uint64_t x) {
    std::uint64_t v = (x + c[0]) % p;
    v = (mul_mod(v, x, p) + c[1]) % p;
    return (mul_mod(v, x, p) + c[2]) % p;
  };
  PolyModP f{c[2] % p, c[1] % p, c[0] % p, 1};
  std::vector<std::uint64_t> distinct;
  if (p < 512) {
    for (std::uint64_t x = 0; x < p; ++x) {
      if (eval(x) == 0) distinct.push_back(x);
    }
  } else {
    PolyModP xp = poly_powmod({0, 1}, p, f, p);
    PolyModP g = poly_gcd(f, poly_sub(xp, {0, 1}, p), p);
    split_linear(g, p, distinct);
    std::sort(distinct.begin(), distinct.end());
  }
  // Multiplicities: divide out each root and test again.
  for (std::uint64_t r : distinct) {
    PolyModP q = f;
    int mult = 0;
    for (;;) {
      PolyModP lin{(p - r) % p, 1};
      PolyModP rem = poly_mod(q, lin, p);
      if (!rem.empty()) break;
      q = poly_div_exact(q, lin, p);
      ++mult;
    }
    for (int i = 0; i < mult; ++i) roots.push_back(r);
  }
  return roots;
}

}  // namespace ccf
