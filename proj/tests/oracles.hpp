#pragma once
// Independent reference computations used only by the tests. None of these
// call into the library's arithmetic beyond the data types.

#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <cstdint>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "ccf/field.hpp"
#include "ccf/ideal.hpp"

namespace oracle {

inline bool prime_by_trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// p is a cube mod f iff some x in [0, f) has x^3 == p.
inline bool cube_by_enumeration(std::int64_t p, std::uint64_t f) {
  const std::uint64_t r = static_cast<std::uint64_t>(((p % static_cast<std::int64_t>(f)) + f) % f);
  for (std::uint64_t x = 0; x < f; ++x)
    if (x * x % f * x % f == r) return true;
  return false;
}

inline std::pair<std::int64_t, std::int64_t> period_parameters_by_search(std::int64_t f) {
  for (std::int64_t M = 1; 27 * M * M <= 4 * f; ++M)
    for (std::int64_t L = -2 * f; L <= 2 * f; ++L)
      if (L * L + 27 * M * M == 4 * f && ((L % 3) + 3) % 3 == 1) return {L, M};
  return {0, 0};
}

// Determinant over Q by Gaussian elimination.
inline mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class t = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= t * m[c][k];
    }
  }
  return det;
}

// Norm of g(a) as the resultant Res(P, g) (P monic cubic, deg g <= 2),
// via the 5x5 Sylvester matrix.
inline mpq_class resultant_norm(const ccf::CubicPolynomial& P, const ccf::FieldElement& x) {
  const mpq_class g2 = x.coords[2], g1 = x.coords[1], g0 = x.coords[0];
  std::vector<std::vector<mpq_class>> s(5, std::vector<mpq_class>(5, 0));
  const std::array<mpq_class, 4> p{1, P.c2, P.c1, P.c0};
  const std::array<mpq_class, 3> g{g2, g1, g0};
  // Rows for P shifted deg(g) = 2 times, rows for g shifted 3 times.
  for (int r = 0; r < 2; ++r)
    for (int k = 0; k < 4; ++k) s[r][r + k] = p[k];
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) s[2 + r][r + k] = g[k];
  if (g2 != 0) return determinant(s);
  // Lower degree: drop leading zero by recomputing with the exact degree.
  if (g1 != 0) {
    std::vector<std::vector<mpq_class>> t(4, std::vector<mpq_class>(4, 0));
    for (int k = 0; k < 4; ++k) t[0][k] = p[k];
    for (int r = 0; r < 3; ++r) {
      t[1 + r][r] = g1;
      t[1 + r][r + 1] = g0;
    }
    return determinant(t);
  }
  return g0 * g0 * g0;
}

// h R = f |L(1, chi)|^2 / 4 with L(1, chi) from partial sums over N terms
// (N a multiple of f) plus the Abel tail: with S(n) the character sum,
// sum_{n>N} chi(n)/n = sum_{n>N} S(n) / (n (n+1)) ~ mean(S) / N.
inline double hr_by_partial_sums(std::uint64_t f, std::uint64_t periods = 4000) {
  std::uint64_t g = 2;
  const std::uint64_t phi = (f == 9) ? 6 : f - 1;
  auto order = [&](std::uint64_t a) {
    std::uint64_t x = a % f, k = 1;
    while (x != 1) {
      x = x * a % f;
      ++k;
    }
    return k;
  };
  while (std::gcd(g, f) != 1 || order(g) != phi) ++g;
  std::vector<int> index(f, -1);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < phi; ++k) {
    index[x] = static_cast<int>(k % 3);
    x = x * g % f;
  }
  const std::complex<long double> w(-0.5L, std::sqrt(3.0L) / 2);
  const std::array<std::complex<long double>, 3> chi{1.0L, w, w * w};
  std::complex<long double> sum = 0, S = 0, mean = 0;
  const std::uint64_t N = periods * f;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const int i = index[n % f];
    if (i >= 0) {
      sum += chi[i] / static_cast<long double>(n);
      S += chi[i];
    }
    if (n <= f) mean += S;
  }
  mean /= static_cast<long double>(f);
  const std::complex<long double> L = sum + mean / static_cast<long double>(N);
  return static_cast<double>(static_cast<long double>(f) * std::norm(L) / 4);
}

// Reduction of an integral vector into the Hermite box of a lower-triangular
// lattice basis h.
inline ccf::IntegralVector box_reduce(const ccf::ZMat3& h, ccf::IntegralVector x) {
  for (int col = 2; col >= 0; --col) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x[col].get_mpz_t(), h[col][col].get_mpz_t());
    for (int c = 0; c <= col; ++c) x[c] -= q * h[col][c];
  }
  return x;
}

inline bool in_lattice(const ccf::ZMat3& h, const ccf::IntegralVector& x) {
  const auto r = box_reduce(h, x);
  return r[0] == 0 && r[1] == 0 && r[2] == 0;
}

// Multiplication through the structure constants of the integral basis.
inline ccf::IntegralVector mul(const ccf::CubicField& k, const ccf::IntegralVector& x, const ccf::IntegralVector& y) {
  ccf::IntegralVector z{0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (x[i] == 0 || y[j] == 0) continue;
      const auto& t = k.table(i, j);
      for (int c = 0; c < 3; ++c) z[c] += x[i] * y[j] * t[c];
    }
  return z;
}

struct ResidueGroup {
  std::size_t units = 0;      // size of (O_K / q^2)^x
  std::size_t generated = 0;  // size of the subgroup generated by the inputs
};

// Lists every class of O_K / q2 in the Hermite box, keeps those outside q,
// and closes the given generators under multiplication.
inline ResidueGroup enumerate_residue_group(const ccf::CubicField& k, const ccf::Ideal& q, const ccf::Ideal& q2,
                                            const std::vector<ccf::IntegralVector>& gens) {
  ResidueGroup out;
  const auto& h = q2.hnf;
  for (mpz_class a = 0; a < h[0][0]; ++a)
    for (mpz_class b = 0; b < h[1][1]; ++b)
      for (mpz_class c = 0; c < h[2][2]; ++c)
        if (!in_lattice(q.hnf, {a, b, c})) ++out.units;
  using Key = std::array<std::string, 3>;
  auto key = [](const ccf::IntegralVector& v) { return Key{v[0].get_str(), v[1].get_str(), v[2].get_str()}; };
  std::set<Key> seen;
  std::vector<ccf::IntegralVector> frontier{box_reduce(h, {1, 0, 0})};
  seen.insert(key(frontier[0]));
  std::vector<ccf::IntegralVector> reduced;
  for (const auto& g : gens) reduced.push_back(box_reduce(h, g));
  while (!frontier.empty()) {
    std::vector<ccf::IntegralVector> next;
    for (const auto& x : frontier)
      for (const auto& g : reduced) {
        auto y = box_reduce(h, mul(k, x, g));
        if (seen.insert(key(y)).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  out.generated = seen.size();
  return out;
}

}  // namespace oracle
