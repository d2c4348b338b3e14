#include "ccf/search.hpp"

#include <set>

#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"

namespace ccf {

namespace {

constexpr std::uint64_t kEnumerationLimit = 13;

void check_shape(const PrimeIdeal& q) {
  if (q.residue_degree != 1 || q.ramification != 1 || q.p == 2) {
    throw Error(ErrorKind::unsupported_modulus, "need an odd degree-one unramified prime, got " + ideal_str(q));
  }
}

std::uint64_t residue_or_throw(const ResidueRing& r, const IntegralVector& eps) {
  const std::uint64_t v = r.reduce(eps);
  if (v % r.prime() == 0) throw Error(ErrorKind::not_coprime, "unit lies in the prime ideal");
  return v;
}

// Canonical representative of x modulo a lower-triangular Hermite lattice.
IntegralVector hermite_reduce(const ZMat3& h, IntegralVector x) {
  for (int col = 2; col >= 0; --col) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x[col].get_mpz_t(), h[col][col].get_mpz_t());
    if (q == 0) continue;
    for (int c = 0; c <= col; ++c) x[c] -= q * h[col][c];
  }
  return x;
}

}  // namespace

bool primitive_root_test(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q) {
  check_shape(q);
  ResidueRing r(k, q, 1);
  return r.order_of_residue(residue_or_throw(r, eps)) == q.p - 1;
}

bool non_wieferich_test(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q, std::uint64_t* residue) {
  check_shape(q);
  ResidueRing r(k, q, 2);
  const std::uint64_t v = pow_mod(residue_or_throw(r, eps), q.p - 1, r.modulus());
  if (residue) *residue = v;
  return v != 1;
}

bool generates_quotient_by_enumeration(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q) {
  check_shape(q);
  const Ideal q2 = ideal_mul(k, q.ideal, q.ideal);
  // Invertible classes: representatives in the Hermite box not lying in q.
  std::uint64_t units = 0;
  const auto& h = q2.hnf;
  for (mpz_class a = 0; a < h[0][0]; ++a)
    for (mpz_class b = 0; b < h[1][1]; ++b)
      for (mpz_class c = 0; c < h[2][2]; ++c)
        if (!ideal_contains(q.ideal, {a, b, c})) ++units;
  const IntegralVector start = hermite_reduce(h, eps);
  std::set<std::array<std::string, 3>> seen;
  IntegralVector x = start;
  for (;;) {
    if (ideal_contains(q.ideal, x)) throw Error(ErrorKind::not_coprime, "unit lies in the prime ideal");
    if (!seen.insert({x[0].get_str(), x[1].get_str(), x[2].get_str()}).second) break;
    x = hermite_reduce(h, k.mul_integral(x, start));
  }
  return seen.size() == units;
}

bool generates_quotient(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q) {
  const bool fast = primitive_root_test(k, eps, q) && non_wieferich_test(k, eps, q);
  if (q.p <= kEnumerationLimit && fast != generates_quotient_by_enumeration(k, eps, q)) {
    throw Error(ErrorKind::internal, "generation test disagrees with enumeration at " + ideal_str(q));
  }
  return fast;
}

std::uint64_t unit_image_order(const CubicField& k, const UnitSystem& u, const PrimeIdeal& q) {
  check_shape(q);
  ResidueRing r(k, q, 2);
  // (O_K/q^2)^x is cyclic, so the generated subgroup has order the lcm of
  // the element orders.
  std::uint64_t order = r.order_of_residue(r.modulus() - 1);
  for (const auto& unit : u.units) order = lcm_u64(order, r.order_of_residue(residue_or_throw(r, unit)));
  return order;
}

std::optional<SearchHit> admissible_search(const CubicField& k, const UnitSystem& u, std::uint64_t q_max) {
  const std::uint64_t f = k.conductor();
  const auto words = candidate_words(2);
  for (std::uint64_t q : primes_up_to(q_max)) {
    if (q == 2 || f % q == 0) continue;
    if (f == 9) {
      if (splitting_type(k, q) != Splitting::split) continue;
    } else if (!is_cubic_residue(static_cast<std::int64_t>(q), f)) {
      continue;
    }
    for (const auto& prime : decompose_prime(k, q)) {
      ResidueRing r1(k, prime, 1), r2(k, prime, 2);
      const std::uint64_t m = r2.modulus();
      const std::uint64_t a = residue_or_throw(r2, u.units[0]);
      const std::uint64_t b = residue_or_throw(r2, u.units[1]);
      const std::uint64_t a_inv = inv_mod(a, m), b_inv = inv_mod(b, m);
      for (const auto& w : words) {
        std::uint64_t v = mul_mod(pow_mod(w.e1 < 0 ? a_inv : a, static_cast<std::uint64_t>(std::abs(w.e1)), m),
                                  pow_mod(w.e2 < 0 ? b_inv : b, static_cast<std::uint64_t>(std::abs(w.e2)), m), m);
        if (w.sign < 0) v = (m - v) % m;
        if (r1.order_of_residue(v % q) != q - 1) continue;
        const std::uint64_t wief = pow_mod(v, q - 1, m);
        if (wief == 1) continue;
        SearchHit hit;
        hit.ideal = prime;
        hit.word = w;
        hit.unit = evaluate_word(k, u, w);
        hit.order_mod_q = q - 1;
        hit.residue_mod_q2 = wief;
        if (!generates_quotient(k, hit.unit, prime)) {
          throw Error(ErrorKind::internal, "residue shortcut disagrees with the unit at " + ideal_str(prime));
        }
        return hit;
      }
    }
  }
  return std::nullopt;
}

}  // namespace ccf
