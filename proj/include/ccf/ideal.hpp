#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ccf/core_arith.hpp"
#include "ccf/field.hpp"

namespace ccf {

/// Integral ideal as a Hermite lattice over the integral basis.
struct Ideal {
  ZMat3 hnf;

  mpz_class norm() const { return hnf[0][0] * hnf[1][1] * hnf[2][2]; }
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.hnf == b.hnf; }
};

Ideal unit_ideal();
Ideal principal_ideal(const CubicField& k, const IntegralVector& x);
Ideal principal_ideal(const CubicField& k, const FieldElement& x);
/// O_K-span of the given integral elements.
Ideal ideal_from_generators(const CubicField& k, const std::vector<IntegralVector>& gens);
Ideal ideal_mul(const CubicField& k, const Ideal& a, const Ideal& b);
bool ideal_contains(const Ideal& a, const IntegralVector& x);
/// Throws domain error for non-integral x.
bool ideal_contains(const CubicField& k, const Ideal& a, const FieldElement& x);
/// Closed under multiplication by every basis element.
bool is_ideal(const CubicField& k, const ZMat3& lattice);

enum class Splitting { split, inert, ramified };
std::string_view to_string(Splitting s);

struct PrimeIdeal {
  Ideal ideal;
  std::uint64_t p = 0;
  int residue_degree = 1;
  int ramification = 1;
  /// Second generator of the two-element form (p, alpha).
  FieldElement alpha;

  mpz_class norm() const { return ideal.norm(); }
};

/// Primes above p in deterministic order (lexicographic on the Hermite basis).
std::vector<PrimeIdeal> decompose_prime(const CubicField& k, std::uint64_t p);
Splitting splitting_type(const CubicField& k, std::uint64_t p);

/// Recognises an ideal of prime norm p (degree one). Returns false if the
/// lattice is not an ideal of prime norm.
bool as_degree_one_prime(const CubicField& k, const Ideal& a, PrimeIdeal& out);

/// Paper-style display "(q, expr)".
std::string ideal_str(const PrimeIdeal& p);

/// O_K / q^e for a degree-one unramified prime q, e in {1, 2}; isomorphic
/// to Z / p^e.
class ResidueRing {
 public:
  ResidueRing(const CubicField& k, const PrimeIdeal& q, int exponent);

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t prime() const { return p_; }
  /// p^(e-1) (p - 1).
  std::uint64_t unit_group_order() const { return group_order_; }
  const Factorization& unit_group_factors() const { return group_factors_; }
  const Ideal& modulus_ideal() const { return ideal_; }

  std::uint64_t reduce(const IntegralVector& x) const;
  /// Throws domain error for non-integral x.
  std::uint64_t reduce(const CubicField& k, const FieldElement& x) const;
  /// Throws not_a_unit when x is not invertible.
  std::uint64_t multiplicative_order(const IntegralVector& x) const;
  std::uint64_t order_of_residue(std::uint64_t r) const;

 private:
  Ideal ideal_;
  std::uint64_t p_ = 0;
  std::uint64_t modulus_ = 0;
  std::uint64_t group_order_ = 0;
  Factorization group_factors_;
  mpz_class t1_, t2_;
};

}  // namespace ccf
