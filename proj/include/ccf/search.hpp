#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ccf/class_number.hpp"
#include "ccf/field.hpp"
#include "ccf/ideal.hpp"
#include "ccf/units.hpp"

namespace ccf {

inline constexpr std::uint64_t kDefaultQmax = 100000;

/// Order of eps modulo q equals q - 1.
bool primitive_root_test(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q);
/// eps^(q-1) is not 1 modulo q^2; the residue is stored in `residue` when given.
bool non_wieferich_test(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q,
                        std::uint64_t* residue = nullptr);
/// eps generates (O_K/q^2)^x. For q <= 13 the answer is checked against
/// enumeration of the residue ring.
bool generates_quotient(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q);

/// Enumerates O_K/q^2 through its Hermite basis and counts the distinct
/// powers of eps among the q(q-1) invertible classes.
bool generates_quotient_by_enumeration(const CubicField& k, const IntegralVector& eps, const PrimeIdeal& q);

/// Order of the subgroup of (O_K/q^2)^x generated by the images of
/// -1, u_1, u_2.
std::uint64_t unit_image_order(const CubicField& k, const UnitSystem& u, const PrimeIdeal& q);

struct SearchHit {
  PrimeIdeal ideal;
  IntegralVector unit;
  UnitWord word;
  std::uint64_t order_mod_q = 0;
  std::uint64_t residue_mod_q2 = 0;
};

/// First (q, ideal, unit) in search order with the unit generating
/// (O_K/q^2)^x: odd primes q != f ascending with q a cube mod f (split),
/// the primes above q in decompose_prime order, units in candidate_words(2)
/// order (depth 1 words first).
std::optional<SearchHit> admissible_search(const CubicField& k, const UnitSystem& u,
                                           std::uint64_t q_max = kDefaultQmax);

}  // namespace ccf
