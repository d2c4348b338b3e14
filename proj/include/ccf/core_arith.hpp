#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ccf {

struct NaturalResidue {
  mpz_class value;
  mpz_class modulus;
};

NaturalResidue mod_pow(const mpz_class& base, const mpz_class& exponent, const mpz_class& modulus);

// 64-bit fast paths. Moduli must be < 2^63.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

/// Deterministic for every 64-bit input: trial division below 10^6, then
/// Miller-Rabin with the first twelve prime bases.
bool is_prime(std::uint64_t n);

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

/// Prime factorization with strictly increasing primes; factorize(1) is empty.
Factorization factorize(std::uint64_t n);

/// Sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Euler's criterion for cubes: p^((f-1)/3) == 1 (mod f).
bool is_cubic_residue(std::int64_t p, std::uint64_t f);

/// 4f = L^2 + 27 M^2 with L == 1 (mod 3) and M > 0.
struct PeriodParameters {
  std::int64_t L;
  std::int64_t M;
};

PeriodParameters decompose_conductor(std::uint64_t f);

/// Multiplicative order of a modulo m, given the factorization of a group
/// order that a is known to divide.
std::uint64_t order_mod(std::uint64_t a, std::uint64_t m, std::uint64_t group_order,
                        const Factorization& group_factors);

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace ccf
