#include "ccf/core_arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "ccf/error.hpp"

namespace ccf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_modulus: return "invalid-modulus";
    case ErrorKind::invalid_conductor: return "invalid-conductor";
    case ErrorKind::not_coprime: return "not-coprime";
    case ErrorKind::not_a_field: return "not-a-field";
    case ErrorKind::not_cyclic: return "not-cyclic";
    case ErrorKind::division_by_zero: return "division-by-zero";
    case ErrorKind::domain: return "domain";
    case ErrorKind::not_a_unit: return "not-a-unit";
    case ErrorKind::unsupported_modulus: return "unsupported-modulus";
    case ErrorKind::insufficient_effort: return "insufficient-effort";
    case ErrorKind::parse: return "parse";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

NaturalResidue mod_pow(const mpz_class& base, const mpz_class& exponent, const mpz_class& modulus) {
  if (modulus < 2) throw Error(ErrorKind::invalid_modulus, "modulus must be >= 2, got " + modulus.get_str());
  if (exponent < 0) throw Error(ErrorKind::domain, "negative exponent");
  NaturalResidue r{0, modulus};
  mpz_powm(r.value.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorKind::not_coprime, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

bool miller_rabin(std::uint64_t n) {
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) return n == p;
  }
  if (n >= kTrialLimit) return miller_rabin(n);
  for (std::uint64_t p = 17; p * p <= n; p += 2) {
    if (n % p == 0) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  Factorization out;
  if (n == 0) throw Error(ErrorKind::domain, "factorize(0)");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 10'000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

bool is_cubic_residue(std::int64_t p, std::uint64_t f) {
  if (f < 2 || f % 3 != 1 || !is_prime(f)) {
    throw Error(ErrorKind::invalid_conductor, "cubic residue test needs a prime f == 1 (mod 3), got " + std::to_string(f));
  }
  std::int64_t fi = static_cast<std::int64_t>(f);
  std::uint64_t r = static_cast<std::uint64_t>(((p % fi) + fi) % fi);
  if (r == 0) throw Error(ErrorKind::not_coprime, std::to_string(p) + " is divisible by " + std::to_string(f));
  return pow_mod(r, (f - 1) / 3, f) == 1;
}

PeriodParameters decompose_conductor(std::uint64_t f) {
  if (f % 3 != 1 || !is_prime(f)) {
    throw Error(ErrorKind::invalid_conductor, "expected a prime == 1 (mod 3), got " + std::to_string(f));
  }
  const std::int64_t four_f = 4 * static_cast<std::int64_t>(f);
  for (std::int64_t m = 1; 27 * m * m <= four_f; ++m) {
    std::int64_t rest = four_f - 27 * m * m;
    auto l = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    for (std::int64_t cand = std::max<std::int64_t>(0, l - 1); cand <= l + 1; ++cand) {
      if (cand * cand != rest) continue;
      // Exactly one of +-cand is == 1 (mod 3) since 3 does not divide L.
      std::int64_t signed_l = ((cand % 3) + 3) % 3 == 1 ? cand : -cand;
      return {signed_l, m};
    }
  }
  throw Error(ErrorKind::internal, "no representation 4f = L^2 + 27M^2 for f = " + std::to_string(f));
}

std::uint64_t order_mod(std::uint64_t a, std::uint64_t m, std::uint64_t group_order,
                        const Factorization& group_factors) {
  if (pow_mod(a, group_order, m) != 1 % m) {
    throw Error(ErrorKind::internal, "element order does not divide the stated group order");
  }
  std::uint64_t order = group_order;
  for (const auto& [ell, e] : group_factors) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow_mod(a, order / ell, m) == 1 % m) {
        order /= ell;
      } else {
        break;
      }
    }
  }
  return order;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace ccf
