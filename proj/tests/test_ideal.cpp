#include "doctest.h"

#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"
#include "ccf/ideal.hpp"
#include "common.hpp"
#include "oracles.hpp"

using namespace ccf;
using testing::fe;

namespace {

const CubicField& k73() { return testing::field(testing::kPoly73); }

// The prime above 3 modulo which e1 == -1.
PrimeIdeal pi73() {
  const auto& k = k73();
  for (const auto& p : decompose_prime(k, 3))
    if (ideal_contains(k, p.ideal, k.add(fe("2/3a^2-14/3a+7"), fe("1")))) return p;
  throw std::runtime_error("no prime above 3 contains e1 + 1");
}

Ideal product(const CubicField& k, const std::vector<PrimeIdeal>& ps) {
  Ideal acc = unit_ideal();
  for (const auto& p : ps)
    for (int e = 0; e < p.ramification; ++e) acc = ideal_mul(k, acc, p.ideal);
  return acc;
}

}  // namespace

TEST_SUITE("orders_ideals") {

TEST_CASE("decomposition of 3 at 73 matches the displayed generators") {
  const auto& k = k73();
  const auto ps = decompose_prime(k, 3);
  REQUIRE(ps.size() == 3);
  for (const auto& p : ps) {
    CHECK(p.residue_degree == 1);
    CHECK(p.ramification == 1);
    CHECK(p.norm() == 3);
  }
  CHECK(product(k, ps) == principal_ideal(k, fe("3")));
  std::vector<bool> matched(3, false);
  for (const char* g : {"1/3a^2+2/3a-11", "-1/3a^2+1/3a+6", "2/3a^2+1/3a-17"}) {
    const Ideal gi = principal_ideal(k, fe(g));
    int hits = 0;
    for (int i = 0; i < 3; ++i)
      if (ps[i].ideal == gi) {
        matched[i] = true;
        ++hits;
      }
    CHECK_MESSAGE(hits == 1, g);
  }
  CHECK(matched == std::vector<bool>{true, true, true});
}

TEST_CASE("ramified and inert primes at 73") {
  const auto& k = k73();
  const auto r = decompose_prime(k, 73);
  REQUIRE(r.size() == 1);
  CHECK(r[0].ramification == 3);
  CHECK(r[0].norm() == 73);
  CHECK(product(k, r) == principal_ideal(k, fe("73")));
  const auto two = decompose_prime(k, 2);
  CHECK(is_cubic_residue(2, 73) == (two.size() == 3));
  CHECK(splitting_type(k, 2) == Splitting::inert);
  CHECK(two[0].norm() == 8);
}

TEST_CASE("ideal_mul examples") {
  const auto& k = k73();
  const PrimeIdeal pi = pi73();
  CHECK(ideal_mul(k, pi.ideal, unit_ideal()) == pi.ideal);
  CHECK(ideal_mul(k, pi.ideal, pi.ideal).norm() == 9);
}

TEST_CASE("ideal_contains examples") {
  const auto& k = k73();
  CHECK(ideal_contains(k, unit_ideal(), fe("1/3a^2+2/3a")));
  CHECK(ideal_contains(k, pi73().ideal, fe("0")));
  CHECK(ideal_contains(k, principal_ideal(k, fe("1/3a^2+2/3a-11")), k.add(fe("2/3a^2-14/3a+7"), fe("1"))));
  try {
    ideal_contains(k, unit_ideal(), fe("1/2a"));
    FAIL("non-integral accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("reduce_mod and multiplicative_order at the prime above 3") {
  const auto& k = k73();
  const PrimeIdeal pi = pi73();
  const ResidueRing r1(k, pi, 1), r2(k, pi, 2);
  const FieldElement e1 = fe("2/3a^2-14/3a+7");
  CHECK(r1.reduce(k, e1) == 2);
  CHECK(r2.reduce(k, k.mul(e1, e1)) == 7);
  CHECK(r2.reduce(k, fe("16")) == 7);
  CHECK(r2.reduce(k, fe("0")) == 0);
  CHECK(r1.multiplicative_order(testing::integral(k, fe("1"))) == 1);
  CHECK(r1.multiplicative_order(testing::integral(k, e1)) == 2);
  CHECK(r2.multiplicative_order(testing::integral(k, e1)) == 6);
  CHECK(r2.unit_group_order() == 6);
  CHECK_THROWS_AS(r2.multiplicative_order(testing::integral(k, fe("3"))), Error);
  CHECK_THROWS_AS(r1.reduce(k, fe("1/3a")), Error);
  // brute force powers in the 9-element ring
  auto x = testing::integral(k, e1);
  auto p = x;
  int order = 1;
  while (r2.reduce(p) != 1) {
    p = oracle::mul(k, p, x);
    ++order;
  }
  CHECK(order == 6);
}

TEST_CASE("residue rings only for degree-one unramified primes") {
  const auto& k = k73();
  for (std::uint64_t p : {2, 73}) {
    try {
      ResidueRing r(k, decompose_prime(k, p)[0], 1);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::unsupported_modulus);
    }
  }
}

TEST_CASE("decomposition shape agrees with cubic residues and root counts") {
  std::size_t cases = 0;
  const auto qs = primes_up_to(500);
  for (std::uint64_t f : testing::prime_conductors(7, 500)) {
    const auto& k = testing::field(f);
    for (std::uint64_t q : qs) {
      const auto ps = decompose_prime(k, q);
      if (q == f) {
        REQUIRE(ps.size() == 1);
        REQUIRE(ps[0].ramification == 3);
        continue;
      }
      const bool split = ps.size() == 3;
      REQUIRE((split || (ps.size() == 1 && ps[0].residue_degree == 3)));
      REQUIRE(split == oracle::cube_by_enumeration(static_cast<std::int64_t>(q), f));
      REQUIRE(split == is_cubic_residue(static_cast<std::int64_t>(q), f));
      if (mpz_class(k.index()) % q != 0) {
        int roots = 0;
        const mpz_class qq(static_cast<unsigned long>(q));
        for (unsigned long x = 0; x < q; ++x)
          if (k.poly().eval(x) % qq == 0) ++roots;
        REQUIRE(roots == (split ? 3 : 0));
      }
      ++cases;
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("product of the primes above p is pO_K") {
  std::size_t cases = 0;
  for (const auto& row : testing::table()) {
    const auto& k = testing::field(row.polynomial);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19}) {
      REQUIRE(product(k, decompose_prime(k, p)) == principal_ideal(k, IntegralVector{p, 0, 0}));
      ++cases;
    }
    const auto f = k.conductor();
    REQUIRE(product(k, decompose_prime(k, f)) == principal_ideal(k, IntegralVector{f, 0, 0}));
  }
  CHECK(cases > 500);
}

TEST_CASE("reduction is a ring homomorphism") {
  std::size_t cases = 0;
  for (std::uint64_t f : {73, 79, 97, 439, 1291}) {
    const auto& k = testing::field(f);
    for (std::uint64_t q : primes_up_to(60)) {
      if (q == 2 || q == f || splitting_type(k, q) != Splitting::split) continue;
      for (const auto& p : decompose_prime(k, q)) {
        const ResidueRing r(k, p, 2);
        const auto m = r.modulus();
        for (int i = 0; i < 40; ++i) {
          const auto x = testing::random_integral(1000), y = testing::random_integral(1000);
          IntegralVector s{x[0] + y[0], x[1] + y[1], x[2] + y[2]};
          REQUIRE(r.reduce(s) == (r.reduce(x) + r.reduce(y)) % m);
          REQUIRE(r.reduce(k.mul_integral(x, y)) == mul_mod(r.reduce(x), r.reduce(y), m));
          ++cases;
        }
      }
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("unit group of O_K/q^2 has q(q-1) elements for q <= 13") {
  std::size_t cases = 0;
  for (std::uint64_t f : testing::prime_conductors(7, 3500)) {
    const auto& k = testing::field(f);
    for (std::uint64_t q : {3, 5, 7, 11, 13}) {
      if (q == f || splitting_type(k, q) != Splitting::split) continue;
      for (const auto& p : decompose_prime(k, q)) {
        const Ideal q2 = ideal_mul(k, p.ideal, p.ideal);
        const auto g = oracle::enumerate_residue_group(k, p.ideal, q2, {});
        REQUIRE(g.units == q * (q - 1));
        REQUIRE(ResidueRing(k, p, 2).unit_group_order() == q * (q - 1));
        ++cases;
      }
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("two-element display") {
  const auto& k = k73();
  CHECK(ideal_str(pi73()) == "(3, " + format_element(pi73().alpha) + ")");
  CHECK(ideal_str(decompose_prime(k, 2)[0]) == "(2)");
}

}
