#include "doctest.h"

#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"
#include "ccf/search.hpp"
#include "common.hpp"
#include "oracles.hpp"

using namespace ccf;
using testing::fe;

namespace {

const CubicField& k73() { return testing::field(testing::kPoly73); }

PrimeIdeal pi73() {
  const auto& k = k73();
  for (const auto& p : decompose_prime(k, 3))
    if (ideal_contains(k, p.ideal, k.add(fe("2/3a^2-14/3a+7"), fe("1")))) return p;
  throw std::runtime_error("no prime above 3 contains e1 + 1");
}

IntegralVector e1_power(int e) { return unit_power(k73(), testing::integral(k73(), fe("2/3a^2-14/3a+7")), e); }

}  // namespace

TEST_SUITE("euclidean_search") {

TEST_CASE("primitive_root_test examples") {
  const auto& k = k73();
  CHECK(primitive_root_test(k, e1_power(1), pi73()));
  CHECK_FALSE(primitive_root_test(k, {1, 0, 0}, pi73()));
  CHECK_FALSE(primitive_root_test(k, e1_power(2), pi73()));
  const auto p7 = decompose_prime(k, 7)[0];
  CHECK_FALSE(primitive_root_test(k, {1, 0, 0}, p7));
}

TEST_CASE("non_wieferich_test examples") {
  const auto& k = k73();
  std::uint64_t residue = 0;
  CHECK(non_wieferich_test(k, e1_power(1), pi73(), &residue));
  CHECK(residue == 7);
  CHECK(16 % 9 == residue);
  CHECK_FALSE(non_wieferich_test(k, {1, 0, 0}, pi73()));
  CHECK_FALSE(non_wieferich_test(k, e1_power(6), pi73()));
}

TEST_CASE("generates_quotient examples and errors") {
  const auto& k = k73();
  CHECK(generates_quotient(k, e1_power(1), pi73()));
  CHECK_FALSE(generates_quotient(k, {1, 0, 0}, pi73()));
  try {
    generates_quotient(k, {3, 0, 0}, pi73());
    FAIL("accepted an element of the prime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_coprime);
  }
  for (std::uint64_t p : {2, 73}) {
    try {
      generates_quotient(k, e1_power(1), decompose_prime(k, p)[0]);
      FAIL("accepted a bad modulus");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::unsupported_modulus);
    }
  }
}

TEST_CASE("generates_quotient equals brute force for split q <= 13, f <= 200") {
  std::size_t cases = 0;
  for (std::uint64_t f : testing::prime_conductors(7, 200)) {
    const auto& k = testing::field(f);
    const auto& u = testing::units(k);
    const auto cands = candidate_units(k, u, 1);
    for (std::uint64_t q : {3, 5, 7, 11, 13}) {
      if (q == f || splitting_type(k, q) != Splitting::split) continue;
      for (const auto& p : decompose_prime(k, q)) {
        const Ideal q2 = ideal_mul(k, p.ideal, p.ideal);
        for (const auto& eps : cands) {
          const auto g = oracle::enumerate_residue_group(k, p.ideal, q2, {eps});
          REQUIRE(g.units == q * (q - 1));
          REQUIRE(generates_quotient(k, eps, p) == (g.generated == g.units));
          REQUIRE(generates_quotient_by_enumeration(k, eps, p) == (g.generated == g.units));
          ++cases;
        }
        // subgroup generated by -1, u1, u2
        IntegralVector minus_one{-1, 0, 0};
        const auto all = oracle::enumerate_residue_group(k, p.ideal, q2, {minus_one, u.units[0], u.units[1]});
        REQUIRE(unit_image_order(k, u, p) == all.generated);
      }
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("admissible_search at 73 and 79") {
  const auto& k = k73();
  const auto hit = admissible_search(k, testing::units(k), kDefaultQmax);
  REQUIRE(hit);
  CHECK(hit->ideal.p == 3);
  CHECK(hit->order_mod_q == 2);
  std::uint64_t res = 0;
  CHECK(non_wieferich_test(k, hit->unit, hit->ideal, &res));
  CHECK(hit->residue_mod_q2 == res);
  CHECK((res == 4 || res == 7));
  CHECK(generates_quotient(k, hit->unit, hit->ideal));

  const auto& k79 = testing::field("x^3-x^2-26x-41");
  const auto h79 = admissible_search(k79, testing::units(k79), kDefaultQmax);
  REQUIRE(h79);
  CHECK(generates_quotient(k79, h79->unit, h79->ideal));
  CHECK(unit_image_order(k79, testing::units(k79), h79->ideal) == h79->ideal.p * (h79->ideal.p - 1));
  CHECK_FALSE(admissible_search(k79, testing::units(k79), 2));
}

TEST_CASE("the printed f = 79 witness has index 2") {
  const auto& k = testing::field("x^3-x^2-26x-41");
  const auto& u = testing::units(k);
  PrimeIdeal p;
  REQUIRE(as_degree_one_prime(k, principal_ideal(k, fe("a+1")), p));
  CHECK(p.p == 17);
  CHECK(unit_image_order(k, u, p) == 136);
  const Ideal q2 = ideal_mul(k, p.ideal, p.ideal);
  const auto g = oracle::enumerate_residue_group(k, p.ideal, q2, {{-1, 0, 0}, u.units[0], u.units[1]});
  CHECK(g.generated == 136);
  CHECK(g.units == 272);
}

TEST_CASE("search is deterministic") {
  for (std::uint64_t f : {97, 439, 1291}) {
    const auto& k = testing::field(f);
    const auto a = admissible_search(k, testing::units(k), kDefaultQmax);
    const auto b = admissible_search(k, find_units(k), kDefaultQmax);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->ideal.ideal == b->ideal.ideal);
    CHECK(a->unit == b->unit);
  }
}

}
