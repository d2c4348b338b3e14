#include "doctest.h"

#include "ccf/class_number.hpp"
#include "ccf/core_arith.hpp"
#include "common.hpp"
#include "oracles.hpp"

using namespace ccf;
using testing::fe;

TEST_SUITE("class_number") {

TEST_CASE("conductor_precheck examples") {
  CHECK(conductor_precheck(73).pass);
  CHECK(conductor_precheck(9).pass);
  const auto c63 = conductor_precheck(63);
  CHECK_FALSE(c63.pass);
  CHECK(c63.valid_conductor);
  CHECK(c63.distinct_primes == 2);
  CHECK(c63.reason.find("3^1 divides h") != std::string::npos);
  const auto c11 = conductor_precheck(11);
  CHECK_FALSE(c11.pass);
  CHECK_FALSE(c11.valid_conductor);
}

TEST_CASE("conductor_precheck is exact below 12000") {
  for (std::uint64_t f = 7; f <= 12000; ++f) {
    const bool expect = f == 9 || (f % 6 == 1 && oracle::prime_by_trial_division(f));
    REQUIRE_MESSAGE(conductor_precheck(f).pass == expect, f);
  }
}

TEST_CASE("composite conductors cite 3^(t-1)") {
  for (std::uint64_t f : {63, 91, 117}) {
    const auto c = conductor_precheck(f);
    CHECK_FALSE(c.pass);
    CHECK(c.valid_conductor);
    CHECK(c.reason.find("t = 2") != std::string::npos);
    CHECK(c.reason.find("3^1 divides h") != std::string::npos);
  }
  const auto c = conductor_precheck(7 * 13 * 19);
  CHECK(c.reason.find("3^2 divides h") != std::string::npos);
  CHECK_FALSE(conductor_precheck(27).valid_conductor);
  CHECK_FALSE(conductor_precheck(49).valid_conductor);
}

TEST_CASE("minkowski bound") {
  CHECK(minkowski_bound(testing::field(73)) == mpq_class(146, 9));
  CHECK(minkowski_bound(testing::field(9)) == 2);
  CHECK(minkowski_bound(testing::field(11971)) == mpq_class(23942, 9));
}

TEST_CASE("is_principal at 73") {
  const auto& k = testing::field(testing::kPoly73);
  const auto& u = testing::units(k);
  const Ideal pi = principal_ideal(k, fe("1/3a^2+2/3a-11"));
  const auto r = is_principal(k, u, pi);
  REQUIRE(r.principal);
  CHECK(principal_ideal(k, r.generator) == pi);
  const auto one = is_principal(k, u, unit_ideal());
  REQUIRE(one.principal);
  CHECK(abs(k.norm_integral(one.generator)) == 1);
  for (std::uint64_t p : primes_up_to(16))
    for (const auto& P : decompose_prime(k, p)) {
      if (P.norm() > 16) continue;
      const auto g = is_principal(k, u, P.ideal);
      REQUIRE_MESSAGE(g.principal, ideal_str(P));
      CHECK(principal_ideal(k, g.generator) == P.ideal);
    }
}

TEST_CASE("non-principal witness at 163") {
  const auto& k = testing::field(163);
  const auto rep = class_number_one(k, testing::units(k));
  CHECK(rep.verdict == ClassVerdict::h_greater_one);
  CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("two independent routes certify h = 1") {
  for (std::uint64_t f : {9, 73, 79, 97, 103, 109, 127}) {
    const auto& k = testing::field(f);
    const auto& u = testing::units(k);
    const auto rep = class_number_one(k, u);
    CHECK_MESSAGE(rep.verdict == ClassVerdict::h_is_one, f);
    for (const auto& t : rep.tested) CHECK(t.result.principal);
    CHECK(rep.ratio >= 0.99);
    CHECK(rep.ratio <= 1.01);
    const double oracle_hr = oracle::hr_by_partial_sums(f);
    CHECK(rep.analytic->value.to_double() == doctest::Approx(oracle_hr).epsilon(1e-4));
    CHECK(rep.analytic->value.to_double() > 0);
  }
}

TEST_CASE("analytic h R detects h > 1") {
  // h = 4 at 163 and h = 7 at 313 (the two routes must agree).
  for (auto [f, h] : {std::pair{163, 4}, std::pair{313, 7}}) {
    const auto& k = testing::field(f);
    const double ratio = analytic_hr(f, 40).value.to_double() / testing::units(k).regulator.value.to_double();
    CHECK(ratio == doctest::Approx(h).epsilon(1e-6));
    CHECK(oracle::hr_by_partial_sums(f) == doctest::Approx(analytic_hr(f, 40).value.to_double()).epsilon(1e-4));
  }
}

TEST_CASE("report text is deterministic") {
  const auto& k = testing::field(73);
  const auto a = class_number_one(k, testing::units(k));
  const auto b = class_number_one(k, find_units(k));
  CHECK(report_text(a) == report_text(b));
  CHECK(report_digest(a) == report_digest(b));
  CHECK(report_digest(a).size() == 64);
}

}
