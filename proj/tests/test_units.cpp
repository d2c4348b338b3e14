#include "doctest.h"

#include "ccf/units.hpp"
#include "common.hpp"
#include "oracles.hpp"

using namespace ccf;
using testing::fe;

namespace {

bool is_torsion(const IntegralVector& v) { return abs(v[0]) == 1 && v[1] == 0 && v[2] == 0; }

}  // namespace

TEST_SUITE("unit_group") {

TEST_CASE("displayed units at 73 lie in the discovered group") {
  const auto& k = testing::field(testing::kPoly73);
  const auto& u = testing::units(k);
  for (const char* e : {"2/3a^2-14/3a+7", "4/3a^2+14/3a-7"}) {
    UnitWord w;
    REQUIRE_MESSAGE(express_unit(k, u, testing::integral(k, fe(e)), w), e);
    CHECK(evaluate_word(k, u, w) == testing::integral(k, fe(e)));
  }
  // the displayed pair is itself a basis: same regulator
  const auto given = make_unit_system(k, testing::integral(k, fe("2/3a^2-14/3a+7")),
                                      testing::integral(k, fe("4/3a^2+14/3a-7")));
  CHECK(given.regulator.value.to_double() == doctest::Approx(u.regulator.value.to_double()).epsilon(1e-12));
}

TEST_CASE("candidate_units counts and contents") {
  const auto& k = testing::field(testing::kPoly73);
  const auto& u = testing::units(k);
  CHECK(candidate_units(k, u, 0).empty());
  const auto c1 = candidate_units(k, u, 1);
  CHECK(c1.size() == 16);
  CHECK(std::find(c1.begin(), c1.end(), testing::integral(k, fe("2/3a^2-14/3a+7"))) != c1.end());
  for (const auto& c : c1) {
    CHECK(abs(k.norm_integral(c)) == 1);
    CHECK_FALSE(is_torsion(c));
  }
  CHECK(candidate_units(k, u, 2).size() == 48);
  const auto words = candidate_words(2);
  CHECK(words.size() == 48);
  for (int i = 0; i < 16; ++i) CHECK(std::max(std::abs(words[i].e1), std::abs(words[i].e2)) == 1);
}

TEST_CASE("regulator invariance under change of basis") {
  for (std::uint64_t f : {73, 79, 97, 1291}) {
    const auto& k = testing::field(f);
    const auto& u = testing::units(k);
    const auto& [a, b] = u.units;
    const Real r = regulator(k, a, b, 60).value;
    const Real r1 = regulator(k, a, k.mul_integral(a, b), 60).value;
    const Real r2 = regulator(k, unit_inverse(k, a), b, 60).value;
    const Real r3 = regulator(k, unit_power(k, a, 3), unit_power(k, b, -2), 60).value;
    CHECK(abs((r1 - r) / r).to_double() < 1e-20);
    CHECK(abs((r2 - r) / r).to_double() < 1e-20);
    CHECK(abs((r3 - Real(6.0, r.precision()) * r) / r).to_double() < 1e-20);
  }
}

TEST_CASE("rank two with exact unit norms for every table field") {
  for (const auto& row : testing::table()) {
    const auto& k = testing::field(row.polynomial);
    const auto& u = testing::units(k);
    CHECK_MESSAGE(u.saturated, row.conductor);
    CHECK(u.regulator.value.to_double() > 0);
    for (const auto& e : u.units) {
      CHECK(abs(k.norm_integral(e)) == 1);
      CHECK_FALSE(is_torsion(e));
    }
  }
}

TEST_CASE("regulator agrees with the L-series oracle under h = 1") {
  for (std::uint64_t f : {9, 7, 73, 79, 97}) {
    const auto& k = testing::field(f);
    const double hr = oracle::hr_by_partial_sums(f);
    CHECK_MESSAGE(hr / testing::units(k).regulator.value.to_double() == doctest::Approx(1.0).epsilon(1e-4), f);
  }
}

TEST_CASE("unit inverse and powers") {
  const auto& k = testing::field(79);
  const auto& u = testing::units(k);
  for (const auto& e : u.units) {
    CHECK(k.mul_integral(e, unit_inverse(k, e)) == IntegralVector{1, 0, 0});
    CHECK(unit_power(k, e, 0) == IntegralVector{1, 0, 0});
    CHECK(k.mul_integral(unit_power(k, e, 4), unit_power(k, e, -4)) == IntegralVector{1, 0, 0});
  }
}

}
