#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "ccf/catalog.hpp"
#include "ccf/field.hpp"
#include "ccf/units.hpp"

#ifndef CCF_TABLE_PATH
#define CCF_TABLE_PATH "data/table1.tsv"
#endif

namespace testing {

// The polynomial printed in the worked example.
inline const char* const kPoly73 = "x^3-x^2-24x+27";

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed1234abcdULL);
  return g;
}

inline const ccf::CubicField& field(const std::string& poly) {
  static std::map<std::string, std::unique_ptr<ccf::CubicField>> cache;
  static std::mutex m;
  std::lock_guard lock(m);
  auto& slot = cache[poly];
  if (!slot) slot = std::make_unique<ccf::CubicField>(ccf::CubicField::build(ccf::parse_polynomial(poly)));
  return *slot;
}

inline const ccf::CubicField& field(std::uint64_t f) {
  static std::map<std::uint64_t, std::unique_ptr<ccf::CubicField>> cache;
  static std::mutex m;
  std::lock_guard lock(m);
  auto& slot = cache[f];
  if (!slot) slot = std::make_unique<ccf::CubicField>(ccf::CubicField::from_conductor(f));
  return *slot;
}

inline const ccf::UnitSystem& units(const ccf::CubicField& k) {
  static std::map<const ccf::CubicField*, std::unique_ptr<ccf::UnitSystem>> cache;
  static std::mutex m;
  std::lock_guard lock(m);
  auto& slot = cache[&k];
  if (!slot) slot = std::make_unique<ccf::UnitSystem>(ccf::find_units(k));
  return *slot;
}

inline const std::vector<ccf::TableRow>& table() {
  static const std::vector<ccf::TableRow> rows = ccf::load_table(CCF_TABLE_PATH);
  return rows;
}

inline ccf::FieldElement fe(const char* text) { return ccf::parse_element(text); }

inline ccf::IntegralVector integral(const ccf::CubicField& k, const ccf::FieldElement& x) {
  auto v = k.to_integral(x);
  if (!v) throw std::runtime_error("not integral");
  return *v;
}

// Random integral element with coordinates in [-bound, bound].
inline ccf::IntegralVector random_integral(long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  return {d(rng()), d(rng()), d(rng())};
}

inline std::vector<std::uint64_t> prime_conductors(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = lo; f <= hi; ++f) {
    bool prime = f > 1;
    for (std::uint64_t d = 2; d * d <= f && prime; ++d) prime = f % d != 0;
    if (prime && f % 6 == 1) out.push_back(f);
  }
  return out;
}

}  // namespace testing
