#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ccf/field.hpp"
#include "ccf/lattice_walk.hpp"
#include "ccf/real.hpp"

namespace ccf {

/// Value with an absolute error bound.
struct RealBound {
  Real value;
  Real error;
};

/// Search schedule for unit discovery: the log radius grows through
/// ln(2^k) for k = first_log2_bound .. max_log2_bound.
struct UnitEffort {
  int first_log2_bound = 4;
  int max_log2_bound = 128;
  double grid_step = 0.5;
};

enum class FundamentalStatus { verified, unverified };

struct UnitSystem {
  std::array<IntegralVector, 2> units;
  /// log|sigma_i(u_j)|, rows j, columns i (all three embeddings).
  std::array<Vec3d, 2> logs;
  RealBound regulator;
  /// The walk proved that no unit is shorter in log space than u_1, so
  /// {u_1, sigma(u_1)} generate the units modulo -1.
  bool saturated = false;
  double searched_log_radius = 0;
  FundamentalStatus status = FundamentalStatus::unverified;
};

UnitSystem find_units(const CubicField& k, const UnitEffort& effort = {});

/// System built from two given units (checked to be units and independent).
UnitSystem make_unit_system(const CubicField& k, const IntegralVector& u1, const IntegralVector& u2);

/// |det(log|sigma_i(u_j)|)| over the first two embeddings.
RealBound regulator(const CubicField& k, const IntegralVector& u1, const IntegralVector& u2, int digits);

IntegralVector unit_inverse(const CubicField& k, const IntegralVector& u);
IntegralVector unit_power(const CubicField& k, const IntegralVector& u, std::int64_t e);

struct UnitWord {
  int sign = 1;
  std::int64_t e1 = 0, e2 = 0;
};
/// The ordered exponent words used by candidate_units.
std::vector<UnitWord> candidate_words(int depth);
/// All +-u1^e1 u2^e2 with |e_i| <= depth, excluding +-1.
std::vector<IntegralVector> candidate_units(const CubicField& k, const UnitSystem& u, int depth);
IntegralVector evaluate_word(const CubicField& k, const UnitSystem& u, const UnitWord& w);
/// Writes x as +-u1^e1 u2^e2 if it lies in the group generated.
bool express_unit(const CubicField& k, const UnitSystem& u, const IntegralVector& x, UnitWord& out);

/// Log-space covering radius of the lattice spanned by the two units.
double unit_covering_radius(const UnitSystem& u);

}  // namespace ccf
