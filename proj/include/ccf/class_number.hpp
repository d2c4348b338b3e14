#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ccf/field.hpp"
#include "ccf/ideal.hpp"
#include "ccf/units.hpp"

namespace ccf {

struct ConductorCheck {
  bool pass = false;
  /// f is the conductor of some cyclic cubic field (pass or not).
  bool valid_conductor = false;
  std::string reason;
  /// Number of distinct primes dividing f.
  unsigned distinct_primes = 0;
};

ConductorCheck conductor_precheck(std::uint64_t f);

/// (3!/3^3) sqrt(f^2) = 2f/9.
mpq_class minkowski_bound(const CubicField& k);

/// Outcome of a principality search over a covering walk in log space.
struct PrincipalityResult {
  bool principal = false;
  IntegralVector generator{0, 0, 0};
  // Parameters of the exhausted region, kept as proof of absence.
  double walk_radius = 0;
  double grid_step = 0;
  double box_log_radius = 0;
  std::uint64_t cells = 0;
};

/// Searches a generator of `ideal` (norm n) among elements whose
/// normalized log embedding lies within the covering radius of the unit
/// lattice of `u`. Sound for any finite-index unit subgroup.
PrincipalityResult is_principal(const CubicField& k, const UnitSystem& u, const Ideal& ideal);

/// h R via the cubic character: |A0 + A1 w + A2 w^2|^2 / 4 with
/// A_j = sum over k == j (mod 3) of log|2 sin(pi g^k / f)|.
RealBound analytic_hr(std::uint64_t f, int digits);

enum class ClassVerdict { h_is_one, h_greater_one, undecided };
std::string_view to_string(ClassVerdict v);

struct TestedPrime {
  std::uint64_t p = 0;
  Splitting splitting = Splitting::split;
  std::string ideal;  // two-element display
  PrincipalityResult result;
};

struct ClassNumberReport {
  std::uint64_t conductor = 0;
  CubicPolynomial poly;
  ConductorCheck conductor_check;
  mpq_class minkowski;
  std::vector<TestedPrime> tested;
  std::optional<RealBound> analytic;
  std::optional<RealBound> regulator;
  double ratio = 0;
  ClassVerdict verdict = ClassVerdict::undecided;
  std::string reason;
  std::string witness;  // non-principal ideal
};

ClassNumberReport class_number_one(const CubicField& k, const UnitSystem& u, int digits = 60);
/// Report for a conductor that fails the precheck (no field needed).
ClassNumberReport precheck_report(std::uint64_t f);

/// Canonical text: every line deterministic across runs and platforms.
std::string report_text(const ClassNumberReport& r);
std::string report_digest(const ClassNumberReport& r);

}  // namespace ccf
