#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccf/class_number.hpp"
#include "ccf/search.hpp"

namespace ccf {

inline constexpr const char* kToolVersion = "ccf 1.0.0";

struct Certificate {
  std::uint64_t conductor = 0;
  CubicPolynomial poly;
  FieldElement unit;
  std::uint64_t prime_q = 0;
  FieldElement second_generator;
  std::uint64_t order_mod_q = 0;
  std::uint64_t residue_mod_q2 = 0;
  std::string class_report_digest;
  std::string tool_version = kToolVersion;
};

std::string certificate_to_json(const Certificate& c);
/// Throws parse errors naming the offending key or byte offset.
Certificate certificate_from_json(const std::string& text);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  bool pass = false;
  std::vector<Check> checks;
  std::string text() const;
};

/// Field, units and class-number report computed once per polynomial.
struct FieldContext {
  std::shared_ptr<const CubicField> field;
  std::optional<UnitSystem> units;
  std::optional<ClassNumberReport> report;
  std::string digest;
};

class ContextCache {
 public:
  const FieldContext& get(const CubicPolynomial& poly, int digits);

 private:
  std::map<std::string, FieldContext> entries_;
};

struct VerifyOptions {
  bool trust_class_number = false;
  int digits = 60;
  ContextCache* cache = nullptr;
};

VerifyReport verify_certificate(const Certificate& c, const VerifyOptions& options = {});

enum class VerdictKind { euclidean, not_class_number_one, exhausted, undecided };
std::string_view to_string(VerdictKind v);

struct Verdict {
  VerdictKind kind = VerdictKind::undecided;
  std::optional<Certificate> certificate;
  std::optional<ClassNumberReport> report;
  std::optional<SearchHit> hit;
  std::string stage;
  std::string reason;
  std::uint64_t q_max = 0;
};

struct VerdictOptions {
  std::uint64_t q_max = kDefaultQmax;
  int digits = 60;
};

Verdict euclidean_verdict(std::uint64_t conductor, const VerdictOptions& options = {});
Verdict euclidean_verdict(const CubicPolynomial& poly, const VerdictOptions& options = {});

}  // namespace ccf
