#include "ccf/certificate.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"

namespace ccf {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string rational_str(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

ordered_json element_json(const FieldElement& x) {
  ordered_json a = ordered_json::array();
  for (const auto& c : x.coords) a.push_back(rational_str(c));
  return a;
}

const nlohmann::json& field_of(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::parse, std::string("missing key '") + key + "'");
  return *it;
}

std::string string_field(const nlohmann::json& j, const char* key) {
  const auto& v = field_of(j, key);
  if (!v.is_string()) throw Error(ErrorKind::parse, std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t decimal(const std::string& s, const char* key) {
  if (s.empty() || s.size() > 19 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      (s.size() > 1 && s[0] == '0')) {
    throw Error(ErrorKind::parse, std::string("key '") + key + "' is not a canonical decimal: '" + s + "'");
  }
  return std::stoull(s);
}

std::array<std::string, 3> triple(const nlohmann::json& j, const char* key) {
  const auto& v = field_of(j, key);
  if (!v.is_array() || v.size() != 3) throw Error(ErrorKind::parse, std::string("key '") + key + "' must hold 3 strings");
  std::array<std::string, 3> out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_string()) throw Error(ErrorKind::parse, std::string("key '") + key + "' must hold 3 strings");
    out[i] = v[i].get<std::string>();
  }
  return out;
}

mpz_class integer(const std::string& s, const char* key) {
  mpz_class z;
  const bool shape = !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || (s[0] == '-' && s.size() > 1));
  if (!shape || z.set_str(s, 10) != 0 || z.get_str() != s) {
    throw Error(ErrorKind::parse, std::string("key '") + key + "' holds a bad integer '" + s + "'");
  }
  return z;
}

FieldElement element(const nlohmann::json& j, const char* key) {
  try {
    return from_rational_strings(triple(j, key));
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, std::string("key '") + key + "': " + e.what());
  }
}

void add(VerifyReport& r, std::string name, bool ok, std::string detail) {
  r.checks.push_back({std::move(name), ok, std::move(detail)});
}

}  // namespace

std::string certificate_to_json(const Certificate& c) {
  ordered_json j;
  j["conductor"] = std::to_string(c.conductor);
  j["polynomial"] = {c.poly.c2.get_str(), c.poly.c1.get_str(), c.poly.c0.get_str()};
  j["unit"] = element_json(c.unit);
  j["prime_q"] = std::to_string(c.prime_q);
  j["prime_ideal_second_generator"] = element_json(c.second_generator);
  j["order_mod_q"] = std::to_string(c.order_mod_q);
  j["residue_mod_q2"] = std::to_string(c.residue_mod_q2);
  j["class_report_digest"] = c.class_report_digest;
  j["tool_version"] = c.tool_version;
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::parse, "certificate must be a JSON object");
  static const char* const kKeys[] = {"conductor",  "polynomial",     "unit",
                                      "prime_q",    "prime_ideal_second_generator",
                                      "order_mod_q", "residue_mod_q2", "class_report_digest",
                                      "tool_version"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return item.key() == k; }) ==
        std::end(kKeys)) {
      throw Error(ErrorKind::parse, "unknown key '" + item.key() + "'");
    }
  }
  Certificate c;
  c.conductor = decimal(string_field(j, "conductor"), "conductor");
  const auto p = triple(j, "polynomial");
  c.poly = {integer(p[0], "polynomial"), integer(p[1], "polynomial"), integer(p[2], "polynomial")};
  c.unit = element(j, "unit");
  c.prime_q = decimal(string_field(j, "prime_q"), "prime_q");
  c.second_generator = element(j, "prime_ideal_second_generator");
  c.order_mod_q = decimal(string_field(j, "order_mod_q"), "order_mod_q");
  c.residue_mod_q2 = decimal(string_field(j, "residue_mod_q2"), "residue_mod_q2");
  c.class_report_digest = string_field(j, "class_report_digest");
  c.tool_version = string_field(j, "tool_version");
  return c;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) os << (c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
  os << (pass ? "certificate valid" : "certificate rejected") << "\n";
  return os.str();
}

const FieldContext& ContextCache::get(const CubicPolynomial& poly, int digits) {
  const std::string key = poly.str() + "#" + std::to_string(digits);
  auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  FieldContext ctx;
  ctx.field = std::make_shared<const CubicField>(CubicField::build(poly));
  if (conductor_precheck(ctx.field->conductor()).pass) {
    ctx.units = find_units(*ctx.field);
    ctx.report = class_number_one(*ctx.field, *ctx.units, digits);
    ctx.digest = report_digest(*ctx.report);
  }
  return entries_.emplace(key, std::move(ctx)).first->second;
}

VerifyReport verify_certificate(const Certificate& c, const VerifyOptions& options) {
  VerifyReport r;
  ContextCache local;
  ContextCache& cache = options.cache ? *options.cache : local;
  auto finish = [&]() -> VerifyReport {
    r.pass = !r.checks.empty() && std::all_of(r.checks.begin(), r.checks.end(), [](const Check& ch) { return ch.ok; });
    return r;
  };

  add(r, "tool_version", c.tool_version == kToolVersion, c.tool_version);

  const FieldContext* ctx = nullptr;
  try {
    ctx = &cache.get(c.poly, options.digits);
  } catch (const Error& e) {
    add(r, "field", false, e.what());
    return finish();
  }
  const CubicField& k = *ctx->field;
  add(r, "field", k.conductor() == c.conductor,
      c.poly.str() + " has conductor " + std::to_string(k.conductor()) + ", certificate says " +
          std::to_string(c.conductor));
  const ConductorCheck pre = conductor_precheck(k.conductor());
  add(r, "conductor_precheck", pre.pass, pre.pass ? "pass" : pre.reason);
  if (!pre.pass) return finish();

  // Unit.
  auto unit = k.to_integral(c.unit);
  bool unit_ok = false;
  std::string unit_detail;
  if (!unit) {
    unit_detail = "not integral";
  } else {
    const mpz_class n = k.norm_integral(*unit);
    const bool torsion = abs((*unit)[0]) == 1 && (*unit)[1] == 0 && (*unit)[2] == 0;
    unit_ok = (n == 1 || n == -1) && !torsion;
    unit_detail = "norm " + n.get_str() + (torsion ? ", torsion" : "");
  }
  add(r, "unit", unit_ok, unit_detail);

  // Prime.
  const std::uint64_t q = c.prime_q;
  const bool q_ok = q > 2 && q < (1ULL << 31) && is_prime(q) && k.conductor() % q != 0;
  add(r, "prime_q", q_ok, std::to_string(q) + (q_ok ? " odd, prime, unramified" : " rejected"));
  if (!unit_ok || !q_ok) return finish();

  // Ideal (q, alpha).
  PrimeIdeal prime;
  bool ideal_ok = false;
  std::string ideal_detail;
  auto alpha = k.to_integral(c.second_generator);
  if (!alpha) {
    ideal_detail = "second generator is not integral";
  } else {
    const Ideal ideal = ideal_from_generators(k, {{mpz_class(static_cast<unsigned long>(q)), 0, 0}, *alpha});
    if (!as_degree_one_prime(k, ideal, prime) || prime.p != q) {
      ideal_detail = "(q, alpha) has norm " + ideal.norm().get_str();
    } else if (prime.ramification != 1) {
      ideal_detail = "ramified";
    } else if (!(prime.alpha == c.second_generator)) {
      ideal_detail = "second generator is not in canonical form " + format_element(prime.alpha);
    } else {
      ideal_ok = true;
      ideal_detail = ideal_str(prime) + " is a degree-one unramified prime";
    }
  }
  add(r, "prime_ideal", ideal_ok, ideal_detail);
  if (!ideal_ok) return finish();

  // Lemma tests.
  try {
    ResidueRing r1(k, prime, 1), r2(k, prime, 2);
    const std::uint64_t order = r1.multiplicative_order(*unit);
    add(r, "order_mod_q", order == q - 1 && order == c.order_mod_q,
        "computed " + std::to_string(order) + ", stated " + std::to_string(c.order_mod_q) + ", need " +
            std::to_string(q - 1));
    const std::uint64_t res = pow_mod(r2.reduce(*unit), q - 1, r2.modulus());
    add(r, "residue_mod_q2", res != 1 && res == c.residue_mod_q2,
        "computed " + std::to_string(res) + ", stated " + std::to_string(c.residue_mod_q2));
    const bool gen = generates_quotient(k, *unit, prime);
    add(r, "generates_quotient", gen, gen ? "unit generates (O_K/q^2)^x" : "unit does not generate (O_K/q^2)^x");
  } catch (const Error& e) {
    add(r, "order_mod_q", false, e.what());
    return finish();
  }

  // Class number.
  if (options.trust_class_number) {
    const bool hex = c.class_report_digest.size() == 64 &&
                     std::all_of(c.class_report_digest.begin(), c.class_report_digest.end(),
                                 [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) || (ch >= 'a' && ch <= 'f'); });
    add(r, "class_number", hex, "trusted digest " + c.class_report_digest);
  } else {
    const bool h1 = ctx->report && ctx->report->verdict == ClassVerdict::h_is_one;
    add(r, "class_number", h1, ctx->report ? std::string(to_string(ctx->report->verdict)) : "no report");
    add(r, "class_report_digest", ctx->digest == c.class_report_digest, "recomputed " + ctx->digest);
  }

  // The certificate must be the one the deterministic search emits.
  if (ctx->units) {
    auto hit = admissible_search(k, *ctx->units, q);
    const bool same = hit && hit->ideal.p == q && hit->ideal.alpha == c.second_generator &&
                      k.from_integral(hit->unit) == c.unit;
    add(r, "search_reproduces", same,
        same ? "search emits this certificate"
             : (hit ? "search emits " + ideal_str(hit->ideal) + " with unit " + format_element(k.from_integral(hit->unit))
                    : "search finds nothing up to q"));
  }
  return finish();
}

std::string_view to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::euclidean: return "Euclidean";
    case VerdictKind::not_class_number_one: return "NotClassNumberOne";
    case VerdictKind::exhausted: return "Exhausted";
    case VerdictKind::undecided: return "Undecided";
  }
  return "unknown";
}

namespace {

Verdict verdict_for_field(const CubicField& k, const VerdictOptions& options) {
  Verdict v;
  v.q_max = options.q_max;
  UnitSystem units;
  try {
    units = find_units(k);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::insufficient_effort) throw;
    v.kind = VerdictKind::undecided;
    v.stage = "units";
    v.reason = e.what();
    return v;
  }
  v.report = class_number_one(k, units, options.digits);
  if (v.report->verdict == ClassVerdict::h_greater_one) {
    v.kind = VerdictKind::not_class_number_one;
    v.stage = "class_number";
    v.reason = v.report->reason;
    return v;
  }
  if (v.report->verdict == ClassVerdict::undecided) {
    v.kind = VerdictKind::undecided;
    v.stage = "class_number";
    v.reason = v.report->reason + "; raise --precision";
    return v;
  }
  v.hit = admissible_search(k, units, options.q_max);
  v.stage = "search";
  if (!v.hit) {
    v.kind = VerdictKind::exhausted;
    v.reason = "no admissible prime q <= " + std::to_string(options.q_max);
    return v;
  }
  Certificate c;
  c.conductor = k.conductor();
  c.poly = k.poly();
  c.unit = k.from_integral(v.hit->unit);
  c.prime_q = v.hit->ideal.p;
  c.second_generator = v.hit->ideal.alpha;
  c.order_mod_q = v.hit->order_mod_q;
  c.residue_mod_q2 = v.hit->residue_mod_q2;
  c.class_report_digest = report_digest(*v.report);
  v.certificate = c;
  v.kind = VerdictKind::euclidean;
  v.reason = "r + s = 2 + 1 >= 3 with admissible prime " + ideal_str(v.hit->ideal);
  return v;
}

}  // namespace

Verdict euclidean_verdict(std::uint64_t conductor, const VerdictOptions& options) {
  const ConductorCheck pre = conductor_precheck(conductor);
  if (!pre.pass) {
    if (!pre.valid_conductor) throw Error(ErrorKind::invalid_conductor, pre.reason);
    Verdict v;
    v.kind = VerdictKind::not_class_number_one;
    v.stage = "precheck";
    v.reason = pre.reason;
    v.report = precheck_report(conductor);
    v.q_max = options.q_max;
    return v;
  }
  return verdict_for_field(CubicField::from_conductor(conductor), options);
}

Verdict euclidean_verdict(const CubicPolynomial& poly, const VerdictOptions& options) {
  const CubicField k = CubicField::build(poly);
  const ConductorCheck pre = conductor_precheck(k.conductor());
  if (!pre.pass) {
    Verdict v;
    v.kind = VerdictKind::not_class_number_one;
    v.stage = "precheck";
    v.reason = pre.reason;
    v.report = precheck_report(k.conductor());
    v.q_max = options.q_max;
    return v;
  }
  return verdict_for_field(k, options);
}

}  // namespace ccf
