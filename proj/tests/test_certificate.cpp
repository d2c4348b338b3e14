#include "doctest.h"

#include "ccf/certificate.hpp"
#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"
#include "common.hpp"

using namespace ccf;

namespace {

const Certificate& cert(std::uint64_t f) {
  static std::map<std::uint64_t, Certificate> cache;
  auto it = cache.find(f);
  if (it != cache.end()) return it->second;
  const Verdict v = euclidean_verdict(f);
  REQUIRE(v.certificate);
  return cache.emplace(f, *v.certificate).first->second;
}

ContextCache& shared_cache() {
  static ContextCache c;
  return c;
}

bool verifies(const Certificate& c) {
  VerifyOptions o;
  o.cache = &shared_cache();
  return verify_certificate(c, o).pass;
}

void parse_fails(const std::string& text, const std::string& needle) {
  try {
    certificate_from_json(text);
    FAIL("accepted: " << text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
  }
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_SUITE("certificate") {

TEST_CASE("round trip and verification at 73") {
  const Certificate& c = cert(73);
  CHECK(c.prime_q == 3);
  CHECK(c.order_mod_q == 2);
  CHECK(c.residue_mod_q2 == 7);
  const std::string json = certificate_to_json(c);
  const Certificate back = certificate_from_json(json);
  CHECK(certificate_to_json(back) == json);
  const VerifyReport r = verify_certificate(back);
  CHECK(r.pass);
  CHECK(r.text().find("certificate valid") != std::string::npos);
}

TEST_CASE("single-field mutations fail") {
  Certificate one = cert(73);
  one.unit = FieldElement::from_integer(1);
  CHECK_FALSE(verifies(one));
  Certificate forged = cert(73);
  forged.residue_mod_q2 = 1;
  CHECK_FALSE(verifies(forged));
  VerifyOptions trusted;
  trusted.trust_class_number = true;
  CHECK_FALSE(verify_certificate(forged, trusted).pass);
  CHECK(verify_certificate(cert(73), trusted).pass);
}

TEST_CASE("malformed certificates give located parse errors") {
  const std::string good = certificate_to_json(cert(73));
  parse_fails("\x01\x02garbage", "byte");
  parse_fails("{\"conductor\": ", "byte");
  parse_fails("[]", "object");
  parse_fails(replace(good, "\"conductor\": \"73\",", ""), "conductor");
  parse_fails(replace(good, "\"prime_q\": \"3\"", "\"prime_q\": \"03\""), "prime_q");
  parse_fails(replace(good, "\"prime_q\": \"3\"", "\"prime_q\": 3"), "prime_q");
  parse_fails(replace(good, "\"unit\": [", "\"unit\": [\"2/4\", "), "unit");
  parse_fails(replace(good, "\"tool_version\"", "\"extra\": \"1\",\n  \"tool_version\""), "extra");
  parse_fails(replace(good, "\"1\",", "\"x1\","), "polynomial");
}

TEST_CASE("every single-field mutation is rejected") {
  std::size_t cases = 0;
  std::uniform_int_distribution<int> small(1, 40), coord(0, 2), sign(0, 1);
  auto delta = [&] { return (sign(testing::rng()) ? 1 : -1) * small(testing::rng()); };
  for (std::uint64_t f : {7, 9, 73, 79, 97, 439, 1291}) {
    const Certificate base = cert(f);
    REQUIRE(verifies(base));
    std::vector<Certificate> muts;
    for (int i = 0; i < 20; ++i) {
      Certificate m = base;
      m.conductor = static_cast<std::uint64_t>(std::max<long>(1, static_cast<long>(base.conductor) + delta()));
      if (m.conductor == base.conductor) m.conductor += 6;
      muts.push_back(m);

      m = base;
      mpz_class* cs[] = {&m.poly.c2, &m.poly.c1, &m.poly.c0};
      *cs[coord(testing::rng())] += delta();
      muts.push_back(m);

      m = base;
      m.unit.coords[coord(testing::rng())] += mpq_class(delta(), small(testing::rng()) % 3 + 1);
      muts.push_back(m);

      m = base;
      switch (i % 4) {
        case 0: m.unit = FieldElement::from_integer(i % 8 < 4 ? 1 : -1); break;
        case 1: for (auto& c : m.unit.coords) c = -c; break;
        case 2: m.unit = testing::field(base.poly.str()).mul(base.unit, base.unit); break;
        default: m.unit = testing::field(base.poly.str()).inv(base.unit); break;
      }
      muts.push_back(m);

      m = base;
      m.prime_q = static_cast<std::uint64_t>(std::max<long>(0, static_cast<long>(base.prime_q) + delta()));
      if (m.prime_q == base.prime_q) m.prime_q += 2;
      muts.push_back(m);

      m = base;
      if (i % 2) {
        m.second_generator.coords[coord(testing::rng())] += mpq_class(delta(), small(testing::rng()) % 2 + 1);
      } else {
        m.second_generator.coords[0] += mpq_class(static_cast<long>(base.prime_q) * delta());
      }
      muts.push_back(m);

      m = base;
      m.order_mod_q = static_cast<std::uint64_t>(std::max<long>(0, static_cast<long>(base.order_mod_q) + delta()));
      if (m.order_mod_q == base.order_mod_q) m.order_mod_q += 1;
      muts.push_back(m);

      m = base;
      m.residue_mod_q2 = i == 0 ? 1 : static_cast<std::uint64_t>(std::max<long>(0, static_cast<long>(base.residue_mod_q2) + delta()));
      if (m.residue_mod_q2 == base.residue_mod_q2) m.residue_mod_q2 += 1;
      muts.push_back(m);

      m = base;
      const std::size_t at = static_cast<std::size_t>(small(testing::rng())) % m.class_report_digest.size();
      m.class_report_digest[at] = m.class_report_digest[at] == 'a' ? 'b' : 'a';
      muts.push_back(m);

      m = base;
      m.tool_version = i % 2 ? "ccf 0.9.0" : "ccf " + std::to_string(i);
      muts.push_back(m);
    }
    // the other primes above q with the same unit
    for (const auto& p : decompose_prime(testing::field(base.poly.str()), base.prime_q)) {
      if (p.alpha == base.second_generator) continue;
      Certificate m = base;
      m.second_generator = p.alpha;
      muts.push_back(m);
    }
    for (const auto& m : muts) {
      REQUIRE_MESSAGE(!verifies(m), certificate_to_json(m));
      ++cases;
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("euclidean_verdict examples") {
  CHECK(euclidean_verdict(73).kind == VerdictKind::euclidean);
  CHECK(euclidean_verdict(79).kind == VerdictKind::euclidean);
  const Verdict v63 = euclidean_verdict(63);
  CHECK(v63.kind == VerdictKind::not_class_number_one);
  CHECK(v63.stage == "precheck");
  CHECK(euclidean_verdict(163).kind == VerdictKind::not_class_number_one);
  try {
    euclidean_verdict(11);
    FAIL("11 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_conductor);
  }
  const Verdict p = euclidean_verdict(parse_polynomial(testing::kPoly73));
  REQUIRE(p.certificate);
  CHECK(p.certificate->prime_q == 3);
  CHECK((p.certificate->residue_mod_q2 == 4 || p.certificate->residue_mod_q2 == 7));
  VerdictOptions tight;
  tight.q_max = 2;
  CHECK(euclidean_verdict(79, tight).kind == VerdictKind::exhausted);
}

}
