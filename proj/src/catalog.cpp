#include "ccf/catalog.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ccf/class_number.hpp"
#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"
#include "ccf/ideal.hpp"
#include "ccf/parallel.hpp"
#include "ccf/search.hpp"
#include "ccf/units.hpp"

namespace ccf {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, "byte " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ == s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  mpz_class digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  FieldElement element() {
    FieldElement x{{0, 0, 0}};
    bool first = true;
    while (first || !at_end()) {
      const char c = peek();
      if (c == ')' || c == ',') {
        if (first) fail("expected a term");
        break;
      }
      int sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (!accept('+') && !first) {
        fail("expected '+' or '-'");
      }
      term(x, sign);
      first = false;
    }
    return x;
  }

  std::size_t pos() const { return pos_; }

 private:
  void term(FieldElement& x, int sign) {
    mpq_class coeff = 1;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      have_number = true;
      mpz_class num = digits();
      mpz_class den = 1;
      if (accept('/')) {
        const std::size_t at = pos_;
        den = digits();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      coeff = mpq_class(num, den);
      coeff.canonicalize();
    }
    const bool star = have_number && accept('*');
    int power = 0;
    if (accept('a')) {
      power = 1;
      if (accept('^')) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '2') {
          ++pos_;
          power = 2;
        } else {
          fail("expected exponent 2");
        }
      }
    } else if (star) {
      fail("expected 'a' after '*'");
    } else if (!have_number) {
      fail("expected a number or 'a'");
    }
    x.coords[power] += sign * coeff;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

FieldElement parse_element(std::string_view text) {
  Parser p(text);
  FieldElement x = p.element();
  if (!p.at_end()) p.fail("unexpected character");
  return x;
}

Witness parse_witness(std::string_view text) {
  Parser p(text);
  Witness w;
  if (p.accept('(')) {
    w.two_element = true;
    const mpz_class q = p.digits();
    if (!q.fits_ulong_p() || q < 2) p.fail("prime out of range");
    w.q = q.get_ui();
    p.expect(',');
    w.element = p.element();
    p.expect(')');
  } else {
    w.element = p.element();
  }
  if (!p.at_end()) p.fail("unexpected character");
  return w;
}

std::string format_witness(const Witness& w) {
  if (!w.two_element) return format_element(w.element);
  return "(" + std::to_string(w.q) + ", " + format_element(w.element) + ")";
}

std::vector<TableRow> parse_table(std::string_view text) {
  std::vector<TableRow> rows;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cols = split_tabs(line);
    TableRow row;
    row.line = line_no;
    row.conductor = trim(cols[0]);
    if (cols.size() >= 3 && cols.size() <= 4) {
      row.polynomial = trim(cols[1]);
      row.witness = trim(cols[2]);
      if (cols.size() == 4) row.comment = trim(cols[3]);
    } else {
      row.comment = "expected 3 or 4 tab-separated columns, got " + std::to_string(cols.size());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TableRow> load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

RowReport check_row(const TableRow& row, const RowOptions& options) {
  RowReport r;
  r.line = row.line;
  r.conductor = row.conductor;
  r.stage = "parse";
  try {
    if (row.polynomial.empty() || row.witness.empty()) {
      r.detail = row.comment.empty() ? "missing column" : row.comment;
      return r;
    }
    std::uint64_t f = 0;
    try {
      std::size_t used = 0;
      f = std::stoull(row.conductor, &used);
      if (used != row.conductor.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      r.detail = "bad conductor '" + row.conductor + "'";
      return r;
    }
    const CubicPolynomial poly = parse_polynomial(row.polynomial);
    const Witness w = parse_witness(row.witness);

    r.stage = "build";
    const CubicField k = CubicField::build(poly);

    r.stage = "conductor";
    if (k.conductor() != f) {
      r.detail = "field conductor " + std::to_string(k.conductor()) + " != " + std::to_string(f);
      return r;
    }

    r.stage = "witness";
    const auto e = k.to_integral(w.element);
    if (!e) {
      r.detail = "element " + format_element(w.element) + " is not integral";
      return r;
    }
    const mpz_class n = k.norm_integral(*e);
    r.witness_kind = w.two_element ? "ideal" : (n == 1 || n == -1) ? "unit" : "element";

    PrimeIdeal prime;
    if (r.witness_kind != "unit") {
      r.stage = "ideal";
      const Ideal ideal = w.two_element
                              ? ideal_from_generators(k, {{mpz_class(static_cast<unsigned long>(w.q)), 0, 0}, *e})
                              : principal_ideal(k, *e);
      if (!as_degree_one_prime(k, ideal, prime)) {
        r.detail = "witness ideal has norm " + ideal.norm().get_str() + ", not a prime";
        return r;
      }
      r.q = prime.p;
      r.ideal = ideal_str(prime);
      if (w.two_element && prime.p != w.q) {
        r.detail = "ideal lies over " + std::to_string(prime.p) + ", row says " + std::to_string(w.q);
        return r;
      }
      if (prime.p == 2 || prime.p == f || prime.ramification != 1) {
        r.detail = r.ideal + " is not an odd unramified prime";
        return r;
      }
    } else if (abs((*e)[0]) == 1 && (*e)[1] == 0 && (*e)[2] == 0) {
      r.detail = "witness is a root of unity";
      return r;
    }

    r.stage = "units";
    const UnitSystem u = find_units(k);

    if (options.check_class_number) {
      r.stage = "class_number";
      const ClassNumberReport rep = class_number_one(k, u, options.digits);
      if (rep.verdict != ClassVerdict::h_is_one) {
        r.detail = std::string(to_string(rep.verdict)) + ": " + rep.reason;
        return r;
      }
    }

    r.stage = "admissible";
    if (r.witness_kind == "unit") {
      bool found = false;
      for (std::uint64_t q : primes_up_to(options.q_max)) {
        if (q == 2 || f % q == 0 || splitting_type(k, q) != Splitting::split) continue;
        for (const auto& cand : decompose_prime(k, q)) {
          if (generates_quotient(k, *e, cand)) {
            prime = cand;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) {
        r.detail = "unit generates no (O_K/q^2)^x for split q <= " + std::to_string(options.q_max);
        return r;
      }
      r.q = prime.p;
      r.ideal = ideal_str(prime);
    }
    r.group_order = prime.p * (prime.p - 1);
    r.image_order = unit_image_order(k, u, prime);
    if (r.image_order != r.group_order) {
      r.detail = "units generate a subgroup of order " + std::to_string(r.image_order);
      return r;
    }
    r.stage = "done";
    r.pass = true;
    r.detail = r.witness_kind == "unit" ? "witness unit generates (O_K/q^2)^x" : "admissible";
  } catch (const Error& e) {
    r.detail = e.what();
  }
  return r;
}

std::vector<RowReport> check_table(const std::vector<TableRow>& rows, unsigned jobs, const RowOptions& options) {
  std::vector<RowReport> out(rows.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) { out[i] = check_row(rows[i], options); });
  return out;
}

std::string row_report_text(const RowReport& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS " : "FAIL ") << r.conductor << " line " << r.line << " " << r.stage;
  if (!r.witness_kind.empty()) os << " " << r.witness_kind;
  if (!r.ideal.empty()) os << " " << r.ideal;
  if (r.group_order) os << " order " << r.image_order << "/" << r.group_order;
  os << ": " << r.detail;
  return os.str();
}

std::string row_reports_json(const std::vector<RowReport>& reports) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["line"] = r.line;
    j["conductor"] = r.conductor;
    j["pass"] = r.pass;
    j["stage"] = r.stage;
    j["witness_kind"] = r.witness_kind;
    j["detail"] = r.detail;
    j["q"] = std::to_string(r.q);
    j["ideal"] = r.ideal;
    j["group_order"] = std::to_string(r.group_order);
    j["image_order"] = std::to_string(r.image_order);
    a.push_back(std::move(j));
  }
  return a.dump(2) + "\n";
}

}  // namespace ccf
