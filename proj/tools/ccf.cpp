// ccf: cyclic cubic fields, class number one and Euclidean certificates.
//
// Exit codes
//   field:  0 ok, 2 invalid input, 3 undecided
//   search: 0 Euclidean, 2 invalid input, 3 undecided, 4 not class number one, 5 exhausted
//   verify: 0 pass, 2 unreadable or malformed certificate, 6 rejected
//   batch, table: 0 unless an internal fault occurred
//   any command: 1 internal fault
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ccf/catalog.hpp"
#include "ccf/certificate.hpp"
#include "ccf/class_number.hpp"
#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"
#include "ccf/parallel.hpp"

#ifndef CCF_DEFAULT_TABLE
#define CCF_DEFAULT_TABLE "data/table1.tsv"
#endif

namespace fs = std::filesystem;
using namespace ccf;

namespace {

constexpr int kOk = 0, kInternal = 1, kInvalid = 2, kUndecided = 3, kNotH1 = 4, kExhausted = 5, kRejected = 6;

struct Input {
  std::uint64_t conductor = 0;
  std::string poly;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::internal, "cannot write " + path.string());
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

std::string field_text(const CubicField& k, const UnitSystem& u, const ClassNumberReport& rep) {
  std::ostringstream os;
  os << "conductor " << k.conductor() << "\n";
  os << "polynomial " << k.poly().str() << "\n";
  os << "polynomial_discriminant " << k.poly_discriminant() << "\n";
  os << "field_discriminant " << k.field_discriminant() << "\n";
  os << "index " << k.index() << "\n";
  const QMat3 basis = k.integral_basis();
  os << "integral_basis";
  for (const auto& row : basis) os << " [" << format_element({row}) << "]";
  os << "\n";
  os << "unit_1 " << format_element(k.from_integral(u.units[0])) << "\n";
  os << "unit_2 " << format_element(k.from_integral(u.units[1])) << "\n";
  os << "units_fundamental " << (u.saturated ? "yes" : "unproven") << "\n";
  os << "regulator " << u.regulator.value.str(25) << "\n";
  os << "class_number_one " << (rep.verdict == ClassVerdict::h_is_one ? "h = 1" : std::string(to_string(rep.verdict)))
     << "\n";
  os << report_text(rep);
  return os.str();
}

int cmd_field(const Input& in, int digits) {
  if (in.conductor) {
    const ConductorCheck pre = conductor_precheck(in.conductor);
    if (!pre.valid_conductor) {
      std::cerr << "invalid conductor " << in.conductor << ": " << pre.reason << "\n";
      return kInvalid;
    }
    if (!pre.pass) {
      std::cout << report_text(precheck_report(in.conductor));
      return kOk;
    }
  }
  const CubicField k = in.conductor ? CubicField::from_conductor(in.conductor)
                                    : CubicField::build(parse_polynomial(in.poly));
  if (!conductor_precheck(k.conductor()).pass) {
    std::cout << "conductor " << k.conductor() << "\npolynomial " << k.poly().str() << "\n"
              << report_text(precheck_report(k.conductor()));
    return kOk;
  }
  UnitSystem u;
  try {
    u = find_units(k);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::insufficient_effort) throw;
    std::cerr << "units: " << e.what() << "\n";
    return kUndecided;
  }
  const ClassNumberReport rep = class_number_one(k, u, digits);
  std::cout << field_text(k, u, rep);
  if (rep.verdict == ClassVerdict::undecided) {
    std::cerr << "class number undecided; raise --precision\n";
    return kUndecided;
  }
  return kOk;
}

int verdict_exit(VerdictKind v) {
  switch (v) {
    case VerdictKind::euclidean: return kOk;
    case VerdictKind::not_class_number_one: return kNotH1;
    case VerdictKind::exhausted: return kExhausted;
    case VerdictKind::undecided: return kUndecided;
  }
  return kInternal;
}

int cmd_search(const Input& in, std::uint64_t q_max, int digits, const std::string& out) {
  const VerdictOptions opts{q_max, digits};
  const Verdict v = in.conductor ? euclidean_verdict(in.conductor, opts)
                                 : euclidean_verdict(parse_polynomial(in.poly), opts);
  std::cerr << to_string(v.kind) << " [" << v.stage << "] " << v.reason << "\n";
  if (v.certificate) emit(out, certificate_to_json(*v.certificate));
  return verdict_exit(v.kind);
}

int cmd_verify(const std::string& file, bool trust, int digits) {
  Certificate c;
  try {
    c = certificate_from_json(read_file(file));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
  VerifyOptions opts;
  opts.trust_class_number = trust;
  opts.digits = digits;
  const VerifyReport r = verify_certificate(c, opts);
  std::cout << r.text();
  return r.pass ? kOk : kRejected;
}

struct BatchItem {
  std::uint64_t f = 0;
  std::string verdict, q = "-", ideal = "-", certificate, error;
  double seconds = 0;
};

int cmd_batch(std::uint64_t from, std::uint64_t to, std::uint64_t q_max, int digits, unsigned jobs,
              const std::string& out) {
  if (from < 7 || from > to) {
    std::cerr << "need 7 <= --from <= --to\n";
    return kInvalid;
  }
  std::vector<BatchItem> items;
  for (std::uint64_t f = from; f <= to; ++f) {
    if (conductor_precheck(f).pass) items.push_back({f});
  }
  std::cerr << items.size() << " candidate conductors in [" << from << ", " << to << "]\n";
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    BatchItem& it = items[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Verdict v = euclidean_verdict(it.f, VerdictOptions{q_max, digits});
      it.verdict = std::string(to_string(v.kind));
      if (v.hit) {
        it.q = std::to_string(v.hit->ideal.p);
        it.ideal = ideal_str(v.hit->ideal);
      }
      if (v.certificate) it.certificate = certificate_to_json(*v.certificate);
    } catch (const Error& e) {
      it.verdict = "Error";
      it.error = e.what();
    }
    it.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << it.f << " " << it.verdict << " " << it.q << "\n";
  });

  std::ostringstream summary, timings;
  summary << "conductor\tverdict\tq\tideal\n";
  timings << "conductor\tseconds\n";
  bool internal = false;
  for (const auto& it : items) {
    summary << it.f << "\t" << it.verdict << "\t" << it.q << "\t" << it.ideal << "\n";
    timings << it.f << "\t" << std::fixed << std::setprecision(3) << it.seconds << "\n";
    if (!it.error.empty()) {
      internal = true;
      std::cerr << it.f << ": " << it.error << "\n";
    }
  }
  if (out.empty()) {
    std::cout << summary.str();
  } else {
    const fs::path dir(out);
    write_file(dir / "summary.tsv", summary.str());
    write_file(dir / "timings.tsv", timings.str());
    for (const auto& it : items) {
      if (!it.certificate.empty()) write_file(dir / "certificates" / (std::to_string(it.f) + ".json"), it.certificate);
    }
  }
  return internal ? kInternal : kOk;
}

int cmd_table(const std::string& file, unsigned jobs, int digits, std::uint64_t q_max, bool json,
              const std::string& out) {
  const auto rows = load_table(file);
  RowOptions opts;
  opts.digits = digits;
  opts.q_max = q_max;
  const auto reports = check_table(rows, jobs, opts);
  std::size_t passed = 0;
  std::ostringstream text;
  for (const auto& r : reports) {
    text << row_report_text(r) << "\n";
    passed += r.pass;
  }
  emit(out, json ? row_reports_json(reports) : text.str());
  std::cerr << passed << "/" << reports.size() << " rows pass\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic cubic fields: class number one and Euclidean certificates"};
  app.require_subcommand(1);
  int digits = 60;
  unsigned jobs = 0;
  std::uint64_t q_max = kDefaultQmax;
  std::string out;
  Input in;

  auto add_input = [&](CLI::App* sub) {
    auto* c = sub->add_option("--conductor", in.conductor, "Conductor f (9 or a prime == 1 mod 6)");
    auto* p = sub->add_option("--poly", in.poly, "Defining polynomial, e.g. \"x^3-x^2-24x+27\"");
    c->excludes(p);
    p->excludes(c);
    sub->add_option("--precision", digits, "Decimal digits for real computations")->check(CLI::Range(20, 2000));
  };

  auto* field = app.add_subcommand("field", "Print the field, units and class-number verdict");
  add_input(field);

  auto* search = app.add_subcommand("search", "Decide Euclideanity and write a certificate");
  add_input(search);
  search->add_option("--qmax", q_max, "Largest rational prime tried");
  search->add_option("--out", out, "Certificate path (default stdout)");

  std::string cert_file;
  bool trust = false;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  verify->add_option("file", cert_file, "Certificate JSON")->required();
  verify->add_flag("--trust-class-number", trust, "Accept the class report digest without recomputing h");
  verify->add_option("--precision", digits, "Decimal digits for real computations")->check(CLI::Range(20, 2000));

  std::uint64_t from = 0, to = 0;
  auto* batch = app.add_subcommand("batch", "Run search on every candidate conductor in a range");
  batch->add_option("--from", from)->required();
  batch->add_option("--to", to)->required();
  batch->add_option("--qmax", q_max, "Largest rational prime tried");
  batch->add_option("--precision", digits)->check(CLI::Range(20, 2000));
  batch->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  batch->add_option("--out", out, "Directory for summary.tsv, timings.tsv and certificates/");

  std::string table_file = CCF_DEFAULT_TABLE;
  bool json = false;
  auto* table = app.add_subcommand("table", "Check every row of a table file");
  table->add_option("--file,--table-file", table_file, "TSV: conductor, polynomial, witness[, comment]");
  table->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  table->add_option("--precision", digits)->check(CLI::Range(20, 2000));
  table->add_option("--qmax", q_max, "Search bound for unit witnesses");
  table->add_flag("--json", json, "JSON array instead of text lines");
  table->add_option("--out", out, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  try {
    if (*field || *search) {
      if (!in.conductor && in.poly.empty()) {
        std::cerr << "give --conductor or --poly\n";
        return kInvalid;
      }
      return *field ? cmd_field(in, digits) : cmd_search(in, q_max, digits, out);
    }
    if (*verify) return cmd_verify(cert_file, trust, digits);
    if (*batch) return cmd_batch(from, to, q_max, digits, jobs, out);
    if (*table) return cmd_table(table_file, jobs, digits, q_max, json, out);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::internal: return kInternal;
      case ErrorKind::insufficient_effort: return kUndecided;
      default: return kInvalid;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
