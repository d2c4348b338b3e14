#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccf/field.hpp"

namespace ccf {

/// Element in table notation: signed terms [rational][*](a^2 | a), e.g.
/// "2/3a^2-3a-8/3". Whitespace is ignored. Syntax errors carry the byte offset.
FieldElement parse_element(std::string_view text);

/// Either a bare element e (meaning the ideal (e)) or "(q, e)".
struct Witness {
  bool two_element = false;
  std::uint64_t q = 0;
  FieldElement element;
  friend bool operator==(const Witness&, const Witness&) = default;
};

Witness parse_witness(std::string_view text);
std::string format_witness(const Witness& w);

struct TableRow {
  std::size_t line = 0;
  std::string conductor;
  std::string polynomial;
  std::string witness;
  std::string comment;
};

/// Tab-separated: conductor, polynomial, witness, optional comment.
/// Blank lines and lines starting with '#' are skipped. Rows with the wrong
/// column count are kept and fail in check_row.
std::vector<TableRow> parse_table(std::string_view text);
std::vector<TableRow> load_table(const std::string& path);

struct RowReport {
  std::size_t line = 0;
  std::string conductor;
  bool pass = false;
  /// Last stage reached: parse, build, conductor, witness, ideal, units,
  /// class_number, admissible, done.
  std::string stage;
  std::string detail;
  std::uint64_t q = 0;
  /// element, unit or ideal.
  std::string witness_kind;
  std::string ideal;
  std::uint64_t group_order = 0;
  std::uint64_t image_order = 0;
};

struct RowOptions {
  bool check_class_number = true;
  int digits = 60;
  /// Search bound for unit witnesses.
  std::uint64_t q_max = 100000;
};

/// An element witness of norm +-1 is read as a unit claimed to be a
/// generator of (O_K/q^2)^x for some split prime q; the first such q is
/// searched up to q_max. Any other element e stands for the ideal (e).
RowReport check_row(const TableRow& row, const RowOptions& options = {});
/// Reports in input order; rows are checked on `jobs` threads.
std::vector<RowReport> check_table(const std::vector<TableRow>& rows, unsigned jobs, const RowOptions& options = {});

std::string row_report_text(const RowReport& r);
std::string row_reports_json(const std::vector<RowReport>& reports);

}  // namespace ccf
