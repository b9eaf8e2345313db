#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scv/domains.hpp"
#include "scv/poly.hpp"

namespace scv::cli {

/// Domain mini-language: disc:c=<re>+<im>i,r=<pos> | ball:n=<dim> | polydisc:r=<pos>,...
/// | ellipsoid:p=<pos>,... | gauge:model-z1z2 | product(<spec>;<spec>;...). Whitespace is ignored.
DomainSpec parse_domain(std::string_view text);
std::string print_domain(const DomainSpec& domain);

/// <re>, <re>+<im>i, <re>-<im>i or <im>i; "i" alone stands for 1i.
Complex parse_complex(std::string_view text);
/// Comma-separated complex coordinates.
ComplexPoint parse_point(std::string_view text);
/// Comma-separated reals.
std::vector<double> parse_grid(std::string_view text);
/// Multi-index entries joined by '_', e.g. "2_0".
MultiIndex parse_multi_index(std::string_view text);
/// Comma-separated "<multi-index>:<complex>" terms, e.g. "1_1:1+0i,0_2:-0.5+2i".
HomogeneousPoly parse_poly(std::string_view text);
std::string print_poly(const HomogeneousPoly& H);

/// One output table. Cells are JSON scalars; CSV renders numbers with 17 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
  std::vector<std::string> notes;  // written to the diagnostic stream for CSV, kept in JSON

  void add(std::vector<nlohmann::ordered_json> row);
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string csv_escape(const std::string& field);

/// Every subcommand name, in help order.
const std::vector<std::string>& subcommands();
/// Library operation -> the subcommand that exposes it.
const std::vector<std::pair<std::string, std::string>>& operation_coverage();

/// Full command line entry point. Returns 0 success, 1 verdict fail, 2 usage, 3 numeric.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---- deterministic end-to-end suite ----

struct SuiteRow {
  std::string check;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct SuiteCriterion {
  int id;
  std::string name;
  std::function<std::vector<SuiteRow>(std::uint64_t seed)> run;
};

/// The acceptance checks, each a pure function of the seed.
const std::vector<SuiteCriterion>& suite_criteria();
/// Runs every criterion; the table carries no timings so equal seeds give equal bytes.
Table run_suite(std::uint64_t seed, bool& all_passed);

}  // namespace scv::cli
