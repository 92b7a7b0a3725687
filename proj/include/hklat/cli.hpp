#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hklat/beauville.hpp"
#include "hklat/catalog.hpp"
#include "hklat/fujiki.hpp"
#include "hklat/io.hpp"
#include "hklat/lattice.hpp"
#include "hklat/lattice_expr.hpp"
#include "hklat/ledger.hpp"
#include "hklat/monodromy.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// Command line front end. Exit codes: 0 success, 1 a verification or
// consistency failure (a catalog check, a solve round-trip, a ledger
// contradiction, an unpinned bound), 2 usage or input errors. All numeric
// output is exact; rationals print as p/q.

namespace cli_detail {

using Json = nlohmann::json;

inline Family family_from_name(const std::string& name) {
  if (name == "hilb") return Family::HilbK3;
  if (name == "kummer") return Family::Kummer;
  if (name == "og6") return Family::OG6;
  if (name == "og10") return Family::OG10;
  throw InputError("unknown family '" + name + "'");
}

inline std::string pad(std::string s, std::size_t width) {
  while (s.size() < width) s += ' ';
  return s;
}

inline Json signature_json(const Signature& s) {
  return Json{{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}};
}

inline Json row_json(const CatalogRow& row) {
  return Json{{"name", row.name},     {"family", family_name(row.family)},
              {"n", row.n},           {"b2", row.b2},
              {"fujiki", to_string(row.fujiki)}, {"lattice", print_lattice_expr(row.lattice)}};
}

inline int run_table(const std::vector<CatalogRow>& rows, bool verify, const std::string& format,
                     std::ostream& out) {
  bool all_ok = true;
  if (format == "json") {
    Json list = Json::array();
    for (const auto& row : rows) {
      Json r = row_json(row);
      if (verify) {
        const RowReport report = verify_row(row);
        all_ok = all_ok && report.all_pass();
        Json checks = Json::array();
        for (const auto& c : report.checks)
          checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        r["checks"] = std::move(checks);
        r["pass"] = report.all_pass();
      }
      list.push_back(std::move(r));
    }
    out << list.dump(2) << "\n";
  } else {
    out << pad("name", 8) << pad("family", 8) << pad("n", 3) << pad("b2", 4) << pad("fujiki", 8)
        << "lattice\n";
    for (const auto& row : rows) {
      out << pad(row.name, 8) << pad(family_name(row.family), 8) << pad(std::to_string(row.n), 3)
          << pad(std::to_string(row.b2), 4) << pad(to_string(row.fujiki), 8)
          << print_lattice_expr(row.lattice) << "\n";
      if (verify) {
        const RowReport report = verify_row(row);
        all_ok = all_ok && report.all_pass();
        for (const auto& c : report.checks)
          out << "  " << (c.pass ? "[ok] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
      }
    }
  }
  return all_ok ? 0 : 1;
}

inline int run_lattice(const std::string& text, const std::string& format, std::ostream& out) {
  const LatticeExpr expr = parse_lattice_expr(text);
  const Lattice lat = realize(expr);
  const Signature sig = signature(lat);
  const Int disc = discriminant(lat);
  const bool degenerate = disc == 0;
  if (format == "json") {
    Json j{{"expression", print_lattice_expr(expr)},
           {"rank", lat.rank()},
           {"signature", signature_json(sig)},
           {"even", is_even(lat)},
           {"discriminant", to_string(disc)}};
    if (degenerate) {
      j["discriminant_group"] = nullptr;
    } else {
      Json factors = Json::array();
      for (const auto& f : discriminant_group(lat).factors) factors.push_back(to_string(f));
      j["discriminant_group"] = std::move(factors);
    }
    out << j.dump(2) << "\n";
  } else {
    out << "expression: " << print_lattice_expr(expr) << "\n";
    out << "rank: " << lat.rank() << "\n";
    out << "signature: " << to_string(sig) << "\n";
    out << "even: " << (is_even(lat) ? "yes" : "no") << "\n";
    out << "discriminant: " << to_string(disc) << "\n";
    out << "discriminant group: "
        << (degenerate ? std::string("degenerate") : to_string(discriminant_group(lat))) << "\n";
  }
  return 0;
}

inline int run_solve(const std::string& source, std::ostream& out) {
  const SolverInput input = source == "og10_intersections"
                                ? og10_intersections()
                                : parse_solver_input(read_file(source));
  const BeauvilleSolution sol = solve(input);
  out << "n: " << sol.n << "\n";
  out << "a: " << to_string(sol.a) << "\n";
  out << "c: " << to_string(sol.c) << "\n";
  if (sol.exceptional.empty()) {
    out << "exceptional gram: (none)\n";
  } else {
    out << "exceptional gram:\n";
    for (std::size_t i = 0; i < sol.exceptional_gram.rows(); ++i) {
      out << " ";
      for (std::size_t j = 0; j < sol.exceptional_gram.cols(); ++j)
        out << " " << to_string(sol.exceptional_gram(i, j));
      out << "\n";
    }
  }
  out << "assembled: " << print_lattice_expr(sol.assembled) << "\n";
  out << "donaldson unimodular: " << (sol.donaldson_unimodular ? "yes" : "no") << "\n";
  return 0;
}

inline int run_ledger(const RankLedger& scenario, std::ostream& out, std::ostream& err) {
  try {
    const PropagationResult result = propagate(scenario);
    for (const auto& line : result.trace) out << line << "\n";
    out << "final:\n";
    const RankLedger& led = result.ledger;
    for (std::size_t i = 0; i < led.terms.size(); ++i) {
      out << "  dim(" << led.terms[i].name << ") = " << to_string(led.terms[i].dim) << "\n";
      if (i < led.arrows.size())
        out << "  rank(" << led.terms[i].name << "->" << led.terms[i + 1].name
            << ") = " << to_string(led.arrows[i].rank) << "\n";
    }
    return 0;
  } catch (const LedgerContradiction& e) {
    for (const auto& line : e.trace) out << line << "\n";
    err << "contradiction: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli_detail

// args: the command line without the program name, in natural order.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact lattice and intersection-number toolkit for compact hyperkahler families"};
  app.name("hklat");
  app.require_subcommand(1);

  auto* table_cmd = app.add_subcommand("table", "print or verify the family catalog");
  bool table_verify = false;
  std::string table_family;
  long table_n = 0;
  std::string table_format = "text";
  table_cmd->add_flag("--verify", table_verify, "run every consistency check on each row");
  auto* family_opt = table_cmd->add_option("--family", table_family, "restrict to one family")
                         ->check(CLI::IsMember({"hilb", "kummer", "og6", "og10"}));
  auto* n_opt = table_cmd->add_option("--n", table_n, "half-dimension for --family")
                    ->check(CLI::PositiveNumber);
  family_opt->needs(n_opt);
  n_opt->needs(family_opt);
  table_cmd->add_option("--format", table_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* lattice_cmd = app.add_subcommand("lattice", "invariants of a lattice expression");
  std::string lattice_text;
  std::string lattice_format = "text";
  lattice_cmd->add_option("expr", lattice_text, "expression such as \"U^3 + -E8^2 + Lambda\"")
      ->required();
  lattice_cmd->add_option("--format", lattice_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* solve_cmd =
      app.add_subcommand("solve", "recover a Beauville form from exact intersection numbers");
  std::string solve_source;
  solve_cmd
      ->add_option("input", solve_source,
                   "JSON input file, or the builtin name og10_intersections")
      ->required();

  auto* fujiki_cmd =
      app.add_subcommand("fujiki", "evaluate a polarized integral by the matching sum");
  std::string fujiki_path;
  fujiki_cmd->add_option("input", fujiki_path, "JSON file with n, c, gram and classes")
      ->required();

  auto* monodromy_cmd = app.add_subcommand(
      "monodromy", "invariant dimension of a transvection acting on a wedge power");
  unsigned long genus = 0;
  std::size_t degree = 0;
  bool closed_form = false;
  monodromy_cmd->add_option("--genus", genus, "genus p of the reference surface")->required();
  monodromy_cmd->add_option("--degree", degree, "wedge power q")->required();
  monodromy_cmd->add_flag("--closed-form", closed_form,
                          "use the closed form instead of the kernel computation");

  auto* derive_cmd = app.add_subcommand(
      "derive-b2", "rank-ledger derivation of the resolution's second Betti number");
  B2Options b2_options;
  derive_cmd->add_option("--ambient", b2_options.ambient_b2,
                         "second Betti number of the ambient moduli space");
  derive_cmd->add_option("--components", b2_options.components,
                         "irreducible components of the exceptional divisor");
  derive_cmd->add_option("--lower-bound", b2_options.lower_bound,
                         "independent classes exhibited on the resolution");

  auto* ledger_cmd = app.add_subcommand("ledger", "propagate a rank ledger from a JSON scenario");
  std::string ledger_path;
  ledger_cmd->add_option("input", ledger_path, "JSON scenario file")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (table_cmd->parsed()) {
      std::vector<CatalogRow> rows;
      if (!table_family.empty())
        rows.push_back(make_row(cli_detail::family_from_name(table_family),
                                static_cast<std::size_t>(table_n)));
      else
        rows = builtin_catalog();
      return cli_detail::run_table(rows, table_verify, table_format, out);
    }
    if (lattice_cmd->parsed()) return cli_detail::run_lattice(lattice_text, lattice_format, out);
    if (solve_cmd->parsed()) return cli_detail::run_solve(solve_source, out);
    if (fujiki_cmd->parsed()) {
      const FujikiEvalInput input = parse_fujiki_input(read_file(fujiki_path));
      out << to_string(polarized_integral(input.structure, input.classes)) << "\n";
      return 0;
    }
    if (monodromy_cmd->parsed()) {
      const std::size_t dim = closed_form ? closed_form_invariant_dimension(genus, degree)
                                          : invariant_dimension(genus, degree);
      out << "genus: " << genus << "\n";
      out << "degree: " << degree << "\n";
      out << "invariant dimension: " << dim << "\n";
      return 0;
    }
    if (derive_cmd->parsed()) {
      try {
        const B2Derivation derivation = derive_b2_og10(b2_options);
        for (const auto& line : derivation.trace) out << line << "\n";
        return derivation.b2 ? 0 : 1;
      } catch (const LedgerContradiction& e) {
        for (const auto& line : e.trace) out << line << "\n";
        err << "contradiction: " << e.what() << "\n";
        return 1;
      }
    }
    if (ledger_cmd->parsed())
      return cli_detail::run_ledger(parse_ledger_scenario(read_file(ledger_path)), out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolveError& e) {
    err << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const LedgerContradiction& e) {
    err << "contradiction: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace hklat
