#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hklat/beauville.hpp"
#include "hklat/fujiki.hpp"
#include "hklat/lattice.hpp"
#include "hklat/lattice_expr.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// The known deformation families, one representative row per dimension
// treated here: name, half-dimension n, second Betti number, Fujiki
// constant and Beauville lattice. Every claim in a row is checkable
// against the realized lattice, and verify_row does exactly that.

struct CatalogRow {
  std::string name;
  Family family = Family::HilbK3;
  std::size_t n = 0;
  long b2 = 0;
  Rat fujiki;
  LatticeExpr lattice;
};

inline CatalogRow make_row(Family family, std::size_t n) {
  CatalogRow row;
  row.family = family;
  row.n = n;
  switch (family) {
    case Family::HilbK3:
      if (n < 2) throw std::invalid_argument("catalog: Hilbert scheme rows start at n = 2");
      row.name = "X^[" + std::to_string(n) + "]";
      row.b2 = 23;
      row.lattice = LatticeExpr::sum(
          {LatticeExpr::power(LatticeExpr::u(), 3), LatticeExpr::power(LatticeExpr::neg_e8(), 2),
           LatticeExpr::rank1(Int(-2) * static_cast<long>(n - 1))});
      break;
    case Family::Kummer:
      if (n < 2) throw std::invalid_argument("catalog: generalized Kummer rows start at n = 2");
      row.name = "K^" + std::to_string(n) + "(T)";
      row.b2 = 7;
      row.lattice = LatticeExpr::sum({LatticeExpr::power(LatticeExpr::u(), 3),
                                      LatticeExpr::rank1(Int(-2) * static_cast<long>(n + 1))});
      break;
    case Family::OG6:
      if (n != 3) throw std::invalid_argument("catalog: the 6-dimensional sporadic row has n = 3");
      row.name = "OG6";
      row.b2 = 8;
      row.lattice = LatticeExpr::sum({LatticeExpr::power(LatticeExpr::u(), 3),
                                      LatticeExpr::power(LatticeExpr::rank1(-2), 2)});
      break;
    case Family::OG10:
      if (n != 5) throw std::invalid_argument("catalog: the 10-dimensional sporadic row has n = 5");
      row.name = "OG10";
      row.b2 = 24;
      row.lattice = LatticeExpr::sum({LatticeExpr::power(LatticeExpr::u(), 3),
                                      LatticeExpr::power(LatticeExpr::neg_e8(), 2),
                                      LatticeExpr::lambda()});
      break;
  }
  row.fujiki = fujiki_constant_formula(family, n);
  return row;
}

inline std::vector<CatalogRow> builtin_catalog() {
  return {make_row(Family::HilbK3, 2), make_row(Family::HilbK3, 5), make_row(Family::Kummer, 2),
          make_row(Family::Kummer, 3), make_row(Family::OG6, 3),    make_row(Family::OG10, 5)};
}

inline Int expected_abs_discriminant(Family family, std::size_t n) {
  switch (family) {
    case Family::HilbK3:
      return Int(2) * static_cast<long>(n - 1);
    case Family::Kummer:
      return Int(2) * static_cast<long>(n + 1);
    case Family::OG6:
      return 4;
    case Family::OG10:
      return 3;
  }
  throw std::logic_error("unreachable");
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RowReport {
  CatalogRow row;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline RowReport verify_row(const CatalogRow& row) {
  RowReport report{row, {}};
  auto add = [&](std::string name, bool pass, std::string detail) {
    report.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
  };

  const Lattice lat = realize(row.lattice);

  add("rank", lat.rank() == static_cast<std::size_t>(row.b2),
      "realized rank " + std::to_string(lat.rank()) + ", b2 claims " + std::to_string(row.b2));

  const Signature want{3, static_cast<std::size_t>(row.b2 - 3), 0};
  const Signature got = signature(lat);
  add("signature", got == want, "signature " + to_string(got));

  add("even", is_even(lat), is_even(lat) ? "even" : "odd diagonal entry");

  const Int want_disc = expected_abs_discriminant(row.family, row.n);
  const Int got_disc = abs(discriminant(lat));
  add("discriminant", got_disc == want_disc,
      "|disc| = " + to_string(got_disc) + ", expected " + to_string(want_disc));

  const Rat want_fujiki = fujiki_constant_formula(row.family, row.n);
  add("fujiki", row.fujiki == want_fujiki,
      "constant " + to_string(row.fujiki) + ", formula gives " + to_string(want_fujiki));

  // the sporadic 10-dimensional row is additionally pinned by the solver
  if (row.family == Family::OG10) {
    try {
      const BeauvilleSolution sol = solve(og10_intersections());
      const bool pass = sol.a == 1 && sol.c == row.fujiki && sol.assembled_gram == lat.gram();
      add("solver", pass,
          "recovered a = " + to_string(sol.a) + ", c = " + to_string(sol.c) +
              (sol.assembled_gram == lat.gram() ? ", Gram matches"
                                                : ", Gram differs from the catalog lattice"));
    } catch (const std::exception& e) {
      add("solver", false, e.what());
    }
  }
  return report;
}

}  // namespace hklat
