#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hklat/fujiki.hpp"
#include "hklat/lattice.hpp"
#include "hklat/lattice_expr.hpp"
#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// Recovers the Beauville form of a hyperkahler manifold whose second
// cohomology splits as an isometrically embedded "Donaldson" part (image of
// the second cohomology of an underlying surface, scaled by an unknown
// a > 0) plus finitely many exceptional classes, from a finite list of
// exact intersection numbers.
//
// The numbers are expressed in powers of the unit t, the declared square of
// the reference class r: a datum (pattern, value, k) states that the
// integral of the pattern equals value * t^k. With B(r, r) = a * t the
// matching sum gives, writing F0 for the coefficient of the pure-reference
// datum r^(2n):
//
//   c * a^n = F0
//   B(r, e_i) = 0                       (the mixed r^(2n-1) e_i data vanish)
//   B(e_i, e_j) = (2n-1) * k_ij * a / F0
//
// and a is then pinned by integrality: it is the unique positive rational
// making the assembled Gram integral of content 1.

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using NamedPattern = std::map<std::string, std::size_t>;

struct IntersectionDatum {
  NamedPattern pattern;
  Rat value;
  long unit_power = 0;
};

struct SolverInput {
  std::size_t n = 0;
  std::string reference;
  std::vector<std::string> exceptional;
  LatticeExpr donaldson_part;
  std::vector<IntersectionDatum> data;
};

struct BeauvilleSolution {
  std::size_t n = 0;
  std::string reference;
  std::vector<std::string> exceptional;
  Rat a;
  Rat c;
  ExactMatrix exceptional_gram;
  ExactMatrix assembled_gram;
  LatticeExpr assembled;
  bool donaldson_unimodular = false;
};

namespace beauville_detail {

inline std::string pattern_to_string(const NamedPattern& p) {
  std::string out;
  for (const auto& [name, e] : p) {
    if (!out.empty()) out += " ";
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "(empty)" : out;
}

inline std::size_t pattern_degree(const NamedPattern& p) {
  std::size_t d = 0;
  for (const auto& [name, e] : p) d += e;
  return d;
}

}  // namespace beauville_detail

// Coefficient of t^k predicted for the pattern by a solved structure, where
// k is half the number of reference slots. Patterns with an odd number of
// reference slots are orthogonal to everything they are matched with and
// predict zero.
inline Rat predict_integral(const BeauvilleSolution& sol, const NamedPattern& pattern) {
  const std::size_t slots = 2 * sol.n;
  if (beauville_detail::pattern_degree(pattern) != slots)
    throw SolveError("predict_integral: pattern degree must be 2n in '" +
                     beauville_detail::pattern_to_string(pattern) + "'");
  std::map<std::string, std::size_t> index;
  index[sol.reference] = 0;
  for (std::size_t i = 0; i < sol.exceptional.size(); ++i) index[sol.exceptional[i]] = i + 1;

  const std::size_t k = sol.exceptional.size();
  ExactMatrix gram(k + 1, k + 1);
  gram(0, 0) = sol.a;  // one unit t per reference pair
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram(i + 1, j + 1) = sol.exceptional_gram(i, j);

  std::vector<std::size_t> classes;
  classes.reserve(slots);
  for (const auto& [name, e] : pattern) {
    const auto it = index.find(name);
    if (it == index.end())
      throw SolveError("predict_integral: unknown class name '" + name + "'");
    for (std::size_t s = 0; s < e; ++s) classes.push_back(it->second);
  }
  return polarized_integral(FujikiStructure(sol.n, sol.c, gram), classes);
}

inline BeauvilleSolution solve(const SolverInput& input) {
  using beauville_detail::pattern_degree;
  using beauville_detail::pattern_to_string;

  if (input.n < 1) throw SolveError("solve: n must be >= 1");
  const std::size_t slots = 2 * input.n;

  std::set<std::string> names{input.reference};
  for (const auto& e : input.exceptional)
    if (!names.insert(e).second) throw SolveError("solve: duplicate class name '" + e + "'");

  // normalized data table; duplicate patterns must agree exactly
  std::map<NamedPattern, IntersectionDatum> table;
  for (const auto& datum : input.data) {
    if (pattern_degree(datum.pattern) != slots)
      throw SolveError("solve: pattern degree must be 2n in '" +
                       pattern_to_string(datum.pattern) + "'");
    for (const auto& [name, e] : datum.pattern) {
      if (!names.contains(name)) throw SolveError("solve: unknown class name '" + name + "'");
      if (e == 0) throw SolveError("solve: zero exponent in '" + pattern_to_string(datum.pattern) + "'");
    }
    const auto [it, inserted] = table.emplace(datum.pattern, datum);
    if (!inserted && (it->second.value != datum.value || it->second.unit_power != datum.unit_power))
      throw SolveError("solve: conflicting duplicate data for '" +
                       pattern_to_string(datum.pattern) + "'");
  }

  // unit bookkeeping: k = (#reference slots)/2; odd reference degree forces 0
  for (const auto& [pattern, datum] : table) {
    const auto it = pattern.find(input.reference);
    const std::size_t rcount = it == pattern.end() ? 0 : it->second;
    if (rcount % 2 == 0) {
      if (datum.unit_power != static_cast<long>(rcount / 2))
        throw SolveError("solve: unit power of '" + pattern_to_string(pattern) +
                         "' must be " + std::to_string(rcount / 2));
    } else if (datum.value != 0) {
      throw SolveError("solve: '" + pattern_to_string(pattern) +
                       "' has an odd reference degree and must vanish");
    }
  }

  auto lookup = [&](const NamedPattern& p) -> const IntersectionDatum* {
    const auto it = table.find(p);
    return it == table.end() ? nullptr : &it->second;
  };

  // (i) pure-reference datum: c * a^n = F0
  NamedPattern pure{{input.reference, slots}};
  const IntersectionDatum* f0_datum = lookup(pure);
  if (!f0_datum) throw SolveError("solve: missing pure-reference datum '" +
                                  pattern_to_string(pure) + "'");
  const Rat f0 = f0_datum->value;
  if (f0 <= 0) throw SolveError("solve: the pure-reference datum must be positive");

  // (ii) orthogonality data, when present, must vanish
  for (const auto& e : input.exceptional) {
    const IntersectionDatum* d = lookup(NamedPattern{{input.reference, slots - 1}, {e, 1}});
    if (d && d->value != 0)
      throw SolveError("solve: reference and exceptional classes are not orthogonal in '" +
                       pattern_to_string(d->pattern) + "'");
  }

  // (iii) mixed data give the exceptional block up to the scale a
  const std::size_t m = input.exceptional.size();
  ExactMatrix pre_gram(m, m);  // B(e_i, e_j) / a
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      NamedPattern p{{input.reference, slots - 2}};
      if (slots == 2) p.erase(input.reference);
      if (i == j)
        p[input.exceptional[i]] = 2;
      else {
        p[input.exceptional[i]] = 1;
        p[input.exceptional[j]] = 1;
      }
      const IntersectionDatum* d = lookup(p);
      if (!d)
        throw SolveError("solve: missing mixed datum '" + pattern_to_string(p) + "'");
      // reduce the pattern with only B(r,r) and B(e_i,e_j) declared nonzero
      MonomialPattern idx_pattern;
      if (slots > 2) idx_pattern.exponents[0] = slots - 2;
      idx_pattern.exponents[1] = i == j ? 2 : 1;
      if (i != j) idx_pattern.exponents[2] = 1;
      std::set<ClassPair> support{make_class_pair(0, 0),
                                  make_class_pair(1, i == j ? 1 : 2)};
      const SymbolicMonomial mono = pattern_coefficient(input.n, idx_pattern, support);
      if (mono.is_zero())
        throw SolveError("solve: no compatible matching for '" + pattern_to_string(p) + "'");
      // value = kappa * c * B(e_i,e_j) * a^(n-1) with kappa = mono.coefficient,
      // so B(e_i,e_j)/a = value / (kappa * F0)
      pre_gram(i, j) = d->value / (mono.coefficient * f0);
      pre_gram(j, i) = pre_gram(i, j);
    }

  // (iv) integrality fixes the scale: a = L/g is the unique positive
  // rational making the assembled Gram integral with content 1
  const Lattice donaldson = realize(input.donaldson_part);
  const ExactMatrix g0 = block_diag({donaldson.gram(), pre_gram});
  const Int l = common_denominator(g0);
  const Int g = content(Rat(l) * g0);
  if (g == 0) throw SolveError("solve: the assembled form vanishes, no scale to fix");
  Rat a(l, g);
  a.canonicalize();

  BeauvilleSolution sol;
  sol.n = input.n;
  sol.reference = input.reference;
  sol.exceptional = input.exceptional;
  sol.a = a;
  sol.c = f0 / rat_pow(a, input.n);  // (v)
  sol.exceptional_gram = a * pre_gram;
  sol.assembled_gram = a * g0;
  sol.donaldson_unimodular = abs(determinant(donaldson.gram())) == 1;

  // expression form of the assembled lattice
  std::vector<LatticeExpr> terms;
  if (a == 1) {
    if (input.donaldson_part.kind == LatticeExpr::Kind::Sum)
      terms = input.donaldson_part.children;
    else
      terms.push_back(input.donaldson_part);
  } else {
    terms.push_back(LatticeExpr::gram(a * donaldson.gram()));
  }
  if (m > 0) {
    if (sol.exceptional_gram == lambda_gram())
      terms.push_back(LatticeExpr::lambda());
    else if (m == 1)
      terms.push_back(LatticeExpr::rank1(sol.exceptional_gram(0, 0).get_num()));
    else
      terms.push_back(LatticeExpr::gram(sol.exceptional_gram));
  }
  sol.assembled = LatticeExpr::sum(std::move(terms));

  if (content(sol.assembled_gram) != 1)
    throw std::logic_error("solve: assembled Gram content is not 1");

  // every datum must round-trip exactly; tolerance is zero
  for (const auto& [pattern, datum] : table) {
    const Rat predicted = predict_integral(sol, pattern);
    if (predicted != datum.value)
      throw SolveError("solve: inconsistent datum '" + pattern_to_string(pattern) +
                       "': stated " + to_string(datum.value) + ", matching sum gives " +
                       to_string(predicted));
  }
  return sol;
}

// The intersection numbers of the 10-dimensional sporadic manifold: the
// tenth power of the reference class and the degree-8 mixed products with
// the two exceptional divisor classes Sigma and B.
inline SolverInput og10_intersections() {
  SolverInput in;
  in.n = 5;
  in.reference = "mu";
  in.exceptional = {"Sigma", "B"};
  in.donaldson_part = parse_lattice_expr("U^3 + -E8^2");
  in.data = {
      {{{"mu", 10}}, Rat(945), 5},
      {{{"mu", 9}, {"Sigma", 1}}, Rat(0), 4},
      {{{"mu", 9}, {"B", 1}}, Rat(0), 4},
      {{{"mu", 8}, {"Sigma", 2}}, Rat(-630), 4},
      {{{"mu", 8}, {"Sigma", 1}, {"B", 1}}, Rat(315), 4},
      {{{"mu", 8}, {"B", 2}}, Rat(-210), 4},
  };
  return in;
}

// Cross-check of the dimension-4 Hilbert scheme constant against the
// product manifold X^[2] x X^[2]: expanding the eighth power of
// p1* + p2* of a class of B-square s^2 leaves only the middle binomial
// term, binom(8,4) * (c2 * s^2)^2. With c2 = 3 the s^4 coefficient is 630.
inline Rat hilb2_cross_check(const Rat& c2) { return Rat(binomial(8, 4)) * c2 * c2; }

inline Rat hilb2_cross_check() {
  return hilb2_cross_check(fujiki_constant_formula(Family::HilbK3, 2));
}

// Saturation certificate for a square evaluation matrix pairing candidate
// basis classes against integral cycles: the span is primitive exactly when
// the determinant is a unit.
struct SaturationCertificate {
  bool saturated = false;
  Rat det;
  ExactMatrix corner;  // bottom-right 2x2 block (the non-obvious part)
};

inline SaturationCertificate saturation_certificate(const ExactMatrix& evaluation) {
  if (!evaluation.is_square())
    throw std::invalid_argument("saturation_certificate: matrix must be square");
  SaturationCertificate cert;
  cert.det = determinant(evaluation);
  cert.saturated = cert.det == 1 || cert.det == -1;
  const std::size_t n = evaluation.rows();
  if (n >= 2) {
    cert.corner = ExactMatrix(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) cert.corner(i, j) = evaluation(n - 2 + i, n - 2 + j);
  }
  return cert;
}

// Pairing of the 24 basis classes of the assembled second cohomology
// against integral cycles: the embedded unimodular part contributes an
// identity block and the two exceptional classes pair with the fiber
// components of the Lagrangian fibration through [[-2, 1], [3, -2]].
inline ExactMatrix og10_evaluation_matrix() {
  return block_diag({ExactMatrix::identity(22), ExactMatrix{{-2, 1}, {3, -2}}});
}

}  // namespace hklat
