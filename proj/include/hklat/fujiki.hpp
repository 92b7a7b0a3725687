#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// The Fujiki relation on a compact hyperkahler manifold of complex
// dimension 2n evaluates top intersection numbers through the Beauville
// form B and a single constant c:
//
//   integral(a_1 ^ ... ^ a_2n) = c / (2n)! * sum over permutations s of
//                                product_i B(a_{s(2i-1)}, a_{s(2i)})
//
// Each unordered perfect matching of the 2n slots is hit by n! * 2^n
// permutations, so the sum collapses to (2n-1)!! matching terms. The
// evaluator below walks the matchings in lexicographic order, which keeps
// results reproducible term by term.

using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

namespace fujiki_detail {

template <typename Fn>
inline void matchings_rec(std::size_t slots, std::vector<bool>& used, Matching& acc, Fn&& fn) {
  std::size_t first = slots;
  for (std::size_t i = 0; i < slots; ++i)
    if (!used[i]) {
      first = i;
      break;
    }
  if (first == slots) {
    fn(static_cast<const Matching&>(acc));
    return;
  }
  used[first] = true;
  for (std::size_t j = first + 1; j < slots; ++j) {
    if (used[j]) continue;
    used[j] = true;
    acc.emplace_back(first, j);
    matchings_rec(slots, used, acc, fn);
    acc.pop_back();
    used[j] = false;
  }
  used[first] = false;
}

}  // namespace fujiki_detail

// Visits every perfect matching of {0..slots-1} in lexicographic order of
// the sorted pair list. slots must be even and at most 16 ((2n-1)!! growth).
template <typename Fn>
inline void for_each_perfect_matching(std::size_t slots, Fn&& fn) {
  if (slots % 2 != 0) throw std::invalid_argument("perfect matchings need an even slot count");
  if (slots > 16) throw std::invalid_argument("matching enumeration capped at 16 slots");
  std::vector<bool> used(slots, false);
  Matching acc;
  acc.reserve(slots / 2);
  fujiki_detail::matchings_rec(slots, used, acc, fn);
}

inline std::vector<Matching> perfect_matchings(std::size_t slots) {
  std::vector<Matching> out;
  for_each_perfect_matching(slots, [&](const Matching& m) { out.push_back(m); });
  return out;
}

// A Beauville form restricted to finitely many classes, plus the Fujiki
// constant. Class arguments of the evaluators are row indices of the Gram.
struct FujikiStructure {
  std::size_t n;
  Rat c;
  ExactMatrix beauville_gram;

  FujikiStructure(std::size_t half_dim, Rat fujiki_constant, ExactMatrix gram)
      : n(half_dim), c(std::move(fujiki_constant)), beauville_gram(std::move(gram)) {
    if (n < 1) throw std::invalid_argument("fujiki structure: n must be >= 1");
    if (c <= 0) throw std::invalid_argument("fujiki structure: constant must be positive");
    if (!beauville_gram.is_symmetric())
      throw std::invalid_argument("fujiki structure: Gram must be symmetric");
  }
};

inline Rat polarized_integral(const FujikiStructure& fs, const std::vector<std::size_t>& classes) {
  const std::size_t slots = 2 * fs.n;
  if (classes.size() != slots)
    throw std::invalid_argument("polarized_integral: expected exactly 2n classes");
  for (std::size_t idx : classes)
    if (idx >= fs.beauville_gram.rows())
      throw std::invalid_argument("polarized_integral: class index out of range");
  Rat sum = 0;
  for_each_perfect_matching(slots, [&](const Matching& m) {
    Rat term = 1;
    for (const auto& [a, b] : m) {
      term *= fs.beauville_gram(classes[a], classes[b]);
      if (term == 0) break;
    }
    sum += term;
  });
  return fs.c * sum / Rat(double_factorial(static_cast<long>(slots) - 1));
}

// Degree-2n monomial in cohomology classes, as class index -> exponent.
struct MonomialPattern {
  std::map<std::size_t, std::size_t> exponents;

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [cls, e] : exponents) d += e;
    return d;
  }
};

using ClassPair = std::pair<std::size_t, std::size_t>;

inline ClassPair make_class_pair(std::size_t a, std::size_t b) {
  return a <= b ? ClassPair{a, b} : ClassPair{b, a};
}

// coefficient * product of B-entries, the coefficient being the exact
// multiple of the Fujiki constant contributed by the compatible matchings.
struct SymbolicMonomial {
  Rat coefficient;
  std::map<ClassPair, std::size_t> b_powers;

  bool is_zero() const { return coefficient == 0; }
};

// Restricts the matching sum of a pattern to matchings whose pairs all lie
// in `support` (the B-entries declared possibly nonzero). All surviving
// matchings must produce one and the same monomial; if the support leaves
// several distinct monomials alive the reduction is ambiguous and refused.
// No compatible matching at all gives the zero monomial.
inline SymbolicMonomial pattern_coefficient(std::size_t n, const MonomialPattern& pattern,
                                            const std::set<ClassPair>& support) {
  const std::size_t slots = 2 * n;
  if (pattern.degree() != slots)
    throw std::invalid_argument("pattern_coefficient: pattern degree must be 2n");
  std::vector<std::size_t> slot_class;
  slot_class.reserve(slots);
  for (const auto& [cls, e] : pattern.exponents)
    for (std::size_t k = 0; k < e; ++k) slot_class.push_back(cls);

  std::map<std::map<ClassPair, std::size_t>, Int> counts;
  for_each_perfect_matching(slots, [&](const Matching& m) {
    std::map<ClassPair, std::size_t> monomial;
    for (const auto& [a, b] : m) {
      const ClassPair p = make_class_pair(slot_class[a], slot_class[b]);
      if (!support.contains(p)) return;
      monomial[p] += 1;
    }
    counts[monomial] += 1;
  });

  if (counts.empty()) return SymbolicMonomial{0, {}};
  if (counts.size() > 1)
    throw std::invalid_argument(
        "pattern_coefficient: support admits several distinct monomials");
  const auto& [monomial, count] = *counts.begin();
  SymbolicMonomial result;
  result.coefficient = Rat(count) / Rat(double_factorial(static_cast<long>(slots) - 1));
  result.b_powers = monomial;
  return result;
}

enum class Family { HilbK3, Kummer, OG6, OG10 };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::HilbK3:
      return "hilb";
    case Family::Kummer:
      return "kummer";
    case Family::OG6:
      return "og6";
    case Family::OG10:
      return "og10";
  }
  throw std::logic_error("unreachable");
}

// Fujiki constants of the known deformation classes in complex dimension
// 2n: (2n)!/(n! 2^n) for Hilbert schemes of points on a K3 surface, the
// same times (n+1) for generalized Kummer varieties, and the two sporadic
// values 60 (dimension 6) and 945 (dimension 10).
inline Rat fujiki_constant_formula(Family family, std::size_t n) {
  switch (family) {
    case Family::HilbK3:
    case Family::Kummer: {
      if (n < 1) throw std::invalid_argument("fujiki constant: n must be >= 1");
      Rat c = Rat(factorial(2 * n)) / Rat(factorial(n) * rat_pow(2, n).get_num());
      if (family == Family::Kummer) c *= Rat(static_cast<unsigned long>(n + 1));
      return c;
    }
    case Family::OG6:
      if (n != 3) throw std::invalid_argument("fujiki constant: the 6-dimensional sporadic family has n = 3");
      return 60;
    case Family::OG10:
      if (n != 5) throw std::invalid_argument("fujiki constant: the 10-dimensional sporadic family has n = 5");
      return 945;
  }
  throw std::logic_error("unreachable");
}

}  // namespace hklat
