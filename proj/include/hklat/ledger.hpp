#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hklat/numeric.hpp"

namespace hklat {

// Rank bookkeeping for a finite chain of vector spaces
//
//   T0 --f0--> T1 --f1--> ... --f(k-1)--> Tk
//
// with optional exactness at interior terms and injective / surjective /
// zero annotations on arrows. Propagation shrinks integer intervals for
// the dimensions of the terms and the ranks of the arrows:
//
//   rank(f) <= dim(source), rank(f) <= dim(target)
//   f injective: rank(f) = dim(source)
//   f surjective: rank(f) = dim(target)
//   f zero: rank(f) = 0
//   exactness at T (f in, g out): dim(T) = rank(f) + rank(g)
//
// until a fixpoint. Every shrink is traced; an empty interval aborts with
// the trace attached. Unknown upper bounds are a real "unbounded" state,
// never a sentinel value.

struct DimBound {
  long lo = 0;
  std::optional<long> hi;  // nullopt: unbounded above

  static DimBound exactly(long v) { return DimBound{v, v}; }
  bool pinned() const { return hi && *hi == lo; }
  bool operator==(const DimBound&) const = default;
};

inline std::string to_string(const DimBound& b) {
  return "[" + std::to_string(b.lo) + "," + (b.hi ? std::to_string(*b.hi) : std::string("inf")) +
         "]";
}

struct LedgerTerm {
  std::string name;
  DimBound dim;
};

struct ArrowFlags {
  bool injective = false;
  bool surjective = false;
  bool zero = false;
};

struct LedgerArrow {
  ArrowFlags flags;
  DimBound rank;
};

struct RankLedger {
  std::vector<LedgerTerm> terms;
  std::vector<LedgerArrow> arrows;  // arrows[i]: terms[i] -> terms[i+1]
  std::vector<bool> exact;          // meaningful at interior terms only

  RankLedger& add_term(std::string name, std::optional<long> dim = std::nullopt) {
    DimBound b;
    if (dim) b = DimBound::exactly(*dim);
    return add_term_bounded(std::move(name), b);
  }

  RankLedger& add_term_bounded(std::string name, DimBound bound) {
    terms.push_back(LedgerTerm{std::move(name), bound});
    exact.push_back(false);
    if (terms.size() >= 2) arrows.push_back(LedgerArrow{});
    return *this;
  }

  RankLedger& mark_exact(const std::string& name) {
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (terms[i].name == name) {
        if (i == 0 || i + 1 == terms.size())
          throw std::invalid_argument("exactness applies to interior terms only");
        exact[i] = true;
        return *this;
      }
    throw std::invalid_argument("no term named '" + name + "'");
  }

  RankLedger& annotate_arrow(std::size_t index, ArrowFlags flags) {
    if (index >= arrows.size()) throw std::invalid_argument("arrow index out of range");
    arrows[index].flags = flags;
    return *this;
  }

  const LedgerTerm* find_term(const std::string& name) const {
    for (const auto& t : terms)
      if (t.name == name) return &t;
    return nullptr;
  }
};

struct LedgerContradiction : std::runtime_error {
  explicit LedgerContradiction(const std::string& message, std::vector<std::string> trace_so_far)
      : std::runtime_error(message), trace(std::move(trace_so_far)) {}

  std::vector<std::string> trace;
};

struct PropagationResult {
  RankLedger ledger;
  std::vector<std::string> trace;
};

inline PropagationResult propagate(RankLedger ledger) {
  std::vector<std::string> trace;

  auto arrow_label = [&](std::size_t i) {
    return "rank(" + ledger.terms[i].name + "->" + ledger.terms[i + 1].name + ")";
  };
  auto term_label = [&](std::size_t i) { return "dim(" + ledger.terms[i].name + ")"; };

  auto check = [&](const DimBound& b, const std::string& obj) {
    if (b.hi && b.lo > *b.hi)
      throw LedgerContradiction(
          "contradiction: " + obj + " has empty interval " + to_string(b), trace);
  };
  auto tighten_lo = [&](DimBound& b, long v, const std::string& rule, const std::string& obj) {
    if (v <= b.lo) return false;
    b.lo = v;
    trace.push_back("[rule: " + rule + "] " + obj + " now " + to_string(b));
    check(b, obj);
    return true;
  };
  auto tighten_hi = [&](DimBound& b, long v, const std::string& rule, const std::string& obj) {
    if (v < 0) v = 0;
    if (b.hi && *b.hi <= v) return false;
    b.hi = v;
    trace.push_back("[rule: " + rule + "] " + obj + " now " + to_string(b));
    check(b, obj);
    return true;
  };

  bool changed = true;
  std::size_t guard = 0;
  while (changed) {
    if (++guard > 100000) throw std::logic_error("propagate: fixpoint not reached");
    changed = false;

    for (std::size_t i = 0; i < ledger.arrows.size(); ++i) {
      LedgerArrow& f = ledger.arrows[i];
      DimBound& src = ledger.terms[i].dim;
      DimBound& dst = ledger.terms[i + 1].dim;
      if (src.hi) changed |= tighten_hi(f.rank, *src.hi, "rank bound", arrow_label(i));
      if (dst.hi) changed |= tighten_hi(f.rank, *dst.hi, "rank bound", arrow_label(i));
      changed |= tighten_lo(src, f.rank.lo, "rank bound", term_label(i));
      changed |= tighten_lo(dst, f.rank.lo, "rank bound", term_label(i + 1));
      if (f.flags.zero) changed |= tighten_hi(f.rank, 0, "zero arrow", arrow_label(i));
      if (f.flags.injective) {
        changed |= tighten_lo(f.rank, src.lo, "injective", arrow_label(i));
        if (src.hi) changed |= tighten_hi(f.rank, *src.hi, "injective", arrow_label(i));
        changed |= tighten_lo(src, f.rank.lo, "injective", term_label(i));
        if (f.rank.hi) changed |= tighten_hi(src, *f.rank.hi, "injective", term_label(i));
      }
      if (f.flags.surjective) {
        changed |= tighten_lo(f.rank, dst.lo, "surjective", arrow_label(i));
        if (dst.hi) changed |= tighten_hi(f.rank, *dst.hi, "surjective", arrow_label(i));
        changed |= tighten_lo(dst, f.rank.lo, "surjective", term_label(i + 1));
        if (f.rank.hi) changed |= tighten_hi(dst, *f.rank.hi, "surjective", term_label(i + 1));
      }
    }

    for (std::size_t k = 1; k + 1 < ledger.terms.size(); ++k) {
      if (!ledger.exact[k]) continue;
      const std::string rule = "exactness at " + ledger.terms[k].name;
      LedgerArrow& f = ledger.arrows[k - 1];
      LedgerArrow& g = ledger.arrows[k];
      DimBound& b = ledger.terms[k].dim;
      // dim = rank(in) + rank(out), propagated in all three directions
      changed |= tighten_lo(b, f.rank.lo + g.rank.lo, rule, term_label(k));
      if (f.rank.hi && g.rank.hi)
        changed |= tighten_hi(b, *f.rank.hi + *g.rank.hi, rule, term_label(k));
      if (g.rank.hi) changed |= tighten_lo(f.rank, b.lo - *g.rank.hi, rule, arrow_label(k - 1));
      if (b.hi) changed |= tighten_hi(f.rank, *b.hi - g.rank.lo, rule, arrow_label(k - 1));
      if (f.rank.hi) changed |= tighten_lo(g.rank, b.lo - *f.rank.hi, rule, arrow_label(k));
      if (b.hi) changed |= tighten_hi(g.rank, *b.hi - f.rank.lo, rule, arrow_label(k));
    }
  }
  return PropagationResult{std::move(ledger), std::move(trace)};
}

// Thom isomorphism plus excision for a pair built from a closed divisor
// with the given number of components: the degree-2 relative cohomology is
// one copy of the ground field per component.
inline long thom_excision(long divisor_components, long shift = 2) {
  if (divisor_components < 0) throw std::invalid_argument("component count must be >= 0");
  if (shift != 2) throw std::invalid_argument("thom_excision models the degree-2 shift only");
  return divisor_components;
}

struct BettiProfile {
  std::vector<long> b;

  long betti(std::size_t i) const { return i < b.size() ? b[i] : 0; }
};

// Betti numbers of a real 2d-torus.
inline BettiProfile torus_profile(std::size_t complex_dim) {
  BettiProfile p;
  for (std::size_t j = 0; j <= 2 * complex_dim; ++j)
    p.b.push_back(binomial(2 * complex_dim, j).get_si());
  return p;
}

// Upper bound for the q-th Betti number of the total space of a fibration
// from the product of the pages of the fiber and the base.
inline long leray_product_bound(const BettiProfile& fiber, const BettiProfile& base,
                                std::size_t q) {
  long bound = 0;
  for (std::size_t i = 0; i <= q; ++i) bound += fiber.betti(i) * base.betti(q - i);
  return bound;
}

// Premises of the second Betti number computation for the big resolution.
// Perturbing any of them shows which conclusions survive: a weaker lower
// bound leaves a gap (no pinned value), an impossible one contradicts.
struct B2Options {
  long ambient_b2 = 23;    // moduli space the open locus sits in
  long components = 2;     // irreducible components of the exceptional divisor
  long lower_bound = 24;   // independent classes exhibited on the resolution
};

struct B2Derivation {
  std::optional<long> b2;
  DimBound final_bound;
  std::vector<std::string> trace;
};

// Two ledger stages. Stage one restricts from the ambient moduli space to
// the open locus: the boundary divisor class dies and nothing else, so the
// open locus loses exactly one class. Stage two compares the resolution
// with its open part through the relative term supplied by thom_excision,
// yielding the upper bound; the exhibited classes supply the lower bound.
inline B2Derivation derive_b2_og10(const B2Options& options = {}) {
  std::vector<std::string> trace;
  auto splice = [&](const std::vector<std::string>& sub) {
    for (const auto& line : sub) trace.push_back("    " + line);
  };
  auto rethrow = [&](LedgerContradiction& e) -> void {
    splice(e.trace);
    trace.push_back("[conclusion] premises are contradictory: " + std::string(e.what()));
    throw LedgerContradiction(e.what(), trace);
  };

  trace.push_back("[imported] ambient moduli space has b2 = " +
                  std::to_string(options.ambient_b2));
  trace.push_back("[imported] boundary divisor contributes one independent degree-2 class");

  RankLedger open_stage;
  open_stage.add_term("boundary-class", 1)
      .add_term("H2(ambient)", options.ambient_b2)
      .add_term("H2(open)")
      .add_term("tail", 0);
  open_stage.mark_exact("H2(ambient)").mark_exact("H2(open)");
  open_stage.annotate_arrow(0, ArrowFlags{.injective = true});

  DimBound open_b2;
  try {
    PropagationResult r = propagate(open_stage);
    splice(r.trace);
    open_b2 = r.ledger.find_term("H2(open)")->dim;
  } catch (LedgerContradiction& e) {
    rethrow(e);
  }
  if (!open_b2.pinned())
    return B2Derivation{std::nullopt, open_b2, std::move(trace)};
  trace.push_back("[derived] open locus has b2 = " + std::to_string(open_b2.lo));

  trace.push_back("[imported] exceptional divisor has " + std::to_string(options.components) +
                  " irreducible components");
  long relative = thom_excision(options.components);
  trace.push_back("[rule: thom-excision] relative degree-2 term has dimension " +
                  std::to_string(relative));

  RankLedger main_stage;
  main_stage.add_term("H2(M,M-E)", relative)
      .add_term("H2(M)")
      .add_term("H2(M-E)", open_b2.lo);
  main_stage.mark_exact("H2(M)");

  DimBound total;
  try {
    PropagationResult r = propagate(main_stage);
    splice(r.trace);
    total = r.ledger.find_term("H2(M)")->dim;
  } catch (LedgerContradiction& e) {
    rethrow(e);
  }
  if (!total.hi) return B2Derivation{std::nullopt, total, std::move(trace)};
  trace.push_back("[derived] upper bound <= " + std::to_string(*total.hi) + " for b2(M)");

  trace.push_back("[imported] lower bound >= " + std::to_string(options.lower_bound) +
                  " from independent classes on the resolution");

  DimBound final_bound{std::max(total.lo, options.lower_bound), total.hi};
  if (final_bound.lo > *final_bound.hi) {
    trace.push_back("[conclusion] premises are contradictory: lower bound " +
                    std::to_string(final_bound.lo) + " exceeds upper bound " +
                    std::to_string(*final_bound.hi));
    throw LedgerContradiction("lower bound exceeds upper bound", trace);
  }
  if (final_bound.pinned()) {
    trace.push_back("[conclusion] b2(M) = " + std::to_string(final_bound.lo));
    return B2Derivation{final_bound.lo, final_bound, std::move(trace)};
  }
  trace.push_back("[conclusion] bounds leave a gap: " + std::to_string(final_bound.lo) +
                  " <= b2(M) <= " + std::to_string(*final_bound.hi));
  return B2Derivation{std::nullopt, final_bound, std::move(trace)};
}

}  // namespace hklat
