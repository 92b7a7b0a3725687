#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "hklat/ledger.hpp"
#include "hklat/monodromy.hpp"

using hklat::ArrowFlags;
using hklat::B2Options;
using hklat::BettiProfile;
using hklat::DimBound;
using hklat::LedgerContradiction;
using hklat::RankLedger;

namespace {

bool has_line_with(const std::vector<std::string>& trace, const std::string& needle) {
  return std::any_of(trace.begin(), trace.end(), [&](const std::string& line) {
    return line.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("dimension bounds") {
  CHECK(DimBound::exactly(3).pinned());
  CHECK_FALSE(DimBound{0, 3}.pinned());
  CHECK_FALSE(DimBound{}.pinned());
  CHECK(hklat::to_string(DimBound{}) == "[0,inf]");
  CHECK(hklat::to_string(DimBound::exactly(2)) == "[2,2]");
  CHECK(hklat::to_string(DimBound{1, 4}) == "[1,4]");
}

TEST_CASE("ledger construction guards") {
  RankLedger ledger;
  ledger.add_term("A", 1).add_term("B").add_term("C", 0);
  CHECK_THROWS_AS(ledger.mark_exact("A"), std::invalid_argument);
  CHECK_THROWS_AS(ledger.mark_exact("C"), std::invalid_argument);
  CHECK_THROWS_AS(ledger.mark_exact("nope"), std::invalid_argument);
  CHECK_NOTHROW(ledger.mark_exact("B"));
  CHECK_THROWS_AS(ledger.annotate_arrow(2, ArrowFlags{}), std::invalid_argument);
  CHECK(ledger.find_term("B") != nullptr);
  CHECK(ledger.find_term("nope") == nullptr);
}

TEST_CASE("rank propagation") {
  SECTION("restricting away one divisor class pins the open-locus dimension") {
    RankLedger ledger;
    ledger.add_term("boundary", 1)
        .add_term("H2(ambient)", 23)
        .add_term("H2(open)")
        .add_term("tail", 0);
    ledger.mark_exact("H2(ambient)").mark_exact("H2(open)");
    ledger.annotate_arrow(0, ArrowFlags{.injective = true});

    const auto result = hklat::propagate(ledger);
    CHECK(result.ledger.find_term("H2(open)")->dim == DimBound::exactly(22));
    CHECK(has_line_with(result.trace, "dim(H2(open)) now [22,22]"));
    CHECK(has_line_with(result.trace, "exactness at H2(ambient)"));

    SECTION("a second pass has nothing left to do") {
      const auto again = hklat::propagate(result.ledger);
      CHECK(again.trace.empty());
      CHECK(again.ledger.find_term("H2(open)")->dim == DimBound::exactly(22));
    }
  }

  SECTION("exactness in the middle gives only an upper bound") {
    RankLedger ledger;
    ledger.add_term("A", 2).add_term("B").add_term("C", 22);
    ledger.mark_exact("B");
    const auto result = hklat::propagate(ledger);
    CHECK(result.ledger.find_term("B")->dim == DimBound{0, 24});
  }

  SECTION("a vanishing head bounds the next term by the following one") {
    RankLedger ledger;
    ledger.add_term("zero", 0).add_term("A").add_term("B", 5);
    ledger.mark_exact("A");
    const auto result = hklat::propagate(ledger);
    CHECK(result.ledger.find_term("A")->dim == DimBound{0, 5});
  }

  SECTION("a short exact chain with known ends pins the middle") {
    RankLedger ledger;
    ledger.add_term("head", 0)
        .add_term("A", 2)
        .add_term("B")
        .add_term("C", 22)
        .add_term("tail", 0);
    ledger.mark_exact("A").mark_exact("B").mark_exact("C");
    const auto result = hklat::propagate(ledger);
    CHECK(result.ledger.find_term("B")->dim == DimBound::exactly(24));
  }

  SECTION("an impossible middle dimension contradicts") {
    RankLedger ledger;
    ledger.add_term("head", 0)
        .add_term("A", 2)
        .add_term("B", 3)
        .add_term("C", 22)
        .add_term("tail", 0);
    ledger.mark_exact("A").mark_exact("B").mark_exact("C");
    try {
      hklat::propagate(ledger);
      FAIL("expected a contradiction");
    } catch (const LedgerContradiction& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("empty interval"));
      CHECK_FALSE(e.trace.empty());
    }
  }

  SECTION("a zero arrow pins its rank") {
    RankLedger ledger;
    ledger.add_term("A", 5).add_term("B");
    ledger.annotate_arrow(0, ArrowFlags{.zero = true});
    const auto result = hklat::propagate(ledger);
    CHECK(result.ledger.arrows[0].rank == DimBound::exactly(0));
  }

  SECTION("an isomorphism transports a pinned dimension") {
    RankLedger ledger;
    ledger.add_term("A", 7).add_term("B");
    ledger.annotate_arrow(0, ArrowFlags{.injective = true, .surjective = true});
    const auto result = hklat::propagate(ledger);
    CHECK(result.ledger.find_term("B")->dim == DimBound::exactly(7));
  }
}

TEST_CASE("relative term and product bounds") {
  CHECK(hklat::thom_excision(2) == 2);
  CHECK(hklat::thom_excision(0) == 0);
  CHECK(hklat::thom_excision(5) == 5);
  CHECK_THROWS_AS(hklat::thom_excision(-1), std::invalid_argument);
  CHECK_THROWS_AS(hklat::thom_excision(2, 3), std::invalid_argument);

  CHECK(hklat::torus_profile(0).b == std::vector<long>{1});
  CHECK(hklat::torus_profile(1).b == std::vector<long>{1, 2, 1});
  CHECK(hklat::torus_profile(2).b == std::vector<long>{1, 4, 6, 4, 1});
  CHECK(hklat::torus_profile(1).betti(7) == 0);

  const BettiProfile fiber{{1, 1, 1}};
  CHECK(hklat::leray_product_bound(fiber, hklat::torus_profile(1), 1) == 3);
  CHECK(hklat::leray_product_bound(fiber, hklat::torus_profile(1), 2) == 4);

  // the product bound over a torus base matches the monodromy computation
  for (unsigned long p = 2; p <= 4; ++p) {
    const auto base = hklat::torus_profile(p - 1);
    for (std::size_t q : {std::size_t{1}, std::size_t{2}}) {
      CHECK(hklat::leray_product_bound(fiber, base, q) ==
            static_cast<long>(hklat::closed_form_invariant_dimension(p, q)));
    }
  }
}

TEST_CASE("second Betti number derivation") {
  SECTION("the default inputs pin the value") {
    const auto derivation = hklat::derive_b2_og10();
    REQUIRE(derivation.b2.has_value());
    CHECK(*derivation.b2 == 24);
    CHECK(derivation.final_bound == DimBound::exactly(24));
    CHECK(has_line_with(derivation.trace, "ambient moduli space has b2 = 23"));
    CHECK(has_line_with(derivation.trace, "open locus has b2 = 22"));
    CHECK(has_line_with(derivation.trace, "2 irreducible components"));
    CHECK(has_line_with(derivation.trace, "relative degree-2 term has dimension 2"));
    CHECK(has_line_with(derivation.trace, "upper bound <= 24"));
    CHECK(has_line_with(derivation.trace, "lower bound >= 24"));
    CHECK(has_line_with(derivation.trace, "[conclusion] b2(M) = 24"));
  }

  SECTION("a weaker lower bound leaves a gap instead of a value") {
    const auto derivation = hklat::derive_b2_og10(B2Options{.lower_bound = 23});
    CHECK_FALSE(derivation.b2.has_value());
    CHECK(derivation.final_bound == DimBound{23, 24});
    CHECK(has_line_with(derivation.trace, "bounds leave a gap: 23 <= b2(M) <= 24"));
  }

  SECTION("an impossible lower bound contradicts") {
    try {
      hklat::derive_b2_og10(B2Options{.lower_bound = 25});
      FAIL("expected a contradiction");
    } catch (const LedgerContradiction& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("lower bound exceeds"));
      CHECK(has_line_with(e.trace, "premises are contradictory"));
    }
  }

  SECTION("a nonsensical ambient space contradicts during propagation") {
    try {
      hklat::derive_b2_og10(B2Options{.ambient_b2 = 0});
      FAIL("expected a contradiction");
    } catch (const LedgerContradiction& e) {
      CHECK(has_line_with(e.trace, "premises are contradictory"));
    }
  }

  SECTION("extra divisor components widen the upper bound") {
    const auto derivation = hklat::derive_b2_og10(B2Options{.components = 3});
    CHECK_FALSE(derivation.b2.has_value());
    CHECK(derivation.final_bound == DimBound{24, 25});
  }
}
