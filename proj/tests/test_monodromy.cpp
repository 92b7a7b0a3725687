#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hklat/matrix.hpp"
#include "hklat/monodromy.hpp"

using hklat::ExactMatrix;

TEST_CASE("transvection matrix") {
  const ExactMatrix t = hklat::transvection_matrix(2);
  REQUIRE(t.rows() == 4);
  CHECK(t(0, 1) == 1);
  CHECK(t - ExactMatrix::identity(4) ==
        ExactMatrix{{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  CHECK(hklat::determinant(t) == 1);

  CHECK_THROWS_AS(hklat::transvection_matrix(0), std::invalid_argument);
  CHECK_THROWS_AS(hklat::transvection_matrix(13), std::invalid_argument);
}

TEST_CASE("lexicographic subsets") {
  const auto s = hklat::subsets_lex(4, 2);
  const std::vector<std::vector<std::size_t>> want = {{0, 1}, {0, 2}, {0, 3},
                                                      {1, 2}, {1, 3}, {2, 3}};
  CHECK(s == want);
  CHECK(hklat::subsets_lex(3, 0) == std::vector<std::vector<std::size_t>>{{}});
  CHECK(hklat::subsets_lex(5, 5).size() == 1);
}

TEST_CASE("wedge powers") {
  SECTION("first wedge power is the matrix itself") {
    const ExactMatrix m{{1, 2}, {3, 4}};
    CHECK(hklat::wedge_power(m, 1) == m);
  }

  SECTION("top wedge power is the determinant") {
    const ExactMatrix m{{1, 2}, {3, 4}};
    CHECK(hklat::wedge_power(m, 2) == ExactMatrix{{-2}});
  }

  SECTION("wedge of the identity is the identity") {
    CHECK(hklat::wedge_power(ExactMatrix::identity(4), 2) == ExactMatrix::identity(6));
  }

  SECTION("a transvection moves one wedge basis vector") {
    // with T(e1) = e0 + e1 and all else fixed, e1^e2 maps to e0^e2 + e1^e2
    const ExactMatrix w = hklat::wedge_power(hklat::transvection_matrix(2), 2);
    // basis order: {0,1} {0,2} {0,3} {1,2} {1,3} {2,3}; column of e1^e2 is 3
    for (std::size_t r = 0; r < 6; ++r) {
      const hklat::Rat want = (r == 1 || r == 3) ? 1 : 0;
      CHECK(w(r, 3) == want);
    }
  }

  SECTION("wedge powers of a unipotent map are unipotent") {
    for (unsigned long p = 1; p <= 4; ++p) {
      const ExactMatrix w = hklat::wedge_power(hklat::transvection_matrix(p), 2);
      CHECK(hklat::determinant(w) == 1);
    }
  }

  SECTION("dimension bounds are enforced") {
    CHECK_THROWS_AS(hklat::wedge_power(ExactMatrix{{1, 2}, {3, 4}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(hklat::wedge_power(ExactMatrix(2, 3), 1), std::invalid_argument);
  }
}

TEST_CASE("invariant dimensions match the closed forms") {
  SECTION("first exterior power: 2p - 1") {
    for (unsigned long p = 1; p <= 6; ++p) {
      CHECK(hklat::invariant_dimension(p, 1) == 2 * p - 1);
      CHECK(hklat::closed_form_invariant_dimension(p, 1) == 2 * p - 1);
    }
  }

  SECTION("second exterior power: 2p^2 - 3p + 2") {
    for (unsigned long p = 1; p <= 6; ++p) {
      CHECK(hklat::invariant_dimension(p, 2) == 2 * p * p - 3 * p + 2);
      CHECK(hklat::closed_form_invariant_dimension(p, 2) == 2 * p * p - 3 * p + 2);
    }
  }

  SECTION("closed form exists only for the first two powers") {
    CHECK_THROWS_AS(hklat::closed_form_invariant_dimension(2, 3), std::invalid_argument);
  }

  SECTION("degree-0 invariants are the scalars") {
    CHECK(hklat::invariant_dimension(3, 0) == 1);
  }
}
