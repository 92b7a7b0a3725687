#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>
#include <stdexcept>

#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"
#include "test_support.hpp"

using hklat::ExactMatrix;
using hklat::Int;
using hklat::Rat;

TEST_CASE("exact scalar helpers") {
  SECTION("parse_rational reads integers and fractions, canonicalized") {
    CHECK(hklat::parse_rational("945") == 945);
    CHECK(hklat::parse_rational("-35/2") == Rat(-35, 2));
    CHECK(hklat::parse_rational("+7") == 7);
    CHECK(hklat::parse_rational("2/4") == Rat(1, 2));
    CHECK(hklat::parse_rational("0") == 0);
  }

  SECTION("parse_rational rejects anything inexact or malformed") {
    CHECK_THROWS_AS(hklat::parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(hklat::parse_rational("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(hklat::parse_rational("3/0"), std::invalid_argument);
    CHECK_THROWS_AS(hklat::parse_rational("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(hklat::parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(hklat::parse_rational(" 1"), std::invalid_argument);
    CHECK_THROWS_AS(hklat::parse_rational("2/-3"), std::invalid_argument);
  }

  SECTION("to_string round trips") {
    CHECK(hklat::to_string(Rat(-35, 2)) == "-35/2");
    CHECK(hklat::to_string(Rat(4)) == "4");
    CHECK(hklat::to_string(Int(-3)) == "-3");
  }

  SECTION("combinatorial helpers") {
    CHECK(hklat::factorial(0) == 1);
    CHECK(hklat::factorial(10) == 3628800);
    CHECK(hklat::double_factorial(-1) == 1);
    CHECK(hklat::double_factorial(0) == 1);
    CHECK(hklat::double_factorial(9) == 945);
    CHECK(hklat::binomial(8, 4) == 70);
    CHECK(hklat::int_gcd(12, -18) == 6);
    CHECK(hklat::int_lcm(4, 6) == 12);
    CHECK(hklat::rat_pow(Rat(-3, 2), 3) == Rat(-27, 8));
    CHECK(hklat::rat_pow(Rat(5), 0) == 1);
  }
}

TEST_CASE("matrix construction and value semantics") {
  ExactMatrix m{{0, 1}, {1, 0}};
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m(0, 1) == 1);
  CHECK(m.is_square());
  CHECK(m.is_symmetric());
  CHECK(m.is_integral());
  CHECK_FALSE(m.is_zero());

  SECTION("ragged initializer is rejected") {
    CHECK_THROWS_AS((ExactMatrix{{1, 2}, {3}}), std::invalid_argument);
  }

  SECTION("identity and equality") {
    CHECK(ExactMatrix::identity(2) == ExactMatrix{{1, 0}, {0, 1}});
    CHECK(m == ExactMatrix{{0, 1}, {1, 0}});
    CHECK(m != ExactMatrix::identity(2));
  }

  SECTION("operations return fresh values") {
    const ExactMatrix sum = m + m;
    CHECK(sum(0, 1) == 2);
    CHECK(m(0, 1) == 1);
    CHECK((m - m).is_zero());
    CHECK(m * m == ExactMatrix::identity(2));
    CHECK(Rat(1, 2) * sum == m);
  }

  SECTION("dimension mismatches throw") {
    const ExactMatrix wide(2, 3);
    CHECK_THROWS_AS(m + wide, std::invalid_argument);
    CHECK_THROWS_AS(wide * wide, std::invalid_argument);
  }

  SECTION("transpose") {
    const ExactMatrix a{{1, 2, 3}, {4, 5, 6}};
    CHECK(a.transpose() == ExactMatrix{{1, 4}, {2, 5}, {3, 6}});
    CHECK(a.transpose().transpose() == a);
  }

  SECTION("stream format") {
    std::ostringstream os;
    os << m;
    CHECK(os.str() == "[0, 1; 1, 0]");
  }
}

TEST_CASE("determinant is exact") {
  CHECK(hklat::determinant(ExactMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(hklat::determinant(ExactMatrix{{-6, 3}, {3, -2}}) == 3);
  CHECK(hklat::determinant(ExactMatrix{{-2, 1}, {3, -2}}) == 1);
  CHECK(hklat::determinant(ExactMatrix{{-2, 1}, {2, -2}}) == 2);
  CHECK(hklat::determinant(ExactMatrix::identity(5)) == 1);
  CHECK(hklat::determinant(ExactMatrix{{Rat(1, 2), 0}, {0, Rat(2, 3)}}) == Rat(1, 3));

  SECTION("matches the permutation expansion on random rational matrices") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 25; ++trial) {
      ExactMatrix m(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = testsupport::random_rational(rng);
      CHECK(hklat::determinant(m) == testsupport::determinant_by_permutations(m));
    }
  }

  SECTION("multiplicativity on random integer matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
      const ExactMatrix a = testsupport::random_integer_matrix(rng, 4, 4, -4, 4);
      const ExactMatrix b = testsupport::random_integer_matrix(rng, 4, 4, -4, 4);
      CHECK(hklat::determinant(a * b) == hklat::determinant(a) * hklat::determinant(b));
    }
  }

  SECTION("non-square input throws") {
    CHECK_THROWS_AS(hklat::determinant(ExactMatrix(2, 3)), std::invalid_argument);
  }
}

TEST_CASE("rank and kernel dimension") {
  CHECK(hklat::rank(ExactMatrix::identity(4)) == 4);
  CHECK(hklat::rank(ExactMatrix(3, 3)) == 0);
  CHECK(hklat::rank(ExactMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(hklat::rank(ExactMatrix{{1, 2, 3}, {4, 5, 6}}) == 2);
  CHECK(hklat::kernel_dimension(ExactMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(hklat::kernel_dimension(ExactMatrix{{1, 2, 3}, {4, 5, 6}}) == 1);
  CHECK(hklat::kernel_dimension(ExactMatrix(2, 5)) == 5);

  SECTION("rank of a product never exceeds either factor") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const ExactMatrix a = testsupport::random_integer_matrix(rng, 3, 4, -3, 3);
      const ExactMatrix b = testsupport::random_integer_matrix(rng, 4, 3, -3, 3);
      const std::size_t r = hklat::rank(a * b);
      CHECK(r <= hklat::rank(a));
      CHECK(r <= hklat::rank(b));
    }
  }
}

TEST_CASE("block_diag, content and common_denominator") {
  const ExactMatrix u{{0, 1}, {1, 0}};
  const ExactMatrix d{{-2}};
  const ExactMatrix b = hklat::block_diag({u, d});
  CHECK(b == ExactMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -2}});
  CHECK(hklat::block_diag({}) == ExactMatrix(0, 0));
  CHECK(hklat::determinant(b) == 2);

  CHECK(hklat::content(ExactMatrix{{4, -6}, {2, 8}}) == 2);
  CHECK(hklat::content(ExactMatrix{{0, 0}, {0, 0}}) == 0);
  CHECK(hklat::content(ExactMatrix{{3, 5}}) == 1);
  CHECK_THROWS_AS(hklat::content(ExactMatrix{{Rat(1, 2)}}), std::invalid_argument);

  CHECK(hklat::common_denominator(ExactMatrix{{Rat(1, 2), Rat(2, 3)}, {1, Rat(5, 6)}}) == 6);
  CHECK(hklat::common_denominator(ExactMatrix{{1, 2}}) == 1);

  SECTION("scaling by the common denominator always yields integral content") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
      const ExactMatrix m = testsupport::random_symmetric_rational(rng, 3);
      const Int l = hklat::common_denominator(m);
      const ExactMatrix scaled = Rat(l) * m;
      REQUIRE(scaled.is_integral());
      if (!scaled.is_zero()) {
        // dividing the content back out leaves a content-1 integer matrix
        const Int g = hklat::content(scaled);
        const ExactMatrix normalized = Rat(Int(1), g) * scaled;
        REQUIRE(normalized.is_integral());
        CHECK(hklat::content(normalized) == 1);
      }
    }
  }
}
