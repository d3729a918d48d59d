#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace projshape;

TEST_CASE("tyler numbers for worked cases") {
  CHECK(tyler_numbers(2, 6).values() == std::vector<int>{1, 3});
  CHECK(tyler_numbers(1, 4).values() == std::vector<int>{1});
  CHECK(tyler_numbers(3, 7).values() == std::vector<int>{1, 3, 5});
}

TEST_CASE("subspace number invariants are enforced") {
  CHECK_THROWS_AS(SubspaceNumbers({2, 2}, 2, 6), Error);   // not strictly increasing
  CHECK_THROWS_AS(SubspaceNumbers({1, 1, 2}, 3, 7), Error);
  CHECK_THROWS_AS(SubspaceNumbers({0}, 1, 4), Error);      // n_j < j
  CHECK_THROWS_AS(SubspaceNumbers({1, 2}, 1, 4), Error);   // wrong length
  CHECK_NOTHROW(SubspaceNumbers({2, 5}, 2, 8));
}

TEST_CASE("hausdorff criterion") {
  CHECK(is_hausdorff_numbers(SubspaceNumbers({1, 3}, 2, 6)));
  CHECK_FALSE(is_hausdorff_numbers(SubspaceNumbers({2, 4}, 2, 6)));
  CHECK(is_hausdorff_numbers(SubspaceNumbers({1}, 1, 4)));

  const auto violations = hausdorff_violations(SubspaceNumbers({2, 4}, 2, 6));
  CHECK(violations == std::vector<int>{1, 2});
}

TEST_CASE("maximality by single increments") {
  CHECK_FALSE(is_maximal_numbers(tyler_numbers(2, 6)));
  CHECK(is_maximal_numbers(tyler_numbers(1, 4)));

  // general position numbers (1, ..., d) are not maximal once k > d+3
  CHECK_FALSE(is_maximal_numbers(SubspaceNumbers({1, 2}, 2, 6)));
  CHECK_FALSE(is_maximal_numbers(SubspaceNumbers({1}, 1, 5)));

  try {
    is_maximal_numbers(SubspaceNumbers({2, 4}, 2, 6));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_hausdorff_input);
  }
}

TEST_CASE("gcd rule for tyler maximality") {
  CHECK_FALSE(tyler_maximal_gcd(2, 6));  // gcd 3
  CHECK(tyler_maximal_gcd(3, 6));        // gcd 2, k = d+3
  CHECK(tyler_maximal_gcd(4, 7));        // gcd(7,5) = 1
}

TEST_CASE("tyler numbers satisfy hausdorff and the gcd rule on the grid") {
  for (int d = 1; d <= 6; ++d)
    for (int k = d + 3; k <= 20; ++k) {
      const auto t = tyler_numbers(d, k);
      CHECK(is_hausdorff_numbers(t));
      CHECK(is_maximal_numbers(t) == tyler_maximal_gcd(d, k));
    }
}
