#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace projshape;

TEST_CASE("blur of the double pair coincidence") {
  const auto c = testutil::double_pair();
  const auto seq = blur_sequence(c, 100);
  REQUIRE(seq.terms.size() == 100);
  REQUIRE(seq.limits.size() == 1);

  // every term carries the single pair coincidence {1,2} and nothing else
  const auto original = constraint_flats(c);
  for (int n : {1, 10, 100}) {
    const auto term = Configuration::from_matrix(seq.terms[static_cast<std::size_t>(n - 1)]);
    const auto flats = constraint_flats(term);
    REQUIRE(flats.at_level(1).size() == 1);
    CHECK(flats.at_level(1)[0].indices == std::vector<int>{1, 2});
    CHECK(constraints_within(flats, original));
    CHECK_FALSE(flats == original);
  }

  // the limit represents [c]: same constraint structure
  CHECK(constraint_flats(Configuration::from_matrix(seq.limits[0])) == original);

  // residuals decay like C/n
  for (std::size_t i = 1; i < seq.residuals.size(); ++i)
    CHECK(seq.residuals[i] <= seq.residuals[i - 1] + 1e-15);
  CHECK(seq.residuals[99] <= Approx(seq.residuals[0] / 100.0).epsilon(1e-9));
}

TEST_CASE("blur of a rank deficient configuration") {
  const auto c = testutil::random_rank_deficient(2, 6, 2, 17);
  const auto seq = blur_sequence(c, 50);
  const auto term = Configuration::from_matrix(seq.terms[0]);
  CHECK(configuration_rank(term) == 3);  // z broke the rank deficiency
  const auto flats_term = constraint_flats(term);
  const auto flats_c = constraint_flats(c);
  CHECK(constraints_within(flats_term, flats_c));
  CHECK_FALSE(flats_term == flats_c);
  CHECK(seq.residuals[49] <= seq.residuals[0] / 49.0);
}

TEST_CASE("blur demands a splittable input") {
  try {
    blur_sequence(random_general_position(2, 6, 3), 10);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_splittable);
  }
}

TEST_CASE("the canonical witness pair for d=1, k=4") {
  const auto pair = nonhausdorff_witness(1, 4);
  Eigen::MatrixXd p(4, 2), q(4, 2);
  p << 1, 1, 1, 0, 0, 1, 0, 1;
  q << 1, 0, 1, 0, 0, 1, 1, 1;
  CHECK(pair.p == p);
  CHECK(pair.q == q);
  CHECK(pair.block_rows == std::vector<int>{2, 2});
  CHECK(pair.block_cols == std::vector<int>{1, 1});
}

TEST_CASE("witness pairs are free, frame bearing and shape distinct") {
  for (int d = 1; d <= 3; ++d) {
    const int k = d + 3;
    const auto pair = nonhausdorff_witness(d, k);
    const auto p = Configuration::from_matrix(pair.p);
    const auto q = Configuration::from_matrix(pair.q);
    CHECK(is_free(p));
    CHECK(is_free(q));
    CHECK(find_frame(p).has_value());
    CHECK(find_frame(q).has_value());
    CHECK_FALSE(shape_equal(p, q));

    // the block split is visible in the constraints: (I, j) in C(p) pairs
    // with (I^c, d+1-j) in C(q), in both directions
    const auto fp = constraint_flats(p);
    const auto fq = constraint_flats(q);
    std::vector<int> tail{k - 1, k};
    std::vector<int> tail_c;
    for (int i = 1; i <= k - 2; ++i) tail_c.push_back(i);
    CHECK(fulfills_constraint(fp, SubspaceConstraint{tail, 1}));
    CHECK(fulfills_constraint(fq, SubspaceConstraint{tail_c, d}));
    std::vector<int> head{1, 2};
    std::vector<int> head_c;
    for (int i = 3; i <= k; ++i) head_c.push_back(i);
    CHECK(fulfills_constraint(fq, SubspaceConstraint{head, 1}));
    CHECK(fulfills_constraint(fp, SubspaceConstraint{head_c, d}));
  }
}

TEST_CASE("witness pads with repeated landmarks for larger k") {
  const auto pair = nonhausdorff_witness(2, 7);
  CHECK(pair.p.rows() == 7);
  CHECK(pair.p.row(1) == pair.p.row(2));  // repeated landmark
  CHECK(is_free(Configuration::from_matrix(pair.p)));
  CHECK(is_free(Configuration::from_matrix(pair.q)));
  CHECK_NOTHROW(validate_block_pair(pair));
}

TEST_CASE("merge sequence approaches both limits at rate 1/n") {
  const auto pair = nonhausdorff_witness(1, 4);
  const auto seq = merge_sequence(pair, 1000);
  REQUIRE(seq.limits.size() == 2);
  for (int n : {10, 100, 1000}) {
    const auto i = static_cast<std::size_t>(n - 1);
    CHECK(seq.residuals[i] <= 1.0 / n + 1e-12);
    CHECK(seq.residuals_second[i] <= 1.0 / n + 1e-12);
  }
}

TEST_CASE("merge terms and their transforms are one orbit") {
  for (int d = 1; d <= 2; ++d) {
    const auto pair = nonhausdorff_witness(d, d + 3);
    const auto seq = merge_sequence(pair, 25);
    for (int n : {1, 5, 25}) {
      const auto i = static_cast<std::size_t>(n - 1);
      CHECK(shape_equal(Configuration::from_matrix(seq.terms[i]),
                        Configuration::from_matrix(seq.transformed[i]), 1e-6));
    }
  }
}

TEST_CASE("invalid block pairs are rejected") {
  auto pair = nonhausdorff_witness(1, 4);
  pair.p(2, 0) = 1.0;  // violates the (iii) zero pattern
  try {
    merge_sequence(pair, 5);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_block_pair);
  }

  auto bad = nonhausdorff_witness(1, 4);
  bad.block_rows = {1, 3};  // partition no longer matches the zero pattern
  CHECK_THROWS_AS(validate_block_pair(bad), Error);

  auto single = nonhausdorff_witness(1, 4);
  single.block_rows = {4};
  CHECK_THROWS_AS(validate_block_pair(single), Error);
}

TEST_CASE("generators are reproducible and seed sensitive") {
  const auto a = random_general_position(2, 6, 33);
  const auto b = random_general_position(2, 6, 33);
  CHECK(a == b);  // bit identical
  CHECK(is_general_position(a));
  CHECK(is_tyler_regular(a));

  CHECK_FALSE(shape_equal(a, random_general_position(2, 6, 34)));
}

TEST_CASE("random_with_constraint plants the requested flat") {
  const auto c = random_with_constraint(3, 7, {1, 2, 3}, 2, 12);
  const auto report = constraint_flats(c);
  const std::vector<int> want{1, 2, 3};
  CHECK(std::any_of(report.at_level(2).begin(), report.at_level(2).end(), [&](const Flat& f) {
    return std::includes(f.indices.begin(), f.indices.end(), want.begin(), want.end());
  }));

  try {
    random_with_constraint(2, 6, {1, 2}, 2, 1);  // |I| == j is trivial
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::infeasible_constraint);
  }
}

TEST_CASE("random_split plants both sides") {
  const auto c = random_split(2, 7, {1, 3, 5}, 1, 21);
  const auto w = is_splittable(c);
  REQUIRE(w.has_value());
  CHECK_FALSE(is_free_via_graph(c));
}
