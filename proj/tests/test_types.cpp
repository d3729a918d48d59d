#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace projshape;
using testutil::frameless_free;

TEST_CASE("canonicalize_point on worked examples") {
  const auto p1 = canonicalize_point(Eigen::Vector2d(0, -2));
  CHECK(p1.coords(0) == 0.0);
  CHECK(p1.coords(1) == 1.0);

  const auto p2 = canonicalize_point(Eigen::Vector2d(3, 4));
  CHECK(p2.coords(0) == Approx(0.6));
  CHECK(p2.coords(1) == Approx(0.8));

  const auto p3 = canonicalize_point(Eigen::Vector3d(-1, -1, 0));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(p3.coords(0) == Approx(s));
  CHECK(p3.coords(1) == Approx(s));
  CHECK(p3.coords(2) == 0.0);
}

TEST_CASE("canonicalize_point rejects the zero vector") {
  CHECK_THROWS_AS(canonicalize_point(Eigen::Vector3d::Zero()), Error);
  try {
    canonicalize_point(Eigen::Vector2d::Zero());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::zero_vector);
  }
}

TEST_CASE("canonicalize_point is scale invariant") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + static_cast<int>(rng.below(4));
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.gauss();
    if (v.norm() == 0.0) continue;

    // Signed powers of two scale without rounding: equality is exact.
    const int e = static_cast<int>(rng.below(17)) - 8;
    const double lambda = (rng.coin() ? 1.0 : -1.0) * std::ldexp(1.0, e);
    CHECK(canonicalize_point(lambda * v) == canonicalize_point(v));

    // Arbitrary scales agree up to roundoff.
    const double mu = (rng.coin() ? 1.0 : -1.0) * rng.uniform(1e-3, 1e3);
    const auto a = canonicalize_point(mu * v);
    const auto b = canonicalize_point(v);
    CHECK((a.coords - b.coords).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("configuration invariants") {
  Eigen::MatrixXd ok(4, 2);
  ok << 1, 0, 0, 1, 1, 1, 2, 1;
  CHECK_NOTHROW(Configuration(1, 4, ok));

  Eigen::MatrixXd zero_row = ok;
  zero_row.row(2).setZero();
  CHECK_THROWS_AS(Configuration(1, 4, zero_row), Error);

  Eigen::MatrixXd small(2, 2);
  small << 1, 0, 0, 1;
  CHECK_THROWS_AS(Configuration(1, 2, small), Error);  // too few landmarks for a frame

  Eigen::MatrixXd frame_only(3, 2);
  frame_only << 1, 0, 0, 1, 1, 1;
  CHECK_NOTHROW(Configuration(1, 3, frame_only));  // k = d+2 carries a bare frame

  CHECK_THROWS_AS(Configuration(0, 4, ok), Error);
  CHECK_THROWS_AS(Configuration(2, 4, ok), Error);  // wrong column count
}

TEST_CASE("group action basics") {
  const auto c = frameless_free();
  const GroupElement id(Eigen::VectorXd::Ones(7), Eigen::MatrixXd::Identity(4, 4));
  CHECK(act(id, c) == c);

  const GroupElement twice(2.0 * Eigen::VectorXd::Ones(7), Eigen::MatrixXd::Identity(4, 4));
  const auto doubled = act(twice, c);
  CHECK(doubled.matrix() == 2.0 * c.matrix());
  CHECK(shape_equal(c, doubled));

  const GroupElement wrong_size(Eigen::VectorXd::Ones(5), Eigen::MatrixXd::Identity(4, 4));
  CHECK_THROWS_AS(act(wrong_size, c), Error);
}

TEST_CASE("group element invariants") {
  Eigen::VectorXd scales = Eigen::VectorXd::Ones(4);
  scales(2) = 0.0;
  CHECK_THROWS_AS(GroupElement(scales, Eigen::MatrixXd::Identity(2, 2)), Error);

  Eigen::MatrixXd singular(2, 2);
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(GroupElement(Eigen::VectorXd::Ones(4), singular), Error);
}

TEST_CASE("rank is invariant under the action") {
  CHECK(configuration_rank(frameless_free()) == 4);

  Eigen::MatrixXd same(4, 2);
  same << 1, 1, 1, 1, 1, 1, 1, 1;
  CHECK(configuration_rank(Configuration(1, 4, same)) == 1);

  Eigen::MatrixXd pairs(4, 2);
  pairs << 1, 0, 1, 0, 0, 1, 0, 1;
  CHECK(configuration_rank(Configuration(1, 4, pairs)) == 2);

  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto c = testutil::planted_instance(2, 6, seed);
    const auto g = random_group_element(2, 6, seed + 1000);
    CHECK(configuration_rank(act(g, c)) == configuration_rank(c));
  }
}

TEST_CASE("group law holds to roundoff") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_general_position(2, 6, 100 + static_cast<std::uint64_t>(trial));
    const auto g1 = random_group_element(2, 6, 200 + static_cast<std::uint64_t>(trial));
    const auto g2 = random_group_element(2, 6, 300 + static_cast<std::uint64_t>(trial));
    const auto lhs = act(g2, act(g1, c));
    const auto rhs = act(GroupElement::compose(g2, g1), c);
    const double scale = max_abs(rhs.matrix());
    CHECK(max_abs(lhs.matrix() - rhs.matrix()) <= 1e-12 * scale);
  }
}

TEST_CASE("landmark permutation") {
  const auto c = frameless_free();
  const std::vector<int> rotate{2, 3, 4, 5, 6, 7, 1};
  const auto p = permute_landmarks(c, rotate);
  CHECK(p.landmark(1) == c.landmark(2));
  CHECK(p.landmark(7) == c.landmark(1));
  CHECK_THROWS_AS(permute_landmarks(c, std::vector<int>{1, 1, 2, 3, 4, 5, 6}), Error);
}
