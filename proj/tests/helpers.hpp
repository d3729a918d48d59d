#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here enumerate subsets directly and must stay independent of the library's
// flat/split search paths they are used to check.

#include <cstdint>
#include <vector>

#include "projshape/projshape.hpp"

namespace testutil {

using namespace projshape;

/// The seven-landmark free configuration without a frame (three non-coplanar
/// lines through landmark 1).
inline Configuration frameless_free() {
  Eigen::MatrixXd m(7, 4);
  m << 1, 0, 0, 0,
       0, 1, 0, 0,
       0, 0, 1, 0,
       0, 0, 0, 1,
       1, 1, 0, 0,
       1, 0, 1, 0,
       1, 0, 0, 1;
  return Configuration(3, 7, m);
}

/// The standard frame in RP^3: identity rows plus the all-ones row.
inline Configuration standard_frame() {
  Eigen::MatrixXd m(5, 4);
  m << 1, 0, 0, 0,
       0, 1, 0, 0,
       0, 0, 1, 0,
       0, 0, 0, 1,
       1, 1, 1, 1;
  return Configuration(3, 5, m);
}

/// d=1, k=4 with p1 = p2 and p3 = p4 (double pair coincidence), already in
/// standardized scale.
inline Configuration double_pair() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd m(4, 2);
  m << s, 0, s, 0, 0, s, 0, s;
  return Configuration(1, 4, m);
}

/// d=1, k=4 with exactly one coincident pair (p3 = p4).
inline Configuration single_pair() {
  Eigen::MatrixXd m(4, 2);
  m << 1, 1, 1, 0, 0, 1, 0, 1;
  return Configuration(1, 4, m);
}

inline std::vector<int> mask_to_indices(std::uint32_t mask, int k) {
  std::vector<int> out;
  for (int i = 0; i < k; ++i)
    if (mask & (1u << i)) out.push_back(i + 1);
  return out;
}

/// Exhaustive flat oracle: ranks of all row subsets, maximal sets per level,
/// trivial ones dropped.
inline ConstraintReport oracle_flats(const Configuration& c, double tol = kDefaultRankTol) {
  const int k = c.k();
  const std::uint32_t full = (1u << k) - 1;
  std::vector<int> rank_of(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    rank_of[mask] = numerical_rank(rows_subset(c.matrix(), mask_to_indices(mask, k)), tol);

  ConstraintReport report;
  report.d = c.d();
  report.k = k;
  report.levels.assign(static_cast<std::size_t>(c.d()), {});
  for (int j = 1; j <= c.d(); ++j) {
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t mask = 1; mask <= full; ++mask)
      if (rank_of[mask] <= j) candidates.push_back(mask);
    auto& level = report.levels[static_cast<std::size_t>(j - 1)];
    for (std::uint32_t mask : candidates) {
      bool maximal = true;
      for (std::uint32_t other : candidates)
        if (other != mask && (other & mask) == mask) {
          maximal = false;
          break;
        }
      if (!maximal) continue;
      auto indices = mask_to_indices(mask, k);
      if (static_cast<int>(indices.size()) <= j) continue;  // trivial
      level.push_back(Flat{std::move(indices), rank_of[mask]});
    }
    std::sort(level.begin(), level.end());
  }
  return report;
}

/// Exhaustive splittability oracle over all bipartitions.
inline bool oracle_splittable(const Configuration& c, double tol = kDefaultRankTol) {
  const int k = c.k();
  const std::uint32_t full = (1u << k) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int ra = numerical_rank(rows_subset(c.matrix(), mask_to_indices(mask, k)), tol);
    const int rb = numerical_rank(rows_subset(c.matrix(), mask_to_indices(full ^ mask, k)), tol);
    if (ra + rb <= c.d() + 1) return true;
  }
  return false;
}

/// Configuration with all landmarks inside a random subspace of the given
/// rank (a rank-deficient fixture).
inline Configuration random_rank_deficient(int d, int k, int rank, std::uint64_t seed) {
  Rng rng(seed);
  while (true) {
    Eigen::MatrixXd basis(rank, d + 1);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c <= d; ++c) basis(r, c) = rng.gauss();
    Eigen::MatrixXd m(k, d + 1);
    for (int i = 0; i < k; ++i) {
      Eigen::RowVectorXd coeff(rank);
      for (int t = 0; t < rank; ++t) coeff(t) = rng.gauss();
      Eigen::VectorXd v = (coeff * basis).transpose();
      if (v.norm() == 0.0) v = basis.row(0).transpose();
      m.row(i) = canonicalize_point(v).coords.transpose();
    }
    Configuration c(d, k, std::move(m));
    if (configuration_rank(c) == rank) return c;
  }
}

/// Mixed fixture family used by the decider-agreement suites: general
/// position, planted flats, planted splits, rank-deficient, duplicates.
inline Configuration planted_instance(int d, int k, std::uint64_t seed) {
  Rng pick(seed * 6364136223846793005ull + 1442695040888963407ull);
  switch (pick.below(5)) {
    case 0:
      return random_general_position(d, k, seed);
    case 1: {
      const int j = 1 + static_cast<int>(pick.below(static_cast<std::uint64_t>(d)));
      const int size = j + 1 + static_cast<int>(pick.below(static_cast<std::uint64_t>(k - j - 1)));
      std::vector<int> indices;
      for (int i = 1; i <= size; ++i) indices.push_back(i);
      return random_with_constraint(d, k, indices, j, seed);
    }
    case 2: {
      const int j = 1 + static_cast<int>(pick.below(static_cast<std::uint64_t>(d)));
      const int lo = j;
      const int hi = k - (d + 1 - j);
      const int size = lo + static_cast<int>(pick.below(static_cast<std::uint64_t>(hi - lo + 1)));
      std::vector<int> indices;
      for (int i = 1; i <= size; ++i) indices.push_back(i);
      return random_split(d, k, indices, j, seed);
    }
    case 3:
      return random_rank_deficient(d, k, 1 + static_cast<int>(pick.below(static_cast<std::uint64_t>(d))), seed);
    default: {
      Configuration c = random_general_position(d, k, seed);
      Eigen::MatrixXd m = c.matrix();
      const int copies = 1 + static_cast<int>(pick.below(2));
      for (int t = 0; t < copies && t + 1 < k; ++t)
        m.row(k - 1 - t) = m.row(pick.below(static_cast<std::uint64_t>(k - 1 - t)));
      return Configuration(d, k, std::move(m));
    }
  }
}

}  // namespace testutil
