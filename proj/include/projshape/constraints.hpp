#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "projshape/linalg.hpp"
#include "projshape/subspace_numbers.hpp"
#include "projshape/types.hpp"

namespace projshape {

/// Caller-supplied cancellation check for combinatorial searches. Returning
/// true aborts the search with errc::cancelled.
using CancelFn = std::function<bool()>;

namespace detail {

inline void poll_cancel(const CancelFn& cancel, unsigned long& counter) {
  if (cancel && (++counter & 0x3f) == 0 && cancel())
    throw Error(errc::cancelled, "search cancelled by caller");
}

/// In-place next k-combination of {1..n} in lexicographic order.
inline bool next_combination(std::vector<int>& comb, int n) {
  const int m = static_cast<int>(comb.size());
  for (int i = m - 1; i >= 0; --i) {
    if (comb[static_cast<std::size_t>(i)] < n - (m - 1 - i)) {
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<int> complement_of(const std::vector<int>& indices, int k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k) - indices.size());
  std::size_t pos = 0;
  for (int i = 1; i <= k; ++i) {
    if (pos < indices.size() && indices[pos] == i) {
      ++pos;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace detail

/// A projective subspace constraint (I, j): the landmarks indexed by I lie in
/// a (j-1)-dimensional projective subspace, i.e. rank of the row submatrix is
/// at most j. Indices are 1-based and sorted.
struct SubspaceConstraint {
  std::vector<int> indices;
  int dim = 0;
};

/// A maximal index set attaining a rank bound, annotated with its exact rank.
struct Flat {
  std::vector<int> indices;
  int rank = 0;

  bool operator==(const Flat& o) const { return indices == o.indices && rank == o.rank; }
  bool operator<(const Flat& o) const {
    return indices != o.indices ? indices < o.indices : rank < o.rank;
  }
};

/// Canonical finite summary of the collection C(p) of projective subspace
/// constraints: for each level j in 1..d the maximal index sets of rank <= j.
/// Trivial flats (|I| == j) are omitted; every constraint of p is a subset of
/// some listed flat or trivial.
struct ConstraintReport {
  int d = 0;
  int k = 0;
  std::vector<std::vector<Flat>> levels;  // levels[j-1] = flats at level j

  const std::vector<Flat>& at_level(int j) const { return levels[static_cast<std::size_t>(j - 1)]; }

  bool trivial_only() const {
    for (const auto& lvl : levels)
      if (!lvl.empty()) return false;
    return true;
  }

  /// All distinct flats across levels (an index set may be maximal at several
  /// levels; it is reported once, with its exact rank).
  std::vector<Flat> distinct_flats() const {
    std::set<Flat> s;
    for (const auto& lvl : levels) s.insert(lvl.begin(), lvl.end());
    return {s.begin(), s.end()};
  }

  bool operator==(const ConstraintReport& o) const {
    return d == o.d && k == o.k && levels == o.levels;
  }
};

/// Whether the constraint (I, j) is fulfilled according to the report:
/// trivially when |I| <= j, otherwise exactly when I lies inside some flat at
/// level j. Indices must be sorted.
inline bool fulfills_constraint(const ConstraintReport& report, const SubspaceConstraint& c) {
  if (c.dim < 1 || c.dim > report.d)
    throw Error(errc::dimension_mismatch, "constraint dimension must be in 1..d");
  if (static_cast<int>(c.indices.size()) <= c.dim) return true;
  const auto& level = report.at_level(c.dim);
  return std::any_of(level.begin(), level.end(), [&](const Flat& f) {
    return std::includes(f.indices.begin(), f.indices.end(), c.indices.begin(), c.indices.end());
  });
}

/// Maximal flats per level, computed from closures of independent j-subsets:
/// every rank-j flat is spanned by j of its landmarks, so closing each
/// j-subset of full rank j enumerates all of them.
inline ConstraintReport constraint_flats(const Configuration& c, double tol = kDefaultRankTol,
                                         const CancelFn& cancel = {}) {
  const int k = c.k();
  const int d = c.d();
  const Eigen::MatrixXd& P = c.matrix();
  const int full_rank = numerical_rank(P, tol);

  ConstraintReport report;
  report.d = d;
  report.k = k;
  report.levels.assign(static_cast<std::size_t>(d), {});
  unsigned long polls = 0;

  for (int j = 1; j <= d; ++j) {
    auto& level = report.levels[static_cast<std::size_t>(j - 1)];
    if (full_rank <= j) {
      // Everything fits in a rank <= j subspace; the full set is the only
      // maximal flat and it is never trivial since k >= d+3 > j.
      std::vector<int> all(static_cast<std::size_t>(k));
      for (int i = 1; i <= k; ++i) all[static_cast<std::size_t>(i - 1)] = i;
      level.push_back(Flat{std::move(all), full_rank});
      continue;
    }

    std::set<std::vector<int>> closures;
    std::vector<int> subset(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) subset[static_cast<std::size_t>(i)] = i + 1;
    do {
      detail::poll_cancel(cancel, polls);
      if (numerical_rank(rows_subset(P, subset), tol) != j) continue;
      std::vector<int> closure;
      Eigen::MatrixXd stacked(j + 1, d + 1);
      stacked.topRows(j) = rows_subset(P, subset);
      for (int i = 1; i <= k; ++i) {
        stacked.row(j) = P.row(i - 1);
        if (numerical_rank(stacked, tol) == j) closure.push_back(i);
      }
      if (static_cast<int>(closure.size()) > j) closures.insert(std::move(closure));
    } while (detail::next_combination(subset, k));

    for (const auto& idx : closures) {
      const bool dominated = std::any_of(closures.begin(), closures.end(), [&](const auto& other) {
        return other.size() > idx.size() && std::includes(other.begin(), other.end(), idx.begin(), idx.end());
      });
      if (!dominated) level.push_back(Flat{idx, j});
    }
    std::sort(level.begin(), level.end());
  }
  return report;
}

/// General position: no m-dimensional projective subspace with m < d carries
/// more than m+1 landmarks, i.e. the constraint report is trivial.
inline bool is_general_position(const Configuration& c, double tol = kDefaultRankTol,
                                const CancelFn& cancel = {}) {
  return constraint_flats(c, tol, cancel).trivial_only();
}

/// Witness of splittability: rank(P_I) + rank(P_complement) <= d+1, reported
/// as the constraint (I, dim) with dim = rank(P_I).
struct SplitWitness {
  std::vector<int> indices;
  int dim = 0;
};

/// Maximum landmark count accepted by the subset searches.
inline constexpr int kDefaultSearchCap = 24;

/// Searches for a split. Witness candidates are exactly the maximal flats:
/// when rank(P) = d+1 the two sides of any split span complementary
/// subspaces, which forces each side to be closed (equal to its own flat).
/// Candidates are probed by increasing size, then lexicographically, so the
/// returned witness is deterministic. Rank-deficient configurations use the
/// I = {1} convention.
inline std::optional<SplitWitness> is_splittable(const Configuration& c,
                                                 double tol = kDefaultRankTol,
                                                 int search_cap = kDefaultSearchCap,
                                                 const CancelFn& cancel = {}) {
  if (c.k() > search_cap)
    throw Error(errc::instance_too_large,
                "k=" + std::to_string(c.k()) + " exceeds the search cap " + std::to_string(search_cap));
  if (configuration_rank(c, tol) < c.d() + 1) return SplitWitness{{1}, 1};

  auto flats = constraint_flats(c, tol, cancel).distinct_flats();
  std::sort(flats.begin(), flats.end(), [](const Flat& a, const Flat& b) {
    if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
    return a < b;
  });
  for (const auto& flat : flats) {
    const auto comp = detail::complement_of(flat.indices, c.k());
    if (comp.empty()) continue;
    if (flat.rank + numerical_rank(rows_subset(c.matrix(), comp), tol) <= c.d() + 1)
      return SplitWitness{flat.indices, flat.rank};
  }
  return std::nullopt;
}

/// Free (trivial isotropy group) iff not splittable.
inline bool is_free(const Configuration& c, double tol = kDefaultRankTol,
                    int search_cap = kDefaultSearchCap, const CancelFn& cancel = {}) {
  return !is_splittable(c, tol, search_cap, cancel).has_value();
}

/// Tyler regularity: every constraint (I, j) satisfies |I| < j*k/(d+1).
/// Checked on maximal flats with exact integer arithmetic so the boundary
/// |I| = j*k/(d+1) is never decided by float rounding.
inline bool is_tyler_regular(const Configuration& c, double tol = kDefaultRankTol,
                             const CancelFn& cancel = {}) {
  const auto report = constraint_flats(c, tol, cancel);
  for (const auto& level : report.levels)
    for (const auto& flat : level) {
      const long lhs = static_cast<long>(flat.indices.size()) * (c.d() + 1);
      const long rhs = static_cast<long>(flat.rank) * c.k();
      if (lhs >= rhs) return false;
    }
  return true;
}

/// Membership in SN(n): every flat at level j has at most n_j landmarks.
inline bool satisfies_subspace_numbers(const Configuration& c, const SubspaceNumbers& n,
                                       double tol = kDefaultRankTol, const CancelFn& cancel = {}) {
  if (n.d() != c.d() || n.k() != c.k())
    throw Error(errc::dimension_mismatch, "subspace numbers sized for a different shape space");
  const auto report = constraint_flats(c, tol, cancel);
  for (int j = 1; j <= c.d(); ++j)
    for (const auto& flat : report.at_level(j))
      if (static_cast<int>(flat.indices.size()) > n.at(j)) return false;
  return true;
}

}  // namespace projshape
