#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "projshape/errors.hpp"

namespace projshape {

/// Per-dimension caps n = (n_1, ..., n_d) on the number of landmarks allowed
/// in a (j-1)-dimensional projective subspace. Entries are strictly
/// increasing; non-strict vectors are rejected.
class SubspaceNumbers {
 public:
  SubspaceNumbers(std::vector<int> n, int d, int k) : n_(std::move(n)), d_(d), k_(k) {
    if (d_ < 1 || k_ < d_ + 3)
      throw Error(errc::invariant_violation, "need d >= 1 and k >= d+3");
    if (static_cast<int>(n_.size()) != d_)
      throw Error(errc::dimension_mismatch, "subspace numbers must have d entries");
    for (int j = 1; j <= d_; ++j) {
      if (n_[static_cast<std::size_t>(j - 1)] < j)
        throw Error(errc::invariant_violation,
                    "subspace number n_" + std::to_string(j) + " must be >= " + std::to_string(j));
      if (j > 1 && n_[static_cast<std::size_t>(j - 1)] <= n_[static_cast<std::size_t>(j - 2)])
        throw Error(errc::invariant_violation, "subspace numbers must be strictly increasing");
    }
  }

  const std::vector<int>& values() const { return n_; }
  int at(int j) const { return n_[static_cast<std::size_t>(j - 1)]; }  // 1-based
  int d() const { return d_; }
  int k() const { return k_; }

  bool operator==(const SubspaceNumbers& o) const {
    return n_ == o.n_ && d_ == o.d_ && k_ == o.k_;
  }

 private:
  std::vector<int> n_;
  int d_;
  int k_;
};

/// Tyler numbers t_j = ceil(j*k/(d+1)) - 1, the subspace numbers bounding the
/// Tyler regular shapes.
inline SubspaceNumbers tyler_numbers(int d, int k) {
  if (d < 1 || k < d + 3) throw Error(errc::invariant_violation, "need d >= 1 and k >= d+3");
  std::vector<int> t(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) t[static_cast<std::size_t>(j - 1)] = (j * k + d) / (d + 1) - 1;
  return SubspaceNumbers(std::move(t), d, k);
}

/// Hausdorff criterion: n_j + n_{d+1-j} < k for all j.
inline bool is_hausdorff_numbers(const SubspaceNumbers& n) {
  for (int j = 1; j <= n.d(); ++j)
    if (n.at(j) + n.at(n.d() + 1 - j) >= n.k()) return false;
  return true;
}

/// All j violating the Hausdorff criterion (symmetric in j <-> d+1-j).
inline std::vector<int> hausdorff_violations(const SubspaceNumbers& n) {
  std::vector<int> out;
  for (int j = 1; j <= n.d(); ++j)
    if (n.at(j) + n.at(n.d() + 1 - j) >= n.k()) out.push_back(j);
  return out;
}

/// A Hausdorff vector is maximal when no component can be raised without
/// breaking the criterion. Probing single increments suffices: the criterion
/// is monotone, and any larger strictly increasing vector dominates some
/// valid single increment.
inline bool is_maximal_numbers(const SubspaceNumbers& n) {
  if (!is_hausdorff_numbers(n))
    throw Error(errc::not_hausdorff_input, "maximality is defined for Hausdorff vectors only");
  for (int j = 1; j <= n.d(); ++j) {
    if (j < n.d() && n.at(j) + 1 >= n.at(j + 1)) continue;  // increment breaks monotonicity
    std::vector<int> m = n.values();
    m[static_cast<std::size_t>(j - 1)] += 1;
    if (is_hausdorff_numbers(SubspaceNumbers(std::move(m), n.d(), n.k()))) return false;
  }
  return true;
}

/// Whether the Tyler numbers of (d, k) are maximal, decided by the gcd rule:
/// maximal iff gcd(k, d+1) is 1 or 2.
inline bool tyler_maximal_gcd(int d, int k) {
  if (d < 1 || k < d + 3) throw Error(errc::invariant_violation, "need d >= 1 and k >= d+3");
  const int g = std::gcd(k, d + 1);
  return g == 1 || g == 2;
}

}  // namespace projshape
