#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "projshape/constraints.hpp"

namespace projshape {

/// A Tyler standardized representative: orthonormal columns (P^t P = Id) and
/// constant squared row norms (d+1)/k, together with the Veronese-Whitney
/// projection P P^t that removes the remaining orthogonal ambiguity.
struct TylerStandardization {
  int d = 0;
  int k = 0;
  Eigen::MatrixXd matrix;      // standardized representative
  Eigen::MatrixXd projection;  // matrix * matrix^t, symmetric idempotent, trace d+1
  double residual = 0.0;       // achieved max violation of the two constraints
  int iterations = 0;
};

namespace detail {

inline double column_residual(const Eigen::MatrixXd& p) {
  const Eigen::MatrixXd gram = p.transpose() * p;
  return (gram - Eigen::MatrixXd::Identity(p.cols(), p.cols())).cwiseAbs().maxCoeff();
}

inline double row_residual(const Eigen::MatrixXd& p, double target) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    worst = std::max(worst, std::abs(p.row(i).squaredNorm() - target));
  return worst;
}

}  // namespace detail

/// Alternating fixed-point iteration for Tyler standardization: whiten the
/// columns with the symmetric inverse square root of the Gram matrix, then
/// rescale every row to squared norm (d+1)/k, until both constraints hold to
/// tol. Convergence failure within max_iter is reported as
/// NotStandardizable together with the final residual, never accepted.
inline TylerStandardization tyler_standardize(const Configuration& c, double tol = 1e-10,
                                              int max_iter = 10000) {
  const int d = c.d();
  const int k = c.k();
  const double target = static_cast<double>(d + 1) / k;
  Eigen::MatrixXd p = c.matrix();

  int iter = 0;
  while (true) {
    const double res = std::max(detail::column_residual(p), detail::row_residual(p, target));
    if (res <= tol) {
      TylerStandardization out;
      out.d = d;
      out.k = k;
      out.matrix = p;
      out.projection = p * p.transpose();
      out.residual = res;
      out.iterations = iter;
      return out;
    }
    if (iter >= max_iter)
      throw Error(errc::not_standardizable,
                  "no standardization after " + std::to_string(max_iter) +
                      " iterations (residual " + std::to_string(res) + ")");
    Eigen::MatrixXd whitener;
    try {
      whitener = sym_inv_sqrt(p.transpose() * p);
    } catch (const Error&) {
      throw Error(errc::not_standardizable, "column gram matrix numerically singular");
    }
    p = p * whitener;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      const double n = p.row(i).norm();
      if (n < 1e-154) throw Error(errc::zero_row, "row " + std::to_string(i + 1) + " collapsed");
      p.row(i) *= std::sqrt(target) / n;
    }
    ++iter;
  }
}

/// Veronese-Whitney embedding of the column space: the orthogonal projection
/// P (P^t P)^{-1} P^t, a symmetric idempotent of trace d+1. Invariant under
/// right multiplication by any invertible matrix.
inline Eigen::MatrixXd projection_matrix(const Eigen::MatrixXd& p, double tol = kDefaultRankTol) {
  if (numerical_rank(p, tol) != p.cols())
    throw Error(errc::rank_deficient, "projection matrix needs full column rank");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeThinU);
  const Eigen::MatrixXd u = svd.matrixU();
  return u * u.transpose();
}

/// Result of the exhaustive search over row-sign vectors.
struct SignSearchResult {
  double distance = 0.0;
  std::vector<int> signs;  // +-1 per landmark, first entry fixed to +1
};

/// Extrinsic shape distance between Tyler standardized representatives:
/// min over s in {+-1}^k (modulo global sign) of |S P_a S - P_b|_F with
/// S = diag(s). The orthogonal right action is already quotiented out by the
/// projections; the sign group is searched exactly.
///
/// Minimizing the norm is the same as maximizing s^t C s with C the entrywise
/// product of the two projections, walked here with a Gray code so each sign
/// flip costs O(k).
inline SignSearchResult shape_distance_signed(const TylerStandardization& a,
                                              const TylerStandardization& b,
                                              int sign_cap = kDefaultSearchCap) {
  if (a.k != b.k || a.d != b.d)
    throw Error(errc::dimension_mismatch, "standardizations live in different shape spaces");
  const int k = a.k;
  if (k > sign_cap)
    throw Error(errc::instance_too_large,
                "k=" + std::to_string(k) + " exceeds the sign search cap " + std::to_string(sign_cap));

  const Eigen::MatrixXd c = a.projection.cwiseProduct(b.projection);

  Eigen::VectorXd sv = Eigen::VectorXd::Ones(k);
  double q = c.sum();
  double best_q = q;
  Eigen::VectorXd best_s = sv;

  const std::uint64_t steps = std::uint64_t{1} << (k - 1);
  for (std::uint64_t t = 1; t < steps; ++t) {
    const int bit = std::countr_zero(t) + 1;  // landmark index to flip, sign 1 stays +1
    const double si = sv(bit);
    const double cross = c.row(bit).dot(sv) - c(bit, bit) * si;
    q -= 4.0 * si * cross;
    sv(bit) = -si;
    if ((t & 0x3fff) == 0) q = sv.dot(c * sv);  // resync the drifting objective
    if (q > best_q) {
      best_q = q;
      best_s = sv;
    }
  }

  // Evaluate the winning sign class directly; the factored objective loses
  // too much precision to resolve near-zero distances.
  SignSearchResult out;
  out.distance =
      (best_s.asDiagonal() * a.projection * best_s.asDiagonal() - b.projection).norm();
  out.signs.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) out.signs.push_back(best_s(i) > 0 ? 1 : -1);
  return out;
}

inline double shape_distance(const TylerStandardization& a, const TylerStandardization& b,
                             int sign_cap = kDefaultSearchCap) {
  return shape_distance_signed(a, b, sign_cap).distance;
}

/// Derivative of D -> projection_matrix(D * P) at D = Id along the i-th
/// diagonal direction, in closed form:
///   e_i e_i^t Pr + Pr e_i e_i^t - 2 Pr e_i e_i^t Pr,   Pr = P P^t.
/// Requires P to be standardized (orthonormal columns).
inline Eigen::MatrixXd diagonal_action_derivative(const Eigen::MatrixXd& p, int landmark,
                                                  double check_tol = 1e-8) {
  if (landmark < 1 || landmark > p.rows())
    throw Error(errc::dimension_mismatch, "landmark index out of range");
  if (detail::column_residual(p) > check_tol)
    throw Error(errc::not_standardized, "matrix does not have orthonormal columns");
  const Eigen::MatrixXd pr = p * p.transpose();
  const Eigen::VectorXd u = pr.col(landmark - 1);
  Eigen::MatrixXd out = -2.0 * (u * u.transpose());
  out.row(landmark - 1) += u.transpose();
  out.col(landmark - 1) += u;
  return out;
}

enum class Standardizability { tyler_regular, balanced_splittable, no };

inline const char* to_string(Standardizability s) {
  switch (s) {
    case Standardizability::tyler_regular: return "tyler_regular";
    case Standardizability::balanced_splittable: return "balanced_splittable";
    case Standardizability::no: return "no";
  }
  return "?";
}

struct StandardizabilityReport {
  Standardizability kind = Standardizability::no;
  std::optional<SplitWitness> witness;  // a balanced split, when one exists
};

/// Classifies whether Tyler standardization exists. Tyler regular shapes
/// qualify; so do the splittable shapes whose every boundary flat is one side
/// of an exact balanced split, |I|(d+1) = j k with the complementary
/// constraint present. Decided in exact integer arithmetic on the flats.
inline StandardizabilityReport is_standardizable(const Configuration& c,
                                                 double tol = kDefaultRankTol,
                                                 const CancelFn& cancel = {}) {
  const auto report = constraint_flats(c, tol, cancel);
  StandardizabilityReport out;
  out.kind = Standardizability::tyler_regular;
  for (const auto& flat : report.distinct_flats()) {
    const long lhs = static_cast<long>(flat.indices.size()) * (c.d() + 1);
    const long rhs = static_cast<long>(flat.rank) * c.k();
    if (lhs < rhs) continue;
    if (lhs == rhs) {
      const auto comp = detail::complement_of(flat.indices, c.k());
      if (!comp.empty() &&
          numerical_rank(rows_subset(c.matrix(), comp), tol) <= c.d() + 1 - flat.rank) {
        out.kind = Standardizability::balanced_splittable;
        if (!out.witness) out.witness = SplitWitness{flat.indices, flat.rank};
        continue;
      }
    }
    return StandardizabilityReport{Standardizability::no, std::nullopt};
  }
  return out;
}

}  // namespace projshape
