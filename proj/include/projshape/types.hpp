#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "projshape/errors.hpp"
#include "projshape/linalg.hpp"

namespace projshape {

/// A configuration of k landmarks in RP^d held in homogeneous coordinates:
/// a k x (d+1) real matrix whose row i represents landmark i. Rows must be
/// nonzero. The shape-space results assume k >= d+3; k = d+2 is admitted so
/// bare frames (like the standard frame) remain representable.
///
/// Landmark indices are 1-based everywhere in the public interface.
class Configuration {
 public:
  Configuration(int d, int k, Eigen::MatrixXd matrix)
      : d_(d), k_(k), matrix_(std::move(matrix)) {
    if (d_ < 1) throw Error(errc::invariant_violation, "projective dimension d must be >= 1");
    if (k_ < d_ + 2)
      throw Error(errc::invariant_violation,
                  "landmark count k must be at least d+2 (got k=" + std::to_string(k_) +
                      ", d=" + std::to_string(d_) + ")");
    if (matrix_.rows() != k_ || matrix_.cols() != d_ + 1)
      throw Error(errc::dimension_mismatch, "matrix must be k x (d+1)");
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
      if (matrix_.row(i).norm() == 0.0)
        throw Error(errc::invariant_violation,
                    "landmark " + std::to_string(i + 1) + " is the zero vector");
  }

  static Configuration from_matrix(const Eigen::MatrixXd& m) {
    return Configuration(static_cast<int>(m.cols()) - 1, static_cast<int>(m.rows()), m);
  }

  int d() const { return d_; }
  int k() const { return k_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  Eigen::RowVectorXd landmark(int i) const {
    if (i < 1 || i > k_) throw Error(errc::dimension_mismatch, "landmark index out of range");
    return matrix_.row(i - 1);
  }

  bool operator==(const Configuration& o) const {
    return d_ == o.d_ && k_ == o.k_ && matrix_ == o.matrix_;
  }

 private:
  int d_;
  int k_;
  Eigen::MatrixXd matrix_;
};

/// A point of RP^d in canonical coordinates: unit Euclidean norm with the
/// first nonzero coordinate strictly positive.
struct ProjectivePoint {
  Eigen::VectorXd coords;

  bool operator==(const ProjectivePoint& o) const { return coords == o.coords; }
};

/// Scale-and-sign canonical representative of the line spanned by v.
/// canonicalize_point(lambda * v) == canonicalize_point(v) for all lambda != 0.
inline ProjectivePoint canonicalize_point(const Eigen::VectorXd& v) {
  const double n = v.norm();
  if (n == 0.0) throw Error(errc::zero_vector, "cannot canonicalize the zero vector");
  Eigen::VectorXd u = v / n;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u(i) != 0.0) {
      if (u(i) < 0.0) u = -u;
      break;
    }
  }
  return ProjectivePoint{std::move(u)};
}

/// |<u,v>| >= 1 - tol for unit vectors; equality test for projective points.
inline bool points_close(const ProjectivePoint& a, const ProjectivePoint& b, double tol = 1e-9) {
  if (a.coords.size() != b.coords.size()) return false;
  return std::abs(a.coords.dot(b.coords)) >= 1.0 - tol;
}

/// An element (D, B) of the acting group: D = diag(row_scales) from the left,
/// B an invertible (d+1) x (d+1) matrix from the right.
class GroupElement {
 public:
  GroupElement(Eigen::VectorXd row_scales, Eigen::MatrixXd right_matrix)
      : row_scales_(std::move(row_scales)), right_matrix_(std::move(right_matrix)) {
    for (Eigen::Index i = 0; i < row_scales_.size(); ++i)
      if (row_scales_(i) == 0.0)
        throw Error(errc::invariant_violation, "group element has a zero row scale");
    if (right_matrix_.rows() != right_matrix_.cols())
      throw Error(errc::dimension_mismatch, "right matrix must be square");
    if (numerical_rank(right_matrix_) != right_matrix_.rows())
      throw Error(errc::invariant_violation, "right matrix numerically singular");
  }

  const Eigen::VectorXd& row_scales() const { return row_scales_; }
  const Eigen::MatrixXd& right_matrix() const { return right_matrix_; }

  /// Composition acting as g2 after g1: D2 D1 P B1 B2.
  static GroupElement compose(const GroupElement& g2, const GroupElement& g1) {
    return GroupElement(g2.row_scales_.cwiseProduct(g1.row_scales_),
                        g1.right_matrix_ * g2.right_matrix_);
  }

 private:
  Eigen::VectorXd row_scales_;
  Eigen::MatrixXd right_matrix_;
};

/// Component-wise action: D * P * B. Preserves rank and every projective
/// subspace constraint.
inline Configuration act(const GroupElement& g, const Configuration& c) {
  if (g.row_scales().size() != c.k() || g.right_matrix().rows() != c.d() + 1)
    throw Error(errc::dimension_mismatch, "group element does not fit configuration");
  Eigen::MatrixXd m = g.row_scales().asDiagonal() * c.matrix() * g.right_matrix();
  return Configuration(c.d(), c.k(), std::move(m));
}

inline int configuration_rank(const Configuration& c, double tol = kDefaultRankTol) {
  return numerical_rank(c.matrix(), tol);
}

/// Relabel landmarks: row i of the result is landmark perm[i] of c
/// (perm is 1-based, a permutation of 1..k).
inline Configuration permute_landmarks(const Configuration& c, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != c.k())
    throw Error(errc::dimension_mismatch, "permutation size mismatch");
  Eigen::MatrixXd m(c.k(), c.d() + 1);
  std::vector<bool> seen(static_cast<std::size_t>(c.k()), false);
  for (int i = 0; i < c.k(); ++i) {
    const int src = perm[static_cast<std::size_t>(i)];
    if (src < 1 || src > c.k() || seen[static_cast<std::size_t>(src - 1)])
      throw Error(errc::invariant_violation, "not a permutation of 1..k");
    seen[static_cast<std::size_t>(src - 1)] = true;
    m.row(i) = c.matrix().row(src - 1);
  }
  return Configuration(c.d(), c.k(), std::move(m));
}

}  // namespace projshape
