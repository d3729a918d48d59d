#pragma once

#include <Eigen/Dense>
#include <vector>

#include "projshape/errors.hpp"

namespace projshape {

/// Default relative singular-value cutoff used by every rank decision in the
/// library. One consistent notion of rank keeps all classifications coherent.
inline constexpr double kDefaultRankTol = 1e-9;

/// Number of singular values above tol * sigma_max * max(rows, cols).
inline int numerical_rank(const Eigen::MatrixXd& m, double tol = kDefaultRankTol) {
  if (m.rows() == 0 || m.cols() == 0)
    throw Error(errc::invariant_violation, "numerical_rank of empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax == 0.0) return 0;
  const double cutoff = tol * smax * static_cast<double>(std::max(m.rows(), m.cols()));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

/// Stack the rows named by `indices` (1-based landmark indices).
inline Eigen::MatrixXd rows_subset(const Eigen::MatrixXd& m, const std::vector<int>& indices) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), m.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > m.rows())
      throw Error(errc::dimension_mismatch, "row index out of range");
    out.row(static_cast<Eigen::Index>(i)) = m.row(indices[i] - 1);
  }
  return out;
}

/// Symmetric inverse square root of an SPD matrix.
inline Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& m, double floor_ratio = 1e-14) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const auto& ev = es.eigenvalues();
  const double emax = ev(ev.size() - 1);
  if (emax <= 0.0 || ev(0) <= floor_ratio * emax)
    throw Error(errc::rank_deficient, "matrix numerically singular in inverse square root");
  Eigen::VectorXd inv_sqrt = ev.array().sqrt().inverse();
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
}

/// Max absolute entry.
inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace projshape
