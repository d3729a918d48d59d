#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "projshape/graphs.hpp"

namespace projshape {

/// Bookstein-type coordinates: the unique projective transformation carrying
/// the frame to the standard frame (identity rows followed by the all-ones
/// row) is applied to the whole configuration and the remaining k-d-2
/// landmarks are returned as canonical projective points, in original order.
inline std::vector<ProjectivePoint> frame_coordinates(const Configuration& c,
                                                      const std::vector<int>& frame,
                                                      double tol = kDefaultRankTol) {
  if (static_cast<int>(frame.size()) != c.d() + 2)
    throw Error(errc::dimension_mismatch, "frame must list d+2 landmarks");
  if (!detail::subset_general_position(c, frame, tol))
    throw Error(errc::not_a_frame, "frame landmarks are not in general position");

  std::vector<int> head(frame.begin(), frame.end() - 1);
  const Eigen::MatrixXd p0 = rows_subset(c.matrix(), head);
  const Eigen::MatrixXd binv = p0.fullPivLu().inverse();
  const Eigen::RowVectorXd alpha = c.landmark(frame.back()) * binv;
  // General position makes every coordinate of alpha nonzero.
  Eigen::MatrixXd b = binv;
  for (Eigen::Index j = 0; j < alpha.size(); ++j) b.col(j) /= alpha(j);

  std::vector<ProjectivePoint> out;
  for (int i = 1; i <= c.k(); ++i) {
    if (std::find(frame.begin(), frame.end(), i) != frame.end()) continue;
    out.push_back(canonicalize_point((c.landmark(i) * b).transpose()));
  }
  return out;
}

/// Chart coordinates over a pseudo-frame: projective points for the rows not
/// used by the tree, and for every tree row the real entries left free after
/// the tree-determined entries are scaled to one.
struct ChartPoint {
  struct TreeRow {
    int color = 0;                // landmark labelling the row
    std::vector<int> free_cols;   // columns not pinned by the tree, ascending
    Eigen::VectorXd values;       // entries at free_cols, length d - |E_l|
  };

  std::vector<int> free_landmarks;           // labels of the free rows
  std::vector<ProjectivePoint> free_points;  // one point of RP^d per free row
  std::vector<TreeRow> tree_rows;

  int dimension(int d) const {
    int total = d * static_cast<int>(free_points.size());
    for (const auto& row : tree_rows) total += static_cast<int>(row.values.size());
    return total;
  }
};

/// Chart map for shapes containing the pseudo-frame. Row and column scalings
/// that set every tree-pinned entry of P_* to one are solved by walking the
/// pinning relations out from column 1; the spanning tree makes the solution
/// unique once the column-1 scale is fixed. Each color class of the tree must
/// be connected (canonical pseudo-frames always are), otherwise the pinned
/// entries carry a cross-ratio obstruction and no such scaling exists.
inline ChartPoint pseudo_frame_coordinates(const Configuration& c, const PseudoFrame& pf,
                                           double tol = kDefaultRankTol) {
  const int d = c.d();
  const int k = c.k();
  const Eigen::MatrixXd pstar = normalize_to_graph_form(c, pf.base, tol);
  const auto labels = base_complement(c, pf.base);

  if (static_cast<int>(pf.tree.edges.size()) != d)
    throw Error(errc::invariant_violation, "pseudo-frame tree must have exactly d edges");
  if (pf.tree.vertex_count != d + 1)
    throw Error(errc::invariant_violation, "pseudo-frame tree must span d+1 vertices");
  if (!pf.tree.connected())
    throw Error(errc::invariant_violation, "pseudo-frame tree is not spanning");

  // Row index of P_* per color, pinned columns per color.
  std::map<int, Eigen::Index> row_of;
  for (std::size_t r = 0; r < labels.size(); ++r) row_of[labels[r]] = static_cast<Eigen::Index>(r);
  std::map<int, std::vector<int>> pinned;  // color -> sorted pinned columns
  for (const auto& e : pf.tree.edges) {
    auto it = row_of.find(e.color);
    if (it == row_of.end())
      throw Error(errc::invariant_violation, "tree color is not a landmark outside the base");
    if (!detail::entry_nonzero(pstar, it->second, e.i - 1, tol) ||
        !detail::entry_nonzero(pstar, it->second, e.j - 1, tol))
      throw Error(errc::pseudo_frame_absent,
                  "tree edge entry below rank tolerance for color " + std::to_string(e.color));
    auto& cols = pinned[e.color];
    for (int v : {e.i, e.j})
      if (std::find(cols.begin(), cols.end(), v) == cols.end()) cols.push_back(v);
  }
  for (auto& [color, cols] : pinned) {
    std::sort(cols.begin(), cols.end());
    if (static_cast<int>(cols.size()) != pf.edges_of_color(color) + 1)
      throw Error(errc::invariant_violation,
                  "tree edges of color " + std::to_string(color) + " are not connected");
  }

  // Solve r_l * P(l,i) * c_i = 1 over the pinned entries, anchored at c_1 = 1.
  Eigen::VectorXd col_scale = Eigen::VectorXd::Zero(d + 1);
  std::map<int, double> row_scale;
  std::vector<bool> col_known(static_cast<std::size_t>(d + 1), false);
  col_scale(0) = 1.0;
  col_known[0] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [color, cols] : pinned) {
      const Eigen::Index r = row_of[color];
      auto row_it = row_scale.find(color);
      if (row_it == row_scale.end()) {
        for (int col : cols) {
          if (col_known[static_cast<std::size_t>(col - 1)]) {
            row_scale[color] = 1.0 / (pstar(r, col - 1) * col_scale(col - 1));
            row_it = row_scale.find(color);
            progress = true;
            break;
          }
        }
      }
      if (row_it == row_scale.end()) continue;
      for (int col : cols) {
        if (!col_known[static_cast<std::size_t>(col - 1)]) {
          col_scale(col - 1) = 1.0 / (pstar(r, col - 1) * row_it->second);
          col_known[static_cast<std::size_t>(col - 1)] = true;
          progress = true;
        }
      }
    }
  }
  for (bool known : col_known)
    if (!known) throw Error(errc::invariant_violation, "tree does not reach every column");

  ChartPoint chart;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const int color = labels[r];
    const auto pin_it = pinned.find(color);
    Eigen::RowVectorXd scaled =
        pstar.row(static_cast<Eigen::Index>(r)).cwiseProduct(col_scale.transpose());
    if (pin_it == pinned.end()) {
      chart.free_landmarks.push_back(color);
      chart.free_points.push_back(canonicalize_point(scaled.transpose()));
      continue;
    }
    scaled *= row_scale.at(color);
    ChartPoint::TreeRow tr;
    tr.color = color;
    for (int col = 1; col <= d + 1; ++col)
      if (std::find(pin_it->second.begin(), pin_it->second.end(), col) == pin_it->second.end())
        tr.free_cols.push_back(col);
    tr.values.resize(static_cast<Eigen::Index>(tr.free_cols.size()));
    for (std::size_t t = 0; t < tr.free_cols.size(); ++t)
      tr.values(static_cast<Eigen::Index>(t)) = scaled(tr.free_cols[t] - 1);
    chart.tree_rows.push_back(std::move(tr));
  }

  if (chart.dimension(d) != d * (k - d - 2))
    throw Error(errc::invariant_violation, "chart dimension identity violated");
  return chart;
}

/// Decides [a] = [b] for free shapes by comparing chart coordinates over a
/// canonical pseudo-frame of a. Projective points are compared by
/// |<u,v>| >= 1 - tol, tree-row entries by absolute difference.
inline bool shape_equal(const Configuration& a, const Configuration& b, double tol = 1e-8,
                        double rank_tol = kDefaultRankTol, int search_cap = kDefaultSearchCap,
                        const CancelFn& cancel = {}) {
  if (a.d() != b.d() || a.k() != b.k())
    throw Error(errc::dimension_mismatch, "configurations live in different shape spaces");
  const auto pf = find_pseudo_frame(a, rank_tol, search_cap, cancel);
  if (!pf) throw Error(errc::not_free, "first configuration is not free");
  if (!is_free(b, rank_tol, search_cap, cancel))
    throw Error(errc::not_free, "second configuration is not free");

  // b must contain the same pseudo-frame; the graph is a shape invariant, so
  // failing to contain it already separates the shapes.
  if (numerical_rank(rows_subset(b.matrix(), pf->base), rank_tol) != b.d() + 1) return false;
  ChartPoint cb;
  try {
    cb = pseudo_frame_coordinates(b, *pf, rank_tol);
  } catch (const Error& e) {
    if (e.code() == errc::pseudo_frame_absent) return false;
    throw;
  }
  const ChartPoint ca = pseudo_frame_coordinates(a, *pf, rank_tol);

  if (ca.free_landmarks != cb.free_landmarks) return false;
  for (std::size_t i = 0; i < ca.free_points.size(); ++i)
    if (!points_close(ca.free_points[i], cb.free_points[i], tol)) return false;
  for (std::size_t i = 0; i < ca.tree_rows.size(); ++i) {
    const auto& ra = ca.tree_rows[i];
    const auto& rb = cb.tree_rows[i];
    if (ra.color != rb.color || ra.free_cols != rb.free_cols) return false;
    if (ra.values.size() > 0 && (ra.values - rb.values).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace projshape
