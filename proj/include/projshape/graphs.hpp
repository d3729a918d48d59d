#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "projshape/constraints.hpp"
#include "projshape/types.hpp"

namespace projshape {

/// Edge of the configuration graph: vertices i < j are columns of the
/// normalized matrix, the color is the landmark index that produced it.
struct ColoredEdge {
  int i = 0;
  int j = 0;
  int color = 0;

  bool operator==(const ColoredEdge&) const = default;
  bool operator<(const ColoredEdge& o) const {
    if (color != o.color) return color < o.color;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

/// The edge-colored graph G(P) of a configuration over a chosen base of d+1
/// landmarks in general position. Vertices are {1, ..., d+1}; an edge of
/// color l joins i and j when row l of the normalized matrix is nonzero in
/// both columns. Multiple colors between the same pair are allowed.
struct ColoredGraph {
  int vertex_count = 0;
  std::vector<ColoredEdge> edges;  // sorted by (color, i, j)

  bool operator==(const ColoredGraph&) const = default;

  bool connected() const {
    if (vertex_count <= 1) return true;
    std::vector<int> comp(static_cast<std::size_t>(vertex_count));
    for (int v = 0; v < vertex_count; ++v) comp[static_cast<std::size_t>(v)] = v;
    const std::function<int(int)> find = [&](int v) {
      while (comp[static_cast<std::size_t>(v)] != v) {
        comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
        v = comp[static_cast<std::size_t>(v)];
      }
      return v;
    };
    for (const auto& e : edges) comp[static_cast<std::size_t>(find(e.i - 1))] = find(e.j - 1);
    const int root = find(0);
    for (int v = 1; v < vertex_count; ++v)
      if (find(v) != root) return false;
    return true;
  }

  std::vector<int> colors() const {
    std::vector<int> out;
    for (const auto& e : edges)
      if (out.empty() || out.back() != e.color) out.push_back(e.color);
    return out;
  }

  /// Plain DOT emission for visualization tooling.
  std::string to_dot() const {
    std::ostringstream os;
    os << "graph G {\n";
    for (int v = 1; v <= vertex_count; ++v) os << "  " << v << ";\n";
    for (const auto& e : edges)
      os << "  " << e.i << " -- " << e.j << " [label=\"" << e.color << "\"];\n";
    os << "}\n";
    return os.str();
  }
};

/// d+1 base landmarks in general position plus a spanning tree of G(P) whose
/// edges are colored by landmarks outside the base.
struct PseudoFrame {
  std::vector<int> base;  // ordered, 1-based landmark indices
  ColoredGraph tree;      // exactly d edges spanning vertices 1..d+1

  /// Number of distinct colors used by the tree.
  int color_count() const { return static_cast<int>(tree.colors().size()); }

  /// Edge multiplicity of color l in the tree.
  int edges_of_color(int l) const {
    int n = 0;
    for (const auto& e : tree.edges)
      if (e.color == l) ++n;
    return n;
  }
};

/// Normalized matrix P_* = P_1 * P_0^{-1} where P_0 holds the base rows and
/// P_1 the remaining rows in original order. The configuration is equivalent
/// to [Id; P_*] after reordering rows to put the base first.
inline Eigen::MatrixXd normalize_to_graph_form(const Configuration& c, const std::vector<int>& base,
                                               double tol = kDefaultRankTol) {
  if (static_cast<int>(base.size()) != c.d() + 1)
    throw Error(errc::dimension_mismatch, "base must list d+1 landmarks");
  const Eigen::MatrixXd p0 = rows_subset(c.matrix(), base);
  if (numerical_rank(p0, tol) != c.d() + 1)
    throw Error(errc::singular_base, "base landmarks are not in general position");
  std::vector<int> rest;
  for (int i = 1; i <= c.k(); ++i)
    if (std::find(base.begin(), base.end(), i) == base.end()) rest.push_back(i);
  const Eigen::MatrixXd p1 = rows_subset(c.matrix(), rest);
  // P_1 * P_0^{-1} via a solve against P_0^T.
  return p0.transpose().fullPivLu().solve(p1.transpose()).transpose();
}

/// Landmarks outside the base, in original order (the row labels of P_*).
inline std::vector<int> base_complement(const Configuration& c, const std::vector<int>& base) {
  std::vector<int> rest;
  for (int i = 1; i <= c.k(); ++i)
    if (std::find(base.begin(), base.end(), i) == base.end()) rest.push_back(i);
  return rest;
}

namespace detail {

/// Nonzero test for entries of P_*: the rank tolerance scaled by the row norm.
inline bool entry_nonzero(const Eigen::MatrixXd& pstar, Eigen::Index row, Eigen::Index col,
                          double tol) {
  return std::abs(pstar(row, col)) > tol * pstar.row(row).norm();
}

}  // namespace detail

/// The graph G(P) over the given base. Invariant under the group action.
inline ColoredGraph graph_of(const Configuration& c, const std::vector<int>& base,
                             double tol = kDefaultRankTol) {
  const Eigen::MatrixXd pstar = normalize_to_graph_form(c, base, tol);
  const auto labels = base_complement(c, base);
  ColoredGraph g;
  g.vertex_count = c.d() + 1;
  for (Eigen::Index r = 0; r < pstar.rows(); ++r) {
    std::vector<int> support;
    for (Eigen::Index col = 0; col < pstar.cols(); ++col)
      if (detail::entry_nonzero(pstar, r, col, tol)) support.push_back(static_cast<int>(col) + 1);
    for (std::size_t a = 0; a < support.size(); ++a)
      for (std::size_t b = a + 1; b < support.size(); ++b)
        g.edges.push_back(ColoredEdge{support[a], support[b], labels[static_cast<std::size_t>(r)]});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

/// Lexicographically smallest set of d+1 landmarks in general position, if any.
inline std::optional<std::vector<int>> find_general_position_base(const Configuration& c,
                                                                  double tol = kDefaultRankTol,
                                                                  const CancelFn& cancel = {}) {
  std::vector<int> subset(static_cast<std::size_t>(c.d() + 1));
  for (int i = 0; i <= c.d(); ++i) subset[static_cast<std::size_t>(i)] = i + 1;
  unsigned long polls = 0;
  do {
    detail::poll_cancel(cancel, polls);
    if (numerical_rank(rows_subset(c.matrix(), subset), tol) == c.d() + 1) return subset;
  } while (detail::next_combination(subset, c.k()));
  return std::nullopt;
}

/// Freeness via graph connectivity: a full-rank configuration is free iff the
/// graph over a general-position base is connected. Rank-deficient
/// configurations have no such base and are never free.
inline bool is_free_via_graph(const Configuration& c, double tol = kDefaultRankTol,
                              const CancelFn& cancel = {}) {
  const auto base = find_general_position_base(c, tol, cancel);
  if (!base) return false;
  return graph_of(c, *base, tol).connected();
}

namespace detail {

/// General position of a chosen subset: every (d+1)-subset has full rank.
inline bool subset_general_position(const Configuration& c, const std::vector<int>& indices,
                                    double tol) {
  const int d1 = c.d() + 1;
  if (static_cast<int>(indices.size()) < d1) return false;
  std::vector<int> pick(static_cast<std::size_t>(d1));
  for (int i = 0; i < d1; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
  do {
    std::vector<int> rows;
    rows.reserve(static_cast<std::size_t>(d1));
    for (int p : pick) rows.push_back(indices[static_cast<std::size_t>(p - 1)]);
    if (numerical_rank(rows_subset(c.matrix(), rows), tol) != d1) return false;
  } while (next_combination(pick, static_cast<int>(indices.size())));
  return true;
}

}  // namespace detail

/// Lexicographically smallest d+2 landmarks in general position (a projective
/// frame), or none.
inline std::optional<std::vector<int>> find_frame(const Configuration& c,
                                                  double tol = kDefaultRankTol,
                                                  const CancelFn& cancel = {}) {
  std::vector<int> subset(static_cast<std::size_t>(c.d() + 2));
  for (int i = 0; i <= c.d() + 1; ++i) subset[static_cast<std::size_t>(i)] = i + 1;
  unsigned long polls = 0;
  do {
    detail::poll_cancel(cancel, polls);
    if (detail::subset_general_position(c, subset, tol)) return subset;
  } while (detail::next_combination(subset, c.k()));
  return std::nullopt;
}

/// Canonical pseudo-frame of a free configuration: the lexicographically
/// smallest general-position base, with a spanning tree grown from vertex 1
/// always taking the smallest (color, i, j) edge that reaches a new vertex.
/// Returns none when the configuration is not free.
///
/// The greedy edge order guarantees each color class of the tree is a star
/// (edges of one color share the smallest vertex of that color's support),
/// which keeps the chart normalization of pseudo_frame_coordinates solvable.
inline std::optional<PseudoFrame> find_pseudo_frame(const Configuration& c,
                                                    double tol = kDefaultRankTol,
                                                    int search_cap = kDefaultSearchCap,
                                                    const CancelFn& cancel = {}) {
  if (!is_free(c, tol, search_cap, cancel)) return std::nullopt;
  const auto base = find_general_position_base(c, tol, cancel);
  if (!base) return std::nullopt;  // unreachable: free implies full rank
  const ColoredGraph g = graph_of(c, *base, tol);

  PseudoFrame pf;
  pf.base = *base;
  pf.tree.vertex_count = g.vertex_count;
  std::vector<bool> visited(static_cast<std::size_t>(g.vertex_count), false);
  visited[0] = true;
  for (int step = 0; step < g.vertex_count - 1; ++step) {
    const ColoredEdge* best = nullptr;
    for (const auto& e : g.edges) {
      if (visited[static_cast<std::size_t>(e.i - 1)] == visited[static_cast<std::size_t>(e.j - 1)])
        continue;
      if (!best || e < *best) best = &e;
    }
    if (!best) return std::nullopt;  // unreachable: free implies connected
    visited[static_cast<std::size_t>(best->i - 1)] = true;
    visited[static_cast<std::size_t>(best->j - 1)] = true;
    pf.tree.edges.push_back(*best);
  }
  std::sort(pf.tree.edges.begin(), pf.tree.edges.end());
  return pf;
}

}  // namespace projshape
