#pragma once

#include <json.hpp>

#include "projshape/constraints.hpp"
#include "projshape/graphs.hpp"
#include "projshape/io.hpp"
#include "projshape/subspace_numbers.hpp"
#include "projshape/topology.hpp"
#include "projshape/tyler.hpp"

namespace projshape {

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// {"flats": {"1": [{"indices": [...], "rank": r}, ...], ...}} with 1-based
/// landmark indices.
inline nlohmann::json constraint_report_to_json(const ConstraintReport& report) {
  nlohmann::json flats = nlohmann::json::object();
  for (int j = 1; j <= report.d; ++j) {
    nlohmann::json level = nlohmann::json::array();
    for (const auto& flat : report.at_level(j))
      level.push_back(nlohmann::json{{"indices", flat.indices}, {"rank", flat.rank}});
    flats[std::to_string(j)] = std::move(level);
  }
  return nlohmann::json{{"flats", std::move(flats)}};
}

inline nlohmann::json graph_to_json(const ColoredGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges)
    edges.push_back(nlohmann::json{{"i", e.i}, {"j", e.j}, {"color", e.color}});
  return nlohmann::json{{"vertices", g.vertex_count}, {"edges", std::move(edges)}};
}

inline nlohmann::json pseudo_frame_to_json(const PseudoFrame& pf) {
  return nlohmann::json{{"base", pf.base}, {"tree", graph_to_json(pf.tree)}};
}

inline nlohmann::json standardization_to_json(const TylerStandardization& st) {
  return nlohmann::json{{"d", st.d},
                        {"k", st.k},
                        {"matrix", matrix_to_json(st.matrix)},
                        {"projection", matrix_to_json(st.projection)},
                        {"residual", st.residual},
                        {"iterations", st.iterations}};
}

inline nlohmann::json sequence_to_json(const ShapeSequence& seq) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < seq.terms.size(); ++i) {
    nlohmann::json term{{"n", i + 1},
                        {"matrix", matrix_to_json(seq.terms[i])},
                        {"residual", seq.residuals[i]}};
    if (!seq.transformed.empty()) {
      term["transformed"] = matrix_to_json(seq.transformed[i]);
      term["residual_second"] = seq.residuals_second[i];
    }
    terms.push_back(std::move(term));
  }
  nlohmann::json limits = nlohmann::json::array();
  for (const auto& lim : seq.limits) limits.push_back(matrix_to_json(lim));
  return nlohmann::json{
      {"description", seq.description}, {"terms", std::move(terms)}, {"limits", std::move(limits)}};
}

inline nlohmann::json block_pair_to_json(const BlockPair& pair) {
  return nlohmann::json{{"d", pair.d},
                        {"k", pair.k},
                        {"p", matrix_to_json(pair.p)},
                        {"q", matrix_to_json(pair.q)},
                        {"block_rows", pair.block_rows},
                        {"block_cols", pair.block_cols}};
}

}  // namespace projshape
