#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "projshape/charts.hpp"
#include "projshape/constraints.hpp"
#include "projshape/random.hpp"
#include "projshape/types.hpp"

namespace projshape {

/// A sequence of representative matrices together with its limit
/// representative(s). For merge sequences every term also carries the
/// transformed representative of the same shape near the second limit.
struct ShapeSequence {
  std::vector<Eigen::MatrixXd> terms;        // term n is at index n-1
  std::vector<Eigen::MatrixXd> transformed;  // merge only, aligned with terms
  std::vector<Eigen::MatrixXd> limits;       // one (blur) or two (merge) targets
  std::vector<double> residuals;             // max-norm distance of term n to limits[0]
  std::vector<double> residuals_second;      // merge only, distance to limits[1]
  std::string description;
};

/// True when every constraint of `inner` is also a constraint of `outer`,
/// judged on the flat summaries level by level.
inline bool constraints_within(const ConstraintReport& inner, const ConstraintReport& outer) {
  if (inner.d != outer.d || inner.k != outer.k) return false;
  for (int j = 1; j <= inner.d; ++j) {
    for (const auto& f : inner.at_level(j)) {
      const bool covered = std::any_of(
          outer.at_level(j).begin(), outer.at_level(j).end(), [&](const Flat& g) {
            return std::includes(g.indices.begin(), g.indices.end(), f.indices.begin(),
                                 f.indices.end());
          });
      if (!covered) return false;
    }
  }
  return true;
}

namespace detail {

/// Orthonormal row-space basis (r x cols) of the given rows.
inline Eigen::MatrixXd row_space_basis(const Eigen::MatrixXd& m, int rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  return svd.matrixV().leftCols(rank).transpose();
}

/// Deterministic chain of candidate Z blocks: all-ones first, then seeded
/// gaussian draws. The proofs only need some Z that breaks a constraint, so
/// each candidate is verified by the caller and the next one tried on
/// degeneracy.
inline Eigen::MatrixXd z_candidate(Eigen::Index rows, Eigen::Index cols, int attempt,
                                   std::uint64_t seed) {
  if (attempt == 0) return Eigen::MatrixXd::Ones(rows, cols);
  Rng rng(seed + static_cast<std::uint64_t>(attempt));
  Eigen::MatrixXd z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) z(i, j) = rng.gauss();
  return z;
}

}  // namespace detail

/// Constructive blur witness for a splittable shape: a sequence of matrices,
/// all representing one fixed shape strictly less degenerate than [c], that
/// converges entrywise to a representative of [c]. Verified on construction:
/// the term's constraints are a strict subset of those of c.
inline ShapeSequence blur_sequence(const Configuration& c, int n_terms,
                                   double tol = kDefaultRankTol,
                                   int search_cap = kDefaultSearchCap,
                                   const CancelFn& cancel = {}) {
  const auto witness = is_splittable(c, tol, search_cap, cancel);
  if (!witness) throw Error(errc::not_splittable, "blur sequences exist for splittable shapes only");
  if (n_terms < 1) throw Error(errc::invariant_violation, "need at least one term");

  const int d = c.d();
  const int k = c.k();
  const int rank = configuration_rank(c, tol);
  const auto flats_c = constraint_flats(c, tol, cancel);

  // Assemble the limit representative and a "term pattern" function of n.
  Eigen::MatrixXd limit(k, d + 1);
  std::string description;
  Eigen::MatrixXd z;                // the rank-breaking block
  std::vector<int> scaled_rows;     // rows receiving z entries scaled by 1/n
  int z_cols = 0;
  int z_col_start = 0;

  if (rank < d + 1) {
    // Rotate the trailing null direction into the last column: P V = (P_1, ~0).
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c.matrix(), Eigen::ComputeThinV);
    Eigen::MatrixXd pv = c.matrix() * svd.matrixV();
    pv.col(d).setZero();
    limit = pv;
    z_cols = 1;
    z_col_start = d;
    for (int i = 1; i <= k; ++i) scaled_rows.push_back(i);
    description = "blur sequence via rank deficiency (rank " + std::to_string(rank) + ")";
  } else {
    const auto& idx = witness->indices;
    const auto comp = detail::complement_of(idx, k);
    const int j = witness->dim;
    const Eigen::MatrixXd rows_i = rows_subset(c.matrix(), idx);
    const Eigen::MatrixXd rows_c = rows_subset(c.matrix(), comp);
    Eigen::MatrixXd w(d + 1, d + 1);
    w.topRows(j) = detail::row_space_basis(rows_i, j);
    w.bottomRows(d + 1 - j) = detail::row_space_basis(rows_c, d + 1 - j);
    if (numerical_rank(w, tol) != d + 1)
      throw Error(errc::invariant_violation, "split row spaces do not span");
    const Eigen::MatrixXd b = w.inverse();

    limit.setZero();
    for (std::size_t r = 0; r < idx.size(); ++r)
      limit.row(idx[r] - 1).head(j) = (rows_i.row(static_cast<Eigen::Index>(r)) * b).head(j);
    for (std::size_t r = 0; r < comp.size(); ++r)
      limit.row(comp[r] - 1).tail(d + 1 - j) =
          (rows_c.row(static_cast<Eigen::Index>(r)) * b).tail(d + 1 - j);
    z_cols = j;
    scaled_rows = comp;
    description = "blur sequence via split witness";
  }

  const auto term_at = [&](const Eigen::MatrixXd& zb, int n) {
    Eigen::MatrixXd t = limit;
    for (std::size_t r = 0; r < scaled_rows.size(); ++r)
      t.row(scaled_rows[r] - 1).segment(z_col_start, z_cols) +=
          zb.row(static_cast<Eigen::Index>(r)) / static_cast<double>(n);
    return t;
  };

  // Pick a Z whose term is a strictly less constrained shape than c.
  bool found = false;
  for (int attempt = 0; attempt < 9 && !found; ++attempt) {
    z = detail::z_candidate(static_cast<Eigen::Index>(scaled_rows.size()), z_cols, attempt, 0xb1a5u);
    const Eigen::MatrixXd probe = term_at(z, 1);
    bool rows_ok = true;
    for (Eigen::Index i = 0; i < probe.rows(); ++i)
      if (probe.row(i).norm() == 0.0) rows_ok = false;
    if (!rows_ok) continue;
    const auto flats_t = constraint_flats(Configuration(d, k, probe), tol, cancel);
    if (constraints_within(flats_t, flats_c) && !(flats_t == flats_c)) found = true;
  }
  if (!found)
    throw Error(errc::invariant_violation, "no rank-breaking Z found for the blur construction");

  ShapeSequence seq;
  seq.description = description;
  seq.limits.push_back(limit);
  for (int n = 1; n <= n_terms; ++n) {
    seq.terms.push_back(term_at(z, n));
    seq.residuals.push_back(max_abs(seq.terms.back() - limit));
  }
  return seq;
}

/// Two shapes in the block form that makes them inseparable: the upper-left
/// triangular representative p and its mirrored partner q, with the partition
/// of rows and columns into speed blocks.
struct BlockPair {
  int d = 0;
  int k = 0;
  Eigen::MatrixXd p;
  Eigen::MatrixXd q;
  std::vector<int> block_rows;  // row partition sizes, sum k
  std::vector<int> block_cols;  // column partition sizes, sum d+1
};

namespace detail {

struct BlockStructure {
  std::vector<int> row_start, col_start;
  std::vector<std::vector<bool>> p_nonzero, q_nonzero;
  std::vector<Eigen::VectorXd> d_blocks;      // diagonal of D_r per row block
  std::vector<Eigen::MatrixXd> b_blocks;      // B_s per column block
  std::vector<int> d_speed, b_speed;
};

inline Eigen::MatrixXd pair_block(const Eigen::MatrixXd& m, const BlockStructure& st,
                                  const BlockPair& pair, int r, int s) {
  return m.block(st.row_start[static_cast<std::size_t>(r)],
                 st.col_start[static_cast<std::size_t>(s)],
                 pair.block_rows[static_cast<std::size_t>(r)],
                 pair.block_cols[static_cast<std::size_t>(s)]);
}

/// Checks conditions (i)-(iv) of the block form, solves the per-block factors
/// D_r, B_s, and assigns the smallest nonnegative integer speeds compatible
/// with the proof's ordering constraints.
inline BlockStructure analyze_block_pair(const BlockPair& pair, double tol = 1e-9) {
  const int l = static_cast<int>(pair.block_rows.size());
  const int m = static_cast<int>(pair.block_cols.size());
  if (l < 2 || m < 2)
    throw Error(errc::invalid_block_pair, "block partition must have l, m > 1");
  int rows = 0;
  for (int v : pair.block_rows) rows += v;
  int cols = 0;
  for (int v : pair.block_cols) cols += v;
  if (rows != pair.k || cols != pair.d + 1 || pair.p.rows() != pair.k ||
      pair.p.cols() != pair.d + 1 || pair.q.rows() != pair.k || pair.q.cols() != pair.d + 1)
    throw Error(errc::invalid_block_pair, "partition sizes do not match the matrices");

  BlockStructure st;
  st.row_start.resize(static_cast<std::size_t>(l));
  st.col_start.resize(static_cast<std::size_t>(m));
  for (int r = 1; r < l; ++r)
    st.row_start[static_cast<std::size_t>(r)] =
        st.row_start[static_cast<std::size_t>(r - 1)] + pair.block_rows[static_cast<std::size_t>(r - 1)];
  for (int s = 1; s < m; ++s)
    st.col_start[static_cast<std::size_t>(s)] =
        st.col_start[static_cast<std::size_t>(s - 1)] + pair.block_cols[static_cast<std::size_t>(s - 1)];

  const double scale = std::max(max_abs(pair.p), max_abs(pair.q));
  const double zero_tol = tol * std::max(1.0, scale);
  st.p_nonzero.assign(static_cast<std::size_t>(l), std::vector<bool>(static_cast<std::size_t>(m)));
  st.q_nonzero = st.p_nonzero;
  for (int r = 0; r < l; ++r)
    for (int s = 0; s < m; ++s) {
      st.p_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] =
          max_abs(pair_block(pair.p, st, pair, r, s)) > zero_tol;
      st.q_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] =
          max_abs(pair_block(pair.q, st, pair, r, s)) > zero_tol;
    }

  // (iii): P_rs must vanish when some Q_ab with a <= r, b >= s, (a,b) != (r,s)
  // does not. (iv) is the mirrored statement for Q.
  for (int r = 0; r < l; ++r)
    for (int s = 0; s < m; ++s) {
      if (st.p_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)]) {
        for (int a = 0; a <= r; ++a)
          for (int b = s; b < m; ++b)
            if ((a != r || b != s) && st.q_nonzero[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
              throw Error(errc::invalid_block_pair,
                          "condition (iii) violated at block (" + std::to_string(r + 1) + "," +
                              std::to_string(s + 1) + ")");
      }
      if (st.q_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)]) {
        for (int a = r; a < l; ++a)
          for (int b = 0; b <= s; ++b)
            if ((a != r || b != s) && st.p_nonzero[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
              throw Error(errc::invalid_block_pair,
                          "condition (iv) violated at block (" + std::to_string(r + 1) + "," +
                              std::to_string(s + 1) + ")");
      }
    }

  // Shared blocks: solve Q_rs = D_r P_rs B_s, defaulting factors to the
  // identity for blocks not taking part in any shared relation.
  st.d_blocks.resize(static_cast<std::size_t>(l));
  st.b_blocks.resize(static_cast<std::size_t>(m));
  std::vector<bool> d_known(static_cast<std::size_t>(l), false), b_known(static_cast<std::size_t>(m), false);
  const auto shared = [&](int r, int s) {
    return st.p_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] &&
           st.q_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (int r = 0; r < l; ++r)
      for (int s = 0; s < m; ++s) {
        if (!shared(r, s)) continue;
        const bool dk = d_known[static_cast<std::size_t>(r)];
        const bool bk = b_known[static_cast<std::size_t>(s)];
        if (dk && bk) continue;
        const Eigen::MatrixXd pb = pair_block(pair.p, st, pair, r, s);
        const Eigen::MatrixXd qb = pair_block(pair.q, st, pair, r, s);
        if (!dk && !bk) {
          st.d_blocks[static_cast<std::size_t>(r)] =
              Eigen::VectorXd::Ones(pair.block_rows[static_cast<std::size_t>(r)]);
          d_known[static_cast<std::size_t>(r)] = true;
          progress = true;
          continue;
        }
        if (dk && !bk) {
          const Eigen::MatrixXd lhs = st.d_blocks[static_cast<std::size_t>(r)].asDiagonal() * pb;
          st.b_blocks[static_cast<std::size_t>(s)] =
              lhs.completeOrthogonalDecomposition().solve(qb);
          b_known[static_cast<std::size_t>(s)] = true;
          progress = true;
        } else {
          const Eigen::MatrixXd rhs = qb * st.b_blocks[static_cast<std::size_t>(s)]
                                               .completeOrthogonalDecomposition()
                                               .pseudoInverse();
          Eigen::VectorXd dr(pb.rows());
          for (Eigen::Index i = 0; i < pb.rows(); ++i) {
            const double denom = pb.row(i).squaredNorm();
            if (denom == 0.0)
              throw Error(errc::invalid_block_pair, "shared block has a zero row");
            dr(i) = rhs.row(i).dot(pb.row(i)) / denom;
          }
          st.d_blocks[static_cast<std::size_t>(r)] = dr;
          d_known[static_cast<std::size_t>(r)] = true;
          progress = true;
        }
      }
  }
  for (int r = 0; r < l; ++r)
    if (!d_known[static_cast<std::size_t>(r)])
      st.d_blocks[static_cast<std::size_t>(r)] =
          Eigen::VectorXd::Ones(pair.block_rows[static_cast<std::size_t>(r)]);
  for (int s = 0; s < m; ++s)
    if (!b_known[static_cast<std::size_t>(s)])
      st.b_blocks[static_cast<std::size_t>(s)] = Eigen::MatrixXd::Identity(
          pair.block_cols[static_cast<std::size_t>(s)], pair.block_cols[static_cast<std::size_t>(s)]);

  for (int r = 0; r < l; ++r)
    for (int s = 0; s < m; ++s) {
      if (!shared(r, s)) continue;
      const Eigen::MatrixXd reconstructed = st.d_blocks[static_cast<std::size_t>(r)].asDiagonal() *
                                            pair_block(pair.p, st, pair, r, s) *
                                            st.b_blocks[static_cast<std::size_t>(s)];
      if (max_abs(reconstructed - pair_block(pair.q, st, pair, r, s)) > 1e-6 * std::max(1.0, scale))
        throw Error(errc::invalid_block_pair,
                    "shared blocks are not related by diagonal x invertible factors");
    }

  // Smallest nonnegative integer speeds: longest paths in the difference
  // constraint graph. A positive cycle marks an inconsistent pattern.
  const int nvar = l + m;  // d_r at [r], b_s at [l+s]
  std::vector<int> x(static_cast<std::size_t>(nvar), 0);
  struct Arc {
    int from, to, weight;
  };
  std::vector<Arc> arcs;
  for (int r = 0; r + 1 < l; ++r) arcs.push_back({r, r + 1, 1});
  for (int s = 0; s + 1 < m; ++s) arcs.push_back({l + s, l + s + 1, 1});
  for (int r = 0; r < l; ++r)
    for (int s = 0; s < m; ++s) {
      const bool pn = st.p_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
      const bool qn = st.q_nonzero[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
      if (pn && qn) {
        arcs.push_back({r, l + s, 0});
        arcs.push_back({l + s, r, 0});
      } else if (pn) {
        arcs.push_back({r, l + s, 1});  // b_s >= d_r + 1
      } else if (qn) {
        arcs.push_back({l + s, r, 1});  // d_r >= b_s + 1
      }
    }
  for (int pass = 0; pass <= nvar; ++pass) {
    bool changed = false;
    for (const auto& a : arcs) {
      if (x[static_cast<std::size_t>(a.from)] + a.weight > x[static_cast<std::size_t>(a.to)]) {
        x[static_cast<std::size_t>(a.to)] = x[static_cast<std::size_t>(a.from)] + a.weight;
        changed = true;
      }
    }
    if (!changed) break;
    if (pass == nvar)
      throw Error(errc::invalid_block_pair, "speed constraints are cyclic; no valid speeds exist");
  }
  st.d_speed.assign(x.begin(), x.begin() + l);
  st.b_speed.assign(x.begin() + l, x.end());
  return st;
}

}  // namespace detail

/// Validates the structural conditions (i)-(iv) of a block pair.
inline void validate_block_pair(const BlockPair& pair, double tol = 1e-9) {
  (void)detail::analyze_block_pair(pair, tol);
}

/// The canonical non-Hausdorff pair for k = d+3, padded by repeating the
/// second landmark for larger k. Both members contain a frame (hence are
/// free) yet no pair of disjoint neighborhoods separates their shapes.
inline BlockPair nonhausdorff_witness(int d, int k) {
  if (d < 1 || k < d + 3) throw Error(errc::invariant_violation, "need d >= 1 and k >= d+3");
  const int pad = k - (d + 3);
  BlockPair pair;
  pair.d = d;
  pair.k = k;
  pair.p = Eigen::MatrixXd::Zero(k, d + 1);
  pair.q = Eigen::MatrixXd::Zero(k, d + 1);

  // p: all-ones row, then e_1 repeated over the padding, then the rest of the
  // identity, then e_{d+1} again. q mirrors it.
  pair.p.row(0).setOnes();
  pair.q(0, 0) = 1.0;
  for (int t = 0; t <= pad; ++t) {
    pair.p(1 + t, 0) = 1.0;
    pair.q(1 + t, 0) = 1.0;
  }
  for (int i = 1; i <= d; ++i) {
    pair.p(1 + pad + i, i) = 1.0;
    pair.q(1 + pad + i, i) = 1.0;
  }
  pair.p(k - 1, d) = 1.0;
  pair.q.row(k - 1).setOnes();

  pair.block_rows.push_back(2 + pad);
  for (int t = 0; t < d - 1; ++t) pair.block_rows.push_back(1);
  pair.block_rows.push_back(2);
  pair.block_cols.assign(static_cast<std::size_t>(d + 1), 1);

  validate_block_pair(pair);
  return pair;
}

/// The interpolating sequence of the non-Hausdorff construction: for each n a
/// single shape with one representative within O(1/n) of p and a transformed
/// representative within O(1/n) of q.
inline ShapeSequence merge_sequence(const BlockPair& pair, int n_terms, double tol = 1e-9) {
  if (n_terms < 1) throw Error(errc::invariant_violation, "need at least one term");
  const auto st = detail::analyze_block_pair(pair, tol);
  const int l = static_cast<int>(pair.block_rows.size());
  const int m = static_cast<int>(pair.block_cols.size());

  ShapeSequence seq;
  seq.description = "merge sequence with two limits";
  seq.limits.push_back(pair.p);
  seq.limits.push_back(pair.q);

  for (int n = 1; n <= n_terms; ++n) {
    const double nd = static_cast<double>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(pair.k, pair.d + 1);
    for (int r = 0; r < l; ++r)
      for (int s = 0; s < m; ++s) {
        const auto rs = static_cast<std::size_t>(r);
        const auto ss = static_cast<std::size_t>(s);
        Eigen::MatrixXd block;
        if (st.p_nonzero[rs][ss]) {
          block = detail::pair_block(pair.p, st, pair, r, s);
        } else if (st.q_nonzero[rs][ss]) {
          const double factor = std::pow(nd, st.b_speed[ss] - st.d_speed[rs]);
          block = factor *
                  (st.d_blocks[rs].cwiseInverse().asDiagonal() *
                   detail::pair_block(pair.q, st, pair, r, s) *
                   st.b_blocks[ss].fullPivLu().inverse());
        } else {
          continue;
        }
        a.block(st.row_start[rs], st.col_start[ss], pair.block_rows[rs], pair.block_cols[ss]) =
            block;
      }

    Eigen::MatrixXd transformed = a;
    for (int r = 0; r < l; ++r) {
      const auto rs = static_cast<std::size_t>(r);
      const double factor = std::pow(nd, st.d_speed[rs]);
      transformed.middleRows(st.row_start[rs], pair.block_rows[rs]) =
          factor * st.d_blocks[rs].asDiagonal() *
          transformed.middleRows(st.row_start[rs], pair.block_rows[rs]);
    }
    for (int s = 0; s < m; ++s) {
      const auto ss = static_cast<std::size_t>(s);
      const double factor = std::pow(nd, -st.b_speed[ss]);
      transformed.middleCols(st.col_start[ss], pair.block_cols[ss]) =
          factor * transformed.middleCols(st.col_start[ss], pair.block_cols[ss]) * st.b_blocks[ss];
    }

    seq.terms.push_back(a);
    seq.transformed.push_back(transformed);
    seq.residuals.push_back(max_abs(a - pair.p));
    seq.residuals_second.push_back(max_abs(transformed - pair.q));
  }
  return seq;
}

/// Deterministic landmark sampler: rows uniform on the unit sphere of
/// R^{d+1}, canonicalized, redrawn until the configuration is in general
/// position (succeeds with probability one per draw).
inline Configuration random_general_position(int d, int k, std::uint64_t seed,
                                             double tol = kDefaultRankTol) {
  Rng rng(seed);
  while (true) {
    Eigen::MatrixXd m(k, d + 1);
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd v(d + 1);
      double norm = 0.0;
      while (norm == 0.0) {
        for (int j = 0; j <= d; ++j) v(j) = rng.gauss();
        norm = v.norm();
      }
      m.row(i) = canonicalize_point(v).coords.transpose();
    }
    Configuration c(d, k, std::move(m));
    if (is_general_position(c, tol)) return c;
  }
}

/// Plants the single constraint (I, j): landmarks in I are sampled inside a
/// random rank-j subspace, the rest generic. The result is verified to carry
/// a flat containing I at level j and redrawn otherwise.
inline Configuration random_with_constraint(int d, int k, const std::vector<int>& indices, int j,
                                            std::uint64_t seed, double tol = kDefaultRankTol) {
  if (j < 1 || j > d || static_cast<int>(indices.size()) <= j)
    throw Error(errc::infeasible_constraint,
                "constraint needs 1 <= j <= d and |I| >= j+1 (trivial otherwise)");
  for (int i : indices)
    if (i < 1 || i > k) throw Error(errc::infeasible_constraint, "landmark index out of range");

  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  Rng rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::MatrixXd basis(j, d + 1);
    for (int r = 0; r < j; ++r)
      for (int c2 = 0; c2 <= d; ++c2) basis(r, c2) = rng.gauss();
    Eigen::MatrixXd m(k, d + 1);
    for (int i = 1; i <= k; ++i) {
      Eigen::VectorXd v(d + 1);
      if (std::binary_search(sorted.begin(), sorted.end(), i)) {
        Eigen::RowVectorXd coeff(j);
        for (int t = 0; t < j; ++t) coeff(t) = rng.gauss();
        v = (coeff * basis).transpose();
      } else {
        for (int t = 0; t <= d; ++t) v(t) = rng.gauss();
      }
      if (v.norm() == 0.0) {
        v.setZero();
        v(0) = 1.0;
      }
      m.row(i - 1) = canonicalize_point(v).coords.transpose();
    }
    Configuration c(d, k, std::move(m));
    const auto report = constraint_flats(c, tol);
    for (const auto& flat : report.at_level(j)) {
      if (std::includes(flat.indices.begin(), flat.indices.end(), sorted.begin(), sorted.end()))
        return c;
    }
  }
  throw Error(errc::infeasible_constraint, "could not realize the requested constraint");
}

/// Plants a full split: landmarks in I inside a random rank-j subspace and
/// the complement inside an independent rank-(d+1-j) subspace. Used to build
/// splittable fixtures, including the exactly balanced ones.
inline Configuration random_split(int d, int k, const std::vector<int>& indices, int j,
                                  std::uint64_t seed, double tol = kDefaultRankTol) {
  if (j < 1 || j > d) throw Error(errc::infeasible_constraint, "need 1 <= j <= d");
  if (static_cast<int>(indices.size()) < j || k - static_cast<int>(indices.size()) < d + 1 - j)
    throw Error(errc::infeasible_constraint, "split sides too small for the requested ranks");
  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());

  Rng rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::MatrixXd basis(d + 1, d + 1);
    for (int r = 0; r <= d; ++r)
      for (int c2 = 0; c2 <= d; ++c2) basis(r, c2) = rng.gauss();
    if (numerical_rank(basis, tol) != d + 1) continue;
    Eigen::MatrixXd m(k, d + 1);
    for (int i = 1; i <= k; ++i) {
      const bool in_i = std::binary_search(sorted.begin(), sorted.end(), i);
      const int lo = in_i ? 0 : j;
      const int hi = in_i ? j : d + 1;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(d + 1);
      for (int t = lo; t < hi; ++t) v += rng.gauss() * basis.row(t).transpose();
      if (v.norm() == 0.0) v = basis.row(lo).transpose();
      m.row(i - 1) = canonicalize_point(v).coords.transpose();
    }
    Configuration c(d, k, std::move(m));
    if (numerical_rank(rows_subset(c.matrix(), sorted), tol) != j) continue;
    if (is_splittable(c, tol)) return c;
  }
  throw Error(errc::infeasible_constraint, "could not realize the requested split");
}

/// Well-conditioned random group element: signed diagonal scales in
/// [1/2, 2] and a right factor with singular values in the same range.
inline GroupElement random_group_element(int d, int k, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd scales(k);
  for (int i = 0; i < k; ++i) scales(i) = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
  const auto random_orthogonal = [&]() {
    Eigen::MatrixXd g(d + 1, d + 1);
    for (int r = 0; r <= d; ++r)
      for (int c = 0; c <= d; ++c) g(r, c) = rng.gauss();
    return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ());
  };
  Eigen::VectorXd sv(d + 1);
  for (int i = 0; i <= d; ++i) sv(i) = rng.uniform(0.5, 2.0);
  const Eigen::MatrixXd b = random_orthogonal() * sv.asDiagonal() * random_orthogonal();
  return GroupElement(scales, b);
}

}  // namespace projshape
