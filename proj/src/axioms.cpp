#include "mpilab/axioms.hpp"

#include "mpilab/legkernel.hpp"

#include <algorithm>
#include <tuple>

namespace mpilab {

namespace {

int rank_of(const Mat& m, double rank_tol) { return column_basis(m, rank_tol).rank; }

// Evaluates products of W, W* on three H legs.
struct Legs3 {
  Operator w, ws;
  TensorSpace amb;

  explicit Legs3(const Operator& W)
      : w(W), ws(W.adjoint()), amb(TensorSpace::uniform(W.space.legs[0].dim, {Flavor::H, Flavor::H, Flavor::H})) {}

  // factors given left to right as (adjoint?, leg a, leg b)
  LegChain operator()(std::initializer_list<std::tuple<bool, int, int>> fs) const {
    LegChain c(amb);
    for (const auto& [adj, a, b] : fs) c.mul(adj ? ws : w, {a, b});
    return c;
  }
};

constexpr bool N = false, S = true;

}  // namespace

Check is_partial_isometry(const Mat& w, double tol) {
  Check c;
  c.residual = (w * w.adjoint() * w - w).norm() / std::max(1.0, w.norm());
  c.pass = c.residual < tol;
  return c;
}

Check is_partial_isometry(const Operator& w, double tol) { return is_partial_isometry(w.m, tol); }

int mpi_leg_dim(const Operator& w) {
  const auto& legs = w.space.legs;
  if (legs.size() != 2 || legs[0].dim != legs[1].dim || legs[0].flavor != Flavor::H || legs[1].flavor != Flavor::H)
    throw SpaceError("expected an operator on H (x) H, got " + w.space.describe());
  return legs[0].dim;
}

MpiVerdict check_mpi_axioms(const Operator& w, const Tolerances& tol) {
  mpi_leg_dim(w);
  MpiVerdict v;
  v.partial_isometry = is_partial_isometry(w, tol.residual);
  v.E = w.adjoint() * w;
  v.G = w * w.adjoint();
  const Mat& E = v.E.m;
  const Mat& G = v.G.m;
  v.projection_residual = std::max({rel_gap(E * E, E), rel_gap(E.adjoint(), E), rel_gap(G * G, G),
                                    rel_gap(G.adjoint(), G), rel_gap(w.m * E, w.m), rel_gap(G * w.m, w.m)});

  const Legs3 L(w);
  v.mpi[0] = chain_gap(L({{N, 2, 3}, {N, 1, 2}, {S, 2, 3}}), L({{N, 1, 2}, {N, 1, 3}}));
  v.mpi[1] = chain_gap(L({{S, 1, 2}, {N, 2, 3}, {N, 1, 2}}), L({{N, 1, 3}, {N, 2, 3}}));
  v.mpi[2] = chain_gap(L({{S, 2, 3}, {N, 2, 3}, {N, 1, 2}}), L({{N, 1, 2}, {S, 2, 3}, {N, 2, 3}}));
  v.mpi[3] = chain_gap(L({{N, 1, 2}, {S, 1, 2}, {N, 2, 3}}), L({{N, 2, 3}, {N, 1, 2}, {S, 1, 2}}));
  v.pass = v.partial_isometry.pass &&
           std::all_of(v.mpi.begin(), v.mpi.end(), [&](double r) { return r < tol.residual; });
  return v;
}

std::array<double, 6> check_derived_identities(const Operator& w) {
  mpi_leg_dim(w);
  const Legs3 L(w);
  std::array<double, 6> r{};
  r[0] = chain_gap(L({{N, 1, 2}, {N, 1, 3}, {N, 2, 3}}), L({{N, 2, 3}, {N, 1, 2}}));
  r[1] = chain_gap(L({{S, 1, 2}, {N, 1, 2}, {N, 1, 3}}), L({{N, 1, 3}, {N, 2, 3}, {S, 2, 3}}));
  r[2] = chain_gap(L({{N, 1, 2}, {S, 2, 3}}), L({{S, 2, 3}, {N, 1, 2}, {N, 1, 3}}));
  r[3] = chain_gap(L({{S, 1, 2}, {N, 2, 3}}), L({{N, 1, 3}, {N, 2, 3}, {S, 1, 2}}));
  r[4] = chain_gap(L({{S, 1, 3}, {N, 1, 3}, {N, 2, 3}}), L({{N, 2, 3}, {S, 1, 2}, {N, 1, 2}}));
  r[5] = chain_gap(L({{N, 1, 2}, {N, 1, 3}, {S, 1, 3}}), L({{N, 2, 3}, {S, 2, 3}, {N, 1, 2}}));
  return r;
}

int joint_range_rank(const std::vector<Mat>& ops, double rank_tol) {
  if (ops.empty()) return 0;
  const Eigen::Index n = ops.front().rows();
  Mat h(n, n * static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) h.middleCols(static_cast<Eigen::Index>(k) * n, n) = ops[k];
  return rank_of(h, rank_tol);
}

int joint_coimage_rank(const std::vector<Mat>& ops, double rank_tol) {
  if (ops.empty()) return 0;
  const Eigen::Index n = ops.front().rows();
  Mat v(n * static_cast<Eigen::Index>(ops.size()), n);
  for (std::size_t k = 0; k < ops.size(); ++k) v.middleRows(static_cast<Eigen::Index>(k) * n, n) = ops[k];
  return rank_of(v, rank_tol);
}

FullnessVerdict assess_fullness(const Operator& w, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  const int n2 = n * n;
  Mat right(n2, n2), left(n2, n2);
  std::vector<Mat> rs, ls;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Mat F = Functional::unit(n, i, j).density;
      rs.push_back(slice_right(w.m, n, n, F));
      ls.push_back(slice_left(w.m, n, n, F));
      right.col(i * n + j) = vec_view(rs.back());
      left.col(i * n + j) = vec_view(ls.back());
    }
  FullnessVerdict f;
  f.rank_right = rank_of(right, tol.rank);
  f.rank_left = rank_of(left, tol.rank);
  f.literal_right = f.rank_right == n2;
  f.literal_left = f.rank_left == n2;
  const TensorSpace one({{n, Flavor::H}});
  const auto A = span(rs, one, tol.rank);
  const auto Ah = span(ls, one, tol.rank);
  f.nondeg_A_range = joint_range_rank(A.basis, tol.rank) == n;
  f.nondeg_A_kernel = joint_coimage_rank(A.basis, tol.rank) == n;
  f.nondeg_Ahat_range = joint_range_rank(Ah.basis, tol.rank) == n;
  f.nondeg_Ahat_kernel = joint_coimage_rank(Ah.basis, tol.rank) == n;
  return f;
}

Operator dual_operator(const Operator& w) {
  const int n = mpi_leg_dim(w);
  const Operator s = flip(n);
  return s * w.adjoint() * s;
}

}  // namespace mpilab
