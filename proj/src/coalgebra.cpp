#include "mpilab/coalgebra.hpp"

#include "mpilab/legkernel.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

namespace mpilab {

namespace {

Mat kron2(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

using Sp = Eigen::SparseMatrix<cplx>;

// Operand held dense and, when the whole computation is sparse, also compressed.
struct Factor {
  Mat d;
  Sp s;
};

struct Multiplier {
  bool sparse = false;
  Factor make(Mat m) const {
    Factor f{std::move(m), Sp()};
    if (sparse) f.s = f.d.sparseView();
    return f;
  }
  Mat operator()(const Factor& a, const Factor& b) const { return sparse ? Mat(a.s * b.s) : Mat(a.d * b.d); }
};

// Per-column relative distance of L from the column span of an orthonormal frame.
// Rows where the frame vanishes are handled outside the projection.
struct Projection {
  Mat coords;
  double residual = 0.0;
};

Projection project_family(const Mat& frame, const std::vector<Mat>& family) {
  const auto cols = static_cast<Eigen::Index>(family.size());
  std::vector<Eigen::Index> sup;
  for (Eigen::Index i = 0; i < frame.rows(); ++i)
    if (!frame.row(i).isZero(0.0)) sup.push_back(i);
  const auto ns = static_cast<Eigen::Index>(sup.size());
  Mat Fs(ns, frame.cols()), Ls(ns, cols);
  for (Eigen::Index k = 0; k < ns; ++k) Fs.row(k) = frame.row(sup[k]);
  Eigen::VectorXd total(cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const auto v = vec_view(family[static_cast<std::size_t>(c)]);
    for (Eigen::Index k = 0; k < ns; ++k) Ls(k, c) = v(sup[k]);
    total(c) = v.squaredNorm();
  }
  Projection p;
  p.coords = Fs.adjoint() * Ls;
  const Mat off = Ls - Fs * p.coords;
  for (Eigen::Index c = 0; c < cols; ++c) {
    // entries off the support, summed directly rather than as total - inside
    double outside = 0.0;
    const auto v = vec_view(family[static_cast<std::size_t>(c)]);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (k < sup.size() && sup[k] == i) {
        ++k;
        continue;
      }
      outside += std::norm(v(i));
    }
    const double gap = std::sqrt(off.col(c).squaredNorm() + outside);
    p.residual = std::max(p.residual, gap / std::max(1.0, std::sqrt(total(c))));
  }
  return p;
}

double max_membership(const OperatorSubspace& s, const std::vector<Mat>& xs) {
  return project_family(s.frame, xs).residual;
}

}  // namespace

const char* leg_side_name(LegSide s) {
  switch (s) {
    case LegSide::A: return "A";
    case LegSide::Ahat: return "Ahat";
    case LegSide::Astar: return "Astar";
    case LegSide::Ahatstar: return "Ahatstar";
  }
  return "?";
}

std::vector<Mat> all_slices(const Mat& x, int n, Side side) {
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (side == Side::Left) {
        // omega_{e_i,e_j} has density e_ij, which picks block (j, i)
        out.push_back(x.block(j * n, i * n, n, n));
      } else {
        Mat s(n, n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s(a, b) = x(a * n + j, b * n + i);
        out.push_back(std::move(s));
      }
    }
  return out;
}

LegAlgebra leg_algebra(const Operator& w, LegSide side, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  const bool star = side == LegSide::Astar || side == LegSide::Ahatstar;
  const Side sl = (side == LegSide::A || side == LegSide::Astar) ? Side::Right : Side::Left;
  const Mat x = star ? Mat(w.m.adjoint()) : w.m;
  LegAlgebra a;
  a.side = side;
  a.space = span(all_slices(x, n, sl), TensorSpace({{n, Flavor::H}}), tol.rank);
  const auto u = contains(a.space, Mat::Identity(n, n), tol.membership);
  a.unital = u.flag;
  a.unital_residual = u.residual;
  a.star_residual = adjoint_closure_residual(a.space);
  a.star_closed = a.star_residual < tol.membership;
  a.product_residual = product_closure_residual(a.space);
  return a;
}

Operator comul(const Operator& w, const Mat& x, Comul side) {
  const int n = mpi_leg_dim(w);
  if (x.rows() != n || x.cols() != n) throw SpaceError("comul: x must act on one H leg");
  const Mat id = Mat::Identity(n, n);
  if (side == Comul::Primal)
    return two_leg(sparse_aware_product(sparse_aware_product(w.m.adjoint(), kron2(id, x)), w.m));
  const Mat ws = flip(n).m * w.m;
  return two_leg(sparse_aware_product(sparse_aware_product(ws, kron2(x, id)), ws.adjoint()));
}

std::vector<Mat> matrix_unit_basis(int n) {
  std::vector<Mat> b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.push_back(matrix_unit(n, i, j));
  return b;
}

double coassociativity_residual(const Operator& w, const std::vector<Mat>& sample, Comul side) {
  const int n = mpi_leg_dim(w);
  const Operator v = side == Comul::Primal ? w : dual_operator(w);
  const auto amb = TensorSpace::uniform(n, {Flavor::H, Flavor::H, Flavor::H});
  double r = 0.0;
  if (4 * (v.m.array() != cplx(0.0)).count() <= v.m.size()) {
    // sparse chains
    const Operator vs = v.adjoint();
    for (const auto& x : sample) {
      const Operator d = comul(v, x, Comul::Primal);
      LegChain lhs(amb), rhs(amb);
      lhs.mul(vs, {1, 2}).mul(d, {2, 3}).mul(v, {1, 2});
      rhs.mul(vs, {2, 3}).mul(d, {1, 3}).mul(v, {2, 3});
      r = std::max(r, chain_gap(lhs, rhs));
    }
    return r;
  }
  // (Delta(x)id)Delta(x) = V12* V23* x3 V23 V12 = M* x3 M, (id(x)Delta)Delta(x) = N* x3 N with N = V13 V23.
  // With M_i the rows (u, i) of M, M* x3 M = sum_i M_i* (sum_j x_ij M_j).
  LegChain m(amb), nn(amb);
  m.mul(v, {2, 3}).mul(v, {1, 2});
  nn.mul(v, {1, 3}).mul(v, {2, 3});
  const Mat M = m.eval(), N = nn.eval();
  const int blocks = n * n;
  auto split = [&](const Mat& x) {
    std::vector<Mat> out(n, Mat(blocks, x.cols()));
    for (int u = 0; u < blocks; ++u)
      for (int i = 0; i < n; ++i) out[i].row(u) = x.row(u * n + i);
    return out;
  };
  const std::vector<Mat> Mi = split(M), Ni = split(N);
  auto sandwich = [&](const std::vector<Mat>& P, const Mat& x) {
    Mat out = Mat::Zero(M.cols(), M.cols());
    for (int i = 0; i < n; ++i) {
      Mat y = Mat::Zero(blocks, M.cols());
      bool any = false;
      for (int j = 0; j < n; ++j)
        if (x(i, j) != cplx(0.0)) {
          y += x(i, j) * P[j];
          any = true;
        }
      if (any) out += P[i].adjoint() * y;
    }
    return out;
  };
  for (const auto& x : sample) r = std::max(r, rel_gap(sandwich(Mi, x), sandwich(Ni, x)));
  return r;
}

double check_coassociativity(const Operator& w, const std::vector<Mat>& sample) {
  return std::max(coassociativity_residual(w, sample, Comul::Primal), coassociativity_residual(w, sample, Comul::Dual));
}

SpanComparison compare_spans(const std::vector<Mat>& lhs, const std::vector<Mat>& rhs, const TensorSpace& space,
                             double rank_tol) {
  SpanComparison c;
  const OperatorSubspace R = span(rhs, space, rank_tol);
  c.dim_rhs = R.dim();
  const Projection P = project_family(R.frame, lhs);
  const Mat& C = P.coords;
  const double res1 = P.residual;
  if (res1 > 1e-6) {
    const OperatorSubspace Ls = span(lhs, space, rank_tol);
    c.dim_lhs = Ls.dim();
    c.residual = std::max(res1, inclusion_residual(Ls, R));
    return c;
  }
  // lhs sits inside R up to res1; compare inside R's coordinates
  double res2 = 0.0;
  if (C.cols() > 0 && C.rows() > 0) {
    const ColumnBasis cb = column_basis(C, rank_tol);
    c.dim_lhs = cb.rank;
    const Mat& U = cb.U;
    const Mat gap = Mat::Identity(C.rows(), C.rows()) - U * U.adjoint();
    for (Eigen::Index k = 0; k < gap.cols(); ++k) res2 = std::max(res2, gap.col(k).norm());
  } else {
    c.dim_lhs = 0;
    res2 = C.rows() > 0 ? 1.0 : 0.0;
  }
  c.residual = std::max(res1, res2);
  return c;
}

CoalgebraReport coalgebra_report(const Operator& w, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  const TensorSpace one({{n, Flavor::H}});
  const TensorSpace two = TensorSpace::uniform(n, {Flavor::H, Flavor::H});
  const auto A = leg_algebra(w, LegSide::A, tol);
  const auto Ah = leg_algebra(w, LegSide::Ahat, tol);
  const auto& a = A.space.basis;
  const Mat id = Mat::Identity(n, n);
  const Mat E = w.m.adjoint() * w.m;
  const Mat G = w.m * w.m.adjoint();

  CoalgebraReport rep;
  rep.dim_A = A.space.dim();
  rep.product_closure = A.product_residual;

  const Multiplier mul{4 * (w.m.array() != cplx(0.0)).count() <= w.m.size()};
  std::vector<Mat> D;
  std::vector<Factor> Df;
  for (const auto& x : a) {
    D.push_back(comul(w, x, Comul::Primal).m);
    Df.push_back(mul.make(D.back()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    rep.delta_star = std::max(rep.delta_star, rel_gap(comul(w, a[i].adjoint(), Comul::Primal).m, D[i].adjoint()));
    for (std::size_t j = 0; j < a.size(); ++j)
      rep.homomorphism = std::max(rep.homomorphism, rel_gap(comul(w, a[i] * a[j], Comul::Primal).m, mul(Df[i], Df[j])));
  }
  rep.E_is_delta1 = rel_gap(E, comul(w, id, Comul::Primal).m);

  {
    const auto amb = TensorSpace::uniform(n, {Flavor::H, Flavor::H, Flavor::H});
    const Operator Eo = two_leg(E);
    const Operator ws = w.adjoint();
    LegChain e12e23(amb), e23e12(amb), f1(amb), f2(amb);
    e12e23.mul(Eo, {1, 2}).mul(Eo, {2, 3});
    e23e12.mul(Eo, {2, 3}).mul(Eo, {1, 2});
    f1.mul(ws, {1, 2}).mul(ws, {2, 3}).mul(w, {2, 3}).mul(w, {1, 2});
    f2.mul(ws, {2, 3}).mul(ws, {1, 2}).mul(w, {1, 2}).mul(w, {2, 3});
    rep.E_legs_commute = std::max(chain_gap(e12e23, e23e12), chain_gap(e12e23, f1));
    rep.E_legs_alt = chain_gap(e12e23, f2);
  }

  const OperatorSubspace AA = tensor_subspace(A.space, A.space);
  const Factor Ef = mul.make(E), Gf = mul.make(G);
  std::vector<Factor> kf;  // a_y (x) a_z, row-major in (y, z)
  for (const auto& x : a)
    for (const auto& y : a) kf.push_back(mul.make(kron2(x, y)));
  std::vector<Mat> EAA, AAE;
  for (const auto& k : kf) {
    EAA.push_back(mul(Ef, k));
    AAE.push_back(mul(k, Ef));
  }
  rep.E_multiplier = std::max(max_membership(AA, EAA), max_membership(AA, AAE));

  for (const auto& x : a) {
    const Factor k = mul.make(kron2(id, x));
    rep.commutation_lemma = std::max(rep.commutation_lemma, rel_gap(mul(k, Gf), mul(Gf, k)));
  }
  for (const auto& y : Ah.space.basis) {
    const Factor k = mul.make(kron2(y, id));
    rep.commutation_lemma = std::max(rep.commutation_lemma, rel_gap(mul(k, Ef), mul(Ef, k)));
  }

  {
    std::vector<Mat> DAA, AAD;
    for (const auto& d : Df)
      for (const auto& k : kf) {
        DAA.push_back(mul(d, k));
        AAD.push_back(mul(k, d));
      }
    rep.delta_range = compare_spans(DAA, EAA, two, tol.rank);
    rep.delta_range_left = compare_spans(AAD, AAE, two, tol.rank);
  }

  std::vector<Factor> a1, one_b;
  for (const auto& x : a) {
    a1.push_back(mul.make(kron2(x, id)));
    one_b.push_back(mul.make(kron2(id, x)));
  }
  std::array<std::vector<Mat>, 4> prods, dens;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      // a = a[i], b = a[j]
      prods[0].push_back(mul(a1[i], Df[j]));
      prods[1].push_back(mul(Df[i], one_b[j]));
      prods[2].push_back(mul(Df[j], a1[i]));
      prods[3].push_back(mul(one_b[j], Df[i]));
    }
  const std::array<Side, 4> sides = {Side::Left, Side::Right, Side::Left, Side::Right};
  for (int k = 0; k < 4; ++k) {
    rep.membership[k] = max_membership(AA, prods[k]);
    for (const auto& p : prods[k]) {
      auto s = all_slices(p, n, sides[k]);
      dens[k].insert(dens[k].end(), s.begin(), s.end());
    }
    const auto c = compare_spans(dens[k], a.empty() ? std::vector<Mat>{Mat::Zero(n, n)} : a, one, tol.rank);
    rep.density_dims[k] = c.dim_lhs;
    rep.density_residual[k] = c.residual;
  }

  rep.coassociativity = coassociativity_residual(w, matrix_unit_basis(n), Comul::Primal);
  return rep;
}

}  // namespace mpilab
