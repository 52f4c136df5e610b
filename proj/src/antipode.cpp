#include "mpilab/antipode.hpp"

#include "mpilab/tensor.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace mpilab {

namespace {

const double kSampleTimes[] = {1.0, -1.0, 0.3, -0.3};
const cplx kHalfI(0.0, 0.5);

Mat kron2(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

std::vector<Mat> unit_densities(int n) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(Functional::unit(n, i, j).density);
  return out;
}

// apply with the distance from the domain folded in
double gap_via(const LinearExtension& f, const Mat& x, const Mat& expected) {
  return std::max(f.membership(x), rel_gap(expected, f.apply(x)));
}

bool is_identity(const Mat& m, double tol) {
  return (m - Mat::Identity(m.rows(), m.cols())).norm() < tol;
}

}  // namespace

Mat tau(const Operator& q, cplx z, const Mat& a) {
  const cplx e = cplx(0.0, 2.0) * z;
  return pos_power(q.m, e) * a * pos_power(q.m, -e);
}

std::pair<Mat, Mat> antipode_S(const Operator& w, const Functional& omega) {
  const int n = mpi_leg_dim(w);
  return {slice_right(w.m, n, n, omega.density), slice_right(w.m.adjoint(), n, n, omega.density)};
}

Mat LinearExtension::apply(const Mat& x) const {
  if (domain.dim() == 0) return Mat::Zero(x.rows(), x.cols());
  return unvec(matrix * domain.coords(x), static_cast<int>(x.rows()));
}

double LinearExtension::membership(const Mat& x) const { return contains(domain, x).residual; }

LinearExtension extend_linearly(const std::vector<Mat>& generators, const std::vector<Mat>& images,
                                const TensorSpace& space, const Tolerances& tol) {
  if (generators.size() != images.size()) throw std::invalid_argument("extend_linearly: size mismatch");
  LinearExtension f;
  const int k = static_cast<int>(generators.size());
  const int d = space.total_dim();
  f.domain = span(generators, space, tol.rank);
  Mat H(d * d, k);
  for (int j = 0; j < k; ++j) H.col(j) = vec_view(images[j]);
  if (k == 0) return f;
  Mat C(f.domain.dim(), k);
  for (int j = 0; j < k; ++j) C.col(j) = f.domain.coords(generators[j]);
  const int r = f.domain.dim();
  f.relations = k - r;
  if (r == 0) {
    f.matrix = Mat::Zero(d * d, 0);
  } else {
    Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Mat V = svd.matrixV();
    Mat pinv = V.leftCols(r) * sv.head(r).cwiseInverse().asDiagonal() * svd.matrixU().leftCols(r).adjoint();
    f.matrix = H * pinv;
    if (f.relations > 0) {
      const Mat HK = H * V.rightCols(f.relations);
      const double scale = std::max(1.0, H.colwise().norm().maxCoeff());
      for (int j = 0; j < f.relations; ++j) {
        const double g = HK.col(j).norm() / scale;
        f.inconsistency = std::max(f.inconsistency, g);
      }
      Eigen::JacobiSVD<Mat> ks(HK, Eigen::ComputeThinV);
      const auto& ksv = ks.singularValues();
      for (Eigen::Index j = 0; j < ksv.size(); ++j)
        if (ksv(j) > tol.residual * scale) ++f.inconsistency_rank;
      if (f.inconsistency_rank > 0) f.offending = V.rightCols(f.relations) * ks.matrixV().col(0);
    }
  }
  return f;
}

LinearExtension assemble_S(const Operator& w, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  std::vector<Mat> g, h;
  for (const auto& F : unit_densities(n)) {
    g.push_back(slice_right(w.m, n, n, F));
    h.push_back(slice_right(w.m.adjoint(), n, n, F));
  }
  return extend_linearly(g, h, TensorSpace::uniform(n, {Flavor::H}), tol);
}

LinearExtension unitary_antipode_RA(const Operator& w, const Operator& wtilde, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  if (!(wtilde.space == TensorSpace::uniform(n, {Flavor::Hbar, Flavor::H})))
    throw SpaceError("unitary_antipode_RA: Wt must act on Hbar (x) H, got " + wtilde.space.describe());
  std::vector<Mat> g, h;
  for (const auto& F : unit_densities(n)) {
    g.push_back(slice_right(w.m.adjoint(), n, n, F));
    h.push_back(slice_right(wtilde.m, n, n, F).transpose());
  }
  return extend_linearly(g, h, TensorSpace::uniform(n, {Flavor::H}), tol);
}

AntipodeData antipode_data(const Operator& w, const Operator& q, const Operator& wtilde, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  require_positive(q, n, tol.pd);
  AntipodeData d;
  d.Q = q;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.generator_map.push_back(antipode_S(w, Functional::unit(n, i, j)));
  d.S = assemble_S(w, tol);
  d.RA = unitary_antipode_RA(w, wtilde, tol);
  for (double t : kSampleTimes) {
    std::vector<Mat> imgs;
    for (const auto& a : d.S.domain.basis) {
      imgs.push_back(tau(q, t, a));
      d.tau_membership = std::max(d.tau_membership, d.S.membership(imgs.back()));
    }
    d.tau_samples.emplace_back(t, std::move(imgs));
  }
  return d;
}

double AntipodeResiduals::worst() const {
  double r = std::max({polar, polar_commuted, anti_mult, star_involution, lemma, square, RA_involutive, RA_star,
                       RA_anti_mult, tau_membership});
  if (unitary_inverse) r = std::max(r, *unitary_inverse);
  return r;
}

AntipodeResiduals check_antipode(const Operator& w, const Operator& q, const Operator& wtilde,
                                 const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  const AntipodeData d = antipode_data(w, q, wtilde, tol);
  const LinearExtension& S = d.S;
  const LinearExtension& RA = d.RA;
  AntipodeResiduals r;
  r.S_inconsistency = S.inconsistency_rank;
  r.RA_inconsistency = RA.inconsistency_rank;
  r.tau_membership = d.tau_membership;

  const auto dens = unit_densities(n);
  for (std::size_t k = 0; k < dens.size(); ++k) {
    const auto& [a, sa] = d.generator_map[k];
    const Mat ta = tau(q, -kHalfI, a);
    r.polar = std::max(r.polar, gap_via(RA, ta, sa));
    r.polar_commuted = std::max({r.polar_commuted, RA.membership(a), rel_gap(sa, tau(q, -kHalfI, RA.apply(a)))});
    r.lemma = std::max(r.lemma, rel_gap(ta, Mat(slice_right(wtilde.m, n, n, dens[k]).transpose())));
  }

  const auto& Ab = S.domain.basis;
  for (const auto& a : Ab) {
    const Mat sa = S.apply(a);
    const Mat sas = sa.adjoint();
    r.star_involution = std::max({r.star_involution, S.membership(sas), rel_gap(a, Mat(S.apply(sas).adjoint()))});
    r.square = std::max({r.square, S.membership(sa), rel_gap(tau(q, cplx(0.0, -1.0), a), S.apply(sa))});
    for (const auto& b : Ab) {
      const Mat ab = a * b;
      r.anti_mult = std::max({r.anti_mult, S.membership(ab), rel_gap(S.apply(ab), Mat(S.apply(b) * sa))});
    }
  }

  const auto& Rb = RA.domain.basis;
  for (const auto& x : Rb) {
    const Mat rx = RA.apply(x);
    r.RA_involutive = std::max(r.RA_involutive, gap_via(RA, rx, x));
    r.RA_star = std::max(r.RA_star, gap_via(RA, Mat(x.adjoint()), Mat(rx.adjoint())));
    for (const auto& y : Rb) r.RA_anti_mult = std::max(r.RA_anti_mult, gap_via(RA, Mat(x * y), Mat(RA.apply(y) * rx)));
  }

  const Mat E = w.m.adjoint() * w.m, G = w.m * w.m.adjoint();
  if (is_identity(E, tol.residual) && is_identity(G, tol.residual) && S.domain.dim() > 0) {
    // S in coordinates of the A basis; invert there
    const Mat Sc = S.domain.frame.adjoint() * S.matrix;
    const Eigen::FullPivLU<Mat> lu(Sc);
    double u = 1.0;
    if (lu.isInvertible()) {
      u = 0.0;
      for (const auto& a : Ab) {
        const Mat inv = unvec(S.domain.frame * lu.solve(S.domain.coords(a)), n);
        const Mat as = a.adjoint();
        u = std::max({u, S.membership(as), rel_gap(inv, Mat(S.apply(as).adjoint()))});
      }
    }
    r.unitary_inverse = u;
  }
  return r;
}

double DualityResiduals::worst() const {
  return std::max({dual.worst(), Shat_inverse, Rhat_formula, decomposition, transpose_R, wtilde_partial_isometry});
}

DualityResiduals check_duality(const Operator& w, const Operator& q, const Operator& wtilde,
                               const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  DualityResiduals r;
  const Operator what = dual_operator(w);
  const Mat S = flip(n).m;
  const Operator wth(TensorSpace::uniform(n, {Flavor::Hbar, Flavor::H}), (S * wtilde.m.adjoint() * S).transpose());
  r.dual = check_antipode(what, q, wth, tol);

  // R_Ahat: (w(x)id)(W) -> (w^T(x)id)(Wt*), built through W-hat
  const LinearExtension Rh = unitary_antipode_RA(what, wth, tol);
  for (const auto& F : unit_densities(n)) {
    const Mat y = slice_left(w.m, n, n, F);
    const Mat expected = slice_left(w.m.adjoint(), n, n, F);
    r.Shat_inverse = std::max(r.Shat_inverse, gap_via(Rh, tau(q, kHalfI, y), expected));
    r.Rhat_formula = std::max(r.Rhat_formula, rel_gap(Rh.apply(y), slice_left(wtilde.m.adjoint(), n, n, F.transpose())));
  }

  Mat recon = Mat::Zero(n * n, n * n), flipped = Mat::Zero(n * n, n * n);
  for (const auto& yk : Rh.domain.basis) {
    const Mat mk = slice_right(w.m, n, n, yk.adjoint());
    recon += kron2(mk, yk);
    flipped += kron2(mk.transpose(), Rh.apply(yk));
  }
  r.decomposition = rel_gap(w.m, recon);
  r.transpose_R = rel_gap(wtilde.m.adjoint(), flipped);
  r.wtilde_partial_isometry = rel_gap(wtilde.m, wtilde.m * wtilde.m.adjoint() * wtilde.m);
  return r;
}

double BaseRestrictionResiduals::worst() const { return std::max({tau_B, tau_C, S_B, S_C, B_in_A, C_in_A}); }

BaseRestrictionResiduals check_base_restrictions(const Operator& w, const Operator& q, const BaseMaps& maps,
                                                 const Tolerances& tol) {
  BaseRestrictionResiduals r;
  const LinearExtension S = assemble_S(w, tol);
  const auto& Nb = maps.nu.algebra.basis;
  const auto& Lb = maps.mu.algebra.basis;
  for (double t : kSampleTimes) {
    for (const auto& b : Nb) r.tau_B = std::max(r.tau_B, rel_gap(modular_conjugate(maps.nu, -t, b), tau(q, t, b)));
    for (const auto& c : Lb) r.tau_C = std::max(r.tau_C, rel_gap(modular_conjugate(maps.mu, t, c), tau(q, t, c)));
  }
  for (std::size_t k = 0; k < Nb.size(); ++k) {
    r.B_in_A = std::max(r.B_in_A, S.membership(Nb[k]));
    r.S_B = std::max(r.S_B, rel_gap(maps.gamma_N[k], S.apply(Nb[k])));
  }
  for (std::size_t k = 0; k < Lb.size() && k < maps.gamma_L.size(); ++k) {
    r.C_in_A = std::max(r.C_in_A, S.membership(Lb[k]));
    r.S_C = std::max(r.S_C, rel_gap(maps.gamma_L[k], S.apply(Lb[k])));
  }
  return r;
}

double double_dual_gap(const Operator& w) {
  return (dual_operator(dual_operator(w)).m - w.m).cwiseAbs().maxCoeff();
}

}  // namespace mpilab
