#include "mpilab/manageability.hpp"

#include "mpilab/legkernel.hpp"
#include "mpilab/tensor.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpilab {

namespace {

const double kSampleTimes[] = {1.0, -1.0, 0.3, -0.3};

Mat kron2(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// partial transpose on the first leg: Y_{(a,d),(b,c)} = X_{(b,d),(a,c)}
Mat transpose_first_leg(const Mat& x, int n) {
  Mat y(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) y(a * n + d, b * n + c) = x(b * n + d, a * n + c);
  return y;
}

Mat flip_matrix(int n) { return flip(n).m; }

}  // namespace

void require_positive(const Operator& q, int n, double pd_tol) {
  if (q.space.num_legs() != 1 || q.dim() != n || q.space.legs[0].flavor != Flavor::H)
    throw std::invalid_argument("Q must act on one H leg of dimension " + std::to_string(n));
  if ((q.m - q.m.adjoint()).norm() > 1e-10 * std::max(1.0, q.m.norm()))
    throw std::invalid_argument("Q is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(q.m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= pd_tol) throw std::invalid_argument("Q is not positive definite");
}

Operator build_wtilde(const Operator& w, const Operator& q) {
  const int n = mpi_leg_dim(w);
  require_positive(q, n);
  const Mat id = Mat::Identity(n, n);
  const Mat x = kron2(id, q.m.inverse()) * w.m * kron2(id, q.m);
  return Operator(TensorSpace::uniform(n, {Flavor::Hbar, Flavor::H}), transpose_first_leg(x, n));
}

double condition2_residual(const Operator& w, const Operator& q, const Operator& wtilde) {
  const int n = mpi_leg_dim(w);
  const Mat& W = w.m;
  const Mat& Wt = wtilde.m;
  const Mat& Q = q.m;
  const Mat Qi = Q.inverse();
  double r = 0.0;
  // xi = e_a, eta = e_b; grid 1: v = e_c, u = e_d; grid 2: v = Q e_c, u = Q^-1 e_d
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          // grid 1: <Wt(e_b (x) Q^-1 e_c), e_a (x) Q e_d>
          cplx rhs = 0.0;
          for (int s = 0; s < n; ++s)
            for (int p = 0; p < n; ++p) rhs += std::conj(Q(p, d)) * Wt(a * n + p, b * n + s) * Qi(s, c);
          r = std::max(r, std::abs(W(b * n + d, a * n + c) - rhs));
          // grid 2: <W(e_a (x) Q e_c), e_b (x) Q^-1 e_d>
          cplx lhs = 0.0;
          for (int s = 0; s < n; ++s)
            for (int p = 0; p < n; ++p) lhs += std::conj(Qi(p, d)) * W(b * n + p, a * n + s) * Q(s, c);
          r = std::max(r, std::abs(lhs - Wt(a * n + d, b * n + c)));
        }
  return r;
}

ManageabilityCertificate check_manageability(const Operator& w, const Operator& q, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  ManageabilityCertificate c;
  c.Q = q;
  c.Wtilde = build_wtilde(w, q);
  const Operator& Wt = c.Wtilde;
  const Mat QQ = kron2(q.m, q.m);
  c.residual_cond1 = rel_gap(w.m * QQ, QQ * w.m);

  const Operator WTT = transpose_all(w);
  const Operator WsTT = transpose_all(w.adjoint());
  const Operator Wts = Wt.adjoint();
  {
    LegChain lhs(TensorSpace::uniform(n, {Flavor::Hbar, Flavor::Hbar, Flavor::H}));
    LegChain rhs = lhs;
    lhs.mul(Wt, {1, 3}).mul(Wt, {2, 3}).mul(Wts, {2, 3});
    rhs.mul(WTT, {1, 2}).mul(WsTT, {1, 2}).mul(Wt, {1, 3});
    c.residual_cond3a = chain_gap(lhs, rhs);
  }
  {
    LegChain lhs(TensorSpace::uniform(n, {Flavor::Hbar, Flavor::H, Flavor::H}));
    LegChain rhs = lhs;
    lhs.mul(w, {2, 3}).mul(w.adjoint(), {2, 3}).mul(Wt, {1, 3});
    rhs.mul(Wt, {1, 3}).mul(Wt, {1, 2}).mul(Wts, {1, 2});
    c.residual_cond3b = chain_gap(lhs, rhs);
  }

  // <Wt((Q^-1)^T eta-bar (x) v), Q^T xi-bar (x) u> on basis vectors is the (a,d),(b,c)
  // entry of (conj(Q) (x) 1) Wt ((Q^-1)^T (x) 1); it must equal W_{(b,d),(a,c)}.
  const Mat id = Mat::Identity(n, n);
  const Mat Qi = q.m.inverse();
  const Mat M = kron2(q.m.conjugate(), id) * Wt.m * kron2(Qi.transpose(), id);
  c.residual_alt_char = rel_gap(transpose_first_leg(w.m, n), M);

  for (double t : kSampleTimes) {
    const cplx it(0.0, t);
    const Mat Qp = pos_power(q.m, it), Qm = pos_power(q.m, -it);
    c.covariance_W = std::max(c.covariance_W, rel_gap(w.m, kron2(Qp, Qp) * w.m * kron2(Qm, Qm)));
    const Mat QTp = pos_power(Mat(q.m.transpose()), it), QTm = pos_power(Mat(q.m.transpose()), -it);
    c.covariance_Wtilde =
        std::max(c.covariance_Wtilde, rel_gap(Wt.m, kron2(QTm, Qp) * Wt.m * kron2(QTp, Qm)));
  }
  const Mat E = w.m.adjoint() * w.m;
  const Mat G = w.m * w.m.adjoint();
  c.inclusion_E = rel_gap(QQ * E, E * QQ * E);
  c.inclusion_G = rel_gap(QQ * G, G * QQ * G);

  c.passed = c.residual_cond1 < tol.residual && c.residual_cond3a < tol.residual &&
             c.residual_cond3b < tol.residual && c.residual_alt_char < tol.residual;
  return c;
}

double HashIdentities::worst() const { return std::max({first, second, third, slice_lemma}); }

HashIdentities check_hash_identities(const Operator& w, const Operator& q, const Operator& wtilde) {
  const int n = mpi_leg_dim(w);
  HashIdentities h;
  const Operator WTT = transpose_all(w);
  const Operator WsTT = transpose_all(w.adjoint());
  const Operator& Wt = wtilde;
  const Operator Wts = Wt.adjoint();
  const LegChain base(TensorSpace::uniform(n, {Flavor::Hbar, Flavor::Hbar, Flavor::H}));
  {
    LegChain lhs = base, rhs = base;
    lhs.mul(WTT, {1, 2}).mul(Wt, {2, 3}).mul(WsTT, {1, 2});
    rhs.mul(Wt, {1, 3}).mul(Wt, {2, 3});
    h.first = chain_gap(lhs, rhs);
  }
  {
    LegChain lhs = base, rhs = base;
    lhs.mul(WsTT, {1, 2}).mul(WTT, {1, 2}).mul(Wt, {2, 3});
    rhs.mul(Wt, {2, 3}).mul(WsTT, {1, 2}).mul(WTT, {1, 2});
    h.second = chain_gap(lhs, rhs);
  }
  {
    LegChain lhs = base, rhs = base;
    lhs.mul(Wt, {2, 3}).mul(WsTT, {1, 2}).mul(Wts, {2, 3});
    rhs.mul(WsTT, {1, 2}).mul(Wt, {1, 3});
    h.third = chain_gap(lhs, rhs);
  }
  const Mat Qi = q.m.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec v = Vec::Unit(n, i), u = Vec::Unit(n, j);
      const Mat lhs = slice_right(Wt.m, n, n, Functional::vector_state(Qi * v, q.m * u).density);
      const Mat rhs = slice_right(w.m, n, n, Functional::vector_state(v, u).density).transpose();
      h.slice_lemma = std::max(h.slice_lemma, rel_gap(rhs, lhs));
    }
  return h;
}

DualManageability dual_manageability(const Operator& w, const Operator& q, const Operator& wtilde,
                                     const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  DualManageability d;
  d.What = dual_operator(w);
  const Mat S = flip_matrix(n);
  d.candidate = Operator(TensorSpace::uniform(n, {Flavor::Hbar, Flavor::H}),
                         (S * wtilde.m.adjoint() * S).transpose());
  d.certificate = check_manageability(d.What, q, tol);
  d.candidate_gap = (d.candidate.m - d.certificate.Wtilde.m).cwiseAbs().maxCoeff();
  d.passed = d.certificate.passed && d.candidate_gap < tol.residual;
  return d;
}

std::vector<Operator> suggest_q(const Operator& w, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  std::vector<Operator> out{single_leg(Mat::Identity(n, n))};
  const double scale = std::max(1e-300, w.m.cwiseAbs().maxCoeff());
  std::vector<Eigen::VectorXd> rows;
  for (int r = 0; r < n * n; ++r)
    for (int c = 0; c < n * n; ++c) {
      if (std::abs(w.m(r, c)) <= tol.rank * scale) continue;
      Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
      row(r / n) += 1.0;
      row(r % n) += 1.0;
      row(c / n) -= 1.0;
      row(c % n) -= 1.0;
      if (row.squaredNorm() > 0.0) rows.push_back(row);
    }
  // constant shifts only rescale Q; add them as a constraint row so they drop out
  Eigen::MatrixXd M(rows.size() + 1, n);
  for (std::size_t k = 0; k < rows.size(); ++k) M.row(static_cast<Eigen::Index>(k)) = rows[k].transpose();
  M.row(static_cast<Eigen::Index>(rows.size())).setOnes();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tol.rank * std::max(1.0, top)) ++rank;
  for (int k = rank; k < n; ++k) {
    Eigen::VectorXd v = svd.matrixV().col(k);
    v /= v.cwiseAbs().maxCoeff();  // exp range [1/e, e]
    Mat d = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = std::exp(v(i));
    out.push_back(single_leg(d));
  }
  return out;
}

}  // namespace mpilab
