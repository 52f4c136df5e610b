#include "mpilab/base.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>

namespace mpilab {

namespace {

using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

Mat kron2(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

// [Re vec; Im vec]
RVec realify(const Mat& x) {
  const auto v = vec_view(x);
  RVec r(2 * v.size());
  r.head(v.size()) = v.real();
  r.tail(v.size()) = v.imag();
  return r;
}

// Real orthonormal basis (Hilbert-Schmidt) of the Hermitian part of a *-closed span.
std::vector<Mat> hermitian_basis(const OperatorSubspace& s, double rank_tol) {
  const int d = s.side();
  std::vector<Mat> herm;
  for (const auto& b : s.basis) {
    herm.push_back((b + b.adjoint()) / 2.0);
    herm.push_back((b - b.adjoint()) / cplx(0.0, 2.0));
  }
  if (herm.empty()) return {};
  RMat cols(2 * d * d, static_cast<Eigen::Index>(herm.size()));
  for (std::size_t k = 0; k < herm.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = realify(herm[k]);
  Eigen::JacobiSVD<RMat> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > rank_tol * sv(0)) ++rank;
  std::vector<Mat> out;
  for (int k = 0; k < rank; ++k) {
    const RVec u = svd.matrixU().col(k);
    Mat h(d, d);
    for (Eigen::Index i = 0; i < d * d; ++i) h(i % d, i / d) = cplx(u(i), u(d * d + i));
    out.push_back((h + h.adjoint()) / 2.0);
  }
  return out;
}

Mat support_projection(const OperatorSubspace& s, double rank_tol) {
  const int d = s.side();
  if (s.basis.empty()) return Mat::Zero(d, d);
  Mat cols(d, d * static_cast<Eigen::Index>(s.basis.size()));
  for (std::size_t k = 0; k < s.basis.size(); ++k) cols.middleCols(d * static_cast<Eigen::Index>(k), d) = s.basis[k];
  const ColumnBasis cb = column_basis(cols, rank_tol);
  return cb.U * cb.U.adjoint();
}

struct RealSolve {
  RVec t;
  int nullity = 0;
};

RealSolve real_lsq(const RMat& a, const RVec& rhs, double rank_tol) {
  RealSolve r;
  if (a.cols() == 0) return r;
  Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() && sv(0) > 0)
    while (rank < sv.size() && sv(rank) > rank_tol * sv(0)) ++rank;
  RVec y = svd.matrixU().leftCols(rank).transpose() * rhs;
  for (int k = 0; k < rank; ++k) y(k) /= sv(k);
  r.t = svd.matrixV().leftCols(rank) * y;
  r.nullity = static_cast<int>(a.cols()) - rank;
  return r;
}

void finish_weight(WeightData& wd, const Tolerances& tol) {
  const Mat& p = wd.unit;
  const ColumnBasis cb = column_basis(p, tol.rank);
  if (cb.rank == 0) {
    wd.min_eigenvalue = 0.0;
  } else {
    const Mat c = cb.U.adjoint() * wd.density * cb.U;
    Eigen::SelfAdjointEigenSolver<Mat> es((c + c.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    wd.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  wd.found = wd.residual < tol.residual && wd.min_eigenvalue > tol.pd;
}

double max_membership(const OperatorSubspace& s, const std::vector<Mat>& xs, double tol) {
  double r = 0.0;
  for (const auto& x : xs) r = std::max(r, contains(s, x, tol).residual);
  return r;
}

std::vector<Mat> products(const std::vector<Mat>& xs, const std::vector<Mat>& ys) {
  std::vector<Mat> out;
  for (const auto& x : xs)
    for (const auto& y : ys) out.push_back(x * y);
  return out;
}

}  // namespace

BaseSpans base_spans(const Operator& w, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  const TensorSpace one({{n, Flavor::H}});
  const Mat E = w.m.adjoint() * w.m;
  const Mat G = w.m * w.m.adjoint();
  BaseSpans s;
  s.N = span(all_slices(E, n, Side::Right), one, tol.rank);
  s.L = span(all_slices(E, n, Side::Left), one, tol.rank);
  s.Nhat = span(all_slices(G, n, Side::Left), one, tol.rank);
  s.Lhat = span(all_slices(G, n, Side::Right), one, tol.rank);
  for (const auto& b : s.N.basis)
    for (const auto& c : s.L.basis) s.commutation_residual = std::max(s.commutation_residual, (b * c - c * b).norm());
  s.L_Lhat_residual = std::max(inclusion_residual(s.L, s.Lhat), inclusion_residual(s.Lhat, s.L));
  s.L_equals_Lhat = s.L.dim() == s.Lhat.dim() && s.L_Lhat_residual < tol.membership;
  const OperatorSubspace NL = tensor_subspace(s.N, s.L);
  s.E_in_NL_residual = contains(NL, E, tol.membership).residual;
  s.E_in_NtensorL = s.E_in_NL_residual < tol.membership;
  for (const auto* sp : {&s.N, &s.L, &s.Nhat, &s.Lhat}) {
    s.star_residual = std::max(s.star_residual, adjoint_closure_residual(*sp));
    s.algebra_residual = std::max(s.algebra_residual, product_closure_residual(*sp));
  }
  return s;
}

namespace {

Mat kappa_system(const Mat& E, int n) {
  Mat m(E.size(), static_cast<Eigen::Index>(n) * n);
  const Mat id = Mat::Identity(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      // column-major unknown index i + n*j
      const Mat col = sparse_aware_product(E, kron2(id, matrix_unit(n, i, j)));
      m.col(i + static_cast<Eigen::Index>(n) * j) = vec_view(col);
    }
  return m;
}

}  // namespace

KappaSolver::KappaSolver(const Operator& w, const Tolerances& tol)
    : n_(mpi_leg_dim(w)), E_(w.m.adjoint() * w.m), solver_(kappa_system(E_, n_), tol.rank), tol_(tol) {}

Vec KappaSolver::rhs(const Mat& b) const {
  if (b.rows() != n_ || b.cols() != n_) throw SpaceError("kappa: b must act on one H leg");
  const Mat r = sparse_aware_product(E_, kron2(b, Mat::Identity(n_, n_)));
  return vec_view(r);
}

KappaValue KappaSolver::finish(const Mat& b, const Vec& x) const {
  KappaValue k;
  k.value = unvec(x, n_);
  const Mat lhs = sparse_aware_product(E_, kron2(b, Mat::Identity(n_, n_)));
  const Mat rhs = sparse_aware_product(E_, kron2(Mat::Identity(n_, n_), k.value));
  k.residual = rel_gap(lhs, rhs);
  k.in_domain = k.residual < tol_.residual;
  k.unique = solver_.nullity() == 0;
  return k;
}

KappaValue KappaSolver::solve(const Mat& b) const { return finish(b, solver_.solve(rhs(b)).solution); }

KappaValue KappaSolver::solve_from(const Mat& b, const Mat& x0) const {
  const Vec v0 = vec_view(x0);
  const Mat lhs0 = sparse_aware_product(E_, kron2(Mat::Identity(n_, n_), x0));
  const Vec corr = solver_.solve(rhs(b) - vec_view(lhs0)).solution;
  return finish(b, v0 + corr);
}

KappaValue kappa_solve(const Operator& w, const Mat& b, const Tolerances& tol) { return KappaSolver(w, tol).solve(b); }

KappaMap kappa_map(const Operator& w, const OperatorSubspace& N, const Tolerances& tol) {
  const KappaSolver ks(w, tol);
  KappaMap km;
  km.nullity = ks.nullity();
  km.domain_basis = N.basis;
  for (const auto& b : N.basis) {
    const KappaValue v = ks.solve(b);
    km.values.push_back(v.value);
    km.residuals.push_back(v.residual);
    km.in_domain.push_back(v.in_domain);
  }
  for (std::size_t i = 0; i < N.basis.size(); ++i)
    for (std::size_t j = 0; j < N.basis.size(); ++j) {
      if (!km.in_domain[i] || !km.in_domain[j]) continue;
      const KappaValue p = ks.solve(N.basis[i] * N.basis[j]);
      if (!p.in_domain) continue;
      ++km.pairs_checked;
      km.anti_multiplicativity = std::max(km.anti_multiplicativity, rel_gap(p.value, km.values[j] * km.values[i]));
    }
  return km;
}

WeightData find_distinguished_weight(const Operator& w0, BaseSide side, const Tolerances& tol) {
  const Operator w = side == BaseSide::N ? w0 : dual_operator(w0);
  const int n = mpi_leg_dim(w);
  const Mat E = w.m.adjoint() * w.m;
  WeightData wd;
  wd.algebra = span(all_slices(E, n, Side::Right), TensorSpace({{n, Flavor::H}}), tol.rank);
  wd.unit = support_projection(wd.algebra, tol.rank);
  const auto herm = hermitian_basis(wd.algebra, tol.rank);
  RMat a(2 * n * n, static_cast<Eigen::Index>(herm.size()));
  for (std::size_t k = 0; k < herm.size(); ++k)
    a.col(static_cast<Eigen::Index>(k)) = realify(slice_left(E, n, n, herm[k]));
  const Mat id = Mat::Identity(n, n);
  const RealSolve rs = real_lsq(a, realify(id), tol.rank);
  wd.density = Mat::Zero(n, n);
  for (std::size_t k = 0; k < herm.size(); ++k) wd.density += rs.t(static_cast<Eigen::Index>(k)) * herm[k];
  wd.solution_space_dim = rs.nullity;
  wd.residual = rel_gap(id, slice_left(E, n, n, wd.density));
  finish_weight(wd, tol);
  return wd;
}

WeightData weight_from_values(const OperatorSubspace& algebra, const std::vector<cplx>& targets, const Tolerances& tol) {
  if (targets.size() != algebra.basis.size()) throw std::invalid_argument("weight_from_values: one target per basis element");
  WeightData wd;
  wd.algebra = algebra;
  const int n = algebra.side();
  wd.unit = support_projection(algebra, tol.rank);
  const auto herm = hermitian_basis(algebra, tol.rank);
  const auto m = static_cast<Eigen::Index>(targets.size());
  RMat a(2 * m, static_cast<Eigen::Index>(herm.size()));
  RVec rhs(2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < herm.size(); ++k) {
      const cplx v = (herm[k] * algebra.basis[static_cast<std::size_t>(j)]).trace();
      a(j, static_cast<Eigen::Index>(k)) = v.real();
      a(m + j, static_cast<Eigen::Index>(k)) = v.imag();
    }
    rhs(j) = targets[static_cast<std::size_t>(j)].real();
    rhs(m + j) = targets[static_cast<std::size_t>(j)].imag();
  }
  const RealSolve rs = real_lsq(a, rhs, tol.rank);
  wd.density = Mat::Zero(n, n);
  for (std::size_t k = 0; k < herm.size(); ++k) wd.density += rs.t(static_cast<Eigen::Index>(k)) * herm[k];
  wd.solution_space_dim = rs.nullity;
  double r = 0.0, scale = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const cplx t = targets[static_cast<std::size_t>(j)];
    r = std::max(r, std::abs(wd.value(algebra.basis[static_cast<std::size_t>(j)]) - t));
    scale = std::max(scale, std::abs(t));
  }
  wd.residual = r / scale;
  finish_weight(wd, tol);
  return wd;
}

Mat modular_conjugate(const WeightData& weight, cplx z, const Mat& x, double sign) {
  const Mat d = weight.density + (Mat::Identity(weight.unit.rows(), weight.unit.cols()) - weight.unit);
  const cplx e = sign * cplx(0.0, 1.0) * z;
  return pos_power(d, e) * x * pos_power(d, -e);
}

Mat BaseAntiIso::apply(const Mat& x) const {
  const Vec c = matrix * from.coords(x);
  return unvec(to.frame * c, to.side());
}

Mat BaseAntiIso::apply_inverse(const Mat& y) const {
  if (!invertible) throw std::logic_error("BaseAntiIso: map is not invertible");
  const Vec c = inverse * to.coords(y);
  return unvec(from.frame * c, from.side());
}

Mat gamma_N(const Operator& w, const WeightData& nu, const Mat& b) {
  const int n = mpi_leg_dim(w);
  const Mat E = w.m.adjoint() * w.m;
  return slice_left(E * kron2(b, Mat::Identity(n, n)), n, n, nu.density);
}

namespace {

BaseAntiIso make_Rtilde(const Operator& w, const WeightData& nu, const OperatorSubspace& L, double sign,
                        const Tolerances& tol) {
  BaseAntiIso r;
  r.from = nu.algebra;
  r.to = L;
  r.matrix = Mat::Zero(L.dim(), nu.algebra.dim());
  for (int k = 0; k < nu.algebra.dim(); ++k) {
    const Mat img = gamma_N(w, nu, modular_conjugate(nu, cplx(0.0, -0.5), nu.algebra.basis[k], sign));
    r.matrix.col(k) = L.coords(img);
    r.membership_residual = std::max(r.membership_residual, contains(L, img, tol.membership).residual);
  }
  if (r.matrix.rows() == r.matrix.cols() && r.matrix.size() > 0) {
    Eigen::JacobiSVD<Mat> svd(r.matrix);
    const auto& sv = svd.singularValues();
    r.invertible = sv(sv.size() - 1) > 1e-8 * sv(0);
    if (r.invertible) r.inverse = r.matrix.fullPivLu().inverse();
  } else if (r.matrix.size() == 0 && r.matrix.rows() == r.matrix.cols()) {
    r.invertible = true;
    r.inverse = r.matrix;
  }
  return r;
}

double anti_mult(const BaseAntiIso& r, const std::vector<Mat>& basis) {
  double g = 0.0;
  for (const auto& x : basis)
    for (const auto& y : basis) g = std::max(g, rel_gap(r.apply(x * y), r.apply(y) * r.apply(x)));
  return g;
}

}  // namespace

BaseMaps gamma_and_Rtilde(const Operator& w, const BaseSpans& spans, const WeightData& nu, const Tolerances& tol) {
  BaseMaps m;
  m.nu = nu;
  if (!nu.found) {
    m.failure = "no distinguished weight";
    return m;
  }
  for (const auto& b : nu.algebra.basis) m.gamma_N.push_back(gamma_N(w, nu, b));
  m.Rtilde = make_Rtilde(w, nu, spans.L, 1.0, tol);
  if (!m.Rtilde.invertible) {
    m.failure = "Rtilde not invertible";
    return m;
  }
  std::vector<cplx> targets;
  for (const auto& c : spans.L.basis) targets.push_back(nu.value(m.Rtilde.apply_inverse(c)));
  m.mu = weight_from_values(spans.L, targets, tol);
  if (!m.mu.found) {
    m.failure = "mu is not a positive weight";
    return m;
  }
  for (const auto& c : spans.L.basis)
    m.gamma_L.push_back(m.Rtilde.apply_inverse(modular_conjugate(m.mu, cplx(0.0, -0.5), c)));
  m.valid = true;
  return m;
}

double SeparabilityResiduals::worst() const {
  double r = std::max({mu_normalization, gamma_L_relation, gamma_N_relation, gamma_N_anti_mult, gamma_N_vs_kappa, polar,
                       polar_left, Rtilde_anti_mult, Rtilde_star, mu_consistency, sigma_mu_intertwine,
                       sigma_invariance});
  for (const auto& o : {Rkappa_anti_mult, Rkappa_star, kappa_T_Rkappa, kappa_Rkappa_T, Rkappa_wtilde})
    if (o) r = std::max(r, *o);
  return r;
}

SeparabilityResiduals check_separability_triple(const Operator& w, const BaseMaps& maps, const std::optional<Mat>& q,
                                                const std::optional<Mat>& wtilde, const Tolerances& tol) {
  if (!maps.valid) throw std::invalid_argument("check_separability_triple: base maps are not valid");
  const int n = mpi_leg_dim(w);
  const Mat id = Mat::Identity(n, n);
  const Mat E = w.m.adjoint() * w.m;
  const auto& Nb = maps.nu.algebra.basis;
  const auto& Lb = maps.Rtilde.to.basis;
  const WeightData& nu = maps.nu;
  const WeightData& mu = maps.mu;
  const BaseAntiIso& R = maps.Rtilde;
  const cplx half_i(0.0, 0.5);
  SeparabilityResiduals s;

  s.mu_normalization = rel_gap(id, slice_right(E, n, n, mu.density));
  for (std::size_t k = 0; k < Lb.size(); ++k)
    s.gamma_L_relation =
        std::max(s.gamma_L_relation, rel_gap(kron2(id, Lb[k]) * E, kron2(maps.gamma_L[k], id) * E));

  const KappaSolver ks(w, tol);
  for (std::size_t k = 0; k < Nb.size(); ++k) {
    const Mat& b = Nb[k];
    const Mat& g = maps.gamma_N[k];
    s.gamma_N_relation = std::max(s.gamma_N_relation, rel_gap(E * kron2(b, id), E * kron2(id, g)));
    const KappaValue kv = ks.solve(b);
    if (kv.in_domain) s.gamma_N_vs_kappa = std::max(s.gamma_N_vs_kappa, rel_gap(kv.value, g));
    s.polar = std::max(s.polar, rel_gap(g, R.apply(modular_conjugate(nu, half_i, b))));
    const Mat left = slice_left(kron2(b, id) * E, n, n, nu.density);
    s.polar_left = std::max(s.polar_left, rel_gap(left, R.apply(modular_conjugate(nu, -half_i, b))));
    s.Rtilde_star = std::max(s.Rtilde_star, rel_gap(R.apply(b.adjoint()), R.apply(b).adjoint()));
    s.mu_consistency = std::max(s.mu_consistency, std::abs(mu.value(R.apply(b)) - nu.value(b)) / std::max(1.0, std::abs(nu.value(b))));
    for (double t : {1.0, -1.0, 0.3, -0.3})
      s.sigma_invariance =
          std::max(s.sigma_invariance, contains(nu.algebra, modular_conjugate(nu, t, b), tol.membership).residual);
    for (std::size_t j = 0; j < Nb.size(); ++j)
      s.gamma_N_anti_mult =
          std::max(s.gamma_N_anti_mult, rel_gap(gamma_N(w, nu, b * Nb[j]), gamma_N(w, nu, Nb[j]) * g));
  }
  s.Rtilde_anti_mult = anti_mult(R, Nb);
  for (const auto& c : Lb)
    for (double t : {1.0, -1.0, 0.3, -0.3})
      s.sigma_mu_intertwine =
          std::max(s.sigma_mu_intertwine,
                   rel_gap(modular_conjugate(mu, t, c), R.apply(modular_conjugate(nu, -t, R.apply_inverse(c)))));

  {
    const BaseAntiIso Ro = make_Rtilde(w, nu, R.to, -1.0, tol);
    double c = anti_mult(Ro, Nb);
    for (const auto& b : Nb) {
      const Mat left = slice_left(kron2(b, id) * E, n, n, nu.density);
      c = std::max(c, rel_gap(left, Ro.apply(modular_conjugate(nu, -half_i, b, -1.0))));
    }
    s.calibration_opposite = c;
  }

  if (q) {
    const Mat qi = q->inverse();
    auto Rk = [&](const Mat& b) { return Mat(qi * ks.solve(b).value * *q); };
    double am = 0.0, st = 0.0, t1 = 0.0, t2 = 0.0;
    for (const auto& b : Nb) {
      const Mat kb = ks.solve(b).value;
      st = std::max(st, rel_gap(Rk(b.adjoint()), Rk(b).adjoint()));
      t1 = std::max(t1, rel_gap(kb, Mat(*q * Rk(b) * qi)));
      t2 = std::max(t2, rel_gap(kb, Rk(*q * b * qi)));
      for (const auto& c : Nb) am = std::max(am, rel_gap(Rk(b * c), Rk(c) * Rk(b)));
    }
    s.Rkappa_anti_mult = am;
    s.Rkappa_star = st;
    s.kappa_T_Rkappa = t1;
    s.kappa_Rkappa_T = t2;
    if (wtilde) {
      // for b = (id (x) w)(E): R_kappa(b) = (w^T (x) id)(Wt Wt*)
      const Mat ww = *wtilde * wtilde->adjoint();
      double r = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Mat F = matrix_unit(n, i, j);
          const Mat b = slice_right(E, n, n, F);
          r = std::max(r, rel_gap(Rk(b), slice_left(ww, n, n, F.transpose())));
        }
      s.Rkappa_wtilde = r;
    }
  }
  return s;
}

double CStarBases::worst() const {
  double r = std::max({B_equals_N, C_equals_L, b_x, x_b, x_c, c_x, x_chat, y_bhat, c_y, chat_y, E_multiplier});
  if (R_onto_C) r = std::max(r, *R_onto_C);
  return r;
}

CStarBases c_star_bases(const Operator& w, const BaseMaps* maps, const Tolerances& tol) {
  const int n = mpi_leg_dim(w);
  const TensorSpace one({{n, Flavor::H}});
  const Mat E = w.m.adjoint() * w.m;
  const BaseSpans bs = base_spans(w, tol);
  CStarBases cb;
  cb.B = span(all_slices(E, n, Side::Right), one, tol.rank);
  cb.C = span(all_slices(E, n, Side::Left), one, tol.rank);
  cb.B_equals_N = compare_spans(cb.B.basis, bs.N.basis, one, tol.rank).residual;
  cb.C_equals_L = compare_spans(cb.C.basis, bs.L.basis, one, tol.rank).residual;
  if (cb.B.dim() != bs.N.dim()) cb.B_equals_N = std::max(cb.B_equals_N, 1.0);
  if (cb.C.dim() != bs.L.dim()) cb.C_equals_L = std::max(cb.C_equals_L, 1.0);

  const auto A = leg_algebra(w, LegSide::A, tol);
  const auto Ah = leg_algebra(w, LegSide::Ahat, tol);
  const auto& a = A.space.basis;
  const auto& ah = Ah.space.basis;
  const double mt = tol.membership;
  cb.b_x = max_membership(A.space, products(cb.B.basis, a), mt);
  cb.x_b = max_membership(A.space, products(a, cb.B.basis), mt);
  cb.x_c = max_membership(A.space, products(a, cb.C.basis), mt);
  cb.c_x = max_membership(A.space, products(cb.C.basis, a), mt);
  cb.x_chat = max_membership(A.space, products(a, bs.Lhat.basis), mt);
  cb.y_bhat = max_membership(Ah.space, products(ah, bs.Nhat.basis), mt);
  cb.c_y = max_membership(Ah.space, products(cb.C.basis, ah), mt);
  cb.chat_y = max_membership(Ah.space, products(bs.Lhat.basis, ah), mt);

  const OperatorSubspace BC = tensor_subspace(cb.B, cb.C);
  for (const auto& b : cb.B.basis)
    for (const auto& c : cb.C.basis) {
      const Mat k = kron2(b, c);
      cb.E_multiplier = std::max({cb.E_multiplier, contains(BC, Mat(E * k), mt).residual,
                                  contains(BC, Mat(k * E), mt).residual});
    }

  if (maps && maps->valid) {
    std::vector<Mat> img;
    for (const auto& b : cb.B.basis) img.push_back(maps->Rtilde.apply(b));
    double r = compare_spans(img, cb.C.basis, one, tol.rank).residual;
    if (static_cast<int>(img.size()) != cb.C.dim()) r = std::max(r, 1.0);
    r = std::max(r, anti_mult(maps->Rtilde, cb.B.basis));
    for (const auto& b : cb.B.basis) r = std::max(r, rel_gap(maps->Rtilde.apply(b.adjoint()), maps->Rtilde.apply(b).adjoint()));
    cb.R_onto_C = r;
  }
  return cb;
}

}  // namespace mpilab
