#include "mpilab/tensor.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

namespace mpilab {

namespace {

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

void check_two_leg(const Operator& x) {
  if (x.space.num_legs() != 2) throw SpaceError("slice needs a two-leg operator, got " + x.space.describe());
}

}  // namespace

Operator kron(const Operator& x, const Operator& y) {
  std::vector<LegSpec> legs = x.space.legs;
  legs.insert(legs.end(), y.space.legs.begin(), y.space.legs.end());
  const Eigen::Index p = x.m.rows(), q = y.m.rows();
  Mat k(p * q, p * q);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) k.block(i * q, j * q, q, q) = x.m(i, j) * y.m;
  return {TensorSpace(std::move(legs)), std::move(k)};
}

Operator identity(const TensorSpace& s) {
  const int d = s.total_dim();
  return {s, Mat::Identity(d, d)};
}

Operator single_leg(const Mat& m, Flavor f) {
  return {TensorSpace({{static_cast<int>(m.rows()), f}}), m};
}

Operator two_leg(const Mat& m, Flavor f1, Flavor f2) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m.rows()))));
  if (n * n != m.rows()) throw SpaceError("two_leg: side " + std::to_string(m.rows()) + " is not a square");
  return {TensorSpace({{n, f1}, {n, f2}}), m};
}

Operator embed(const Operator& x, const std::vector<int>& target_legs, const TensorSpace& ambient) {
  const int k = x.space.num_legs();
  if (static_cast<int>(target_legs.size()) != k) throw SpaceError("embed: leg count mismatch");
  std::vector<int> dims;
  for (const auto& l : ambient.legs) dims.push_back(l.dim);
  const auto st = strides_of(dims);
  std::vector<int> seen;
  for (int a = 0; a < k; ++a) {
    const int t = target_legs[a];
    if (t < 1 || t > ambient.num_legs()) throw SpaceError("embed: leg index out of range");
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) throw SpaceError("embed: repeated leg");
    seen.push_back(t);
    if (!(ambient.legs[t - 1] == x.space.legs[a]))
      throw SpaceError("embed: leg " + std::to_string(t) + " of " + ambient.describe() + " does not match " +
                       x.space.describe());
  }
  // offset of each local multi-index inside the ambient index
  const int local = x.space.total_dim();
  std::vector<int> off(local, 0);
  for (int ls = 0; ls < local; ++ls) {
    int rem = ls;
    for (int a = k - 1; a >= 0; --a) {
      const int d = x.space.legs[a].dim;
      off[ls] += (rem % d) * st[target_legs[a] - 1];
      rem /= d;
    }
  }
  const int total = ambient.total_dim();
  Mat out = Mat::Zero(total, total);
  for (int r = 0; r < total; ++r) {
    int lr = 0, base = r;
    for (int a = 0; a < k; ++a) {
      const int t = target_legs[a] - 1;
      const int digit = (r / st[t]) % dims[t];
      lr = lr * dims[t] + digit;
      base -= digit * st[t];
    }
    for (int ls = 0; ls < local; ++ls) out(r, base + off[ls]) = x.m(lr, ls);
  }
  return {ambient, std::move(out)};
}

Operator flip(int n, Flavor f) {
  if (n < 1) throw SpaceError("flip: n must be positive");
  Mat s = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) s(k * n + i, i * n + k) = 1.0;
  return {TensorSpace({{n, f}, {n, f}}), std::move(s)};
}

Mat slice_right(const Mat& x, int n1, int n2, const Mat& F) {
  Mat out = Mat::Zero(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int k = 0; k < n1; ++k) {
      cplx s = 0.0;
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l) s += x(i * n2 + j, k * n2 + l) * F(l, j);
      out(i, k) = s;
    }
  return out;
}

Mat slice_left(const Mat& x, int n1, int n2, const Mat& F) {
  Mat out = Mat::Zero(n2, n2);
  for (int i = 0; i < n1; ++i)
    for (int k = 0; k < n1; ++k) {
      const cplx f = F(k, i);
      if (f == cplx(0.0)) continue;
      out += f * x.block(i * n2, k * n2, n2, n2);
    }
  return out;
}

Operator slice(const Operator& x, Side side, const Functional& w) {
  check_two_leg(x);
  const auto& l1 = x.space.legs[0];
  const auto& l2 = x.space.legs[1];
  const auto& sliced = side == Side::Right ? l2 : l1;
  if (!(sliced == w.leg)) throw SpaceError("slice: functional leg does not match the sliced leg");
  if (side == Side::Right) return {TensorSpace({l1}), slice_right(x.m, l1.dim, l2.dim, w.density)};
  return {TensorSpace({l2}), slice_left(x.m, l1.dim, l2.dim, w.density)};
}

Operator transpose_op(const Operator& m) {
  if (m.space.num_legs() != 1) throw SpaceError("transpose_op: single-leg operator expected");
  return transpose_all(m);
}

Operator transpose_all(const Operator& m) {
  auto legs = m.space.legs;
  for (auto& l : legs) l.flavor = flipped(l.flavor);
  return {TensorSpace(std::move(legs)), m.m.transpose()};
}

Mat pos_power(const Mat& p, cplx z, double pd_tol) {
  if (p.rows() != p.cols()) throw std::invalid_argument("pos_power: square matrix expected");
  if ((p - p.adjoint()).norm() > 1e-10 * std::max(1.0, p.norm()))
    throw std::invalid_argument("pos_power: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() <= pd_tol)
    throw std::invalid_argument("pos_power: eigenvalue below the positive-definiteness floor");
  Vec d(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) d(i) = std::exp(z * std::log(ev(i)));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Operator pos_power(const Operator& p, cplx z, double pd_tol) {
  return {p.space, pos_power(p.m, z, pd_tol)};
}

Eigen::Map<const Vec> vec_view(const Mat& x) { return {x.data(), x.size()}; }

Mat unvec(const Vec& v, int rows) { return Eigen::Map<const Mat>(v.data(), rows, v.size() / rows); }

Vec OperatorSubspace::coords(const Mat& x) const { return frame.adjoint() * vec_view(x); }

Mat OperatorSubspace::project(const Mat& x) const {
  if (basis.empty()) return Mat::Zero(x.rows(), x.cols());
  return unvec(frame * coords(x), static_cast<int>(x.rows()));
}

namespace {

bool mostly_zero(const Mat& a) { return 4 * (a.array() != cplx(0.0)).count() <= a.size(); }

ColumnBasis column_basis_dense(const Mat& m, double rank_tol);

}  // namespace

Mat sparse_aware_product(const Mat& a, const Mat& b) {
  if (a.rows() < 16 || !mostly_zero(a) || !mostly_zero(b)) return a * b;
  using Sp = Eigen::SparseMatrix<cplx>;
  const Sp sa = a.sparseView(), sb = b.sparseView();
  return Mat(sa * sb);
}

ColumnBasis column_basis(const Mat& m, double rank_tol) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (!m.row(i).isZero(0.0)) rows.push_back(i);
  if (4 * static_cast<Eigen::Index>(rows.size()) > 3 * m.rows()) return column_basis_dense(m, rank_tol);
  Mat packed(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) packed.row(static_cast<Eigen::Index>(k)) = m.row(rows[k]);
  ColumnBasis small = column_basis_dense(packed, rank_tol);
  ColumnBasis cb;
  cb.rank = small.rank;
  cb.singular_values = std::move(small.singular_values);
  cb.U = Mat::Zero(m.rows(), cb.rank);
  for (std::size_t k = 0; k < rows.size(); ++k) cb.U.row(rows[k]) = small.U.row(static_cast<Eigen::Index>(k));
  return cb;
}

namespace {

ColumnBasis column_basis_dense(const Mat& m, double rank_tol) {
  ColumnBasis cb;
  const Eigen::Index r = m.rows(), c = m.cols();
  if (r == 0 || c == 0) {
    cb.U = Mat::Zero(r, 0);
    return cb;
  }
  // m P = Q R. Rows of R past the first k with |R_kk| <= 1e-13 |R_00| have norm at
  // most sqrt(c) times that, far below rank_tol, so the SVD only needs Q_k R_k.
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  const Mat& QR = qr.matrixQR();
  const Eigen::Index p = std::min(r, c);
  const double top = std::abs(QR(0, 0));
  Eigen::Index k = 0;
  while (k < p && std::abs(QR(k, k)) > 1e-13 * top) ++k;
  if (k == 0) {
    cb.singular_values = Eigen::VectorXd::Zero(0);
    cb.U = Mat::Zero(r, 0);
    return cb;
  }
  const Mat Rk = QR.topRows(k).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Mat> svd(Rk, Eigen::ComputeThinU);
  cb.singular_values = svd.singularValues();
  const Mat Qk = qr.householderQ() * Mat::Identity(r, k);
  const auto& sv = cb.singular_values;
  if (sv(0) > 0)
    while (cb.rank < sv.size() && sv(cb.rank) > rank_tol * sv(0)) ++cb.rank;
  cb.U = Qk * svd.matrixU().leftCols(cb.rank);
  return cb;
}

}  // namespace

OperatorSubspace span_of_columns(const Mat& cols, const TensorSpace& space, double rank_tol) {
  const int d = space.total_dim();
  if (cols.rows() != static_cast<Eigen::Index>(d) * d) throw SpaceError("span: vectorized size mismatch");
  OperatorSubspace s;
  s.space = space;
  if (cols.cols() == 0) {
    s.frame = Mat::Zero(cols.rows(), 0);
    return s;
  }
  ColumnBasis cb = column_basis(cols, rank_tol);
  s.frame = std::move(cb.U);
  for (int k = 0; k < cb.rank; ++k) s.basis.push_back(unvec(s.frame.col(k), d));
  return s;
}

OperatorSubspace span(const std::vector<Mat>& family, const TensorSpace& space, double rank_tol) {
  if (family.empty()) throw std::invalid_argument("span: empty family");
  const int d = space.total_dim();
  Mat cols(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (family[k].rows() != d || family[k].cols() != d) throw SpaceError("span: operator side mismatch");
    cols.col(static_cast<Eigen::Index>(k)) = vec_view(family[k]);
  }
  return span_of_columns(cols, space, rank_tol);
}

OperatorSubspace span(const std::vector<Operator>& family, double rank_tol) {
  if (family.empty()) throw std::invalid_argument("span: empty family");
  std::vector<Mat> mats;
  for (const auto& op : family) {
    if (!(op.space == family.front().space)) throw SpaceError("span: operators live on different spaces");
    mats.push_back(op.m);
  }
  return span(mats, family.front().space, rank_tol);
}

Membership contains(const OperatorSubspace& s, const Mat& x, double tol) {
  if (x.rows() != s.side()) throw SpaceError("contains: space mismatch");
  Membership r;
  r.residual = (x - s.project(x)).norm() / std::max(1.0, x.norm());
  r.flag = r.residual < tol;
  return r;
}

Membership contains(const OperatorSubspace& s, const Operator& x, double tol) {
  if (!(s.space == x.space)) throw SpaceError("contains: space mismatch");
  return contains(s, x.m, tol);
}

double inclusion_residual(const OperatorSubspace& a, const OperatorSubspace& b) {
  double r = 0.0;
  for (const auto& x : b.basis) r = std::max(r, contains(a, x).residual);
  return r;
}

double product_closure_residual(const OperatorSubspace& s) {
  double r = 0.0;
  for (const auto& x : s.basis)
    for (const auto& y : s.basis) r = std::max(r, contains(s, Mat(x * y)).residual);
  return r;
}

double adjoint_closure_residual(const OperatorSubspace& s) {
  double r = 0.0;
  for (const auto& x : s.basis) r = std::max(r, contains(s, Mat(x.adjoint())).residual);
  return r;
}

OperatorSubspace tensor_subspace(const OperatorSubspace& a, const OperatorSubspace& b) {
  std::vector<LegSpec> legs = a.space.legs;
  legs.insert(legs.end(), b.space.legs.begin(), b.space.legs.end());
  OperatorSubspace s;
  s.space = TensorSpace(std::move(legs));
  const Eigen::Index d = s.side();
  s.frame.resize(d * d, static_cast<Eigen::Index>(a.dim()) * b.dim());
  Eigen::Index c = 0;
  for (const auto& x : a.basis)
    for (const auto& y : b.basis) {
      Mat k = kron(Operator(a.space, x), Operator(b.space, y)).m;
      s.frame.col(c++) = vec_view(k);
      s.basis.push_back(std::move(k));
    }
  return s;
}

LsqSolver::LsqSolver(const Mat& map, double rank_tol) : map_(map) {
  for (Eigen::Index i = 0; i < map_.rows(); ++i)
    if (!map_.row(i).isZero(0.0)) rows_.push_back(i);
  const auto r = static_cast<Eigen::Index>(rows_.size()), c = map_.cols();
  rank_ = 0;
  if (r > 0 && c > 0) {
    Mat packed(r, c);
    for (Eigen::Index k = 0; k < r; ++k) packed.row(k) = map_.row(rows_[static_cast<std::size_t>(k)]);
    if (r > 2 * c) {
      qr_.compute(packed);
      reduced_ = true;
      svd_.compute(Mat(qr_.matrixQR().topRows(c).triangularView<Eigen::Upper>()), Eigen::ComputeThinU | Eigen::ComputeThinV);
    } else {
      svd_.compute(packed, Eigen::ComputeThinU | Eigen::ComputeThinV);
    }
    const auto& sv = svd_.singularValues();
    if (sv.size() && sv(0) > 0)
      while (rank_ < sv.size() && sv(rank_) > rank_tol * sv(0)) ++rank_;
  }
  nullity_ = static_cast<int>(c) - rank_;
}

LsqResult LsqSolver::solve(const Vec& rhs) const {
  if (rhs.size() != map_.rows()) throw std::invalid_argument("LsqSolver: right-hand side has the wrong length");
  LsqResult r;
  r.rank = rank_;
  r.nullity = nullity_;
  r.solution = Vec::Zero(map_.cols());
  if (rank_ > 0) {
    Vec packed(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t k = 0; k < rows_.size(); ++k) packed(static_cast<Eigen::Index>(k)) = rhs(rows_[k]);
    if (reduced_) packed = (qr_.householderQ().adjoint() * packed).head(map_.cols()).eval();
    const auto& sv = svd_.singularValues();
    Vec y = svd_.matrixU().leftCols(rank_).adjoint() * packed;
    for (int k = 0; k < rank_; ++k) y(k) /= sv(k);
    r.solution = svd_.matrixV().leftCols(rank_) * y;
  }
  r.residual = (map_ * r.solution - rhs).norm();
  return r;
}

LsqResult lsq_solve(const Mat& map, const Vec& rhs, double rank_tol) {
  return LsqSolver(map, rank_tol).solve(rhs);
}

}  // namespace mpilab
