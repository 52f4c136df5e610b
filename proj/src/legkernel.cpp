#include "mpilab/legkernel.hpp"

#include "mpilab/tensor.hpp"

#include <algorithm>
#include <utility>

namespace mpilab {

namespace {

struct Plan {
  // per ambient index: the index with target digits zeroed, and the local index
  std::vector<int> base, local_row;
  // per local column: offset into the ambient index
  std::vector<int> off;
  // sparse columns of the small operator
  std::vector<std::vector<std::pair<int, cplx>>> cols;
  // dense path: ambient indices with all target digits zero
  bool dense = false;
  std::vector<int> bases;
  Mat op;
};

Plan make_plan(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims) {
  const int m = static_cast<int>(dims.size());
  std::vector<int> st(m, 1);
  for (int i = m - 2; i >= 0; --i) st[i] = st[i + 1] * dims[i + 1];
  int total = 1, local = 1;
  for (int d : dims) total *= d;
  for (int l : legs) {
    if (l < 1 || l > m) throw SpaceError("leg index out of range");
    local *= dims[l - 1];
  }
  if (op.rows() != local || op.cols() != local) throw SpaceError("leg operator side does not match its legs");

  Plan p;
  p.base.resize(total);
  p.local_row.resize(total);
  for (int r = 0; r < total; ++r) {
    int lr = 0, b = r;
    for (int l : legs) {
      const int t = l - 1;
      const int digit = (r / st[t]) % dims[t];
      lr = lr * dims[t] + digit;
      b -= digit * st[t];
    }
    p.base[r] = b;
    p.local_row[r] = lr;
  }
  p.off.assign(local, 0);
  for (int ls = 0; ls < local; ++ls) {
    int rem = ls;
    for (int a = static_cast<int>(legs.size()) - 1; a >= 0; --a) {
      const int t = legs[a] - 1;
      p.off[ls] += (rem % dims[t]) * st[t];
      rem /= dims[t];
    }
  }
  p.cols.resize(local);
  std::size_t nnz = 0;
  for (int ls = 0; ls < local; ++ls)
    for (int lr = 0; lr < local; ++lr)
      if (op(lr, ls) != cplx(0.0)) {
        p.cols[ls].emplace_back(lr, op(lr, ls));
        ++nnz;
      }
  p.dense = local >= 4 && 4 * nnz > static_cast<std::size_t>(local) * local;
  if (p.dense) {
    p.op = op;
    for (int r = 0; r < total; ++r)
      if (p.local_row[r] == 0) p.bases.push_back(p.base[r]);
  }
  return p;
}

// Dense path for one block of target digits: gather, small product, scatter.
void apply_block(const Plan& p, int b, const Mat& x, Mat& y) {
  const int local = static_cast<int>(p.off.size());
  Mat g(local, x.cols());
  for (int l = 0; l < local; ++l) g.row(l) = x.row(b + p.off[l]);
  const Mat h = p.op * g;
  for (int l = 0; l < local; ++l) y.row(b + p.off[l]) = h.row(l);
}

// Scatter form: zeros of the input column are skipped, which is what makes
// products of the (very sparse) groupoid operators cheap.
inline void apply_column(const Plan& p, const cplx* in, cplx* out, int total) {
  std::fill(out, out + total, cplx(0.0));
  for (int s = 0; s < total; ++s) {
    const cplx x = in[s];
    if (x == cplx(0.0)) continue;
    const int b = p.base[s];
    for (const auto& [lr, v] : p.cols[p.local_row[s]]) out[b + p.off[lr]] += v * x;
  }
}

}  // namespace

Mat apply_legs_serial(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x) {
  const Plan p = make_plan(op, legs, dims);
  const int total = static_cast<int>(p.base.size());
  if (x.rows() != total) throw SpaceError("apply_legs: operand side mismatch");
  Mat y(x.rows(), x.cols());
  if (p.dense) {
    for (int b : p.bases) apply_block(p, b, x, y);
    return y;
  }
  for (Eigen::Index c = 0; c < x.cols(); ++c) apply_column(p, x.col(c).data(), y.col(c).data(), total);
  return y;
}

Mat apply_legs(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x) {
  const Plan p = make_plan(op, legs, dims);
  const int total = static_cast<int>(p.base.size());
  if (x.rows() != total) throw SpaceError("apply_legs: operand side mismatch");
  Mat y(x.rows(), x.cols());
  if (p.dense) {
    // blocks partition the rows of y; same per-block arithmetic as the serial path
    const long nb = static_cast<long>(p.bases.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < nb; ++k) apply_block(p, p.bases[k], x, y);
    return y;
  }
  const long cols = static_cast<long>(x.cols());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < cols; ++c) apply_column(p, x.col(c).data(), y.col(c).data(), total);
  return y;
}

Mat apply_legs_reference(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x) {
  std::vector<LegSpec> small, amb;
  for (int l : legs) small.push_back({dims[l - 1], Flavor::H});
  for (int d : dims) amb.push_back({d, Flavor::H});
  return embed(Operator(TensorSpace(small), op), legs, TensorSpace(amb)).m * x;
}

SpMat embed_sparse(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims) {
  const Plan p = make_plan(op, legs, dims);
  const int total = static_cast<int>(p.base.size());
  std::vector<Eigen::Triplet<cplx>> t;
  for (int s = 0; s < total; ++s)
    for (const auto& [lr, v] : p.cols[p.local_row[s]]) t.emplace_back(p.base[s] + p.off[lr], s, v);
  SpMat m(total, total);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Mat apply_legs_right(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x) {
  return apply_legs(op.transpose(), legs, dims, x.transpose()).transpose();
}

LegChain::LegChain(TensorSpace ambient) : ambient_(std::move(ambient)) {
  for (const auto& l : ambient_.legs) dims_.push_back(l.dim);
}

LegChain& LegChain::mul(const Operator& op, std::vector<int> legs) {
  if (static_cast<int>(legs.size()) != op.space.num_legs()) throw SpaceError("LegChain: leg count mismatch");
  for (std::size_t a = 0; a < legs.size(); ++a) {
    const int t = legs[a];
    if (t < 1 || t > ambient_.num_legs()) throw SpaceError("LegChain: leg index out of range");
    if (!(ambient_.legs[t - 1] == op.space.legs[a]))
      throw SpaceError("LegChain: factor on " + op.space.describe() + " cannot act on leg " + std::to_string(t) +
                       " of " + ambient_.describe());
  }
  factors_.push_back({op.m, std::move(legs)});
  return *this;
}

LegChain& LegChain::mul(const Mat& op, Flavor f, int leg) {
  return mul(Operator(TensorSpace({{static_cast<int>(op.rows()), f}}), op), {leg});
}

Mat LegChain::eval() const {
  if (sparse()) return Mat(eval_sparse());
  const int d = ambient_.total_dim();
  return eval_on(Mat::Identity(d, d));
}

bool LegChain::sparse() const {
  for (const auto& f : factors_) {
    const auto nnz = (f.op.array() != cplx(0.0)).count();
    if (4 * nnz > f.op.size()) return false;
  }
  return true;
}

SpMat LegChain::eval_sparse() const {
  const int d = ambient_.total_dim();
  SpMat y(d, d);
  y.setIdentity();
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) y = SpMat(embed_sparse(it->op, it->legs, dims_) * y);
  return y;
}

double chain_gap(const LegChain& lhs, const LegChain& rhs) {
  if (lhs.sparse() && rhs.sparse()) {
    const SpMat a = lhs.eval_sparse();
    const SpMat b = rhs.eval_sparse();
    return SpMat(a - b).norm() / std::max(1.0, a.norm());
  }
  return rel_gap(lhs.eval(), rhs.eval());
}

Mat LegChain::eval_on(const Mat& x) const {
  Mat y = x;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) y = apply_legs(it->op, it->legs, dims_, y);
  return y;
}

}  // namespace mpilab
