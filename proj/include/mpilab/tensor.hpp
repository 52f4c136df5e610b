#pragma once

#include "mpilab/types.hpp"

#include <utility>
#include <vector>

namespace mpilab {

enum class Side { Left, Right };

Operator kron(const Operator& x, const Operator& y);
Operator identity(const TensorSpace& s);
Operator single_leg(const Mat& m, Flavor f = Flavor::H);
Operator two_leg(const Mat& m, Flavor f1 = Flavor::H, Flavor f2 = Flavor::H);

// Legs are 1-based, as in W_13. Throws SpaceError on dim/flavor mismatch.
Operator embed(const Operator& x, const std::vector<int>& target_legs, const TensorSpace& ambient);

Operator flip(int n, Flavor f = Flavor::H);

// Right: partial trace over leg 2 of x(1 (x) F). Left: over leg 1 of x(F (x) 1).
Operator slice(const Operator& x, Side side, const Functional& w);
Mat slice_right(const Mat& x, int n1, int n2, const Mat& F);
Mat slice_left(const Mat& x, int n1, int n2, const Mat& F);

Operator transpose_op(const Operator& m);
// Transpose on every leg at once, e.g. W^{T (x) T}.
Operator transpose_all(const Operator& m);

// p^z for Hermitian positive definite p.
Mat pos_power(const Mat& p, cplx z, double pd_tol = 1e-12);
Operator pos_power(const Operator& p, cplx z, double pd_tol = 1e-12);

struct OperatorSubspace {
  TensorSpace space;
  std::vector<Mat> basis;
  Mat frame;  // columns: vec(basis[k]), orthonormal

  int dim() const { return static_cast<int>(basis.size()); }
  int side() const { return space.total_dim(); }
  Vec coords(const Mat& x) const;
  Mat project(const Mat& x) const;
};

Eigen::Map<const Vec> vec_view(const Mat& x);
Mat unvec(const Vec& v, int rows);

OperatorSubspace span(const std::vector<Mat>& family, const TensorSpace& space, double rank_tol = 1e-10);
OperatorSubspace span(const std::vector<Operator>& family, double rank_tol = 1e-10);
// Orthonormal basis of the column space of a stack of vectorized operators.
OperatorSubspace span_of_columns(const Mat& cols, const TensorSpace& space, double rank_tol = 1e-10);

// a*b, through sparse storage when both factors are mostly zero
Mat sparse_aware_product(const Mat& a, const Mat& b);

// Orthonormal basis of the column space, with its rank at rank_tol relative to
// the largest singular value. All-zero rows are dropped, then a column-pivoted
// QR keeps the columns with |R_kk| > 1e-13 |R_00| and only that k x k core goes
// through the SVD. singular_values has length k.
struct ColumnBasis {
  Mat U;
  Eigen::VectorXd singular_values;
  int rank = 0;
};
ColumnBasis column_basis(const Mat& m, double rank_tol = 1e-10);

struct Membership {
  bool flag = false;
  double residual = 0.0;
};

Membership contains(const OperatorSubspace& s, const Mat& x, double tol = 1e-9);
Membership contains(const OperatorSubspace& s, const Operator& x, double tol = 1e-9);
// Max membership residual of every basis element of b inside a.
double inclusion_residual(const OperatorSubspace& a, const OperatorSubspace& b);
// Max residual of s.basis[i]*s.basis[j] inside s.
double product_closure_residual(const OperatorSubspace& s);
double adjoint_closure_residual(const OperatorSubspace& s);
OperatorSubspace tensor_subspace(const OperatorSubspace& a, const OperatorSubspace& b);

struct LsqResult {
  Vec solution;
  double residual = 0.0;
  int nullity = 0;
  int rank = 0;
};

// Minimum-norm least squares via SVD. All SVDs here are one-sided Jacobi:
// Eigen 3.4.0 BDCSVD returns wrong singular values on some 0/1-structured inputs.
LsqResult lsq_solve(const Mat& map, const Vec& rhs, double rank_tol = 1e-10);

// Zero rows of the map are dropped and tall maps are QR-reduced before the SVD.
class LsqSolver {
 public:
  LsqSolver(const Mat& map, double rank_tol = 1e-10);
  LsqResult solve(const Vec& rhs) const;
  int nullity() const { return nullity_; }
  int rank() const { return rank_; }

 private:
  Mat map_;
  std::vector<Eigen::Index> rows_;
  bool reduced_ = false;
  Eigen::HouseholderQR<Mat> qr_;
  Eigen::JacobiSVD<Mat> svd_;
  int rank_ = 0;
  int nullity_ = 0;
};

}  // namespace mpilab
