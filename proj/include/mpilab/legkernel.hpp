#pragma once

#include "mpilab/types.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace mpilab {

// Y = op_{legs} X for a dense X on the ambient space with the given leg dims.
// Sparse small operators are scattered column by column; dense ones go through
// a gather / small product / scatter per block of target digits. The OpenMP
// version splits over columns (sparse) or blocks (dense); every output entry is
// written by one thread with the serial arithmetic, so results are bit-identical.
Mat apply_legs(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x);
Mat apply_legs_serial(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x);
// embed + dense product; slow, used as ground truth.
Mat apply_legs_reference(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x);

// Y = X op_{legs}
Mat apply_legs_right(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims, const Mat& x);

using SpMat = Eigen::SparseMatrix<cplx>;

SpMat embed_sparse(const Mat& op, const std::vector<int>& legs, const std::vector<int>& dims);

// Ordered product of leg-embedded factors on a typed ambient space,
// evaluated right to left with the dense leg kernel, or as sparse products
// when every factor is sparse.
class LegChain {
 public:
  explicit LegChain(TensorSpace ambient);

  LegChain& mul(const Operator& op, std::vector<int> legs);
  LegChain& mul(const Mat& op, Flavor f, int leg);
  Mat eval() const;
  Mat eval_on(const Mat& x) const;
  SpMat eval_sparse() const;
  // every factor has at most a quarter of its entries nonzero
  bool sparse() const;

 private:
  struct Factor {
    Mat op;
    std::vector<int> legs;
  };
  TensorSpace ambient_;
  std::vector<int> dims_;
  std::vector<Factor> factors_;
};

// rel_gap of two chains on the same ambient space, sparse when both allow it.
double chain_gap(const LegChain& lhs, const LegChain& rhs);

}  // namespace mpilab
