#pragma once

#include "mpilab/base.hpp"
#include "mpilab/manageability.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mpilab {

// Q^{2iz} a Q^{-2iz}; tau_{-i/2}(a) = Q a Q^-1.
Mat tau(const Operator& q, cplx z, const Mat& a);

// ((id(x)w)(W), (id(x)w)(W*))
std::pair<Mat, Mat> antipode_S(const Operator& w, const Functional& omega);

// Linear map fixed on a generating family g_k -> h_k, extended to span{g_k}.
// Well defined iff every relation sum c_k g_k = 0 gives sum c_k h_k = 0.
struct LinearExtension {
  OperatorSubspace domain;
  Mat matrix;  // vec(image) = matrix * domain.coords(x)
  int relations = 0;           // dimension of the relation space among the generators
  int inconsistency_rank = 0;  // relations mapped to nonzero images
  double inconsistency = 0.0;  // max |sum c_k h_k| over unit relations
  Vec offending;               // a relation with nonzero image, empty when well defined
  bool well_defined() const { return inconsistency_rank == 0; }
  Mat apply(const Mat& x) const;
  double membership(const Mat& x) const;  // distance of x from the domain, relative
};

LinearExtension extend_linearly(const std::vector<Mat>& generators, const std::vector<Mat>& images,
                                const TensorSpace& space, const Tolerances& tol = {});

// S on span A from the matrix-unit functional grid.
LinearExtension assemble_S(const Operator& w, const Tolerances& tol = {});
// R_A: (id(x)w)(W*) -> (id(x)w)(Wt)^T
LinearExtension unitary_antipode_RA(const Operator& w, const Operator& wtilde, const Tolerances& tol = {});

struct AntipodeData {
  Operator Q;
  std::vector<std::pair<Mat, Mat>> generator_map;  // over omega_{e_i, e_j}, index i*n + j
  LinearExtension S, RA;
  std::vector<std::pair<double, std::vector<Mat>>> tau_samples;  // tau_t of the A basis
  double tau_membership = 0.0;  // worst distance of tau_t(A basis) from A
};

AntipodeData antipode_data(const Operator& w, const Operator& q, const Operator& wtilde, const Tolerances& tol = {});

struct AntipodeResiduals {
  double polar = 0.0;           // S = R_A o tau_{-i/2} on generators
  double polar_commuted = 0.0;  // S = tau_{-i/2} o R_A
  double anti_mult = 0.0;       // S(ab) = S(b)S(a) over basis pairs
  double star_involution = 0.0;  // S(S(a)*)* = a
  double lemma = 0.0;           // tau_{-i/2}((id(x)w)(W)) = (id(x)w)(Wt)^T
  double square = 0.0;          // S o S = tau_{-i}
  double RA_involutive = 0.0, RA_star = 0.0, RA_anti_mult = 0.0;
  double tau_membership = 0.0;
  int S_inconsistency = 0, RA_inconsistency = 0;
  std::optional<double> unitary_inverse;  // S(a*)* = S^-1(a), only when E = G = 1
  double worst() const;  // residuals only; the inconsistency ranks are reported apart
};

AntipodeResiduals check_antipode(const Operator& w, const Operator& q, const Operator& wtilde,
                                 const Tolerances& tol = {});

struct DualityResiduals {
  AntipodeResiduals dual;        // S-hat, R_Ahat through W-hat and its Wt
  double Shat_inverse = 0.0;     // S-hat^{-1} = R_Ahat o tau_{i/2} on (w(x)id)(W)
  double Rhat_formula = 0.0;     // R_Ahat((w(x)id)(W)) = (w^T(x)id)(Wt*)
  double decomposition = 0.0;    // W inside B(H) (x) A-hat
  double transpose_R = 0.0;      // W^{T (x) R-hat} = Wt*
  double wtilde_partial_isometry = 0.0;
  double worst() const;
};

DualityResiduals check_duality(const Operator& w, const Operator& q, const Operator& wtilde,
                               const Tolerances& tol = {});

struct BaseRestrictionResiduals {
  double tau_B = 0.0;  // tau_t|B = sigma^nu_{-t}
  double tau_C = 0.0;  // tau_t|C = sigma^mu_t
  double S_B = 0.0;    // S|B = gamma_B
  double S_C = 0.0;    // S|C = gamma_C
  double B_in_A = 0.0, C_in_A = 0.0;
  double worst() const;
};

BaseRestrictionResiduals check_base_restrictions(const Operator& w, const Operator& q, const BaseMaps& maps,
                                                 const Tolerances& tol = {});

// max entrywise |dual(dual(W)) - W|
double double_dual_gap(const Operator& w);

}  // namespace mpilab
