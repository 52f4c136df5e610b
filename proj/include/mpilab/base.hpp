#pragma once

#include "mpilab/coalgebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mpilab {

// N, L: right/left slices of E = W*W. Nhat, Lhat: left/right slices of G = WW*.
struct BaseSpans {
  OperatorSubspace N, L, Nhat, Lhat;
  double commutation_residual = 0.0;  // max |bc - cb|, b in N, c in L
  double L_Lhat_residual = 0.0;
  bool L_equals_Lhat = false;
  double E_in_NL_residual = 0.0;
  bool E_in_NtensorL = false;
  double star_residual = 0.0;     // worst of the four
  double algebra_residual = 0.0;  // worst product closure of the four
};

BaseSpans base_spans(const Operator& w, const Tolerances& tol = {});

struct KappaValue {
  Mat value;
  double residual = 0.0;  // |E(b(x)1) - E(1(x)k)| relative to max(1, |E(b(x)1)|)
  bool in_domain = false;
  bool unique = false;
};

// Solves E(1(x)x) = E(b(x)1) by minimum-norm least squares; the system map is factored once.
class KappaSolver {
 public:
  explicit KappaSolver(const Operator& w, const Tolerances& tol = {});
  KappaValue solve(const Mat& b) const;
  // Refines from x0 by a minimum-norm correction; equals solve(b) when nullity() == 0.
  KappaValue solve_from(const Mat& b, const Mat& x0) const;
  int nullity() const { return solver_.nullity(); }

 private:
  int n_;
  Mat E_;
  LsqSolver solver_;
  Tolerances tol_;
  Vec rhs(const Mat& b) const;
  KappaValue finish(const Mat& b, const Vec& x) const;
};

KappaValue kappa_solve(const Operator& w, const Mat& b, const Tolerances& tol = {});

struct KappaMap {
  std::vector<Mat> domain_basis;
  std::vector<Mat> values;
  std::vector<double> residuals;
  std::vector<bool> in_domain;
  int nullity = 0;
  double anti_multiplicativity = 0.0;  // over basis pairs where all three solves succeed
  int pairs_checked = 0;
};

KappaMap kappa_map(const Operator& w, const OperatorSubspace& N, const Tolerances& tol = {});

enum class BaseSide { N, Nhat };

// nu(x) = trace(D x). The weight for Nhat is the weight for N of dual_operator(w).
struct WeightData {
  OperatorSubspace algebra;
  Mat density;
  Mat unit;  // support projection of the algebra
  double min_eigenvalue = 0.0;  // of D on the range of unit
  int solution_space_dim = 0;
  double residual = 0.0;  // |(nu (x) id)(E) - 1|
  bool found = false;

  double operator()(const Mat& x) const { return (density * x).trace().real(); }
  cplx value(const Mat& x) const { return (density * x).trace(); }
};

WeightData find_distinguished_weight(const Operator& w, BaseSide side = BaseSide::N, const Tolerances& tol = {});
// Hermitian density in `algebra` matching trace(D a_k) = targets[k] on its basis; used for mu.
WeightData weight_from_values(const OperatorSubspace& algebra, const std::vector<cplx>& targets,
                              const Tolerances& tol = {});

// D^{iz} x D^{-iz}, with D extended by 1 - unit off the support.
Mat modular_conjugate(const WeightData& weight, cplx z, const Mat& x, double sign = 1.0);

// Linear map between spans in coordinates of their orthonormal bases.
struct BaseAntiIso {
  OperatorSubspace from, to;
  Mat matrix;   // dim(to) x dim(from)
  Mat inverse;  // empty when not invertible
  bool invertible = false;
  double membership_residual = 0.0;  // images inside `to`
  Mat apply(const Mat& x) const;
  Mat apply_inverse(const Mat& y) const;
};

struct BaseMaps {
  WeightData nu, mu;
  std::vector<Mat> gamma_N;  // on nu.algebra basis
  BaseAntiIso Rtilde;        // N -> L
  std::vector<Mat> gamma_L;  // on the L basis
  bool valid = false;
  std::string failure;
};

Mat gamma_N(const Operator& w, const WeightData& nu, const Mat& b);
BaseMaps gamma_and_Rtilde(const Operator& w, const BaseSpans& spans, const WeightData& nu,
                          const Tolerances& tol = {});

struct SeparabilityResiduals {
  double mu_normalization = 0.0;     // (id (x) mu)(E) = 1
  double gamma_L_relation = 0.0;     // (1(x)c)E = (gamma_L(c)(x)1)E
  double gamma_N_relation = 0.0;     // E(b(x)1) = E(1(x)gamma_N(b))
  double gamma_N_anti_mult = 0.0;
  double gamma_N_vs_kappa = 0.0;
  double polar = 0.0;                // gamma_N = Rtilde o sigma_{i/2}
  double polar_left = 0.0;           // (nu(x)id)((x(x)1)E) = Rtilde(sigma_{-i/2}(x))
  double Rtilde_anti_mult = 0.0;
  double Rtilde_star = 0.0;
  double mu_consistency = 0.0;       // mu(Rtilde b) = nu(b)
  double sigma_mu_intertwine = 0.0;  // sigma^mu_t = Rtilde sigma^nu_{-t} Rtilde^{-1}, t in {+-1, +-0.3}
  double sigma_invariance = 0.0;     // sigma^nu_t(N) in N
  // the same polar checks under the opposite sign of the modular group
  double calibration_opposite = 0.0;
  // with a manageability pair
  std::optional<double> Rkappa_anti_mult, Rkappa_star, kappa_T_Rkappa, kappa_Rkappa_T, Rkappa_wtilde;
  double worst() const;  // over the required residuals, calibration excluded
};

// T = Q(.)Q^{-1}, R_kappa(b) = Q^{-1} kappa(b) Q. `wtilde` acts on Hbar (x) H.
SeparabilityResiduals check_separability_triple(const Operator& w, const BaseMaps& maps,
                                                const std::optional<Mat>& q = std::nullopt,
                                                const std::optional<Mat>& wtilde = std::nullopt,
                                                const Tolerances& tol = {});

// B, C and the multiplier statements.
struct CStarBases {
  OperatorSubspace B, C;
  double B_equals_N = 0.0, C_equals_L = 0.0;
  // bx, xb, xc, cx in A; y bhat, c y, chat y in Ahat; x chat in A
  double b_x = 0.0, x_b = 0.0, x_c = 0.0, c_x = 0.0, x_chat = 0.0;
  double y_bhat = 0.0, c_y = 0.0, chat_y = 0.0;
  double E_multiplier = 0.0;  // E(b(x)c), (b(x)c)E in B(x)C
  std::optional<double> R_onto_C;  // Rtilde(B) = C and anti-isomorphism
  double worst() const;
};

CStarBases c_star_bases(const Operator& w, const BaseMaps* maps = nullptr, const Tolerances& tol = {});

}  // namespace mpilab
