#pragma once

#include "mpilab/axioms.hpp"

#include <array>
#include <vector>

namespace mpilab {

enum class LegSide { A, Ahat, Astar, Ahatstar };
enum class Comul { Primal, Dual };

const char* leg_side_name(LegSide s);

struct LegAlgebra {
  LegSide side = LegSide::A;
  OperatorSubspace space;
  bool unital = false;
  double unital_residual = 0.0;
  bool star_closed = false;
  double star_residual = 0.0;
  double product_residual = 0.0;  // algebra property
};

// Two-sided span equality; residual is the worse of the two inclusions.
struct SpanComparison {
  int dim_lhs = 0;
  int dim_rhs = 0;
  double residual = 0.0;
};

struct CoalgebraReport {
  int dim_A = 0;
  double delta_star = 0.0;        // Delta(x*) = Delta(x)*
  double homomorphism = 0.0;      // Delta(ab) = Delta(a)Delta(b)
  double E_is_delta1 = 0.0;       // E = Delta(1)
  double E_legs_commute = 0.0;    // (E(x)1)(1(x)E) = (1(x)E)(E(x)1) = W12*W23*W23W12
  double E_legs_alt = 0.0;        // vs W23*W12*W12W23; informational, not implied by the axioms
  double E_multiplier = 0.0;      // E(a(x)b), (a(x)b)E in A(x)A
  double commutation_lemma = 0.0; // (1(x)x)G = G(1(x)x), (y(x)1)E = E(y(x)1)
  SpanComparison delta_range;     // Delta(A)(A(x)A) = E(A(x)A)
  SpanComparison delta_range_left;  // (A(x)A)Delta(A) = (A(x)A)E
  std::array<int, 4> density_dims{};
  std::array<double, 4> density_residual{};  // density span = A
  std::array<double, 4> membership{};        // (a(x)1)Db, (Da)(1(x)b), (Da)(b(x)1), (1(x)a)Db in A(x)A
  double coassociativity = 0.0;
  double product_closure = 0.0;
};

LegAlgebra leg_algebra(const Operator& w, LegSide side, const Tolerances& tol = {});

// Primal: W*(1(x)x)W. Dual: Sigma W(x(x)1)W* Sigma.
Operator comul(const Operator& w, const Mat& x, Comul side);

double coassociativity_residual(const Operator& w, const std::vector<Mat>& sample, Comul side);
// max over both comultiplications
double check_coassociativity(const Operator& w, const std::vector<Mat>& sample);
std::vector<Mat> matrix_unit_basis(int n);

// All n^2 slices of a two-leg matrix against the unit functionals omega_{e_i,e_j}.
std::vector<Mat> all_slices(const Mat& x, int n, Side side);

// Delta-side statements for W; the hatted statements are the same report for dual_operator(W).
CoalgebraReport coalgebra_report(const Operator& w, const Tolerances& tol = {});

SpanComparison compare_spans(const std::vector<Mat>& lhs, const std::vector<Mat>& rhs, const TensorSpace& space,
                             double rank_tol);

}  // namespace mpilab
