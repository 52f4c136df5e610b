#pragma once

#include "mpilab/axioms.hpp"

#include <vector>

namespace mpilab {

struct ManageabilityCertificate {
  Operator Q;       // one H leg, positive definite
  Operator Wtilde;  // on Hbar (x) H
  double residual_cond1 = 0.0;   // W(Q(x)Q) = (Q(x)Q)W
  double residual_cond3a = 0.0;  // on Hbar (x) Hbar (x) H
  double residual_cond3b = 0.0;  // on Hbar (x) H (x) H
  double residual_alt_char = 0.0;
  // reported, not gating: consequences of cond1
  double covariance_W = 0.0;       // (Q^{it}(x)Q^{it}) W (Q^{-it}(x)Q^{-it}) = W, t in {+-1, +-0.3}
  double covariance_Wtilde = 0.0;  // ([Q^T]^{-it}(x)Q^{it}) Wt ([Q^T]^{it}(x)Q^{-it}) = Wt
  double inclusion_E = 0.0;        // (Q(x)Q)E = E(Q(x)Q)E
  double inclusion_G = 0.0;
  bool passed = false;
};

// Throws std::invalid_argument unless q is Hermitian positive definite of the leg dimension.
void require_positive(const Operator& q, int n, double pd_tol = 1e-12);

// X = (1(x)Q^-1) W (1(x)Q);  Wt_{(a,d),(b,c)} = X_{(b,d),(a,c)}, first leg Hbar.
Operator build_wtilde(const Operator& w, const Operator& q);

// <W(xi(x)v), eta(x)u> - <Wt(eta-bar (x) Q^-1 v), xi-bar (x) Qu> over all basis vectors, one inner product at a time.
double condition2_residual(const Operator& w, const Operator& q, const Operator& wtilde);

ManageabilityCertificate check_manageability(const Operator& w, const Operator& q, const Tolerances& tol = {});

struct HashIdentities {
  double first = 0.0, second = 0.0, third = 0.0;
  double slice_lemma = 0.0;  // (id(x)w_{Q^-1 v, Qu})(Wt) = (id(x)w_{v,u})(W)^T over basis v, u
  double worst() const;
};

HashIdentities check_hash_identities(const Operator& w, const Operator& q, const Operator& wtilde);

struct DualManageability {
  Operator What;       // Sigma W* Sigma
  Operator candidate;  // (Sigma Wt* Sigma)^{T(x)T}
  double candidate_gap = 0.0;  // max entrywise |candidate - build_wtilde(What, Q)|
  ManageabilityCertificate certificate;
  bool passed = false;
};

DualManageability dual_manageability(const Operator& w, const Operator& q, const Operator& wtilde,
                                     const Tolerances& tol = {});

// The identity first, then positive diagonals exp(v) for v spanning the
// non-constant solutions of x_i + x_j = x_k + x_l over the nonzero entries W_{(i,j),(k,l)}.
std::vector<Operator> suggest_q(const Operator& w, const Tolerances& tol = {});

}  // namespace mpilab
