#pragma once

#include "mpilab/tensor.hpp"

#include <array>
#include <string>

namespace mpilab {

struct Check {
  bool pass = false;
  double residual = 0.0;
};

struct MpiVerdict {
  Check partial_isometry;
  std::array<double, 4> mpi{};  // mpi1..mpi4
  Operator E, G;                // W*W, WW*
  // max over E^2=E, E*=E, G^2=G, G*=G, WE=W, GW=W
  double projection_residual = 0.0;
  bool pass = false;
};

struct FullnessVerdict {
  bool literal_right = false;
  bool literal_left = false;
  bool nondeg_A_range = false;
  bool nondeg_A_kernel = false;
  bool nondeg_Ahat_range = false;
  bool nondeg_Ahat_kernel = false;
  int rank_right = 0;  // rank of omega -> (id (x) omega)(W)
  int rank_left = 0;

  bool nondegenerate() const {
    return nondeg_A_range && nondeg_A_kernel && nondeg_Ahat_range && nondeg_Ahat_kernel;
  }
};

inline constexpr std::array<const char*, 4> kMpiNames = {"mpi1", "mpi2", "mpi3", "mpi4"};
inline constexpr std::array<const char*, 6> kDerivedNames = {"mpi5", "mpi6", "mpi7", "mpi8", "mpi9", "mpi10"};

Check is_partial_isometry(const Operator& w, double tol = 1e-9);
Check is_partial_isometry(const Mat& w, double tol = 1e-9);

// Square two-leg operator with both legs H of equal dimension.
int mpi_leg_dim(const Operator& w);

MpiVerdict check_mpi_axioms(const Operator& w, const Tolerances& tol = {});
std::array<double, 6> check_derived_identities(const Operator& w);
FullnessVerdict assess_fullness(const Operator& w, const Tolerances& tol = {});

// rank of [a_1 a_2 ...] (joint range) and of [a_1; a_2; ...] (n minus common kernel)
int joint_range_rank(const std::vector<Mat>& ops, double rank_tol);
int joint_coimage_rank(const std::vector<Mat>& ops, double rank_tol);

Operator dual_operator(const Operator& w);  // Sigma W* Sigma

}  // namespace mpilab
