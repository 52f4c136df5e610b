#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpilab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class Flavor { H, Hbar };

inline Flavor flipped(Flavor f) { return f == Flavor::H ? Flavor::Hbar : Flavor::H; }
inline const char* flavor_name(Flavor f) { return f == Flavor::H ? "H" : "Hbar"; }

struct LegSpec {
  int dim = 1;
  Flavor flavor = Flavor::H;
  bool operator==(const LegSpec&) const = default;
};

struct TensorSpace {
  std::vector<LegSpec> legs;

  TensorSpace() = default;
  explicit TensorSpace(std::vector<LegSpec> l);
  static TensorSpace uniform(int n, std::vector<Flavor> flavors);

  int total_dim() const;
  int num_legs() const { return static_cast<int>(legs.size()); }
  bool operator==(const TensorSpace&) const = default;
  std::string describe() const;
};

struct Operator {
  TensorSpace space;
  Mat m;

  Operator() = default;
  Operator(TensorSpace s, Mat mat);

  Operator adjoint() const { return {space, m.adjoint()}; }
  int dim() const { return static_cast<int>(m.rows()); }
};

// Construction-time leg/flavor mismatch; never a silent wrong number.
struct SpaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);

// omega(T) = trace(T F)
struct Functional {
  LegSpec leg;
  Mat density;

  static Functional vector_state(const Vec& a, const Vec& b, Flavor f = Flavor::H);
  static Functional unit(int n, int i, int j, Flavor f = Flavor::H);
  cplx operator()(const Mat& t) const { return (t * density).trace(); }
  Functional transposed() const { return {{leg.dim, flipped(leg.flavor)}, density.transpose()}; }
};

struct Tolerances {
  double residual = 1e-9;
  double rank = 1e-10;
  double pd = 1e-12;
  double membership = 1e-9;

  // MPI_LAB_TOL overrides the residual and membership tolerance.
  static Tolerances from_env();
};

// ||a - b||_F / max(1, ||a||_F)
double rel_gap(const Mat& a, const Mat& b);

Mat matrix_unit(int n, int i, int j);

}  // namespace mpilab
