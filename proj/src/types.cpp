#include "mpilab/types.hpp"

#include <cstdlib>
#include <sstream>

namespace mpilab {

TensorSpace::TensorSpace(std::vector<LegSpec> l) : legs(std::move(l)) {
  for (const auto& leg : legs)
    if (leg.dim < 1) throw SpaceError("leg dimension must be positive");
}

TensorSpace TensorSpace::uniform(int n, std::vector<Flavor> flavors) {
  std::vector<LegSpec> legs;
  legs.reserve(flavors.size());
  for (auto f : flavors) legs.push_back({n, f});
  return TensorSpace(std::move(legs));
}

int TensorSpace::total_dim() const {
  int d = 1;
  for (const auto& leg : legs) d *= leg.dim;
  return d;
}

std::string TensorSpace::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (i) os << " (x) ";
    os << flavor_name(legs[i].flavor) << legs[i].dim;
  }
  return os.str();
}

Operator::Operator(TensorSpace s, Mat mat) : space(std::move(s)), m(std::move(mat)) {
  const int d = space.total_dim();
  if (m.rows() != d || m.cols() != d)
    throw SpaceError("matrix side " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     " does not match space " + space.describe());
}

Operator operator*(const Operator& a, const Operator& b) {
  if (!(a.space == b.space)) throw SpaceError("product across different spaces: " + a.space.describe() + " vs " + b.space.describe());
  return {a.space, a.m * b.m};
}

Operator operator+(const Operator& a, const Operator& b) {
  if (!(a.space == b.space)) throw SpaceError("sum across different spaces");
  return {a.space, a.m + b.m};
}

Operator operator-(const Operator& a, const Operator& b) {
  if (!(a.space == b.space)) throw SpaceError("difference across different spaces");
  return {a.space, a.m - b.m};
}

Functional Functional::vector_state(const Vec& a, const Vec& b, Flavor f) {
  // <T a, b> = trace(T a b^*)
  return {{static_cast<int>(a.size()), f}, a * b.adjoint()};
}

Functional Functional::unit(int n, int i, int j, Flavor f) {
  Vec a = Vec::Zero(n), b = Vec::Zero(n);
  a(i) = 1.0;
  b(j) = 1.0;
  return vector_state(a, b, f);
}

Tolerances Tolerances::from_env() {
  Tolerances t;
  if (const char* s = std::getenv("MPI_LAB_TOL")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0) {
      t.residual = v;
      t.membership = v;
    }
  }
  return t;
}

double rel_gap(const Mat& a, const Mat& b) {
  return (a - b).norm() / std::max(1.0, a.norm());
}

Mat matrix_unit(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace mpilab
