#include "mpilab/coalgebra.hpp"
#include "mpilab/corpus.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace mpilab;

namespace {

std::vector<Mat> oracle_slices(const Mat& x, int n, bool right) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.push_back(right ? oracle::slice_right(x, n, oracle::unit(n, i, j)) : oracle::slice_left(x, n, oracle::unit(n, i, j)));
  return out;
}

}  // namespace

TEST_CASE("leg algebras of the matrix-unit example") {
  const Operator w = matrix_unit_example();
  const LegAlgebra a = leg_algebra(w, LegSide::A);
  CHECK(a.space.dim() == 2);
  CHECK_FALSE(a.unital);
  CHECK(a.product_residual < 1e-12);
  const LegAlgebra ah = leg_algebra(w, LegSide::Ahat);
  CHECK(ah.unital);
  CHECK(ah.product_residual < 1e-12);
  // A is spanned by the right slices, checked against the loop version
  const OperatorSubspace o = span(oracle_slices(w.m, 2, true), TensorSpace::uniform(2, {Flavor::H}));
  CHECK(o.dim() == a.space.dim());
  CHECK(inclusion_residual(a.space, o) < 1e-12);
  CHECK(inclusion_residual(o, a.space) < 1e-12);
}

TEST_CASE("all_slices matches the loop slices") {
  for (const auto& f : standard_corpus()) {
    const int n = mpi_leg_dim(f.w);
    if (n > 4) continue;
    CAPTURE(f.id);
    const auto r = all_slices(f.w.m, n, Side::Right), l = all_slices(f.w.m, n, Side::Left);
    const auto ro = oracle_slices(f.w.m, n, true), lo = oracle_slices(f.w.m, n, false);
    REQUIRE(r.size() == ro.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
      CHECK(oracle::gap(r[k], ro[k]) < 1e-13);
      CHECK(oracle::gap(l[k], lo[k]) < 1e-13);
    }
  }
}

TEST_CASE("comultiplication against the dense formula") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (const auto& f : standard_corpus()) {
    const int n = mpi_leg_dim(f.w);
    if (n > 6) continue;
    CAPTURE(f.id);
    Mat x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = cplx(g(rng), g(rng));
    const Mat I = Mat::Identity(n, n);
    const Mat S = oracle::flip(n);
    CHECK(oracle::gap(comul(f.w, x, Comul::Primal).m, f.w.m.adjoint() * oracle::kron(I, x) * f.w.m) < 1e-11);
    CHECK(oracle::gap(comul(f.w, x, Comul::Dual).m, S * f.w.m * oracle::kron(x, I) * f.w.m.adjoint() * S) < 1e-11);
  }
}

TEST_CASE("coalgebra statements hold on groups and groupoids") {
  for (const auto& f : standard_corpus()) {
    if (!f.groupoid_family) continue;
    CAPTURE(f.id);
    for (const Operator& w : {f.w, dual_operator(f.w)}) {
      const CoalgebraReport r = coalgebra_report(w);
      CHECK(r.delta_star < 1e-10);
      CHECK(r.homomorphism < 1e-10);
      CHECK(r.E_is_delta1 < 1e-10);
      CHECK(r.E_legs_commute < 1e-10);
      CHECK(r.E_multiplier < 1e-10);
      CHECK(r.commutation_lemma < 1e-10);
      CHECK(r.delta_range.residual < 1e-9);
      CHECK(r.delta_range_left.residual < 1e-9);
      for (double d : r.density_residual) CHECK(d < 1e-9);
      for (double d : r.membership) CHECK(d < 1e-10);
      CHECK(r.coassociativity < 1e-10);
      CHECK(r.product_closure < 1e-10);
    }
  }
}

TEST_CASE("group algebras: A is the diagonal, A-hat is spanned by the regular representation") {
  const auto t = symmetric_group(3);
  const Operator w = group_mpu(t);
  const LegAlgebra a = leg_algebra(w, LegSide::A);
  CHECK(a.space.dim() == 6);
  CHECK(a.unital);
  CHECK(a.star_closed);
  for (const Mat& b : a.space.basis) CHECK((b - Mat(b.diagonal().asDiagonal())).norm() < 1e-12);
  const LegAlgebra ah = leg_algebra(w, LegSide::Ahat);
  CHECK(ah.space.dim() == 6);
  // left translations lie in A-hat
  for (int g = 0; g < 6; ++g) {
    Mat lam = Mat::Zero(6, 6);
    for (int h = 0; h < 6; ++h) lam(t[g][h], h) = 1.0;
    CHECK(contains(ah.space, lam).residual < 1e-10);
  }
}

TEST_CASE("coassociativity as a negative control") {
  std::vector<Mat> sample = matrix_unit_basis(2);
  // the flip gives Delta(x) = x (x) 1, which is coassociative although mpi1 fails
  CHECK(check_coassociativity(flip(2), sample) < 1e-14);
  std::mt19937_64 rng(4);
  const Operator u = two_leg(random_unitary(4, rng));
  CHECK(check_coassociativity(u, sample) > 1e-3);
}

TEST_CASE("rank-sensitive span on 0/1 data stays correct") {
  // regression: the dual delta range on a disjoint union of pair groupoids
  for (const auto& f : standard_corpus())
    if (f.id == "pair2+pair2") {
      const CoalgebraReport r = coalgebra_report(dual_operator(f.w));
      CHECK(r.delta_range.residual < 1e-9);
      CHECK(r.delta_range.dim_lhs == r.delta_range.dim_rhs);
    }
}
