#include "mpilab/antipode.hpp"
#include "mpilab/corpus.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace mpilab;

namespace {

Operator identity_q(int n) { return single_leg(Mat::Identity(n, n)); }

Mat diag(const std::vector<double>& d) {
  Mat m = Mat::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_CASE("tau on matrix units") {
  const Operator q = single_leg(diag({1.0, 2.0}));
  const Mat e12 = oracle::unit(2, 0, 1);
  CHECK(oracle::gap(tau(q, cplx(0, -0.5), e12), 0.5 * e12) < 1e-14);
  CHECK(oracle::gap(tau(q, cplx(0, -1.0), e12), 0.25 * e12) < 1e-14);
  CHECK(oracle::gap(tau(q, cplx(0, 0.5), e12), 2.0 * e12) < 1e-14);
  CHECK(oracle::gap(tau(q, 0.0, e12), e12) == 0.0);
  // real t: a unitary conjugation, so the norm is kept
  CHECK(tau(q, 0.7, e12).norm() == doctest::Approx(1.0));
  // group law
  const Mat a = tau(q, 0.2, tau(q, cplx(0.1, -0.3), e12));
  CHECK(oracle::gap(a, tau(q, cplx(0.3, -0.3), e12)) < 1e-13);
}

TEST_CASE("S of a slice pairs the slices of W and W*") {
  const Operator w = groupoid_mpi(pair_groupoid(2));
  const int n = mpi_leg_dim(w);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Functional f = Functional::unit(n, i, j);
      const auto [x, y] = antipode_S(w, f);
      CHECK(oracle::gap(x, oracle::slice_right(w.m, n, f.density)) < 1e-14);
      CHECK(oracle::gap(y, oracle::slice_right(w.m.adjoint(), n, f.density)) < 1e-14);
    }
}

TEST_CASE("group antipodes: S f = f o inverse") {
  for (int k : {2, 3, 4}) {
    CAPTURE(k);
    const auto t = cyclic_group(k);
    const Operator w = group_mpu(t);
    const LinearExtension s = assemble_S(w);
    REQUIRE(s.well_defined());
    for (int g = 0; g < k; ++g) {
      int inv = 0;
      while (t[g][inv] != 0) ++inv;
      const Mat dg = oracle::unit(k, g, g);
      CHECK(oracle::gap(s.apply(dg), oracle::unit(k, inv, inv)) < 1e-12);
    }
    if (k == 2)
      for (int g = 0; g < 2; ++g) CHECK(oracle::gap(s.apply(oracle::unit(2, g, g)), oracle::unit(2, g, g)) < 1e-12);
  }
}

TEST_CASE("non-abelian group: antipode and dual statements") {
  const Operator w = group_mpu(symmetric_group(3));
  const ManageabilityCertificate c = check_manageability(w, identity_q(6));
  REQUIRE(c.passed);
  const AntipodeResiduals a = check_antipode(w, c.Q, c.Wtilde);
  CHECK(a.worst() < 1e-10);
  REQUIRE(a.unitary_inverse);
  CHECK(*a.unitary_inverse < 1e-10);
  const DualityResiduals d = check_duality(w, c.Q, c.Wtilde);
  CHECK(d.worst() < 1e-10);
  CHECK(d.dual.S_inconsistency == 0);
}

TEST_CASE("trivial operator: S(1) = 1") {
  const Operator w = two_leg(Mat::Identity(4, 4));
  const LinearExtension s = assemble_S(w);
  CHECK(s.well_defined());
  CHECK(s.domain.dim() == 1);
  CHECK(oracle::gap(s.apply(Mat::Identity(2, 2)), Mat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("antipode and duality on every certified groupoid pair") {
  for (const auto& f : standard_corpus()) {
    if (!f.groupoid_family) continue;
    CAPTURE(f.id);
    for (const Operator& q : suggest_q(f.w)) {
      const ManageabilityCertificate c = check_manageability(f.w, q);
      REQUIRE(c.passed);
      const AntipodeResiduals a = check_antipode(f.w, q, c.Wtilde);
      CHECK(a.worst() < 1e-9);
      CHECK(a.S_inconsistency == 0);
      CHECK(a.RA_inconsistency == 0);
      const DualityResiduals d = check_duality(f.w, q, c.Wtilde);
      CHECK(d.worst() < 1e-9);
    }
    CHECK(double_dual_gap(f.w) == 0.0);
  }
}

TEST_CASE("base restrictions on the pair groupoid") {
  const Operator w = groupoid_mpi(pair_groupoid(2));
  const BaseSpans b = base_spans(w);
  const WeightData nu = find_distinguished_weight(w);
  REQUIRE(nu.found);
  const BaseMaps maps = gamma_and_Rtilde(w, b, nu);
  REQUIRE(maps.valid);
  for (const Operator& q : suggest_q(w)) {
    const BaseRestrictionResiduals r = check_base_restrictions(w, q, maps);
    CHECK(r.worst() < 1e-9);
  }
}

TEST_CASE("an inconsistent assignment is detected") {
  const TensorSpace h = TensorSpace::uniform(2, {Flavor::H});
  const Mat e11 = oracle::unit(2, 0, 0), e22 = oracle::unit(2, 1, 1);
  const LinearExtension ok = extend_linearly({e11, e22, e11 + e22}, {e22, e11, e11 + e22}, h);
  CHECK(ok.well_defined());
  CHECK(ok.relations == 1);
  CHECK(oracle::gap(ok.apply(e11 - e22), e22 - e11) < 1e-12);
  const LinearExtension bad = extend_linearly({e11, e22, e11 + e22}, {e11, e22, Mat::Zero(2, 2)}, h);
  CHECK_FALSE(bad.well_defined());
  CHECK(bad.inconsistency_rank == 1);
  CHECK(bad.inconsistency > 0.1);
  CHECK(bad.offending.size() == 3);
  CHECK(bad.membership(oracle::unit(2, 0, 1)) > 0.5);
}

TEST_CASE("R_A needs Wtilde on Hbar (x) H") {
  const Operator w = group_mpu(cyclic_group(2));
  CHECK_THROWS_AS(unitary_antipode_RA(w, w), SpaceError);
}

TEST_CASE("the matrix-unit example does not satisfy the antipode statements") {
  // certified as manageable with Q = 1 but not full; the antipode checks fail
  const Operator w = matrix_unit_example();
  const ManageabilityCertificate c = check_manageability(w, identity_q(2));
  REQUIRE(c.passed);
  CHECK_FALSE(assess_fullness(w).nondegenerate());
  const AntipodeResiduals a = check_antipode(w, c.Q, c.Wtilde);
  CHECK(a.worst() > 1e-3);
}
