#include "mpilab/base.hpp"
#include "mpilab/corpus.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace mpilab;

TEST_CASE("group operators match the index-loop construction") {
  for (int k : {1, 2, 3, 4}) {
    const auto t = cyclic_group(k);
    const Operator w = group_mpu(t);
    CHECK(w.m == oracle::group_operator(t));
    CHECK(oracle::gap(w.m.adjoint() * w.m, Mat::Identity(k * k, k * k)) == 0.0);
  }
  const auto s3 = symmetric_group(3);
  CHECK(s3.size() == 6);
  CHECK_NOTHROW(validate_group_table(s3));
  CHECK(s3[1][2] != s3[2][1]);  // non-abelian
  CHECK(group_mpu(s3).m == oracle::group_operator(s3));
}

TEST_CASE("invalid tables and groupoid specs are rejected") {
  GroupTable bad = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(validate_group_table(bad), std::invalid_argument);
  GroupoidSpec g = pair_groupoid(2);
  CHECK_NOTHROW(g.validate());
  g.compose.erase(g.compose.begin());
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  GroupoidSpec h = pair_groupoid(2);
  h.inverse.clear();
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}

TEST_CASE("groupoid operators: W(d_g (x) d_h) = d_g (x) d_gh when composable") {
  const GroupoidSpec g = pair_groupoid(2);
  const Operator w = groupoid_mpi(g);
  const int n = g.size();
  CHECK(n == 4);
  for (const auto& a : g.arrows)
    for (const auto& b : g.arrows) {
      const int ia = g.index_of(a.id), ib = g.index_of(b.id);
      const Vec out = w.m.col(ia * n + ib);
      if (a.source == b.target) {
        const int ic = g.index_of(g.compose.at({a.id, b.id}));
        CHECK(std::abs(out(ia * n + ic) - cplx(1.0)) == 0.0);
        CHECK(out.norm() == doctest::Approx(1.0));
      } else {
        CHECK(out.norm() == 0.0);
      }
    }
  CHECK(check_mpi_axioms(w).pass);
  // E is a proper projection
  const Mat E = w.m.adjoint() * w.m;
  CHECK(E.trace().real() == doctest::Approx(8.0));  // composable pairs
}

TEST_CASE("corpus soundness and base dimension") {
  for (const auto& f : standard_corpus()) {
    CAPTURE(f.id);
    CHECK(mpi_leg_dim(f.w) <= 8);
    const Check pi = is_partial_isometry(f.w);
    CHECK(pi.residual < 1e-14);
    CHECK(check_mpi_axioms(f.w).pass);
    if (f.unit_count) {
      const BaseSpans b = base_spans(f.w);
      CHECK(b.N.dim() == *f.unit_count);
      CHECK(b.L.dim() == *f.unit_count);
    }
    if (f.unit_count && *f.unit_count == 1) {
      const Mat E = f.w.m.adjoint() * f.w.m;
      CHECK(oracle::gap(E, Mat::Identity(E.rows(), E.cols())) == 0.0);
    }
  }
}

TEST_CASE("conjugation covariance") {
  std::mt19937_64 rng(11);
  const Operator ex = matrix_unit_example();
  CHECK(conjugate_fixture(ex, Mat::Identity(2, 2)).m == ex.m);
  const Operator p = conjugate_fixture(ex, permutation_unitary({1, 0}));
  CHECK(check_mpi_axioms(p).pass);
  const Mat u = random_unitary(3, rng);
  CHECK(oracle::gap(u * u.adjoint(), Mat::Identity(3, 3)) < 1e-12);
  const Operator c = conjugate_fixture(group_mpu(cyclic_group(3)), u);
  CHECK(check_mpi_axioms(c).pass);
  Mat notu = Mat::Identity(2, 2);
  notu(0, 0) = 2.0;
  CHECK_THROWS_AS(conjugate_fixture(ex, notu), std::invalid_argument);
  // the same seed gives the same fixtures
  const auto a = conjugated_corpus(5, 6), b = conjugated_corpus(5, 6);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].w.m == b[k].w.m);
}
