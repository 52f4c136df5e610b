// Leg kernel: embed-and-multiply reference vs serial vs OpenMP.
#include "mpilab/corpus.hpp"
#include "mpilab/legkernel.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace mpilab;

namespace {

Mat random_mat(int r, int c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

using Kernel = Mat (*)(const Mat&, const std::vector<int>&, const std::vector<int>&, const Mat&);

// dense two-leg operator on legs (1, 3) of three legs of dimension n
template <Kernel K>
void dense(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Mat op = random_mat(n * n, n * n, 1), x = random_mat(n * n * n, n * n * n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(K(op, {1, 3}, {n, n, n}, x));
  st.SetItemsProcessed(st.iterations() * x.cols());
}

// a groupoid operator (mostly zeros) applied to a dense operand
template <Kernel K>
void groupoid(benchmark::State& st) {
  const int units = static_cast<int>(st.range(0));
  const Operator w = groupoid_mpi(pair_groupoid(units));
  const int n = mpi_leg_dim(w);
  const Mat x = random_mat(n * n * n, n * n * n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(K(w.m, {2, 3}, {n, n, n}, x));
  st.SetItemsProcessed(st.iterations() * x.cols());
}

}  // namespace

BENCHMARK_TEMPLATE(dense, apply_legs_reference)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(dense, apply_legs_serial)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(dense, apply_legs)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(groupoid, apply_legs_reference)->Arg(2)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(groupoid, apply_legs_serial)->Arg(2)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(groupoid, apply_legs)->Arg(2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
