#include <benchmark/benchmark.h>

#include "hmt/field_ops.hpp"
#include "hmt/jacobi.hpp"
#include "hmt/solver.hpp"

using namespace hmt;

namespace {

const double kTwoPi = 2.0 * M_PI;

MapState sphere_map(int n) {
  GridDomain d(n, n, kTwoPi, kTwoPi);
  auto sphere = std::make_shared<Chart>(make_sphere2_chart());
  return make_map_from_function(d, sphere, [](double x, double y) {
    return (Vec(2) << 1.2 + 0.2 * std::sin(x), 0.4 * std::cos(y)).finished();
  });
}

} // namespace

static void BM_tension_tor(benchmark::State& state) {
  MapState m = sphere_map(static_cast<int>(state.range(0)));
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.7, 0.2).finished());
  for (auto _ : state) {
    benchmark::DoNotOptimize(tension_tor(m, f));
  }
  state.SetItemsProcessed(state.iterations() * m.domain.nodes());
}
BENCHMARK(BM_tension_tor)->Arg(16)->Arg(32)->Arg(64);

static void BM_laplace_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridDomain d(n, n, kTwoPi, kTwoPi);
  NodeField rhs = smooth_random_field(d, 2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace_solve_meanfree(d, rhs));
  }
}
BENCHMARK(BM_laplace_solve)->Arg(16)->Arg(32);

static void BM_jacobi_assemble(benchmark::State& state) {
  MapState m = sphere_map(static_cast<int>(state.range(0)));
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.7, 0.2).finished());
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(m, f, JacobiForm::levi_civita));
  }
}
BENCHMARK(BM_jacobi_assemble)->Arg(8)->Arg(16);

static void BM_dirichlet_energy(benchmark::State& state) {
  MapState m = sphere_map(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirichlet_energy(m));
  }
}
BENCHMARK(BM_dirichlet_energy)->Arg(32)->Arg(64);
