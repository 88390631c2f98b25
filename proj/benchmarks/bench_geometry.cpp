#include <benchmark/benchmark.h>

#include "hmt/curvature.hpp"
#include "hmt/geodesic.hpp"
#include "hmt/rng.hpp"

using namespace hmt;

static void BM_christoffel_sphere(benchmark::State& state) {
  Chart sphere = make_sphere2_chart();
  Vec y(2);
  y << 1.1, 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(christoffel(sphere, y));
  }
}
BENCHMARK(BM_christoffel_sphere);

static void BM_curvature_torsion_route(benchmark::State& state) {
  Chart sphere = make_sphere2_chart();
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.7, 0.2).finished());
  Vec y(2);
  y << 1.1, 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curvature(sphere, f, y, ConnectionKind::torsion));
  }
}
BENCHMARK(BM_curvature_torsion_route);

static void BM_cartan_decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng rng(3);
  Tensor3 t(n);
  std::uint64_t ctr = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const double v = rng.uniform(ctr++, -1.0, 1.0);
        t(a, b, c) = v;
        t(a, c, b) = -v;
      }
  Mat h = Mat::Identity(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cartan_decompose(t, h));
  }
}
BENCHMARK(BM_cartan_decompose)->Arg(3)->Arg(5)->Arg(8);

static void BM_geodesic_rk4_sphere(benchmark::State& state) {
  Chart sphere = make_sphere2_chart();
  GeodesicState s{(Vec(2) << M_PI / 2.0, 0.0).finished(),
                  (Vec(2) << 0.2, 0.9797958971132712).finished()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(sphere, TorsionField::zero(), s, 1e-2, 100));
  }
}
BENCHMARK(BM_geodesic_rk4_sphere);

BENCHMARK_MAIN();
