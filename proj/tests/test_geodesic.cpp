#include <doctest.h>

#include <cmath>

#include "hmt/errors.hpp"
#include "hmt/geodesic.hpp"

using namespace hmt;

TEST_SUITE("geodesic") {

TEST_CASE("flat space without torsion has zero acceleration") {
  auto flat = std::make_shared<Chart>(make_flat_chart(2));
  GeodesicState s{(Vec(2) << 0.3, -0.2).finished(), (Vec(2) << 1.1, 0.4).finished()};
  CHECK(geodesic_rhs(*flat, TorsionField::zero(), s).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("vectorial torsion acceleration matches the hand value") {
  // V = (0,1), gamma' = (1,0): A(g', g') = |g'|^2 V - <V,g'> g' = (0,1),
  // so gamma'' = (0,-1).
  auto flat = make_flat_chart(2);
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.0, 1.0).finished());
  GeodesicState s{Vec::Zero(2), (Vec(2) << 1.0, 0.0).finished()};
  Vec acc = geodesic_rhs(flat, f, s);
  CHECK(acc[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(acc[1] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("the equator is a geodesic of the round sphere") {
  auto sphere = make_sphere2_chart();
  GeodesicState s{(Vec(2) << M_PI / 2.0, 0.0).finished(), (Vec(2) << 0.0, 1.0).finished()};
  CHECK(geodesic_rhs(sphere, TorsionField::zero(), s).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("rk4 reproduces straight lines exactly") {
  auto flat = std::make_shared<Chart>(make_flat_chart(2));
  GeodesicState s{Vec::Zero(2), (Vec(2) << 1.0, 0.0).finished()};
  Trajectory t = integrate(*flat, TorsionField::zero(), s, 0.1, 10);
  CHECK(t.samples.size() == 11);
  CHECK(t.samples.back().second.gamma[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.samples.back().second.gamma[1] == 0.0);
  CHECK(speed_drift(t, *flat) == 0.0);
}

TEST_CASE("speed is conserved under vectorial torsion") {
  auto flat = make_flat_chart(2);
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.0, 1.0).finished());
  GeodesicState s{Vec::Zero(2), (Vec(2) << 1.0, 0.0).finished()};
  Trajectory t = integrate(flat, f, s, 1e-2, 1000);
  CHECK(speed_drift(t, flat) < 1e-10);
}

TEST_CASE("speed drift shrinks at fourth order under step halving") {
  auto flat = make_flat_chart(2);
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.0, 1.0).finished());
  GeodesicState s{Vec::Zero(2), (Vec(2) << 1.0, 0.0).finished()};
  const double d1 = speed_drift(integrate(flat, f, s, 1e-2, 1000), flat);
  const double d2 = speed_drift(integrate(flat, f, s, 5e-3, 2000), flat);
  CHECK(d1 / d2 > 12.0);
  CHECK(d1 / d2 < 20.0);
}

TEST_CASE("sphere geodesic conserves speed to 1e-8 over a thousand rk4 steps") {
  auto sphere = make_sphere2_chart();
  GeodesicState s{(Vec(2) << M_PI / 2.0, 0.0).finished(),
                  (Vec(2) << 0.2, std::sqrt(1.0 - 0.04)).finished()};
  CHECK(speed_squared(sphere, s) == doctest::Approx(1.0).epsilon(1e-12));
  Trajectory t = integrate(sphere, TorsionField::zero(), s, 1e-2, 1000);
  CHECK_FALSE(t.truncated);
  CHECK(speed_drift(t, sphere) < 1e-8);
}

TEST_CASE("zero torsion reduces to the levi-civita geodesic") {
  // Against a hand-rolled LC-only integrator on the sphere.
  auto sphere = make_sphere2_chart();
  GeodesicState s{(Vec(2) << 1.2, 0.0).finished(), (Vec(2) << 0.1, 1.0).finished()};
  Trajectory t = integrate(sphere, TorsionField::zero(), s, 1e-2, 200);

  GeodesicState ref = s;
  auto lc_rhs = [&](const GeodesicState& st) {
    Tensor3 g = christoffel(sphere, st.gamma);
    Vec acc = Vec::Zero(2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int d = 0; d < 2; ++d)
          acc[a] -= g(a, b, d) * st.gamma_prime[b] * st.gamma_prime[d];
    return acc;
  };
  const double h = 1e-2;
  for (int k = 0; k < 200; ++k) {
    auto f = [&](const GeodesicState& st) {
      return std::make_pair(st.gamma_prime, lc_rhs(st));
    };
    auto [k1x, k1v] = f(ref);
    auto [k2x, k2v] = f({ref.gamma + 0.5 * h * k1x, ref.gamma_prime + 0.5 * h * k1v});
    auto [k3x, k3v] = f({ref.gamma + 0.5 * h * k2x, ref.gamma_prime + 0.5 * h * k2v});
    auto [k4x, k4v] = f({ref.gamma + h * k3x, ref.gamma_prime + h * k3v});
    ref.gamma += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    ref.gamma_prime += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  CHECK((t.samples.back().second.gamma - ref.gamma).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("flipping the torsion sign mirrors the acceleration") {
  auto sphere = make_sphere2_chart();
  Vec v(2);
  v << 0.8, -0.3;
  GeodesicState s{(Vec(2) << 1.0, 0.7).finished(), (Vec(2) << 0.5, 0.6).finished()};
  Vec plus = geodesic_rhs(sphere, TorsionField::vectorial_constant(v), s);
  Vec minus = geodesic_rhs(sphere, TorsionField::vectorial_constant(-v), s);
  Vec zero = geodesic_rhs(sphere, TorsionField::zero(), s);
  CHECK((plus + minus - 2.0 * zero).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("trajectories truncate with a flag at the chart boundary") {
  Chart box("box", 2, [](const Vec&) { return Mat(Mat::Identity(2, 2)); },
            [](const Vec&) { return Tensor3(2); }, Vec::Constant(2, -1.0),
            Vec::Constant(2, 1.0));
  GeodesicState s{Vec::Zero(2), (Vec(2) << 1.0, 0.0).finished()};
  Trajectory t = integrate(box, TorsionField::zero(), s, 0.1, 100);
  CHECK(t.truncated);
  CHECK(t.samples.size() < 101);
  CHECK(t.samples.back().second.gamma[0] < 1.0);
}

TEST_CASE("non-finite states raise a divergence error with the step index") {
  // Overflow in the velocity update while the position is still deep inside
  // the box: the quadratic coefficient contraction exceeds the double range.
  auto flat = make_flat_chart(2);
  TorsionField blowup = TorsionField::general([](const Vec&) {
    Tensor3 t(2);
    t(0, 0, 1) = 1e308;
    return t;
  });
  GeodesicState s{Vec::Zero(2), (Vec(2) << 1e10, 1e10).finished()};
  try {
    integrate(flat, blowup, s, 1e-3, 10, IntegratorMethod::euler);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.step_index() >= 1);
  }
}

TEST_CASE("speed drift of degenerate inputs") {
  auto flat = make_flat_chart(2);
  Trajectory single;
  single.samples.push_back({0.0, {Vec::Zero(2), (Vec(2) << 2.0, 0.0).finished()}});
  CHECK(speed_drift(single, flat) == 0.0);
  Trajectory empty;
  CHECK_THROWS_AS(speed_drift(empty, flat), ValidationError);
}

} // TEST_SUITE
