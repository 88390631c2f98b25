#include <doctest.h>

#include <cmath>

#include "hmt/errors.hpp"
#include "hmt/field_ops.hpp"

using namespace hmt;

namespace {

const double kTwoPi = 2.0 * M_PI;

ChartPtr sphere_chart() { return std::make_shared<Chart>(make_sphere2_chart()); }
ChartPtr flat_chart(int n) { return std::make_shared<Chart>(make_flat_chart(n)); }
ChartPtr torus_chart() {
  return std::make_shared<Chart>(make_flat_chart(2, {kTwoPi, kTwoPi}));
}

} // namespace

TEST_SUITE("field_ops") {

TEST_CASE("constant maps have zero tension") {
  GridDomain d(8, 8, kTwoPi, kTwoPi);
  MapState m = make_constant_map(d, sphere_chart(), (Vec(2) << 1.0, 0.3).finished());
  CHECK(tension(m).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("the identity map of the flat torus is harmonic") {
  GridDomain d(16, 16, kTwoPi, kTwoPi);
  MapState m = make_map_from_function(d, torus_chart(), [](double x, double y) {
    return (Vec(2) << x, y).finished();
  });
  CHECK(tension(m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the equator wrap is harmonic") {
  GridDomain d(32, 32, kTwoPi, kTwoPi);
  MapState m = make_equator_wrap(d, sphere_chart(), 1);
  CHECK(tension(m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("zero torsion leaves the tension unchanged bitwise") {
  GridDomain d(12, 12, kTwoPi, kTwoPi);
  MapState m = make_map_from_function(d, sphere_chart(), [](double x, double y) {
    return (Vec(2) << 1.2 + 0.2 * std::sin(x), 0.4 * std::cos(y)).finished();
  });
  NodeField a = tension(m);
  NodeField b = tension_tor(m, TorsionField::zero());
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("equator wrap with polar torsion: residual is the polar direction") {
  GridDomain d(32, 32, kTwoPi, kTwoPi);
  MapState m = make_equator_wrap(d, sphere_chart(), 1);
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 1.0, 0.0).finished());
  NodeField tt = tension_tor(m, f);
  // tau = 0 and A(dphi,dphi) = |dphi|^2 V = (1, 0) at every node.
  for (int k = 0; k < d.nodes(); ++k) {
    CHECK(tt(k, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(tt(k, 1)) < 1e-12);
  }
  CHECK(sup_metric_norm(m, tt) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fully antisymmetric torsion does not enter the map equation") {
  GridDomain d(12, 12, kTwoPi, kTwoPi);
  MapState m = make_map_from_function(d, flat_chart(3), [](double x, double y) {
    return (Vec(3) << 0.4 * std::sin(x), 0.3 * std::cos(y), 0.2 * std::sin(x + y))
        .finished();
  });
  TorsionField f = TorsionField::antisymmetric([](const Vec& y) {
    Tensor3 t(3);
    const double c = 1.0 + 0.5 * std::sin(y[0]);
    t(0, 1, 2) = c;
    return t; // fully antisymmetrized on eval
  });
  NodeField a = tension(m);
  NodeField b = tension_tor(m, f);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dirichlet energy closed forms") {
  GridDomain d(16, 16, kTwoPi, kTwoPi);
  MapState constant = make_constant_map(d, flat_chart(2), Vec::Zero(2));
  CHECK(dirichlet_energy(constant) == 0.0);

  MapState linear = make_map_from_function(d, torus_chart(), [](double x, double) {
    return (Vec(2) << x, 0.0).finished();
  });
  CHECK(dirichlet_energy(linear) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-13));
}

TEST_CASE("dirichlet energy converges at second order under refinement") {
  auto energy_at = [&](int n) {
    GridDomain d(n, n, kTwoPi, kTwoPi);
    MapState m = make_map_from_function(d, sphere_chart(), [](double x, double y) {
      return (Vec(2) << 1.3 + 0.3 * std::sin(x) * std::cos(y), 0.5 * std::sin(y))
          .finished();
    });
    return dirichlet_energy(m);
  };
  const double e16 = energy_at(16), e32 = energy_at(32), e64 = energy_at(64);
  // Richardson: error(n) ~ C/n^2, so (e16-e32)/(e32-e64) ~ 4.
  CHECK((e16 - e32) / (e32 - e64) == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("energy gradient check") {
  GridDomain d(16, 16, kTwoPi, kTwoPi);
  MapState m = make_map_from_function(d, torus_chart(), [](double x, double y) {
    return (Vec(2) << x + 0.2 * std::sin(y), y - 0.1 * std::cos(x)).finished();
  });
  NodeField probe = smooth_random_field(d, 2, 42);

  SUBCASE("zero probe gives exactly zero") {
    CHECK(energy_gradient_check(m, TorsionField::zero(), NodeField::Zero(d.nodes(), 2),
                                1e-3) == 0.0);
  }
  SUBCASE("flat target: first-order remainder halves with t") {
    const double c1 = energy_gradient_check(m, TorsionField::zero(), probe, 1e-3);
    const double c2 = energy_gradient_check(m, TorsionField::zero(), probe, 5e-4);
    CHECK(c1 / c2 == doctest::Approx(2.0).epsilon(0.05));
  }
  SUBCASE("the check value ignores the torsion field bitwise") {
    TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.9, -0.4).finished());
    CHECK(energy_gradient_check(m, TorsionField::zero(), probe, 1e-3) ==
          energy_gradient_check(m, f, probe, 1e-3));
  }
  SUBCASE("t outside the mandated window is rejected") {
    CHECK_THROWS_AS(energy_gradient_check(m, TorsionField::zero(), probe, 1e-7),
                    ValidationError);
    CHECK_THROWS_AS(energy_gradient_check(m, TorsionField::zero(), probe, 0.1),
                    ValidationError);
  }
}

TEST_CASE("morrey norm") {
  GridDomain d(16, 16, kTwoPi, kTwoPi);
  MapState constant = make_constant_map(d, flat_chart(2), Vec::Zero(2));
  CHECK(morrey_norm(constant, {1.0}) == 0.0);

  MapState m = make_map_from_function(d, torus_chart(), [](double x, double y) {
    return (Vec(2) << x, 0.3 * std::sin(y)).finished();
  });
  // A radius covering the whole periodic domain reproduces the total energy.
  const double diam = std::sqrt(2.0) * M_PI + 1e-9;
  CHECK(morrey_norm(m, {diam}) ==
        doctest::Approx(std::sqrt(dirichlet_energy(m))).epsilon(1e-12));

  // Monotone under adding radii.
  const double small = morrey_norm(m, {1.0});
  CHECK(morrey_norm(m, {1.0, diam}) >= small);
  CHECK(morrey_norm(m, {1.0, diam}) == doctest::Approx(morrey_norm(m, {diam})));

  CHECK_THROWS_AS(morrey_norm(m, {-1.0}), ValidationError);
}

TEST_CASE("local energy adds up over complementary masks") {
  GridDomain d(16, 16, kTwoPi, kTwoPi);
  MapState m = make_map_from_function(d, torus_chart(), [](double x, double y) {
    return (Vec(2) << x + 0.1 * std::sin(y), 0.2 * std::cos(x)).finished();
  });
  std::vector<std::uint8_t> full(d.nodes(), 1);
  CHECK(local_energy(m, full) == dirichlet_energy(m));

  std::vector<std::uint8_t> left(d.nodes(), 0), right(d.nodes(), 0);
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j) (i < d.nx / 2 ? left : right)[d.id(i, j)] = 1;
  // Disjoint sums agree up to reassociation of the floating-point additions.
  CHECK(local_energy(m, left) + local_energy(m, right) ==
        doctest::Approx(dirichlet_energy(m)).epsilon(1e-14));

  // Half of the x-linear map carries exactly half the energy.
  MapState lin = make_map_from_function(d, torus_chart(), [](double x, double) {
    return (Vec(2) << x, 0.0).finished();
  });
  CHECK(local_energy(lin, left) ==
        doctest::Approx(0.5 * kTwoPi * kTwoPi).epsilon(1e-13));

  std::vector<std::uint8_t> empty(d.nodes(), 0);
  CHECK_THROWS_AS(local_energy(m, empty), ValidationError);
}

TEST_CASE("constant domain conformal factors rescale the full residual") {
  GridDomain d(12, 12, kTwoPi, kTwoPi);
  MapState m = make_map_from_function(d, sphere_chart(), [](double x, double y) {
    return (Vec(2) << 1.1 + 0.2 * std::sin(x), 0.3 * std::cos(y)).finished();
  });
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.5, 0.2).finished());
  const double u = 0.7;
  NodeField scaled = tension_tor(m, f, u);
  NodeField base = tension_tor(m, f, 0.0);
  CHECK((scaled - std::exp(-2.0 * u) * base).cwiseAbs().maxCoeff() <
        1e-13 * base.cwiseAbs().maxCoeff());
}

TEST_CASE("tension of a smooth exact solution decays at second order") {
  // Tilted great circle, unit speed: an exact harmonic map whose grid samples
  // carry genuine discretization error (unlike the axis-aligned wraps, which
  // are grid-exact).
  const double rho = 0.35;
  auto circle = [rho](double x, double) {
    const double z = std::sin(rho) * std::sin(x);
    Vec p(2);
    p << std::acos(z), std::atan2(std::cos(rho) * std::sin(x), std::cos(x));
    return p;
  };
  auto residual_at = [&](int n) {
    GridDomain d(n, n, kTwoPi, kTwoPi);
    MapState m = make_map_from_function(d, sphere_chart(), circle);
    return sup_metric_norm(m, tension(m));
  };
  const double r16 = residual_at(16), r32 = residual_at(32), r64 = residual_at(64);
  CHECK(std::log2(r16 / r32) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(std::log2(r32 / r64) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("maps with nodes outside the chart are rejected") {
  GridDomain d(8, 8, kTwoPi, kTwoPi);
  MapState m = make_constant_map(d, sphere_chart(), (Vec(2) << 1.0, 0.0).finished());
  m.values(3, 0) = 0.01; // below the polar margin
  CHECK_THROWS_AS(tension(m), DomainError);
}

} // TEST_SUITE
