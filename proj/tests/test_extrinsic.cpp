#include <doctest.h>

#include <cmath>

#include "hmt/errors.hpp"
#include "hmt/extrinsic.hpp"
#include "hmt/field_ops.hpp"

using namespace hmt;

namespace {

const double kTwoPi = 2.0 * M_PI;

ChartPtr sphere_chart() { return std::make_shared<Chart>(make_sphere2_chart()); }

MapState smooth_sphere_map(int n) {
  GridDomain d(n, n, kTwoPi, kTwoPi);
  return make_map_from_function(d, sphere_chart(), [](double x, double y) {
    return (Vec(2) << 1.4 + 0.25 * std::sin(x) + 0.1 * std::cos(y),
            0.3 * std::cos(x) + 0.2 * std::sin(y))
        .finished();
  });
}

} // namespace

TEST_SUITE("extrinsic") {

TEST_CASE("constant maps solve the extrinsic equation, even at the pole") {
  GridDomain d(8, 8, kTwoPi, kTwoPi);
  EmbeddedMapState m;
  m.domain = d;
  m.values = NodeField::Zero(d.nodes(), 3);
  m.values.col(2).setConstant(1.0); // north pole
  CHECK(tension_tor_extrinsic(m, TorsionField::zero()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the equator wrap solves the extrinsic equation") {
  GridDomain d(32, 32, kTwoPi, kTwoPi);
  EmbeddedMapState m = embed_sphere(make_equator_wrap(d, sphere_chart(), 1));
  m.require_unit();
  CHECK(tension_tor_extrinsic(m, TorsionField::zero()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("renormalization restores unit norms and off-sphere input is rejected") {
  GridDomain d(8, 8, kTwoPi, kTwoPi);
  EmbeddedMapState m = embed_sphere(make_equator_wrap(d, sphere_chart(), 1));
  m.values(5, 0) += 1e-5;
  CHECK_THROWS_AS(tension_tor_extrinsic(m, TorsionField::zero()), ValidationError);
  m.renormalize();
  for (int k = 0; k < d.nodes(); ++k)
    CHECK(std::abs(m.values.row(k).norm() - 1.0) < 1e-12);
}

TEST_CASE("intrinsic and extrinsic residuals agree at second order") {
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.6, 0.3).finished());
  auto diff_at = [&](int n) {
    MapState chart_map = smooth_sphere_map(n);
    NodeField intrinsic = tension_tor(chart_map, f);
    NodeField extrinsic = tension_tor_extrinsic(embed_sphere(chart_map), f);
    NodeField pulled = pull_to_chart(chart_map, extrinsic);
    return (pulled - intrinsic).cwiseAbs().maxCoeff();
  };
  const double d32 = diff_at(32);
  const double d64 = diff_at(64);
  const double order = std::log2(d32 / d64);
  CHECK(order > 1.5);
  CHECK(order < 2.5);
}

TEST_CASE("first-order extrinsic coefficients are antisymmetric") {
  MapState chart_map = smooth_sphere_map(16);
  TorsionField f = TorsionField::vectorial_constant((Vec(2) << 0.8, -0.5).finished());
  CHECK(extrinsic_b_antisymmetry_defect(chart_map, f) < 1e-12);
  CHECK(extrinsic_b_antisymmetry_defect(chart_map, TorsionField::zero()) == 0.0);
}

} // TEST_SUITE
