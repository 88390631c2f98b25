#include <doctest.h>

#include <cmath>

#include "hmt/chart.hpp"
#include "hmt/errors.hpp"

using namespace hmt;

TEST_SUITE("chart") {

TEST_CASE("flat chart has vanishing christoffel symbols") {
  Chart flat = make_flat_chart(3);
  Vec y(3);
  y << 0.3, -1.7, 42.0;
  CHECK(christoffel(flat, y).max_abs() == 0.0);
}

TEST_CASE("sphere christoffel matches the analytic formula") {
  Chart sphere = make_sphere2_chart();

  // Gamma^theta_pp = -sin t cos t, Gamma^phi_tp = cot t; both vanish on the equator.
  Vec eq(2);
  eq << M_PI / 2.0, 0.0;
  Tensor3 g = christoffel(sphere, eq);
  CHECK(std::abs(g(0, 1, 1)) < 1e-14);
  CHECK(std::abs(g(1, 0, 1)) < 1e-14);

  Vec y(2);
  y << M_PI / 4.0, 0.0;
  g = christoffel(sphere, y);
  CHECK(g(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(g(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g(1, 1, 0) == doctest::Approx(1.0).epsilon(1e-12));

  for (double t : {0.4, 1.1, 2.3}) {
    Vec p(2);
    p << t, 1.3;
    g = christoffel(sphere, p);
    CHECK(g(0, 1, 1) == doctest::Approx(-std::sin(t) * std::cos(t)).epsilon(1e-12));
    CHECK(g(1, 0, 1) == doctest::Approx(1.0 / std::tan(t)).epsilon(1e-12));
    CHECK(std::abs(g(0, 0, 0)) < 1e-14);
    CHECK(std::abs(g(1, 1, 1)) < 1e-14);
  }
}

TEST_CASE("hyperbolic half-plane christoffel oracle") {
  Chart hyp = make_hyperbolic2_chart();
  for (double y2 : {0.5, 1.0, 3.0}) {
    Vec p(2);
    p << -0.7, y2;
    Tensor3 g = christoffel(hyp, p);
    CHECK(g(0, 0, 1) == doctest::Approx(-1.0 / y2).epsilon(1e-12));
    CHECK(g(0, 1, 0) == doctest::Approx(-1.0 / y2).epsilon(1e-12));
    CHECK(g(1, 0, 0) == doctest::Approx(1.0 / y2).epsilon(1e-12));
    CHECK(g(1, 1, 1) == doctest::Approx(-1.0 / y2).epsilon(1e-12));
    CHECK(std::abs(g(0, 0, 0)) < 1e-14);
  }
}

TEST_CASE("christoffel is symmetric in the lower indices") {
  Chart hyp = make_hyperbolic2_chart();
  Vec p(2);
  p << 0.2, 1.7;
  Tensor3 g = christoffel(hyp, p);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) CHECK(g(a, b, c) == g(a, c, b));
}

TEST_CASE("finite-difference metric derivatives converge at second order") {
  // Same sphere metric but without the analytic derivative closure.
  Chart fd("sphere_fd", 2,
           [](const Vec& y) {
             Mat h = Mat::Zero(2, 2);
             h(0, 0) = 1.0;
             h(1, 1) = std::sin(y[0]) * std::sin(y[0]);
             return h;
           },
           nullptr, make_sphere2_chart().box_lo(), make_sphere2_chart().box_hi());
  Vec y(2);
  y << 0.9, 0.0;
  const double exact = 2.0 * std::sin(0.9) * std::cos(0.9);

  auto fd_error = [&](double step) {
    Vec yp = y, ym = y;
    yp[0] += step;
    ym[0] -= step;
    const double d = (fd.metric(yp)(1, 1) - fd.metric(ym)(1, 1)) / (2.0 * step);
    return std::abs(d - exact);
  };
  const double e1 = fd_error(1e-3);
  const double e2 = fd_error(5e-4);
  CHECK(e1 / e2 > 3.0); // ~4x for second order
  CHECK(e1 / e2 < 5.0);

  // The chart's own derivative path lands near the analytic value.
  CHECK(fd.metric_derivs(y)(0, 1, 1) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("domain and conditioning errors") {
  Chart sphere = make_sphere2_chart();
  Vec outside(2);
  outside << 0.01, 0.0; // below the theta margin
  CHECK_THROWS_AS(christoffel(sphere, outside), DomainError);

  Chart bad("bad", 2, [](const Vec&) { return Mat(-Mat::Identity(2, 2)); }, nullptr,
            Vec::Constant(2, -10.0), Vec::Constant(2, 10.0));
  Vec p = Vec::Zero(2);
  CHECK_THROWS_AS(bad.metric_inverse(p), ConditioningError);
}

TEST_CASE("periodic coordinate deltas take the short way around") {
  Chart sphere = make_sphere2_chart();
  const double two_pi = 2.0 * M_PI;
  CHECK(sphere.coord_delta(1, two_pi - 0.1, 0.1) == doctest::Approx(0.2));
  CHECK(sphere.coord_delta(1, 0.1, two_pi - 0.1) == doctest::Approx(-0.2));
  CHECK(sphere.coord_delta(0, 0.1, 0.4) == doctest::Approx(0.3)); // theta has no period
}

TEST_CASE("orthonormal frame diagonalizes the metric") {
  Chart hyp = make_hyperbolic2_chart();
  Vec p(2);
  p << 0.4, 2.0;
  Mat e = hyp.orthonormal_frame(p);
  Mat h = hyp.metric(p);
  Mat gram = e * h * e.transpose();
  CHECK((gram - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

} // TEST_SUITE
