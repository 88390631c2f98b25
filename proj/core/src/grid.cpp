#include "hmt/grid.hpp"

#include <cmath>

#include "hmt/errors.hpp"
#include "hmt/rng.hpp"

namespace hmt {

GridDomain::GridDomain(int nx_, int ny_, double lx_, double ly_)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
  if (nx < 4 || ny < 4) throw ValidationError("grid needs nx, ny >= 4", std::min(nx, ny));
  if (lx <= 0.0 || ly <= 0.0) throw ValidationError("grid periods must be positive", 0.0);
}

MapState::MapState(GridDomain d, ChartPtr c)
    : domain(d), chart(std::move(c)), values(NodeField::Zero(d.nodes(), chart->dim())) {}

MapState::MapState(GridDomain d, ChartPtr c, NodeField v)
    : domain(d), chart(std::move(c)), values(std::move(v)) {}

bool MapState::inside_chart(double margin) const {
  for (int k = 0; k < values.rows(); ++k)
    if (!chart->inside(values.row(k).transpose(), margin)) return false;
  return true;
}

void MapState::require_inside_chart(double margin) const {
  if (!inside_chart(margin))
    throw DomainError("map has nodes outside chart '" + chart->name() + "'");
}

namespace {

// delta(a -> b) per component, through the chart's coordinate wrap.
inline void chart_delta(const Chart& chart, const NodeField& v, int a, int b, Vec& out) {
  const int n = static_cast<int>(v.cols());
  for (int c = 0; c < n; ++c) out[c] = chart.coord_delta(c, v(a, c), v(b, c));
}

} // namespace

MapStencils compute_map_stencils(const MapState& map) {
  const GridDomain& d = map.domain;
  const Chart& chart = *map.chart;
  const int n = map.dim();
  const int N = d.nodes();
  const double hx = d.hx(), hy = d.hy();

  MapStencils s;
  s.dx = NodeField(N, n);
  s.dy = NodeField(N, n);
  s.fx = NodeField(N, n);
  s.fy = NodeField(N, n);
  s.lap = NodeField(N, n);
  s.dxx = NodeField(N, n);
  s.dyy = NodeField(N, n);
  s.dxy = NodeField(N, n);

  Vec dp(n), dm(n), dc(n), da(n), db(n);
  for (int i = 0; i < d.nx; ++i) {
    for (int j = 0; j < d.ny; ++j) {
      const int k = d.id(i, j);
      const int xp = d.id(i + 1, j), xm = d.id(i - 1, j);
      const int yp = d.id(i, j + 1), ym = d.id(i, j - 1);

      chart_delta(chart, map.values, k, xp, dp);  // forward x
      chart_delta(chart, map.values, xm, k, dm);  // backward x
      for (int c = 0; c < n; ++c) {
        s.fx(k, c) = dp[c] / hx;
        s.dx(k, c) = (dp[c] + dm[c]) / (2.0 * hx);
        s.dxx(k, c) = (dp[c] - dm[c]) / (hx * hx);
      }

      chart_delta(chart, map.values, k, yp, dp);  // forward y
      chart_delta(chart, map.values, ym, k, dm);  // backward y
      for (int c = 0; c < n; ++c) {
        s.fy(k, c) = dp[c] / hy;
        s.dy(k, c) = (dp[c] + dm[c]) / (2.0 * hy);
        s.dyy(k, c) = (dp[c] - dm[c]) / (hy * hy);
      }

      for (int c = 0; c < n; ++c) s.lap(k, c) = s.dxx(k, c) + s.dyy(k, c);

      // Cross derivative: difference in y of the wrapped x-differences.
      const int pp = d.id(i + 1, j + 1), pm = d.id(i + 1, j - 1);
      const int mp = d.id(i - 1, j + 1), mm = d.id(i - 1, j - 1);
      chart_delta(chart, map.values, mp, pp, da); // x-delta along j+1
      chart_delta(chart, map.values, mm, pm, db); // x-delta along j-1
      for (int c = 0; c < n; ++c) s.dxy(k, c) = (da[c] - db[c]) / (4.0 * hx * hy);
    }
  }
  return s;
}

NodeField grid_dx(const GridDomain& d, const NodeField& f) {
  NodeField out(f.rows(), f.cols());
  const double inv = 1.0 / (2.0 * d.hx());
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j)
      out.row(d.id(i, j)) = (f.row(d.id(i + 1, j)) - f.row(d.id(i - 1, j))) * inv;
  return out;
}

NodeField grid_dy(const GridDomain& d, const NodeField& f) {
  NodeField out(f.rows(), f.cols());
  const double inv = 1.0 / (2.0 * d.hy());
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j)
      out.row(d.id(i, j)) = (f.row(d.id(i, j + 1)) - f.row(d.id(i, j - 1))) * inv;
  return out;
}

NodeField grid_laplacian(const GridDomain& d, const NodeField& f) {
  NodeField out(f.rows(), f.cols());
  const double ax = 1.0 / (d.hx() * d.hx()), ay = 1.0 / (d.hy() * d.hy());
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j) {
      const int k = d.id(i, j);
      out.row(k) =
          ax * (f.row(d.id(i + 1, j)) - 2.0 * f.row(k) + f.row(d.id(i - 1, j))) +
          ay * (f.row(d.id(i, j + 1)) - 2.0 * f.row(k) + f.row(d.id(i, j - 1)));
    }
  return out;
}

MapState make_constant_map(const GridDomain& d, ChartPtr chart, const Vec& point) {
  chart->require_inside(point);
  MapState m(d, std::move(chart));
  for (int k = 0; k < d.nodes(); ++k) m.values.row(k) = point.transpose();
  return m;
}

MapState make_latitude_wrap(const GridDomain& d, ChartPtr chart, double theta0, int winding) {
  MapState m(d, std::move(chart));
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j) {
      const int k = d.id(i, j);
      m.values(k, 0) = theta0;
      m.values(k, 1) = 2.0 * M_PI * winding * static_cast<double>(i) / d.nx;
    }
  m.require_inside_chart();
  return m;
}

MapState make_equator_wrap(const GridDomain& d, ChartPtr chart, int winding) {
  return make_latitude_wrap(d, std::move(chart), M_PI / 2.0, winding);
}

MapState make_map_from_function(const GridDomain& d, ChartPtr chart,
                                const std::function<Vec(double, double)>& f) {
  MapState m(d, std::move(chart));
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j) m.values.row(d.id(i, j)) = f(d.x(i), d.y(j)).transpose();
  m.require_inside_chart();
  return m;
}

NodeField smooth_random_field(const GridDomain& d, int n, std::uint64_t seed) {
  CounterRng rng(seed);
  NodeField out = NodeField::Zero(d.nodes(), n);
  // Low trigonometric modes only: resolution-independent and mean-zero.
  const int kmax = 2;
  std::uint64_t ctr = 0;
  for (int c = 0; c < n; ++c) {
    for (int p = -kmax; p <= kmax; ++p) {
      for (int q = -kmax; q <= kmax; ++q) {
        if (p == 0 && q == 0) continue;
        const double a = rng.uniform(ctr++, -1.0, 1.0);
        const double b = rng.uniform(ctr++, -1.0, 1.0);
        for (int i = 0; i < d.nx; ++i)
          for (int j = 0; j < d.ny; ++j) {
            const double ph =
                2.0 * M_PI * (p * static_cast<double>(i) / d.nx + q * static_cast<double>(j) / d.ny);
            out(d.id(i, j), c) += a * std::cos(ph) + b * std::sin(ph);
          }
      }
    }
  }
  // Normalize to unit sup-norm per component.
  for (int c = 0; c < n; ++c) {
    double m = out.col(c).lpNorm<Eigen::Infinity>();
    if (m > 0.0) out.col(c) /= m;
  }
  return out;
}

MapState perturb_map(const MapState& base, double amplitude, std::uint64_t seed) {
  MapState m = base;
  m.values += amplitude * smooth_random_field(base.domain, base.dim(), seed);
  m.require_inside_chart();
  return m;
}

} // namespace hmt
