#ifndef HMT_GRID_HPP
#define HMT_GRID_HPP

#include <cstdint>
#include <functional>

#include "hmt/chart.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// Uniform periodic grid on a flat 2-torus of periods (lx, ly).
struct GridDomain {
  int nx = 0, ny = 0;
  double lx = 0.0, ly = 0.0;

  GridDomain() = default;
  GridDomain(int nx_, int ny_, double lx_, double ly_);

  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }
  int nodes() const { return nx * ny; }

  int id(int i, int j) const { return wrap_i(i) * ny + wrap_j(j); }
  int wrap_i(int i) const { return ((i % nx) + nx) % nx; }
  int wrap_j(int j) const { return ((j % ny) + ny) % ny; }

  double x(int i) const { return hx() * i; }
  double y(int j) const { return hy() * j; }

  bool operator==(const GridDomain& o) const {
    return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly;
  }
};

/// Discrete map from the grid into a chart: one coordinate vector per node.
/// Node (i,j) is row id(i,j) = i*ny + j of `values`.
struct MapState {
  GridDomain domain;
  ChartPtr chart;
  NodeField values; // nodes x dim_n

  MapState() = default;
  MapState(GridDomain d, ChartPtr c);
  MapState(GridDomain d, ChartPtr c, NodeField v);

  int dim() const { return chart ? chart->dim() : 0; }
  Vec at(int i, int j) const { return values.row(domain.id(i, j)).transpose(); }

  /// Every node must sit strictly inside the chart box (with margin).
  bool inside_chart(double margin = 0.0) const;
  void require_inside_chart(double margin = 0.0) const;
};

/// First and second difference fields of a map, chart-aware: coordinate
/// differences between neighboring nodes are taken through Chart::coord_delta,
/// so maps winding around periodic target coordinates differentiate cleanly.
/// dx/dy are central, fx/fy forward, lap the compact 5-point Laplacian,
/// dxx/dyy/dxy the second-derivative stencils.
struct MapStencils {
  NodeField dx, dy;
  NodeField fx, fy;
  NodeField lap;
  NodeField dxx, dyy, dxy;
};

MapStencils compute_map_stencils(const MapState& map);

/// Plain periodic stencils for derived nodal fields (no coordinate wrapping).
NodeField grid_dx(const GridDomain& d, const NodeField& f);
NodeField grid_dy(const GridDomain& d, const NodeField& f);
NodeField grid_laplacian(const GridDomain& d, const NodeField& f);

/// Map constructors.
MapState make_constant_map(const GridDomain& d, ChartPtr chart, const Vec& point);
/// theta = pi/2, phi-coordinate winding k times around the x-period.
MapState make_equator_wrap(const GridDomain& d, ChartPtr chart, int winding);
/// Latitude circle theta = theta0 with winding k (sphere2 charts).
MapState make_latitude_wrap(const GridDomain& d, ChartPtr chart, double theta0, int winding);
/// Sample an analytic map (x, y) -> chart coordinates at the nodes.
MapState make_map_from_function(const GridDomain& d, ChartPtr chart,
                                const std::function<Vec(double, double)>& f);
/// Add a smooth, mean-zero, seeded trigonometric perturbation (counter-based
/// generator, deterministic under any evaluation order).
MapState perturb_map(const MapState& base, double amplitude, std::uint64_t seed);

/// Smooth mean-zero nodal field with O(1) amplitude, for probes and test
/// perturbations; component count = n.
NodeField smooth_random_field(const GridDomain& d, int n, std::uint64_t seed);

} // namespace hmt

#endif
