#include "hmt/verify.hpp"

#include <cmath>
#include <sstream>

#include "hmt/curvature.hpp"
#include "hmt/errors.hpp"

namespace hmt {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Registered tolerances: tol(h) = max(floor, c_h2 * h^2). c_h2 = 0 marks an
// exact-arithmetic identity. Constants calibrated on the 32^2 fixtures.
struct Tol {
  double floor;
  double c_h2;
};

Tol tolerance_for(const std::string& name) {
  // Constants measured on the 32^2 fixtures (about half the frozen value) and
  // kept fixed; floors absorb the h_fd-level noise of exact cases.
  if (name == "bochner_lc") return {2e-9, 0.06};
  if (name == "bochner_tor") return {1e-10, 0.06};
  if (name == "laplace_relation") return {2e-9, 0.08};
  if (name == "conformal_domain") return {1e-12, 0.0};
  if (name == "conformal_target") return {1e-10, 0.008};
  return {1e-12, 0.0};
}

constexpr double kBochnerTorGate = 1e-6; // solution-quality gate on sup |tau_tor|

IdentityReport single_grid_report(const std::string& name, double residual, double h,
                                  std::string detail = {}) {
  IdentityReport rep;
  rep.identity_name = name;
  rep.max_residual = residual;
  rep.grid_spacings = {h};
  Tol tol = tolerance_for(name);
  rep.verdict = residual <= std::max(tol.floor, tol.c_h2 * h * h) ? Verdict::pass
                                                                  : Verdict::fail;
  rep.detail = std::move(detail);
  return rep;
}

struct HessianFields {
  NodeField xx, xy, yy; // nabla dphi components (Hessian plus Gamma correction)
};

HessianFields hessian_fields(const MapState& map, const MapStencils& st) {
  const int n = map.dim();
  HessianFields h;
  h.xx = st.dxx;
  h.xy = st.dxy;
  h.yy = st.dyy;
  for (int k = 0; k < map.domain.nodes(); ++k) {
    Tensor3 gamma = christoffel(*map.chart, map.values.row(k).transpose());
    for (int a = 0; a < n; ++a) {
      double sxx = 0.0, sxy = 0.0, syy = 0.0;
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const double g = gamma(a, b, c);
          sxx += g * st.dx(k, b) * st.dx(k, c);
          sxy += g * st.dx(k, b) * st.dy(k, c);
          syy += g * st.dy(k, b) * st.dy(k, c);
        }
      h.xx(k, a) += sxx;
      h.xy(k, a) += sxy;
      h.yy(k, a) += syy;
    }
  }
  return h;
}

inline double metric_pair(const Mat& h, const Eigen::RowVectorXd& a,
                          const Eigen::RowVectorXd& b) {
  return (a * h * b.transpose()).value();
}

// out^a = T^a_bc x^b y^c
inline Eigen::RowVectorXd t3_bilinear(const Tensor3& t, const Eigen::RowVectorXd& x,
                                      const Eigen::RowVectorXd& y) {
  const int n = t.dim();
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) s += t(a, b, c) * x[b] * y[c];
    out[a] = s;
  }
  return out;
}

// Connection Laplacian of a section W along the map by literal composition:
// V_i = D_i W + C(dphi_i) W as nodal fields, then Lap_C W = sum_i D_i V_i +
// C(dphi_i) V_i, with C = Gamma (+ A). A genuinely compositional route, wide
// stencil, independent of any termwise expansion.
NodeField section_connection_laplacian(const MapState& map, const MapStencils& st,
                                       const NodeField& w, const TorsionField& field,
                                       bool with_torsion) {
  const GridDomain& dom = map.domain;
  const Chart& chart = *map.chart;
  const int n = map.dim();
  const int N = dom.nodes();

  std::vector<Tensor3> conn(N);
  for (int k = 0; k < N; ++k) {
    Vec y = map.values.row(k).transpose();
    conn[k] = christoffel(chart, y);
    if (with_torsion && !field.is_zero()) conn[k] += field.eval(chart, y).raised;
  }

  NodeField wx = grid_dx(dom, w);
  NodeField wy = grid_dy(dom, w);
  NodeField vx(N, n), vy(N, n);
  for (int k = 0; k < N; ++k) {
    vx.row(k) = wx.row(k) + t3_bilinear(conn[k], st.dx.row(k), w.row(k));
    vy.row(k) = wy.row(k) + t3_bilinear(conn[k], st.dy.row(k), w.row(k));
  }
  NodeField vxx = grid_dx(dom, vx);
  NodeField vyy = grid_dy(dom, vy);
  NodeField out(N, n);
  for (int k = 0; k < N; ++k) {
    out.row(k) = vxx.row(k) + t3_bilinear(conn[k], st.dx.row(k), vx.row(k)) +
                 vyy.row(k) + t3_bilinear(conn[k], st.dy.row(k), vy.row(k));
  }
  return out;
}

double bochner_lc_max_residual(const MapState& map) {
  const GridDomain& dom = map.domain;
  const Chart& chart = *map.chart;
  MapStencils st = compute_map_stencils(map);
  NodeField tau = tension(map);
  HessianFields hess = hessian_fields(map, st);

  // Energy density (central differences, matching every other stencil here).
  NodeField e(dom.nodes(), 1);
  std::vector<Mat> hm(dom.nodes());
  for (int k = 0; k < dom.nodes(); ++k) {
    hm[k] = chart.metric(map.values.row(k).transpose());
    e(k, 0) = 0.5 * (metric_pair(hm[k], st.dx.row(k), st.dx.row(k)) +
                     metric_pair(hm[k], st.dy.row(k), st.dy.row(k)));
  }
  NodeField lap_e = grid_laplacian(dom, e);

  NodeField tau_x = grid_dx(dom, tau);
  NodeField tau_y = grid_dy(dom, tau);

  double worst = 0.0;
  for (int k = 0; k < dom.nodes(); ++k) {
    Vec y = map.values.row(k).transpose();
    const Mat& h = hm[k];
    const Eigen::RowVectorXd dpx = st.dx.row(k), dpy = st.dy.row(k);

    double rhs = metric_pair(h, hess.xx.row(k), hess.xx.row(k)) +
                 2.0 * metric_pair(h, hess.xy.row(k), hess.xy.row(k)) +
                 metric_pair(h, hess.yy.row(k), hess.yy.row(k));

    CurvatureTensor r = curvature(chart, TorsionField::zero(), y,
                                  ConnectionKind::levi_civita, chart.fd_step(y));
    // sum_ij <R(dphi_i, dphi_j) dphi_j, dphi_i>
    const Eigen::RowVectorXd* dirs[2] = {&dpx, &dpy};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Vec rv = curvature_action(r, dirs[i]->transpose(), dirs[j]->transpose(),
                                  dirs[j]->transpose());
        rhs -= ((*dirs[i]) * h * rv).value();
      }

    // <nabla_j tau, dphi_j>
    Tensor3 gamma = christoffel(chart, y);
    Eigen::RowVectorXd ntx = tau_x.row(k) + t3_bilinear(gamma, dpx, tau.row(k));
    Eigen::RowVectorXd nty = tau_y.row(k) + t3_bilinear(gamma, dpy, tau.row(k));
    rhs += metric_pair(h, ntx, dpx) + metric_pair(h, nty, dpy);

    worst = std::max(worst, std::abs(lap_e(k, 0) - rhs));
  }
  return worst;
}

double bochner_tor_max_residual(const MapState& map, const TorsionField& field) {
  const GridDomain& dom = map.domain;
  const Chart& chart = *map.chart;
  MapStencils st = compute_map_stencils(map);
  HessianFields hess = hessian_fields(map, st);

  NodeField e(dom.nodes(), 1);
  std::vector<Mat> hm(dom.nodes());
  for (int k = 0; k < dom.nodes(); ++k) {
    hm[k] = chart.metric(map.values.row(k).transpose());
    e(k, 0) = 0.5 * (metric_pair(hm[k], st.dx.row(k), st.dx.row(k)) +
                     metric_pair(hm[k], st.dy.row(k), st.dy.row(k)));
  }
  NodeField lap_e = grid_laplacian(dom, e);

  double worst = 0.0;
  const int n = map.dim();
  for (int k = 0; k < dom.nodes(); ++k) {
    Vec y = map.values.row(k).transpose();
    const Mat& h = hm[k];
    const Eigen::RowVectorXd dpx = st.dx.row(k), dpy = st.dy.row(k);
    const Eigen::RowVectorXd bxx = hess.xx.row(k), bxy = hess.xy.row(k),
                             byy = hess.yy.row(k);
    const Eigen::RowVectorXd* dirs[2] = {&dpx, &dpy};
    const Eigen::RowVectorXd* beta[2][2] = {{&bxx, &bxy}, {&bxy, &byy}};

    double rhs = metric_pair(h, bxx, bxx) + 2.0 * metric_pair(h, bxy, bxy) +
                 metric_pair(h, byy, byy);

    CurvatureTensor r = curvature(chart, TorsionField::zero(), y,
                                  ConnectionKind::levi_civita, chart.fd_step(y));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Vec rv = curvature_action(r, dirs[i]->transpose(), dirs[j]->transpose(),
                                  dirs[j]->transpose());
        rhs -= ((*dirs[i]) * h * rv).value();
      }

    if (!field.is_zero()) {
      Tensor3 a = field.eval(chart, y).raised;
      Tensor4 na = torsion_covariant_derivative(chart, field, y);
      // - <(nabla_{dphi_j} A)(dphi, dphi), dphi_j>
      for (int j = 0; j < 2; ++j) {
        Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(n);
        for (int al = 0; al < n; ++al) {
          double s = 0.0;
          for (int g = 0; g < n; ++g) {
            const double scale = (*dirs[j])[g];
            if (scale == 0.0) continue;
            for (int b = 0; b < n; ++b)
              for (int c = 0; c < n; ++c)
                s += scale * na(g, al, b, c) * (dpx[b] * dpx[c] + dpy[b] * dpy[c]);
          }
          w[al] = s;
        }
        rhs -= metric_pair(h, w, *dirs[j]);
      }
      // - <A(dphi_i, nabla_j dphi_i), dphi_j>
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          Eigen::RowVectorXd av = t3_bilinear(a, *dirs[i], *beta[j][i]);
          rhs -= metric_pair(h, av, *dirs[j]);
        }
    }
    worst = std::max(worst, std::abs(lap_e(k, 0) - rhs));
  }
  return worst;
}

double laplace_relation_max_residual(const MapState& map, const TorsionField& field) {
  const GridDomain& dom = map.domain;
  const Chart& chart = *map.chart;
  const int n = map.dim();
  MapStencils st = compute_map_stencils(map);
  NodeField tau = tension(map);

  double worst = 0.0;
  for (int dir = 0; dir < 2; ++dir) {
    const NodeField& w = dir == 0 ? st.dx : st.dy;
    NodeField lhs = section_connection_laplacian(map, st, w, field, true);
    NodeField rhs = section_connection_laplacian(map, st, w, field, false);
    if (!field.is_zero()) {
      NodeField wx = grid_dx(dom, w);
      NodeField wy = grid_dy(dom, w);
      for (int k = 0; k < dom.nodes(); ++k) {
        Vec y = map.values.row(k).transpose();
        Tensor3 gamma = christoffel(chart, y);
        Tensor3 a = field.eval(chart, y).raised;
        Tensor4 na = torsion_covariant_derivative(chart, field, y);
        const Eigen::RowVectorXd dpx = st.dx.row(k), dpy = st.dy.row(k);
        const Eigen::RowVectorXd wk = w.row(k);

        Eigen::RowVectorXd nwx = wx.row(k) + t3_bilinear(gamma, dpx, wk);
        Eigen::RowVectorXd nwy = wy.row(k) + t3_bilinear(gamma, dpy, wk);
        // + 2 A(dphi, nabla^LC W)
        rhs.row(k) += 2.0 * t3_bilinear(a, dpx, nwx);
        rhs.row(k) += 2.0 * t3_bilinear(a, dpy, nwy);
        // + (nabla_{dphi_i} A)(dphi_i, W)
        for (int al = 0; al < n; ++al) {
          double s = 0.0;
          for (int g = 0; g < n; ++g)
            for (int b = 0; b < n; ++b) {
              const double q = dpx[g] * dpx[b] + dpy[g] * dpy[b];
              if (q == 0.0) continue;
              for (int c = 0; c < n; ++c) s += na(g, al, b, c) * q * wk[c];
            }
          rhs(k, al) += s;
        }
        // + A(tau, W) + A(dphi_i, A(dphi_i, W))
        rhs.row(k) += t3_bilinear(a, tau.row(k), wk);
        rhs.row(k) += t3_bilinear(a, dpx, t3_bilinear(a, dpx, wk));
        rhs.row(k) += t3_bilinear(a, dpy, t3_bilinear(a, dpy, wk));
      }
    }
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

} // namespace

IdentityReport bochner_residual_lc(const MapState& map) {
  const double res = bochner_lc_max_residual(map);
  return single_grid_report("bochner_lc", res, std::max(map.domain.hx(), map.domain.hy()));
}

IdentityReport bochner_residual_tor(const MapState& map, const TorsionField& field) {
  NodeField tt = tension_tor(map, field);
  const double quality = sup_metric_norm(map, tt);
  if (quality > kBochnerTorGate) {
    IdentityReport rep;
    rep.identity_name = "bochner_tor";
    rep.max_residual = std::numeric_limits<double>::quiet_NaN();
    rep.grid_spacings = {std::max(map.domain.hx(), map.domain.hy())};
    rep.verdict = Verdict::inconclusive;
    std::ostringstream os;
    os << "input is not a solution: sup |tau_tor| = " << quality << " exceeds gate "
       << kBochnerTorGate << "; the identity holds only on solutions";
    rep.detail = os.str();
    return rep;
  }
  const double res = bochner_tor_max_residual(map, field);
  std::ostringstream os;
  os << "sup |tau_tor| = " << quality;
  return single_grid_report("bochner_tor", res, std::max(map.domain.hx(), map.domain.hy()),
                            os.str());
}

IdentityReport laplacian_relation_check(const MapState& map, const TorsionField& field) {
  const double res = laplace_relation_max_residual(map, field);
  return single_grid_report("laplace_relation", res,
                            std::max(map.domain.hx(), map.domain.hy()));
}

IdentityReport conformal_domain_check(const MapState& map, const TorsionField& field,
                                      double u) {
  NodeField lhs = tension_tor(map, field, u);
  NodeField base = tension_tor(map, field, 0.0);
  NodeField rhs = std::exp(-2.0 * u) * base;
  const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1e-30);
  double res = (lhs - rhs).cwiseAbs().maxCoeff() / scale;

  NodeField alhs = torsion_contraction(map, field, u);
  NodeField arhs = std::exp(-2.0 * u) * torsion_contraction(map, field, 0.0);
  const double ascale = std::max(arhs.cwiseAbs().maxCoeff(), 1e-30);
  const double ares = (alhs - arhs).cwiseAbs().maxCoeff() / ascale;

  std::ostringstream os;
  os << "tension scaling rel err " << res << ", torsion scaling rel err " << ares;
  return single_grid_report("conformal_domain", std::max(res, ares),
                            std::max(map.domain.hx(), map.domain.hy()), os.str());
}

IdentityReport conformal_target_check(const MapState& map, const ChartFunction& v) {
  const GridDomain& dom = map.domain;
  const Chart base = *map.chart;
  const int n = map.dim();
  MapStencils st = compute_map_stencils(map);

  // Left side: tension with the conformally rescaled chart metric.
  auto value = v.value;
  auto gradient = v.gradient;
  Chart scaled(
      base.name() + "_conformal", n,
      [base, value](const Vec& y) {
        return Mat(std::exp(2.0 * value(y)) * base.metric(y));
      },
      [base, value, gradient](const Vec& y) {
        const double s = std::exp(2.0 * value(y));
        Vec g = gradient(y);
        Mat h = base.metric(y);
        Tensor3 dh = base.metric_derivs(y);
        Tensor3 out(h.rows());
        for (int gi = 0; gi < h.rows(); ++gi)
          for (int a = 0; a < h.rows(); ++a)
            for (int b = 0; b < h.rows(); ++b)
              out(gi, a, b) = s * (2.0 * g[gi] * h(a, b) + dh(gi, a, b));
        return out;
      },
      base.box_lo(), base.box_hi());
  for (int a = 0; a < n; ++a) scaled.set_coord_period(a, base.coord_period(a));

  MapState scaled_map(dom, std::make_shared<Chart>(std::move(scaled)), map.values);
  NodeField lhs = tension(scaled_map);

  // Right side from base quantities; the pairing <dphi, grad v> goes through
  // composite grid differences of v(phi), an independent route.
  NodeField tau = tension(map);
  NodeField vphi(dom.nodes(), 1);
  for (int k = 0; k < dom.nodes(); ++k) vphi(k, 0) = value(map.values.row(k).transpose());
  NodeField dvx = grid_dx(dom, vphi);
  NodeField dvy = grid_dy(dom, vphi);

  NodeField rhs = tau;
  double similarity_defect = 0.0;
  for (int k = 0; k < dom.nodes(); ++k) {
    Vec y = map.values.row(k).transpose();
    Mat h = base.metric(y);
    Mat hinv = base.metric_inverse(y);
    Vec grad = gradient(y);
    Vec gradv = hinv * grad; // grad v raised with the base metric
    const Eigen::RowVectorXd dpx = st.dx.row(k), dpy = st.dy.row(k);
    const double edens = metric_pair(h, dpx, dpx) + metric_pair(h, dpy, dpy);

    rhs.row(k) += 2.0 * (dvx(k, 0) * dpx + dvy(k, 0) * dpy) - edens * gradv.transpose();

    // Factor-two relation against the vectorial contraction with V = grad v:
    // conf + 2 A_V(dphi,dphi) = |dphi|^2 grad v.
    const double px = grad.dot(dpx.transpose());
    const double py = grad.dot(dpy.transpose());
    Eigen::RowVectorXd conf_chain = 2.0 * (px * dpx + py * dpy) - edens * gradv.transpose();
    Eigen::RowVectorXd vect = Eigen::RowVectorXd::Zero(n);
    {
      Tensor3 a_low(n);
      Vec vflat = h * gradv;
      for (int x = 0; x < n; ++x)
        for (int yy = 0; yy < n; ++yy)
          for (int z = 0; z < n; ++z)
            a_low(x, yy, z) = h(x, yy) * vflat[z] - h(x, z) * vflat[yy];
      Tensor3 a = raise_torsion(a_low, hinv);
      vect = t3_bilinear(a, dpx, dpx) + t3_bilinear(a, dpy, dpy);
    }
    Eigen::RowVectorXd defect = conf_chain + 2.0 * vect - edens * gradv.transpose();
    similarity_defect = std::max(similarity_defect, defect.cwiseAbs().maxCoeff());
  }

  const double res = (lhs - rhs).cwiseAbs().maxCoeff();
  std::ostringstream os;
  os << "factor-two similarity defect " << similarity_defect;
  IdentityReport rep = single_grid_report("conformal_target", res,
                                          std::max(dom.hx(), dom.hy()), os.str());
  if (similarity_defect > 1e-12) rep.verdict = Verdict::fail;
  return rep;
}

namespace {

struct SuiteFixture {
  std::string name;
  std::vector<int> grids;
  std::function<IdentityReport(int)> run; // grid n -> single-grid report
};

IdentityReport merge_reports(const std::string& name,
                             const std::vector<IdentityReport>& runs) {
  IdentityReport rep;
  rep.identity_name = name;
  Tol tol = tolerance_for(name);
  for (const auto& r : runs) {
    rep.grid_spacings.push_back(r.grid_spacings.front());
    if (r.verdict == Verdict::inconclusive) {
      rep.verdict = Verdict::inconclusive;
      rep.detail = r.detail;
      return rep;
    }
  }
  rep.max_residual = runs.back().max_residual;
  rep.detail = runs.back().detail;

  const double h_fin = rep.grid_spacings.back();
  const bool at_floor = rep.max_residual <= tol.floor;
  const bool exact_only = tol.c_h2 == 0.0;
  if (!at_floor && !exact_only && runs.size() >= 2) {
    const double prev = runs[runs.size() - 2].max_residual;
    if (prev > 0.0 && rep.max_residual > 0.0)
      rep.convergence_order = std::log2(prev / rep.max_residual);
  }

  bool ok;
  if (at_floor) {
    ok = true;
  } else if (exact_only) {
    ok = false;
  } else {
    const bool order_ok = std::isnan(rep.convergence_order) ||
                          (rep.convergence_order >= 1.5 && rep.convergence_order <= 2.5);
    ok = rep.max_residual <= tol.c_h2 * h_fin * h_fin && order_ok;
  }
  // Similarity sub-checks or gates folded into the per-run verdicts.
  for (const auto& r : runs) ok = ok && r.verdict == Verdict::pass;
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  return rep;
}

} // namespace

std::vector<IdentityReport> run_identity_suite() {
  const double period = 2.0 * M_PI;
  auto sphere = std::make_shared<Chart>(make_sphere2_chart());
  auto flat2 = std::make_shared<Chart>(make_flat_chart(2));

  auto sphere_wavy = [&](int g) {
    GridDomain d(g, g, period, period);
    return make_map_from_function(d, sphere, [](double x, double y) {
      Vec p(2);
      p << M_PI / 2.0 + 0.2 * std::sin(x), y;
      return p;
    });
  };
  auto sphere_smooth = [&](int g) {
    GridDomain d(g, g, period, period);
    return make_map_from_function(d, sphere, [](double x, double y) {
      Vec p(2);
      p << 1.2 + 0.25 * std::sin(x) + 0.15 * std::cos(y),
          0.3 * std::cos(x) + 0.2 * std::sin(y);
      return p;
    });
  };
  auto flat_smooth = [&](int g) {
    GridDomain d(g, g, period, period);
    return make_map_from_function(d, flat2, [](double x, double y) {
      Vec p(2);
      p << 0.4 * std::sin(x) + 0.2 * std::cos(y),
          0.3 * std::cos(x) + 0.2 * std::sin(x + y);
      return p;
    });
  };

  Vec vtheta(2);
  vtheta << 1.0, 0.0;
  TorsionField lat_field = TorsionField::vectorial_constant(vtheta);
  Vec vgen(2);
  vgen << 0.4, 0.3;
  TorsionField gen_field = TorsionField::vectorial_constant(vgen);

  // Nonlinear conformal factor: for linear v the composite-difference route
  // coincides with the chain rule bitwise and there is no decay to measure.
  ChartFunction vconf;
  vconf.value = [](const Vec& y) { return 0.25 * std::sin(y[0]); };
  vconf.gradient = [](const Vec& y) {
    Vec g = Vec::Zero(y.size());
    g[0] = 0.25 * std::cos(y[0]);
    return g;
  };

  std::vector<SuiteFixture> fixtures;
  fixtures.push_back({"bochner_lc",
                      {16, 32, 64},
                      [&](int g) { return bochner_residual_lc(sphere_wavy(g)); }});
  fixtures.push_back({"bochner_tor",
                      {32, 64},
                      [&](int g) {
                        GridDomain d(g, g, period, period);
                        MapState lat = make_latitude_wrap(d, sphere, M_PI / 4.0, 1);
                        return bochner_residual_tor(lat, lat_field);
                      }});
  fixtures.push_back({"laplace_relation",
                      {16, 32, 64},
                      [&](int g) {
                        return laplacian_relation_check(sphere_smooth(g), gen_field);
                      }});
  fixtures.push_back({"conformal_domain",
                      {64},
                      [&](int g) {
                        return conformal_domain_check(sphere_smooth(g), gen_field, 1.0);
                      }});
  fixtures.push_back({"conformal_target",
                      {16, 32, 64},
                      [&](int g) { return conformal_target_check(flat_smooth(g), vconf); }});

  std::vector<IdentityReport> out;
  for (const auto& f : fixtures) {
    std::vector<IdentityReport> runs;
    for (int g : f.grids) runs.push_back(f.run(g));
    out.push_back(merge_reports(f.name, runs));
  }
  return out;
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports)
    if (r.verdict != Verdict::pass) return false;
  return true;
}

} // namespace hmt
