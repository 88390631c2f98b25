#include "commands.hpp"

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "config.hpp"
#include "hmt/errors.hpp"
#include "hmt/extrinsic.hpp"
#include "hmt/field_ops.hpp"
#include "hmt/geodesic.hpp"
#include "hmt/io.hpp"
#include "hmt/jacobi.hpp"
#include "hmt/parallel.hpp"
#include "hmt/rng.hpp"
#include "hmt/solver.hpp"
#include "hmt/verify.hpp"

namespace hmt::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;
  int threads = 1;
  bool quiet = false;
};

void say(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::cout << line << "\n";
}

std::string out_path(const GlobalOpts& g, const std::string& file) {
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / file).string();
}

ChartPtr build_chart(const Config& cfg) {
  const std::string name = cfg.get_string("chart.name", "flat");
  int dim = cfg.get_int("chart.dim", 2);
  std::vector<double> periods;
  for (int a = 1; a <= dim; ++a) {
    const std::string key = "chart.period_" + std::to_string(a);
    periods.push_back(cfg.get_double(key, 0.0));
  }
  return std::make_shared<Chart>(chart_by_name(name, dim, periods));
}

Tensor3 random_skew_coeffs(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  Tensor3 t(n);
  std::uint64_t ctr = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const double v = rng.uniform(ctr++, -1.0, 1.0);
        t(a, b, c) = v;
        t(a, c, b) = -v;
      }
  return t;
}

TorsionField build_torsion(const Config& cfg, const ChartPtr& chart, std::uint64_t seed) {
  const std::string kind = cfg.get_string("torsion.kind", "zero");
  if (kind == "zero") return TorsionField::zero();
  if (kind == "vectorial") {
    std::vector<double> comps = cfg.get_doubles("torsion.v");
    if (static_cast<int>(comps.size()) != chart->dim())
      throw ConfigError("torsion.v needs " + std::to_string(chart->dim()) + " components",
                        "torsion.v");
    Vec v(chart->dim());
    for (size_t i = 0; i < comps.size(); ++i) v[static_cast<int>(i)] = comps[i];
    return TorsionField::vectorial_constant(v);
  }
  if (kind == "antisymmetric") {
    if (chart->dim() != 3)
      throw ConfigError("antisymmetric torsion via torsion.coeff needs a 3d chart",
                        "torsion.kind");
    const double c = cfg.get_double("torsion.coeff", 1.0);
    return TorsionField::antisymmetric([c](const Vec&) {
      Tensor3 t(3);
      t(0, 1, 2) = c;
      t(1, 2, 0) = c;
      t(2, 0, 1) = c;
      t(0, 2, 1) = -c;
      t(2, 1, 0) = -c;
      t(1, 0, 2) = -c;
      return t;
    });
  }
  if (kind == "random_skew") {
    Tensor3 t = random_skew_coeffs(chart->dim(), seed);
    return TorsionField::general([t](const Vec&) { return t; });
  }
  throw ConfigError("unknown torsion.kind '" + kind + "'", "torsion.kind");
}

GridDomain build_domain(const Config& cfg) {
  return GridDomain(cfg.get_int("domain.nx"), cfg.get_int("domain.ny"),
                    cfg.get_double("domain.lx"), cfg.get_double("domain.ly"));
}

MapState build_initial_map(const Config& cfg, const GridDomain& d, const ChartPtr& chart,
                           std::uint64_t seed, const std::string& prefix = "initial_map") {
  const std::string kind = cfg.get_string(prefix + ".kind");
  auto base_of = [&](const std::string& k) -> MapState {
    if (k == "constant") {
      std::vector<double> p = cfg.get_doubles(prefix + ".point");
      Vec point(chart->dim());
      for (size_t i = 0; i < p.size(); ++i) point[static_cast<int>(i)] = p[i];
      return make_constant_map(d, chart, point);
    }
    if (k == "equator_wrap")
      return make_equator_wrap(d, chart, cfg.get_int(prefix + ".winding", 1));
    if (k == "latitude_wrap")
      return make_latitude_wrap(d, chart, cfg.get_double(prefix + ".theta"),
                                cfg.get_int(prefix + ".winding", 1));
    throw ConfigError("unknown " + prefix + " kind '" + k + "'", prefix + ".kind");
  };
  if (kind == "perturbed") {
    MapState base = base_of(cfg.get_string(prefix + ".base"));
    return perturb_map(base, cfg.get_double(prefix + ".amplitude", 0.01), seed);
  }
  return base_of(kind);
}

SolveConfig build_solver(const Config& cfg) {
  SolveConfig sc;
  sc.damping = cfg.get_double("solver.damping", 0.8);
  sc.tol = cfg.get_double("solver.tol", 1e-8);
  sc.max_iters = cfg.get_int("solver.max_iters", 500);
  if (sc.damping <= 0.0 || sc.damping > 1.0)
    throw ConfigError("solver.damping must lie in (0, 1]", "solver.damping");
  return sc;
}

int cmd_geodesic(const GlobalOpts& g) {
  Config cfg = Config::parse_file(g.config_path);
  const std::uint64_t seed = cfg.get_u64("seed", 0);
  ChartPtr chart = build_chart(cfg);
  TorsionField field = build_torsion(cfg, chart, seed);

  GeodesicState init;
  std::vector<double> gamma = cfg.get_doubles("geodesic.gamma");
  std::vector<double> gamma_prime = cfg.get_doubles("geodesic.gamma_prime");
  init.gamma = Eigen::Map<Vec>(gamma.data(), static_cast<int>(gamma.size()));
  init.gamma_prime =
      Eigen::Map<Vec>(gamma_prime.data(), static_cast<int>(gamma_prime.size()));
  const double step = cfg.get_double("geodesic.step", 1e-2);
  const int n_steps = cfg.get_int("geodesic.n_steps", 1000);
  const std::string method = cfg.get_string("geodesic.method", "rk4");
  if (method != "rk4" && method != "euler")
    throw ConfigError("geodesic.method must be rk4 or euler", "geodesic.method");
  cfg.check_all_consumed();

  Trajectory traj = integrate(*chart, field, init, step, n_steps,
                              method == "rk4" ? IntegratorMethod::rk4
                                              : IntegratorMethod::euler);
  write_file(out_path(g, "trajectory.csv"), trajectory_to_csv(traj, *chart));
  say(g, "geodesic: " + std::to_string(traj.samples.size() - 1) + " steps, drift=" +
             format_double(speed_drift(traj, *chart)) +
             (traj.truncated ? ", truncated at chart boundary" : ""));
  return 0;
}

int cmd_solve(const GlobalOpts& g) {
  Config cfg = Config::parse_file(g.config_path);
  const std::uint64_t seed = cfg.get_u64("seed", 0);
  ChartPtr chart = build_chart(cfg);
  TorsionField field = build_torsion(cfg, chart, seed);
  GridDomain d = build_domain(cfg);
  MapState init = build_initial_map(cfg, d, chart, seed);
  SolveConfig sc = build_solver(cfg);
  const std::string method = cfg.get_string("solver.method", "fixed_point");
  if (method != "fixed_point" && method != "newton")
    throw ConfigError("solver.method must be fixed_point or newton", "solver.method");
  cfg.check_all_consumed();

  auto [map, rep] = method == "newton" ? solve_newton(init, field, sc)
                                       : solve_fixed_point(init, field, sc);
  write_file(out_path(g, "map.csv"), map_to_csv(map));
  write_file(out_path(g, "map.json"), map_to_json(map));
  write_file(out_path(g, "report.json"), report_to_json(rep));
  const double res =
      rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
  say(g, std::string("solve: terminated=") + termination_name(rep.terminated) +
             " iterations=" + std::to_string(rep.iterations) +
             " residual=" + format_double(res) +
             " energy=" + format_double(rep.final_energy));
  return 0;
}

int cmd_decompose(const GlobalOpts& g) {
  Config cfg = Config::parse_file(g.config_path);
  const std::uint64_t seed = cfg.get_u64("seed", 0);
  ChartPtr chart = build_chart(cfg);
  TorsionField field = build_torsion(cfg, chart, seed);
  std::vector<double> pt =
      cfg.get_doubles("decompose.point", std::vector<double>(chart->dim(), 0.0));
  Vec y(chart->dim());
  for (size_t i = 0; i < pt.size(); ++i) y[static_cast<int>(i)] = pt[i];
  cfg.check_all_consumed();

  Mat h = chart->metric(y);
  Mat hinv = chart->metric_inverse(y);
  TorsionCoeffs a = field.eval(*chart, y);
  TorsionDecomposition dec = cartan_decompose(a.lowered, h);

  Tensor3 sum = dec.vectorial_part.lowered + dec.antisymmetric_part.lowered +
                dec.cartan_part.lowered;
  const double recon = (sum - a.lowered).max_abs();
  const double o12 =
      torsion_inner(dec.vectorial_part.lowered, dec.antisymmetric_part.lowered, hinv);
  const double o13 =
      torsion_inner(dec.vectorial_part.lowered, dec.cartan_part.lowered, hinv);
  const double o23 =
      torsion_inner(dec.antisymmetric_part.lowered, dec.cartan_part.lowered, hinv);

  std::string json = "{\n  \"vector_V\": [";
  for (int i = 0; i < dec.vector_v.size(); ++i)
    json += (i ? ", " : "") + format_double(dec.vector_v[i]);
  json += "],\n  \"norms\": {\n";
  auto norm_of = [&](const Tensor3& t) {
    return std::sqrt(std::max(0.0, torsion_inner(t, t, hinv)));
  };
  json += "    \"vectorial\": " + format_double(norm_of(dec.vectorial_part.lowered)) + ",\n";
  json += "    \"antisymmetric\": " + format_double(norm_of(dec.antisymmetric_part.lowered)) +
          ",\n";
  json += "    \"cartan\": " + format_double(norm_of(dec.cartan_part.lowered)) + "\n  },\n";
  json += "  \"residuals\": {\n";
  json += "    \"reconstruction\": " + format_double(recon) + ",\n";
  json += "    \"orthogonality_max\": " +
          format_double(std::max({std::abs(o12), std::abs(o13), std::abs(o23)})) + "\n";
  json += "  }\n}\n";
  write_file(out_path(g, "decomposition.json"), json);
  say(g, "decompose: reconstruction residual " + format_double(recon));
  return 0;
}

int cmd_verify(const GlobalOpts& g) {
  std::vector<IdentityReport> reports = run_identity_suite();
  const std::string json = identity_reports_to_json(reports);
  if (g.out_dir.empty()) {
    std::cout << json;
  } else {
    write_file(out_path(g, "identity_reports.json"), json);
  }
  for (const auto& r : reports)
    say(g, std::string("verify: ") + r.identity_name + " " + verdict_name(r.verdict));
  return all_pass(reports) ? 0 : 1;
}

int cmd_spectrum(const GlobalOpts& g) {
  Config cfg = Config::parse_file(g.config_path);
  const std::uint64_t seed = cfg.get_u64("seed", 0);
  ChartPtr chart = build_chart(cfg);
  TorsionField field = build_torsion(cfg, chart, seed);
  GridDomain d = build_domain(cfg);
  MapState map = build_initial_map(cfg, d, chart, seed);
  const int k = cfg.get_int("spectrum.k", 8);
  const std::string form = cfg.get_string("spectrum.form", "levi_civita");
  if (form != "levi_civita" && form != "torsion_connection")
    throw ConfigError("spectrum.form must be levi_civita or torsion_connection",
                      "spectrum.form");
  const bool dump = cfg.get_int("spectrum.dump_matrix", 0) != 0;
  cfg.check_all_consumed();

  JacobiOperator op = assemble(map, field,
                               form == "levi_civita" ? JacobiForm::levi_civita
                                                     : JacobiForm::torsion_connection);
  auto ev = spectrum(op, k);
  write_file(out_path(g, "spectrum.json"), spectrum_to_json(ev));
  if (dump) write_file(out_path(g, "jacobi_matrix.csv"), matrix_to_csv(op.matrix()));
  say(g, "spectrum: " + std::to_string(ev.size()) + " eigenvalues written");
  return 0;
}

int cmd_energy(const GlobalOpts& g) {
  Config cfg = Config::parse_file(g.config_path);
  const std::uint64_t seed = cfg.get_u64("seed", 0);
  ChartPtr chart = build_chart(cfg);
  GridDomain d = build_domain(cfg);
  MapState map = build_initial_map(cfg, d, chart, seed);
  std::vector<double> radii =
      cfg.get_doubles("energy.radii", {0.25 * std::min(d.lx, d.ly)});
  cfg.check_all_consumed();

  const double e = dirichlet_energy(map);
  const double m = morrey_norm(map, radii);
  std::string json = "{\n  \"dirichlet_energy\": " + format_double(e) +
                     ",\n  \"morrey\": {\n    \"radii\": [";
  for (size_t i = 0; i < radii.size(); ++i)
    json += (i ? ", " : "") + format_double(radii[i]);
  json += "],\n    \"value\": " + format_double(m) + "\n  }\n}\n";
  write_file(out_path(g, "energy.json"), json);
  say(g, "energy: dirichlet=" + format_double(e) + " morrey=" + format_double(m));
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"harmonic maps with torsion: geodesics, grid solvers, diagnostics"};
  app.require_subcommand(1);

  GlobalOpts g;
  struct Sub {
    CLI::App* app;
    int (*fn)(const GlobalOpts&);
    bool needs_config;
  };
  std::vector<Sub> subs;
  auto add = [&](const std::string& name, const std::string& desc,
                 int (*fn)(const GlobalOpts&), bool needs_config) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--config", g.config_path, "problem configuration file");
    s->add_option("--out", g.out_dir, "output directory");
    s->add_option("--threads", g.threads, "worker threads (default 1)");
    s->add_flag("--quiet", g.quiet, "suppress summary lines");
    subs.push_back({s, fn, needs_config});
  };
  add("geodesic", "integrate a geodesic with torsion, emit trajectory CSV", cmd_geodesic, true);
  add("solve", "solve the harmonic map with torsion equation on a periodic grid", cmd_solve,
      true);
  add("decompose", "split a torsion tensor into its three irreducible parts", cmd_decompose,
      true);
  add("verify", "run the registered identity suite", cmd_verify, false);
  add("spectrum", "eigenvalues of the jacobi operator of a map", cmd_spectrum, true);
  add("energy", "dirichlet energy and growth diagnostics of a map", cmd_energy, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  set_num_threads(g.threads);
  try {
    for (const auto& s : subs) {
      if (s.app->parsed()) {
        if (s.needs_config && g.config_path.empty())
          throw ConfigError("this subcommand requires --config", "--config");
        if (s.needs_config && g.out_dir.empty()) g.out_dir = ".";
        return s.fn(g);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error at '" << e.key_path() << "': " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace hmt::cli
