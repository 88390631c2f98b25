#include "hmt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "hmt/errors.hpp"

namespace hmt {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string map_to_csv(const MapState& map) {
  const int n = map.dim();
  std::string out = "i,j";
  for (int a = 1; a <= n; ++a) out += ",phi_" + std::to_string(a);
  out += "\n";
  for (int i = 0; i < map.domain.nx; ++i)
    for (int j = 0; j < map.domain.ny; ++j) {
      out += std::to_string(i) + "," + std::to_string(j);
      const int k = map.domain.id(i, j);
      for (int a = 0; a < n; ++a) out += "," + format_double(map.values(k, a));
      out += "\n";
    }
  return out;
}

std::string map_to_json(const MapState& map) {
  json j;
  j["chart"] = map.chart->name();
  j["dim"] = map.dim();
  j["nx"] = map.domain.nx;
  j["ny"] = map.domain.ny;
  j["lx"] = map.domain.lx;
  j["ly"] = map.domain.ly;
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(map.values.size()));
  for (int k = 0; k < map.values.rows(); ++k)
    for (int a = 0; a < map.values.cols(); ++a) flat.push_back(map.values(k, a));
  j["values"] = flat;
  return j.dump(2) + "\n";
}

std::string trajectory_to_csv(const Trajectory& traj, const Chart& chart) {
  const int n = chart.dim();
  std::string out = "s";
  for (int a = 1; a <= n; ++a) out += ",gamma_" + std::to_string(a);
  for (int a = 1; a <= n; ++a) out += ",gammaprime_" + std::to_string(a);
  out += ",speed_sq\n";
  for (const auto& [s, state] : traj.samples) {
    out += format_double(s);
    for (int a = 0; a < n; ++a) out += "," + format_double(state.gamma[a]);
    for (int a = 0; a < n; ++a) out += "," + format_double(state.gamma_prime[a]);
    out += "," + format_double(speed_squared(chart, state));
    out += "\n";
  }
  return out;
}

std::string report_to_json(const ConvergenceReport& rep) {
  json j;
  j["iterations"] = rep.iterations;
  j["residual_history"] = rep.residual_history;
  j["terminated"] = termination_name(rep.terminated);
  j["final_energy"] = rep.final_energy;
  return j.dump(2) + "\n";
}

std::string spectrum_to_json(const std::vector<std::complex<double>>& ev) {
  json j = json::array();
  for (const auto& e : ev) j.push_back({{"re", e.real()}, {"im", e.imag()}});
  return j.dump(2) + "\n";
}

std::string identity_reports_to_json(const std::vector<IdentityReport>& reports) {
  json j = json::array();
  for (const auto& r : reports) {
    json e;
    e["identity_name"] = r.identity_name;
    if (std::isnan(r.max_residual))
      e["max_residual"] = nullptr;
    else
      e["max_residual"] = r.max_residual;
    e["grid_spacings"] = r.grid_spacings;
    if (std::isnan(r.convergence_order))
      e["convergence_order"] = nullptr;
    else
      e["convergence_order"] = r.convergence_order;
    e["verdict"] = verdict_name(r.verdict);
    e["detail"] = r.detail;
    j.push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string matrix_to_csv(const Mat& m) {
  std::string out;
  out.reserve(static_cast<size_t>(m.size()) * 12);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += format_double(m(i, j));
    }
    out += "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error("write failed for '" + path + "'");
}

} // namespace hmt
