#ifndef HMT_IO_HPP
#define HMT_IO_HPP

#include <complex>
#include <string>
#include <vector>

#include "hmt/geodesic.hpp"
#include "hmt/grid.hpp"
#include "hmt/solver.hpp"
#include "hmt/verify.hpp"

namespace hmt {

/// 17 significant digits, '.' decimal separator, LF line endings throughout.
std::string format_double(double x);

/// CSV with header i,j,phi_1..phi_n.
std::string map_to_csv(const MapState& map);
/// JSON object with grid metadata and flattened node values.
std::string map_to_json(const MapState& map);
/// CSV with header s,gamma_1..gamma_n,gammaprime_1..gammaprime_n,speed_sq.
std::string trajectory_to_csv(const Trajectory& traj, const Chart& chart);
std::string report_to_json(const ConvergenceReport& rep);
std::string spectrum_to_json(const std::vector<std::complex<double>>& ev);
std::string identity_reports_to_json(const std::vector<IdentityReport>& reports);
/// Dense matrix as plain CSV rows (external inspection of assembled operators).
std::string matrix_to_csv(const Mat& m);

void write_file(const std::string& path, const std::string& content);

} // namespace hmt

#endif
