#ifndef HMT_TOOLS_CONFIG_HPP
#define HMT_TOOLS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hmt::cli {

/// Flat key-value configuration with dotted sections:
///
///   # problem setup
///   chart.name = sphere2
///   solver.tol = 1e-8
///   torsion.v = 1.0 0.0
///
/// Keys are tracked as they are read; any key never consumed by the subcommand
/// is a hard error (typo protection).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;

  /// Throws ConfigError naming the first key that was never read.
  void check_all_consumed() const;

 private:
  std::string raw(const std::string& key) const;
  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> consumed_;
};

} // namespace hmt::cli

#endif
