#include "config.hpp"

#include <fstream>
#include <sstream>

#include "hmt/errors.hpp"

namespace hmt::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'", path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + " is not 'key = value'", line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("empty key on line " + std::to_string(lineno), line);
    if (cfg.kv_.count(key))
      throw ConfigError("duplicate key '" + key + "'", key);
    cfg.kv_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const {
  if (kv_.count(key)) {
    consumed_.insert(key);
    return true;
  }
  return false;
}

std::string Config::raw(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing required key '" + key + "'", key);
  consumed_.insert(key);
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return kv_.count(key) ? raw(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  const std::string v = raw(key);
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("value of '" + key + "' is not a number: '" + v + "'", key);
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return kv_.count(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const std::string v = raw(key);
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("value of '" + key + "' is not an integer: '" + v + "'", key);
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  return kv_.count(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  if (!kv_.count(key)) return fallback;
  const std::string v = raw(key);
  try {
    size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("value of '" + key + "' is not an unsigned integer: '" + v + "'", key);
  }
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  const std::string v = raw(key);
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("value of '" + key + "' is not a number list: '" + v + "'", key);
    }
  }
  if (out.empty())
    throw ConfigError("value of '" + key + "' is empty", key);
  return out;
}

std::vector<double> Config::get_doubles(const std::string& key,
                                        const std::vector<double>& fallback) const {
  return kv_.count(key) ? get_doubles(key) : fallback;
}

void Config::check_all_consumed() const {
  for (const auto& [key, value] : kv_)
    if (!consumed_.count(key))
      throw ConfigError("unknown key '" + key + "'", key);
}

} // namespace hmt::cli
