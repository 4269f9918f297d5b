#include "gpnls/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gpnls {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::GpSolve: return "gp-solve";
    case RunMode::DirectSolve: return "direct-solve";
    case RunMode::Compare: return "compare";
    case RunMode::VerifyIdentities: return "verify-identities";
    case RunMode::DeterminantMonitor: return "determinant-monitor";
  }
  return "?";
}

RunMode parse_mode(const std::string& name) {
  if (name == "gp-solve") return RunMode::GpSolve;
  if (name == "direct-solve") return RunMode::DirectSolve;
  if (name == "compare") return RunMode::Compare;
  if (name == "verify-identities") return RunMode::VerifyIdentities;
  if (name == "determinant-monitor") return RunMode::DeterminantMonitor;
  throw ConfigError("mode: unknown mode '" + name + "'");
}

const char* to_string(ProfileSpec::Kind k) {
  switch (k) {
    case ProfileSpec::Kind::Sech: return "sech";
    case ProfileSpec::Kind::Gaussian: return "gaussian";
    case ProfileSpec::Kind::File: return "file";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError(key + ": trailing characters in '" + text + "'");
  return v;
}

Eigen::Index parse_index(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v)) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return static_cast<Eigen::Index>(v);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_double("complex", trim(text)), 0.0);
  return Complex(parse_double("complex", trim(text.substr(0, comma))),
                 parse_double("complex", trim(text.substr(comma + 1))));
}

std::string format_complex(Complex z) {
  return format_double(z.real()) + "," + format_double(z.imag());
}

std::vector<double> parse_time_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double("checkpoints", item));
  }
  return out;
}

void RunConfig::validate() const {
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(horizon > 0.0)) throw ConfigError("horizon: must be > 0");
  if (!(dt > 0.0)) throw ConfigError("dt: must be > 0");
  for (double t : checkpoints)
    if (t < 0.0 || t > horizon)
      throw ConfigError("checkpoints: " + format_double(t) + " outside [0, horizon]");
  if (is_transpose_variant(variant) && coeffs.mu3 != Complex(0.0, 0.0))
    throw ConfigError("variant: reverse-space-time/reverse-time companions require mu3 = 0");
  if (profile.kind != ProfileSpec::Kind::File && !(profile.width > 0.0))
    throw ConfigError("width: must be > 0");
  if (profile.kind == ProfileSpec::Kind::File && profile.path.empty())
    throw ConfigError("profile_path: required for profile = file");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "length") cfg.grid.length = parse_double(key, value);
    else if (key == "nx") cfg.grid.num_points = parse_index(key, value);
    else if (key == "nquad") cfg.grid.num_quad = parse_index(key, value);
    else if (key == "block_rows") cfg.grid.block_rows = parse_index(key, value);
    else if (key == "block_cols") cfg.grid.block_cols = parse_index(key, value);
    else if (key == "mu2") cfg.coeffs.mu2 = parse_complex(value);
    else if (key == "mu3") cfg.coeffs.mu3 = parse_complex(value);
    else if (key == "mu4") cfg.coeffs.mu4 = parse_complex(value);
    else if (key == "variant") {
      try {
        cfg.variant = parse_variant(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "profile") {
      if (value == "sech") cfg.profile.kind = ProfileSpec::Kind::Sech;
      else if (value == "gaussian") cfg.profile.kind = ProfileSpec::Kind::Gaussian;
      else if (value == "file") cfg.profile.kind = ProfileSpec::Kind::File;
      else throw ConfigError("profile: unknown kind '" + value + "'");
    } else if (key == "amplitude") cfg.profile.amplitude = parse_double(key, value);
    else if (key == "width") cfg.profile.width = parse_double(key, value);
    else if (key == "profile_path") cfg.profile.path = value;
    else if (key == "horizon") cfg.horizon = parse_double(key, value);
    else if (key == "dt") cfg.dt = parse_double(key, value);
    else if (key == "checkpoints") cfg.checkpoints = parse_time_list(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "formats") {
      cfg.write_csv = value.find("csv") != std::string::npos;
      cfg.write_json = value.find("json") != std::string::npos;
      if (!cfg.write_csv && !cfg.write_json)
        throw ConfigError("formats: expected a list containing csv and/or json");
    } else {
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::map<std::string, std::string> config_to_kv(const RunConfig& config) {
  std::map<std::string, std::string> kv;
  kv["mode"] = to_string(config.mode);
  kv["length"] = format_double(config.grid.length);
  kv["nx"] = std::to_string(config.grid.num_points);
  kv["nquad"] = std::to_string(config.grid.num_quad);
  kv["block_rows"] = std::to_string(config.grid.block_rows);
  kv["block_cols"] = std::to_string(config.grid.block_cols);
  kv["mu2"] = format_complex(config.coeffs.mu2);
  kv["mu3"] = format_complex(config.coeffs.mu3);
  kv["mu4"] = format_complex(config.coeffs.mu4);
  kv["variant"] = to_string(config.variant);
  kv["profile"] = to_string(config.profile.kind);
  kv["amplitude"] = format_double(config.profile.amplitude);
  kv["width"] = format_double(config.profile.width);
  if (!config.profile.path.empty()) kv["profile_path"] = config.profile.path;
  kv["horizon"] = format_double(config.horizon);
  kv["dt"] = format_double(config.dt);
  std::string cps;
  for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
    if (i) cps += ",";
    cps += format_double(config.checkpoints[i]);
  }
  kv["checkpoints"] = cps;
  kv["out_dir"] = config.out_dir;
  kv["formats"] = config.write_csv && config.write_json ? "csv,json"
                  : config.write_csv                    ? "csv"
                                                        : "json";
  return kv;
}

}  // namespace gpnls
