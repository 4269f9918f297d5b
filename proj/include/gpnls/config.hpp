#pragma once

#include "gpnls/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace gpnls {

enum class RunMode { GpSolve, DirectSolve, Compare, VerifyIdentities, DeterminantMonitor };

const char* to_string(RunMode m);
RunMode parse_mode(const std::string& name);

struct ProfileSpec {
  enum class Kind { Sech, Gaussian, File };
  Kind kind = Kind::Sech;
  double amplitude = 0.15;
  double width = 40.0;
  std::string path;
};

const char* to_string(ProfileSpec::Kind k);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full run description. Defaults are the reference simulation parameters:
// mu2 = -i, mu3 = 1, mu4 = i, L = 40, 2^8 modes, n_quad = 2^7, dt = 0.001,
// sech profile of amplitude 0.15 and width 40, adjoint companion.
struct RunConfig {
  RunMode mode = RunMode::GpSolve;
  GridConfig grid;
  DispersionCoefficients coeffs{Complex(0.0, -1.0), Complex(1.0, 0.0), Complex(0.0, 1.0)};
  CompanionVariant variant = CompanionVariant::Adjoint;
  ProfileSpec profile;
  double horizon = 5.0;
  std::vector<double> checkpoints{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  double dt = 1e-3;
  std::string out_dir = "out";
  bool write_csv = true;
  bool write_json = true;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Flat key = value text; '#' starts a comment; unknown keys rejected; an
// empty file yields the defaults above.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Key/value echo that parse_config_text maps back to an equal config.
std::map<std::string, std::string> config_to_kv(const RunConfig& config);

// "re,im" or a bare real part.
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);
std::vector<double> parse_time_list(const std::string& text);

}  // namespace gpnls
