#include "gpnls/config.hpp"
#include "gpnls/runner.hpp"
#include "gpnls/types.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"gpnls: local and nonlocal fourth-order quintic NLS solver "
               "(Hankel-operator linearisation and direct split-step)"};

  std::string config_path, mode, out_dir, mu2, mu3, mu4, variant;
  double horizon = -1.0, dt = -1.0;
  long nx = -1, nquad = -1;

  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--mode", mode,
                 "gp-solve | direct-solve | compare | verify-identities | determinant-monitor");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--mu2", mu2, "second-order coefficient, re,im");
  app.add_option("--mu3", mu3, "third-order coefficient, re,im");
  app.add_option("--mu4", mu4, "fourth-order coefficient, re,im");
  app.add_option("--variant", variant,
                 "adjoint | negated-adjoint | reverse-space-time-transpose | reverse-time-transpose");
  app.add_option("--T", horizon, "time horizon");
  app.add_option("--dt", dt, "direct-solver step size");
  app.add_option("--nx", nx, "number of spatial samples (power of two)");
  app.add_option("--nquad", nquad, "number of quadrature nodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    gpnls::RunConfig config =
        config_path.empty() ? gpnls::RunConfig{} : gpnls::load_config(config_path);
    if (!mode.empty()) config.mode = gpnls::parse_mode(mode);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!mu2.empty()) config.coeffs.mu2 = gpnls::parse_complex(mu2);
    if (!mu3.empty()) config.coeffs.mu3 = gpnls::parse_complex(mu3);
    if (!mu4.empty()) config.coeffs.mu4 = gpnls::parse_complex(mu4);
    if (!variant.empty()) config.variant = gpnls::parse_variant(variant);
    if (app.count("--T") > 0) {
      config.horizon = horizon;
      // Keep the default checkpoint set consistent with the new horizon.
      std::vector<double> kept;
      for (double t : config.checkpoints)
        if (t <= horizon) kept.push_back(t);
      if (kept.empty() || kept.back() < horizon) kept.push_back(horizon);
      config.checkpoints = kept;
    }
    if (app.count("--dt") > 0) config.dt = dt;
    if (app.count("--nx") > 0) config.grid.num_points = nx;
    if (app.count("--nquad") > 0) config.grid.num_quad = nquad;
    config.validate();

    const gpnls::RunArtifacts art = gpnls::run(config);
    for (const auto& f : art.files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const gpnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gpnls::NearSingularOperator& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
