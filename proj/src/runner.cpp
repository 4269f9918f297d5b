#include "gpnls/runner.hpp"

#include "gpnls/fredholm.hpp"
#include "gpnls/scattering.hpp"
#include "gpnls/spectral.hpp"
#include "gpnls/splitstep.hpp"
#include "gpnls/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gpnls {

namespace {

using nlohmann::json;

std::string format_time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

ScatteringField field_from_file(const RunConfig& config) {
  std::ifstream in(config.profile.path);
  if (!in) throw ConfigError("profile_path: cannot open " + config.profile.path);
  ScatteringField f = zero_field(config.grid, 0.0);
  const Eigen::Index entries = config.grid.entries();
  std::string line;
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (row >= config.grid.num_points)
      throw ConfigError("profile_path: more rows than grid points");
    std::istringstream ls(line);
    double x = 0.0;
    if (!(ls >> x)) throw ConfigError("profile_path: bad row " + std::to_string(row));
    if (std::abs(x - config.grid.x(row)) > 1e-9 * std::max(1.0, config.grid.length))
      throw ConfigError("profile_path: x column does not match the grid at row " +
                        std::to_string(row));
    for (Eigen::Index e = 0; e < entries; ++e) {
      double re = 0.0, im = 0.0;
      if (!(ls >> re >> im))
        throw ConfigError("profile_path: expected " + std::to_string(2 * entries) +
                          " entry columns at row " + std::to_string(row));
      f.data(row, e) = Complex(re, im);
    }
    ++row;
  }
  if (row != config.grid.num_points)
    throw ConfigError("profile_path: expected " + std::to_string(config.grid.num_points) +
                      " rows, got " + std::to_string(row));
  return f;
}

// One snapshot row set: x, entry (0,0) of g, Frobenius norm of the block,
// det1. Self-describing via the config echo in the header.
void write_snapshot_csv(const std::string& path, const RunConfig& config, double t,
                        const Eigen::MatrixXcd& g, const Eigen::VectorXcd& det1) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# gpnls snapshot: mode = " << to_string(config.mode) << ", t = " << format_time_tag(t)
      << "\n";
  for (const auto& [k, v] : config_to_kv(config)) out << "# " << k << " = " << v << "\n";
  out << "x,re_g,im_g,abs_g,det1_re,det1_im\n";
  for (Eigen::Index i = 0; i < config.grid.num_points; ++i) {
    const double abs_g = g.row(i).norm();
    out << g17(config.grid.x(i)) << ',' << g17(g(i, 0).real()) << ',' << g17(g(i, 0).imag())
        << ',' << g17(abs_g) << ',' << g17(det1[i].real()) << ',' << g17(det1[i].imag()) << "\n";
  }
}

json checkpoint_entry(double t, const std::string& file, const Eigen::MatrixXcd& g,
                      const Eigen::VectorXcd& det1) {
  double max_abs_g = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) max_abs_g = std::max(max_abs_g, g.row(i).norm());
  return json{{"t", t},
              {"file", file},
              {"max_abs_g", max_abs_g},
              {"min_abs_det1", det1.cwiseAbs().minCoeff()},
              {"max_abs_det1", det1.cwiseAbs().maxCoeff()}};
}

json report_to_json(const verify::IdentityReport& r) {
  return json{{"name", r.name},
              {"parameters", r.parameters},
              {"levels", r.levels},
              {"errors", r.errors},
              {"estimated_order", r.estimated_order},
              {"expected_order", r.expected_order},
              {"order_tolerance", r.order_tolerance},
              {"degenerate", r.degenerate},
              {"passed", r.passed}};
}

}  // namespace

ScatteringField build_initial_field(const RunConfig& config) {
  switch (config.profile.kind) {
    case ProfileSpec::Kind::Sech: {
      const double a = config.profile.amplitude, w = config.profile.width;
      return field_from_scalar_profile(
          config.grid, [a, w](double x) { return Complex(a / std::cosh(x / w), 0.0); });
    }
    case ProfileSpec::Kind::Gaussian: {
      const double a = config.profile.amplitude, w = config.profile.width;
      return field_from_scalar_profile(config.grid, [a, w](double x) {
        return Complex(a * std::exp(-(x / w) * (x / w)), 0.0);
      });
    }
    case ProfileSpec::Kind::File:
      return field_from_file(config);
  }
  throw std::logic_error("build_initial_field: unreachable");
}

RunArtifacts run(const RunConfig& config) {
  config.validate();
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);

  RunArtifacts art;
  art.summary = json{{"tool", "gpnls"},
                     {"mode", to_string(config.mode)},
                     {"config", config_to_kv(config)}};
  json checkpoints = json::array();
  json timings = json::object();
  const double t_start = now_ms();

  const ScatteringField p0 = build_initial_field(config);

  const auto emit = [&](double t, const Eigen::MatrixXcd& g, const Eigen::VectorXcd& det1) {
    const std::string name = "t" + format_time_tag(t) + ".csv";
    const std::string path = (fs::path(config.out_dir) / name).string();
    if (config.write_csv) {
      write_snapshot_csv(path, config, t, g, det1);
      art.files.push_back(path);
    }
    checkpoints.push_back(checkpoint_entry(t, name, g, det1));
  };

  switch (config.mode) {
    case RunMode::GpSolve: {
      for (double t : config.checkpoints) {
        const double t0 = now_ms();
        const SolutionField s = gp_solution_at_time(p0, t, config.variant, config.coeffs);
        timings["t" + format_time_tag(t)] = now_ms() - t0;
        emit(t, s.g, s.det1);
      }
      break;
    }
    case RunMode::DirectSolve: {
      StepperState state =
          splitstep_initial_data(p0, config.variant, config.coeffs, config.dt);
      std::vector<long> marks;
      for (double t : config.checkpoints)
        marks.push_back(static_cast<long>(std::llround(t / config.dt)));
      const long nsteps = static_cast<long>(std::llround(config.horizon / config.dt));
      const auto record = [&](const StepperState& st) {
        for (std::size_t i = 0; i < marks.size(); ++i)
          if (marks[i] == st.step_count)
            emit(st.time(), stepper_solution(st),
                 determinant_profile(p0, st.time(), config.variant, config.coeffs));
      };
      record(state);
      for (long m = 0; m < nsteps; ++m) {
        state = splitstep_advance(state, config.coeffs, config.variant);
        record(state);
      }
      timings["stepping"] = now_ms() - t_start;
      break;
    }
    case RunMode::Compare: {
      const verify::SolverComparison cmp =
          verify::compare_solvers(p0, config.horizon, config.coeffs, config.variant, config.dt,
                                  config.checkpoints);
      json series = json::array();
      for (std::size_t i = 0; i < cmp.times.size(); ++i) {
        emit(cmp.times[i], cmp.gp[i].g, cmp.gp[i].det1);
        series.push_back(json{{"t", cmp.times[i]}, {"max_diff", cmp.max_diff[i]}});
      }
      art.summary["max_diff_series"] = series;
      break;
    }
    case RunMode::VerifyIdentities: {
      const auto inputs = verify::default_kernel_rule_inputs();
      const verify::IdentityReport rule = verify::check_kernel_product_rule(
          inputs.h, inputs.h_prime, inputs.f, inputs.f_prime, 0.0, config.grid);
      const double t_id = std::min(1.0, config.horizon);
      const verify::IdentityReport key = verify::check_key_identity_i(
          p0, t_id, config.variant, config.coeffs,
          verify::KeyIdentityOptions{{32, 64, 128}, 0.25 * config.grid.length, 1.0, 0.3});
      art.summary["reports"] = json::array({report_to_json(rule), report_to_json(key)});
      for (const auto* r : {&rule, &key})
        std::printf("[%s] %s: order %.3g (expected %.3g +/- %.2g)%s\n",
                    r->passed ? "ok" : "off", r->name.c_str(), r->estimated_order,
                    r->expected_order, r->order_tolerance,
                    r->degenerate ? " [error at round-off]" : "");
      break;
    }
    case RunMode::DeterminantMonitor: {
      const verify::DeterminantSeries series =
          verify::determinant_monitor(p0, config.coeffs, config.variant, config.checkpoints);
      json det = json::array();
      for (std::size_t i = 0; i < series.times.size(); ++i) {
        emit(series.times[i], series.fields[i].g, series.fields[i].det1);
        det.push_back(json{{"t", series.times[i]},
                           {"min_abs_det1", series.min_abs[i]},
                           {"max_abs_det1", series.max_abs[i]},
                           {"max_abs_imag_det1", series.max_imag[i]}});
      }
      art.summary["determinant_series"] = det;
      break;
    }
  }

  timings["total"] = now_ms() - t_start;
  art.summary["checkpoints"] = checkpoints;
  art.summary["timings_ms"] = timings;

  if (config.write_json) {
    const std::string path = (fs::path(config.out_dir) / "summary.json").string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << art.summary.dump(2) << "\n";
    art.files.push_back(path);
  }
  return art;
}

}  // namespace gpnls
