#pragma once

#include "gpnls/config.hpp"
#include "gpnls/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gpnls {

// Initial scattering data from the configured profile. Scalar profiles fill
// every block entry; file profiles list the full block row-major.
ScatteringField build_initial_field(const RunConfig& config);

struct RunArtifacts {
  std::vector<std::string> files;
  nlohmann::json summary;
};

// Executes the configured mode, writing one t<time>.csv per checkpoint
// (solution-producing modes) and one summary.json per run. Propagates
// NearSingularOperator with its x/t context; config problems surface as
// ConfigError.
RunArtifacts run(const RunConfig& config);

}  // namespace gpnls
