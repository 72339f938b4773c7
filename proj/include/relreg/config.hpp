#pragma once

#include <filesystem>
#include <string>

#include "relreg/bench.hpp"

namespace relreg {

/// Parses the YAML run configuration (sections: environment, planner, bench).
/// Unknown keys are rejected. Relative raster paths resolve against base_dir.
/// Throws ConfigError.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Parses a document holding a single `environment:` section.
EnvironmentConfig parse_environment_document(const std::string& text,
                                             const std::filesystem::path& base_dir = {});

}  // namespace relreg
