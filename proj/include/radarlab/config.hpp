#ifndef RADARLAB_CONFIG_HPP
#define RADARLAB_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "radarlab/pipeline.hpp"

namespace radarlab {

/// Malformed or invalid configuration (usage-class error, CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A parsed tool configuration: the pipeline settings plus CLI-only extras.
struct ToolConfig {
    PipelineConfig pipeline;
    /// Input data file for the stage commands (fitdc, demod, analyze),
    /// resolved relative to the config file.
    std::optional<std::filesystem::path> input;
    std::uint64_t seed = 0;  ///< mirrored into pipeline.radar.rng_seed
};

/// Loads and validates a JSON configuration. The schema is fail-closed:
/// unknown fields anywhere are rejected, schema_version must be 1, and
/// radar.carrier_freq plus the motion block are required. External motion
/// traces referenced by the config are loaded here, relative to the config
/// file's directory.
ToolConfig load_config(const std::filesystem::path& path);

}  // namespace radarlab

#endif  // RADARLAB_CONFIG_HPP
