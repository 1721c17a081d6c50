#ifndef RADARLAB_MANIFEST_HPP
#define RADARLAB_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace radarlab {

/// Record of one CLI run. Written to <output_dir>/manifest.json as the last
/// file of the run, so a complete manifest implies a complete run. Emitted
/// file paths are stored relative to the output directory; no timestamps or
/// other run-varying data are recorded, keeping reruns byte-identical.
struct RunManifest {
    std::string config_path;
    std::string output_dir;
    std::uint64_t seed = 0;
    /// (relative path, role) pairs; role is one of iq, truth, if,
    /// iq_centered, displacement, spectrum, summary.
    std::vector<std::pair<std::string, std::string>> emitted_files;
};

void write_manifest(const std::filesystem::path& output_dir,
                    const RunManifest& manifest);

}  // namespace radarlab

#endif  // RADARLAB_MANIFEST_HPP
