#include "radarlab/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "radarlab/version.hpp"

namespace radarlab {

void write_manifest(const std::filesystem::path& output_dir,
                    const RunManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["tool_version"] = kToolVersion;
    doc["config_path"] = manifest.config_path;
    doc["output_dir"] = manifest.output_dir;
    doc["seed"] = manifest.seed;
    doc["emitted_files"] = nlohmann::ordered_json::array();
    for (const auto& [path, role] : manifest.emitted_files)
        doc["emitted_files"].push_back({{"path", path}, {"role", role}});

    const auto path = output_dir / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace radarlab
