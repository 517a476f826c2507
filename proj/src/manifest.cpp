#include "rancca/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

#include "rancca/errors.hpp"
#include "sha256.hpp"

namespace rancca {

std::string render_manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json out;
    out["command"] = manifest.command;
    out["argv"] = manifest.argv;
    nlohmann::ordered_json params;
    for (const auto& [key, value] : manifest.parameters) params[key] = value;
    out["parameters"] = std::move(params);
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : manifest.inputs) {
        inputs.push_back({{"path", path}, {"sha256", digest}});
    }
    out["inputs"] = std::move(inputs);
    out["outputs"] = manifest.outputs;
    out["library_version"] = manifest.library_version;
    out["created_utc"] = manifest.created_utc;
    return out.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << render_manifest_json(manifest);
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sha256_hex(const std::string& bytes) {
    detail::Sha256 hash;
    hash.update(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
    return detail::to_hex(hash.digest());
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for hashing");
    }
    detail::Sha256 hash;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        hash.update(reinterpret_cast<const unsigned char*>(buf),
                    static_cast<std::size_t>(in.gcount()));
    }
    return detail::to_hex(hash.digest());
}

} // namespace rancca
