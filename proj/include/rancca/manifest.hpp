#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace rancca {

/// Record of one CLI run: enough to reproduce the outputs bit-exactly.
/// Written as manifest.json next to every output set.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::pair<std::string, std::string>> parameters; // key, value
    std::vector<std::pair<std::string, std::string>> inputs;     // path, sha256
    std::vector<std::string> outputs;
    std::string library_version;
    std::string created_utc; // ISO 8601
};

std::string render_manifest_json(const RunManifest& manifest);

/// Serialize and write the manifest. Throws IoError.
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

/// Current time as an ISO 8601 UTC string.
std::string utc_timestamp();

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

/// SHA-256 of a file's exact bytes. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

} // namespace rancca
