#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ifra {

std::string_view tool_version();

// Hex SHA-256 of a file's bytes. Throws DataError when unreadable.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

struct ManifestInput {
    std::string path;
    std::string sha256;
};

// Written next to every CLI output. Contains no timestamps or host data, so
// identical runs produce identical manifests.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<ManifestInput> inputs;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;

    void add_input(const std::filesystem::path& path);
    nlohmann::ordered_json to_json() const;
};

}  // namespace ifra
