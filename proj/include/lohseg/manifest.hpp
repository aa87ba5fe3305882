#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace lohseg {

struct InputDigest {
    std::string path;
    std::string fnv1a64; // 16 hex digits
};

// Written alongside every command's output: the resolved configuration plus
// input digests, enough to reproduce the run bit-exactly.
struct RunManifest {
    std::string command;
    std::string version;
    nlohmann::ordered_json options;
    std::vector<InputDigest> inputs;
    std::vector<std::string> outputs;
    double runtimeSeconds = 0.0;
};

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex_of_file(const std::string& path);

nlohmann::ordered_json manifest_to_json(const RunManifest& m);
void write_manifest(const std::string& path, const RunManifest& m);
nlohmann::ordered_json read_manifest(const std::string& path);

} // namespace lohseg
