#include "lohseg/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "lohseg/errors.hpp"

namespace lohseg {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a64_update(std::uint64_t h, const unsigned char* p,
                             std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

std::string to_hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf, 16);
}

} // namespace

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    return fnv1a64_update(kFnvOffset, static_cast<const unsigned char*>(data), len);
}

std::string fnv1a64_hex_of_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path + " for digesting");
    std::uint64_t h = kFnvOffset;
    char buf[65536];
    while (in) {
        in.read(buf, sizeof buf);
        h = fnv1a64_update(h, reinterpret_cast<const unsigned char*>(buf),
                           static_cast<std::size_t>(in.gcount()));
    }
    return to_hex16(h);
}

nlohmann::ordered_json manifest_to_json(const RunManifest& m) {
    nlohmann::ordered_json doc;
    doc["command"] = m.command;
    doc["version"] = m.version;
    doc["options"] = m.options;
    doc["inputs"] = nlohmann::ordered_json::array();
    for (const InputDigest& d : m.inputs)
        doc["inputs"].push_back({{"path", d.path}, {"fnv1a64", d.fnv1a64}});
    doc["outputs"] = m.outputs;
    doc["runtimeSeconds"] = m.runtimeSeconds;
    return doc;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out << manifest_to_json(m).dump(2) << "\n";
    if (!out) throw ValidationError("failed writing " + path);
}

nlohmann::ordered_json read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path + " for reading");
    try {
        return nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

} // namespace lohseg
