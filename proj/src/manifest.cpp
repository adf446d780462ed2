#include "raonet/manifest.hpp"

#include "raonet/version.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace raonet::manifest {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

void add_input(RunManifest& manifest, const std::string& path) {
    manifest.inputs.emplace_back(path, file_digest(path));
}

void add_convention(RunManifest& manifest, const std::string& key, const std::string& value) {
    manifest.conventions.emplace_back(key, value);
}

void write(const RunManifest& manifest, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["tool"] = "raonet";
    doc["version"] = RAONET_VERSION;

    std::string stamp = manifest.timestamp_utc;
    if (stamp.empty()) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        stamp = buf;
    }
    doc["created_utc"] = stamp;
    doc["command"] = manifest.command;

    doc["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [p, digest] : manifest.inputs)
        doc["inputs"].push_back({{"path", p}, {"fnv1a64", digest}});

    doc["conventions"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : manifest.conventions) doc["conventions"][k] = v;

    doc["outputs"] = manifest.outputs;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest '" + path + "'");
    out << doc.dump(2) << "\n";
}

std::string default_path(const std::string& output_path) {
    return output_path + ".manifest.json";
}

} // namespace raonet::manifest
