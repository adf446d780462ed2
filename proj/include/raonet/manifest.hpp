#pragma once

#include <string>
#include <utility>
#include <vector>

namespace raonet::manifest {

// Run record written alongside every numeric output: tool version, input
// digests, and every convention flag that affects the numbers.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // (path, digest)
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, std::string>> conventions;
    std::string timestamp_utc; // filled at write time when empty
};

std::string file_digest(const std::string& path); // fnv1a-64, hex

void add_input(RunManifest& manifest, const std::string& path);
void add_convention(RunManifest& manifest, const std::string& key, const std::string& value);

void write(const RunManifest& manifest, const std::string& path);

// Default manifest location for a run whose first output is `output_path`.
std::string default_path(const std::string& output_path);

} // namespace raonet::manifest
