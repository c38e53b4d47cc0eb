#ifndef MTSAD_MANIFEST_HPP
#define MTSAD_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mtsad {

/// Everything needed to reproduce one CLI run: the tool version, the exact
/// configuration, the input file and its content digest, the seed, and the
/// files that were written.
struct run_manifest {
    std::string tool;
    std::string version;
    std::string command;
    std::string input_path;
    std::string input_digest;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config; // key, value
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;

    std::string to_json_string() const;
};

} // namespace mtsad

#endif
