#include "mtsad/manifest.hpp"

#include <json.hpp>

namespace mtsad {

std::string run_manifest::to_json_string() const {
    nlohmann::ordered_json doc;
    doc["tool"] = tool;
    doc["version"] = version;
    doc["command"] = command;
    doc["input"] = {{"path", input_path}, {"fnv1a64", input_digest}};
    doc["seed"] = seed;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config) {
        cfg[key] = value;
    }
    doc["config"] = cfg;
    doc["outputs"] = outputs;
    doc["duration_seconds"] = duration_seconds;
    return doc.dump(2) + "\n";
}

} // namespace mtsad
