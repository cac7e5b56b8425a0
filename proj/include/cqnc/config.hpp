#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cqnc/sweep.hpp"

// JSON configuration ingestion.  Frequencies are given in ordinary Hz in the
// file and converted to angular rad/s on load; see README for the schema.

namespace cqnc {

// Structured configuration error carrying the dotted field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Builds a fully resolved sweep specification from a parsed document.
SweepSpec config_from_json(const nlohmann::json& doc);

// Reads and parses the file, then delegates to config_from_json.  Parse errors
// and invariant violations surface as ConfigError with the offending field.
SweepSpec load_config(const std::filesystem::path& path);

// Applies a dotted-path override of the form "section.key=value" to the raw
// document before resolution (value parsed as JSON, falling back to string).
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Serializes the resolved spec back to the schema layout (used for metadata
// echoes and round-trip checks).
nlohmann::ordered_json spec_to_json(const SweepSpec& spec);

}  // namespace cqnc
