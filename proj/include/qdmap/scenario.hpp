// scenario.hpp - JSON scenario files: parsing, validation with JSON-pointer
// diagnostics, and the preset registry.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdmap/evolution.hpp"
#include "qdmap/markovianity.hpp"

namespace qdmap {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct Diagnostic {
    std::string path; // JSON pointer into the scenario document
    std::string message;
};

struct InitialState {
    std::string label;
    ComplexMatrix matrix;
};

struct Scenario {
    std::string name;
    std::size_t dim = 2;
    std::string generator_kind; // "preset" or "gksl"
    std::string preset;         // when generator_kind == "preset"
    std::function<Generator()> build; // deferred: validation never runs numerics
    TimeGrid grid{1.0, 1};
    std::vector<InitialState> initial_states;
    std::vector<std::string> analyses;
    std::uint64_t seed = 42;
    std::size_t blp_pairs = 100;
    MarkovTolerances tolerances;
    nlohmann::json source; // the document as given
};

struct ParseResult {
    std::optional<Scenario> scenario;
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept { return scenario.has_value() && diagnostics.empty(); }
};

ParseResult parse_scenario(const nlohmann::json& doc);
ParseResult load_scenario(const std::string& path);

// Parses a rate descriptor such as {"family": "exponential", "c": 1, "r": 0.5}.
std::optional<RateFunction> parse_rate(const nlohmann::json& j, const std::string& path,
                                       std::vector<Diagnostic>& diags);
nlohmann::json rate_to_json(const RateFunction& r);

struct PresetInfo {
    std::string name;
    std::string description;
    std::string params; // human-readable parameter list with defaults
};

const std::vector<PresetInfo>& preset_table();
bool preset_exists(const std::string& name);

const std::vector<std::string>& known_analyses();

} // namespace qdmap
