#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace relcluster {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "relcluster-report/1";

std::string fnv1a64_hex(const std::string& bytes);

struct QueryResult {
    std::string kind;
    bool ok = true;
    std::string error;
    ordered_json data;          // kind-specific payload
    double elapsed_ms = 0;      // emitted only when timings are requested
};

// Deterministic run report: identical input, seed and version produce
// byte-identical JSON (timings are opt-in for this reason).
struct Report {
    std::string input_digest;
    std::uint64_t seed = 0;
    std::string field_of_definition = "Q";
    bool heuristic_field = false; // true under a prime-field override
    ordered_json assumptions = ordered_json::object();
    std::vector<QueryResult> results;
    bool include_timings = false;

    bool any_error() const;
    ordered_json to_json() const;
    std::string to_text() const;
};

} // namespace relcluster
