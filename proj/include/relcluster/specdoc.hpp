#pragma once

#include "relcluster/cluster.hpp"
#include "relcluster/report.hpp"

namespace relcluster {

struct SpecError : std::runtime_error {
    SpecError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line)
    {
    }
    std::size_t line_number;
};

// Line-oriented declarative input: blocks opened by a keyword line
// (ring/ambient/ideal/subscheme/family/section/query) and closed by `end`,
// with one `key value...` field per line. The grammar is documented in the
// README. Parsing canonicalizes polynomial payloads, so parse -> serialize
// -> parse is a fixpoint.
struct SpecDocument {
    struct Block {
        std::string keyword;                                     // e.g. "ring", "query"
        std::string name;                                        // second token (query kind for queries)
        std::vector<std::pair<std::string, std::string>> fields; // ordered key/payload lines
        std::size_t line = 0;                                    // where the block opened
    };
    std::vector<Block> blocks;
};

SpecDocument parse_specdoc(const std::string& text);
std::string serialize_specdoc(const SpecDocument& doc);

struct ExecOptions {
    std::uint64_t seed = 20240101;
    GBOptions gb;
    bool timings = false;
    // Optional coefficient-field override for every declared ring.
    std::optional<CoefficientField> field_override;
};

// Parse and execute; SpecError (or IO problems) surface to the caller,
// per-query failures are embedded in the report.
Report run_specdoc(const std::string& text, const ExecOptions& opts);

} // namespace relcluster
