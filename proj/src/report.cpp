#include "relcluster/report.hpp"

#include <sstream>

namespace relcluster {

std::string fnv1a64_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i)
        os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

bool Report::any_error() const
{
    for (const auto& r : results)
        if (!r.ok)
            return true;
    return false;
}

ordered_json Report::to_json() const
{
    ordered_json j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kToolVersion;
    j["input_digest"] = input_digest;
    j["seed"] = seed;
    j["field_of_definition"] = field_of_definition;
    if (heuristic_field)
        j["field_note"] = "heuristic over F_p";
    j["assumptions"] = assumptions;
    ordered_json rs = ordered_json::array();
    for (const auto& r : results) {
        ordered_json e;
        e["query"] = r.kind;
        e["status"] = r.ok ? "ok" : "error";
        if (!r.ok)
            e["error"] = r.error;
        else
            e["result"] = r.data;
        if (include_timings)
            e["elapsed_ms"] = r.elapsed_ms;
        rs.push_back(std::move(e));
    }
    j["results"] = std::move(rs);
    return j;
}

std::string Report::to_text() const
{
    std::ostringstream os;
    os << "relcluster " << kToolVersion << "  digest=" << input_digest << "  seed=" << seed
       << "  field=" << field_of_definition << (heuristic_field ? " (heuristic)" : "") << "\n";
    if (!assumptions.empty())
        os << "assumptions: " << assumptions.dump() << "\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        os << "[" << i + 1 << "] " << r.kind << ": " << (r.ok ? "ok" : "ERROR");
        if (include_timings)
            os << " (" << r.elapsed_ms << " ms)";
        os << "\n";
        if (!r.ok)
            os << "    " << r.error << "\n";
        else
            os << "    " << r.data.dump() << "\n";
    }
    return os.str();
}

} // namespace relcluster
