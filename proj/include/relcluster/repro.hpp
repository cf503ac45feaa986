#pragma once

#include "relcluster/report.hpp"

#include <vector>

namespace relcluster {

struct ReproCheck {
    std::string name;
    bool pass = false;
    std::string detail;
    double elapsed_ms = 0;
};

// Built-in reproductions of the three worked families (Hirzebruch exceptional
// surfaces over a curve, the product plane family, the pencil of planes with
// its small resolution). Deterministic under the given seed.
std::vector<ReproCheck> repro_example(int id, std::uint64_t seed = 20240101);

ordered_json repro_to_json(int id, const std::vector<ReproCheck>& checks);
std::string repro_to_text(int id, const std::vector<ReproCheck>& checks);

} // namespace relcluster
