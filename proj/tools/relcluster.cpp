#include "relcluster/repro.hpp"
#include "relcluster/specdoc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace relcluster;

namespace {

int cmd_run(const std::string& path, const std::string& out, std::uint64_t seed,
            const std::string& field, long max_degree, long max_pairs, bool text, bool timings)
{
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open spec file '" << path << "'\n";
        return 1;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    ExecOptions opts;
    opts.seed = seed;
    opts.gb.max_degree = max_degree;
    opts.gb.max_pairs = max_pairs;
    opts.timings = timings;
    if (field == "Q") {
        // default field
    } else if (field.rfind("Fp:", 0) == 0) {
        try {
            opts.field_override = CoefficientField::prime(std::stol(field.substr(3)));
        } catch (const std::exception& e) {
            std::cerr << "error: bad --field: " << e.what() << "\n";
            return 1;
        }
    } else {
        std::cerr << "error: --field must be Q or Fp:<prime>\n";
        return 1;
    }

    Report rep;
    try {
        rep = run_specdoc(buf.str(), opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::string rendered = text ? rep.to_text() : rep.to_json().dump(2) + "\n";
    if (out.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream os(out);
        if (!os) {
            std::cerr << "error: cannot write '" << out << "'\n";
            return 1;
        }
        os << rendered;
    }
    return rep.any_error() ? 2 : 0;
}

int cmd_repro(const std::string& id, bool json, std::uint64_t seed)
{
    int n = 0;
    if (id == "ex1")
        n = 1;
    else if (id == "ex2")
        n = 2;
    else if (id == "ex3")
        n = 3;
    else {
        std::cerr << "error: repro id must be ex1, ex2 or ex3\n";
        return 1;
    }
    auto checks = repro_example(n, seed);
    if (json)
        std::cout << repro_to_json(n, checks).dump(2) << "\n";
    else
        std::cout << repro_to_text(n, checks);
    for (const auto& c : checks)
        if (!c.pass)
            return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"relcluster: exact blow-up, section and cluster computations"};
    app.require_subcommand(1);

    std::string spec_path, out_path, field = "Q";
    std::uint64_t seed = 20240101;
    long max_degree = 60, max_pairs = 200000;
    bool as_text = false, as_json = false, timings = false;

    auto* run = app.add_subcommand("run", "execute a spec file");
    run->add_option("spec", spec_path, "spec file path")->required();
    run->add_option("--out", out_path, "write the report here instead of stdout");
    run->add_option("--seed", seed, "sampling seed");
    run->add_option("--field", field, "Q (default) or Fp:<prime> override");
    run->add_option("--max-degree", max_degree, "S-pair degree cap");
    run->add_option("--max-pairs", max_pairs, "critical-pair cap");
    run->add_flag("--text", as_text, "human-readable output");
    run->add_flag("--json", as_json, "JSON output (default)");
    run->add_flag("--timings", timings, "include wall-clock timings (breaks byte-identical "
                                        "reports)");

    std::string repro_id;
    bool repro_json = false;
    auto* rp = app.add_subcommand("repro", "run a built-in reproduction suite");
    rp->add_option("id", repro_id, "ex1 | ex2 | ex3")->required();
    rp->add_flag("--json", repro_json, "JSON output");
    rp->add_option("--seed", seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(spec_path, out_path, seed, field, max_degree, max_pairs,
                       as_text && !as_json, timings);
    return cmd_repro(repro_id, repro_json, seed);
}
