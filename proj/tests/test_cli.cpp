#include <doctest.h>

#include "relcluster/repro.hpp"
#include "relcluster/specdoc.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace relcluster;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    out << text;
}

struct RunOutcome {
    int exit_code;
    std::string stdout_text;
};

RunOutcome run_cli(const std::string& args)
{
    std::string outfile = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                          "/relcluster_cli_out.txt";
    std::string cmd = std::string(RELCLUSTER_BIN) + " " + args + " > " + outfile + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunOutcome out;
    out.exit_code = WEXITSTATUS(rc);
    out.stdout_text = read_file(outfile);
    return out;
}

std::string spec_path(const std::string& name)
{
    return std::string(RELCLUSTER_SPEC_DIR) + "/" + name;
}

} // namespace

TEST_CASE("spec documents round-trip through the serializer")
{
    for (const char* name : {"ex1.rcs", "ex2.rcs", "ex3.rcs"}) {
        std::string text = read_file(spec_path(name));
        SpecDocument doc = parse_specdoc(text);
        std::string ser = serialize_specdoc(doc);
        SpecDocument doc2 = parse_specdoc(ser);
        REQUIRE(doc.blocks.size() == doc2.blocks.size());
        for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
            CHECK(doc.blocks[i].keyword == doc2.blocks[i].keyword);
            CHECK(doc.blocks[i].name == doc2.blocks[i].name);
            CHECK(doc.blocks[i].fields == doc2.blocks[i].fields);
        }
        // serialization is a fixpoint
        CHECK(serialize_specdoc(doc2) == ser);
    }
}

TEST_CASE("spec parser reports line-tagged errors")
{
    CHECK_THROWS_AS(parse_specdoc("ring R\n  field Q\n"), SpecError); // missing end
    CHECK_THROWS_AS(parse_specdoc("bogus X\nend\n"), SpecError);
    try {
        parse_specdoc("ring R\n  field Q\n  block affine x\nend\nbogus Y\nend\n");
        CHECK(false);
    } catch (const SpecError& e) {
        CHECK(e.line_number == 5);
    }
}

TEST_CASE("library-level run: empty query list and embedded query errors")
{
    Report rep = run_specdoc("ring R\n  field Q\n  block affine x y\nend\n", ExecOptions{});
    CHECK(rep.results.empty());
    CHECK_FALSE(rep.any_error());

    // resource-capped query is embedded, not fatal
    ExecOptions tiny;
    tiny.gb.max_degree = 1;
    Report rep2 = run_specdoc("ring R\n  field Q\n  block affine x y\nend\n"
                              "ideal I\n  ring R\n  gen x^2 - y\n  gen x*y - 1\nend\n"
                              "query gb\n  ideal I\nend\n",
                              tiny);
    REQUIRE(rep2.results.size() == 1);
    CHECK(rep2.any_error());

    // undeclared names are validation failures, not query errors
    CHECK_THROWS_AS(run_specdoc("ring R\n  field Q\n  block affine x y\nend\n"
                                "query gb\n  ideal nosuch\nend\n",
                                ExecOptions{}),
                    SpecError);
}

TEST_CASE("prime-field override is labelled")
{
    ExecOptions opts;
    opts.field_override = CoefficientField::prime(7);
    Report rep = run_specdoc("ring R\n  field Q\n  block affine x y\nend\n"
                             "ideal I\n  ring R\n  gen 7*x + y\nend\n"
                             "query gb\n  ideal I\nend\n",
                             opts);
    CHECK(rep.heuristic_field);
    CHECK(rep.field_of_definition == "F7");
    // 7x + y reduces to y mod 7
    CHECK(rep.to_json()["results"][0]["result"]["basis"][0] == "y");
}

TEST_CASE("cli exit codes: success, query error, parse error")
{
    std::string tmp = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
    // success
    CHECK(run_cli("run " + spec_path("ex1.rcs")).exit_code == 0);
    // query error: resource limits embedded, exit 2
    write_file(tmp + "/qerr.rcs",
               "ring R\n  field Q\n  block affine x y\nend\n"
               "ideal I\n  ring R\n  gen x^2 - y\n  gen x*y - 1\nend\n"
               "query gb\n  ideal I\nend\n");
    CHECK(run_cli("run " + tmp + "/qerr.rcs --max-degree 1").exit_code == 2);
    // parse error: exit 1
    write_file(tmp + "/perr.rcs", "ring R\n  field Q\n");
    CHECK(run_cli("run " + tmp + "/perr.rcs").exit_code == 1);
    // undeclared section referenced by a query: exit 1
    write_file(tmp + "/undecl.rcs",
               "ring R\n  field Q\n  block affine x y\nend\n"
               "query gb\n  ideal nosuch\nend\n");
    CHECK(run_cli("run " + tmp + "/undecl.rcs").exit_code == 1);
    // missing file: exit 1
    CHECK(run_cli("run " + tmp + "/does_not_exist.rcs").exit_code == 1);
}

TEST_CASE("report determinism: byte-identical JSON across runs")
{
    for (const char* name : {"ex1.rcs", "ex2.rcs"}) {
        auto a = run_cli("run " + spec_path(name) + " --seed 42");
        auto b = run_cli("run " + spec_path(name) + " --seed 42");
        CHECK(a.exit_code == 0);
        CHECK(a.stdout_text == b.stdout_text);
        CHECK(!a.stdout_text.empty());
    }
    // text rendering works and is also deterministic
    auto t1 = run_cli("run " + spec_path("ex1.rcs") + " --text");
    auto t2 = run_cli("run " + spec_path("ex1.rcs") + " --text");
    CHECK(t1.exit_code == 0);
    CHECK(t1.stdout_text == t2.stdout_text);
}

TEST_CASE("generic image query")
{
    Report rep = run_specdoc("ring RB\n  field Q\n  block proj u v\nend\n"
                             "ring RT\n  field Q\n  block proj x0 x1 x2\nend\n"
                             "ambient AB\n  ring RB\nend\n"
                             "ambient AT\n  ring RT\nend\n"
                             "subscheme B\n  ambient AB\nend\n"
                             "query image\n  source B\n  target AT\n  map u ; v ; u\nend\n",
                             ExecOptions{});
    REQUIRE(rep.results.size() == 1);
    REQUIRE(rep.results[0].ok);
    auto j = rep.results[0].data;
    CHECK(j["dimension"] == 1);
    bool found = false;
    for (const auto& g : j["generators"])
        if (g == "x0 - x2")
            found = true;
    CHECK(found);
}

TEST_CASE("repro subcommand smoke test")
{
    auto r = run_cli("repro ex1 --json");
    CHECK(r.exit_code == 0);
    auto j = ordered_json::parse(r.stdout_text);
    CHECK(j["all_pass"] == true);
    CHECK(j["example"] == "ex1");
    CHECK(run_cli("repro nope").exit_code == 1);
}
