#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run dvf_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dvf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DVF_TEST_DATA) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("solve fixture") {
    const auto r = dvf_run({"solve", "-p", "7", "-N", "4", "x*x - 2", "--start", "3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "root 2166 "));
    CHECK(contains(r.out, "steps 3\n"));
    CHECK(contains(r.out, "residual_val inf"));
}

TEST_CASE("eval fixture") {
    const auto r = dvf_run({"eval", "-p", "7", "-N", "4", "--series", data("geo.series"), "geo(x)", "--at", "7"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "value 400 "));
    const auto named =
        dvf_run({"eval", "-p", "7", "-N", "4", "--series", "g=" + data("geo.series"), "g(x)*p", "--at", "7"});
    CHECK(named.code == 0);
    CHECK(contains(named.out, "value 399 "));
}

TEST_CASE("lt and ac fixtures") {
    CHECK(dvf_run({"lt", "-p", "7", "-m", "1", "98"}).out == "lt[1](2; 2)\n");
    CHECK(dvf_run({"lt", "-p", "7", "--index", "7", "98"}).out == "lt[1](2; 2)\n");
    CHECK(dvf_run({"lt", "-p", "7", "-m", "1", "0"}).out == "0[1]\n");
    CHECK(dvf_run({"ac", "-p", "7", "-m", "0", "98"}).out == "res[0](2)\n");
}

TEST_CASE("json report schema") {
    const auto r = dvf_run({"solve", "-p", "7", "-N", "4", "x*x - 2", "--start", "3", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"command", "config", "inputs", "outputs", "steps", "timings_ms"}) CHECK(j.contains(key));
    CHECK(j["command"] == "solve");
    CHECK(j["config"]["newton"] == false);
    CHECK(j["outputs"]["root"]["integer"] == "2166");
    CHECK(j["outputs"]["root"]["digits"] == "[3, 4, 0, 2] base 7");
    CHECK(j["steps"].size() == 3);
    CHECK(j["steps"][1]["a"]["integer"] == "10");

    const auto l = nlohmann::json::parse(dvf_run({"lt", "-p", "7", "-m", "1", "98", "--json"}).out);
    CHECK(l["outputs"]["lt"] == "lt[1](2; 2)");
    CHECK(l["outputs"]["gamma"] == "2");
}

TEST_CASE("batch solve") {
    const auto ordered = dvf_run(
        {"solve", "-p", "7", "-N", "4", "x*x - 2", "--start", "3", "--start", "4", "--start", "1", "--ordered"});
    CHECK(ordered.code == 1);  // start 1 is rejected
    const auto first = ordered.out.find("start 3\n");
    const auto second = ordered.out.find("start 4\n");
    const auto third = ordered.out.find("start 1\n");
    CHECK(first < second);
    CHECK(second < third);
    CHECK(contains(ordered.out, "root 235 "));  // -2166 mod 2401
    CHECK(contains(ordered.out, "error ConfigRejected"));

    const auto loose = dvf_run({"solve", "-p", "7", "-N", "4", "x*x - 2", "--start", "3", "--start", "4"});
    CHECK(loose.code == 0);
    CHECK(contains(loose.out, "root 2166 "));
    CHECK(contains(loose.out, "root 235 "));
}

TEST_CASE("residue extensions from the command line") {
    const std::vector<std::string> base{"solve", "-p", "2", "-k", "2", "-N", "4", "s(x) - x - 1", "--start", "{0,1}"};
    CHECK(dvf_run(base).code == 1);
    auto args = base;
    args.insert(args.end(), {"--extend-max", "16"});
    const auto r = dvf_run(args);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "ring W(GF(2^16;"));
    CHECK(contains(r.out, "residual_val inf"));
}

TEST_CASE("weierstrass commands") {
    const auto d = dvf_run({"wdiv", "-p", "7", "-N", "4", "--series", data("g.series"), "--series", data("f.series"),
                            "g", "f", "--var", "X0"});
    CHECK(d.code == 0);
    CHECK(contains(d.out, "degree 2\n# q\nseries 1 0 1\n"));
    const auto p = dvf_run({"wprep", "-p", "7", "-N", "4", "--series", data("f.series"), "f", "--var", "X0"});
    CHECK(p.code == 0);
    CHECK(contains(p.out, "# P\nseries 1 0 1\n"));
    CHECK(contains(p.out, "2 | : 1\n"));
}

TEST_CASE("exit codes") {
    // usage and input errors
    CHECK(dvf_run({}).code == 2);
    CHECK(dvf_run({"frobnicate"}).code == 2);
    CHECK(dvf_run({"solve", "-p", "7", "x"}).code == 2);
    const auto syntax = dvf_run({"solve", "-p", "7", "x + * 3", "--start", "1"});
    CHECK(syntax.code == 2);
    CHECK(contains(syntax.err, "column 5"));
    CHECK(dvf_run({"solve", "-p", "7", "x", "--start", "1.5"}).code == 2);
    CHECK(dvf_run({"solve", "-p", "6", "x", "--start", "1"}).code == 2);
    CHECK(dvf_run({"lt", "-p", "7", "-k", "2", "--modulus", "6,0,1", "3"}).code == 2);
    CHECK(dvf_run({"eval", "-p", "7", "nope(x)", "--at", "7"}).code == 2);
    CHECK(dvf_run({"eval", "-p", "7", "--series", data("missing.series"), "x", "--at", "7"}).code == 2);
    CHECK(dvf_run({"eval", "-p", "7", "--series", data("geo.series"), "geo(x, x)", "--at", "7"}).code == 2);
    CHECK(dvf_run({"wprep", "-p", "7", "--series", data("f.series"), "f", "--var", "Z0"}).code == 2);
    CHECK(dvf_run({"lt", "-p", "7"}).code == 2);
    CHECK(dvf_run({"--help"}).code == 0);

    // domain errors
    CHECK(dvf_run({"solve", "-p", "7", "-N", "4", "x*x - 2", "--start", "1"}).code == 1);
    CHECK(dvf_run({"solve", "-p", "7", "-N", "4", "7", "--start", "1"}).code == 1);  // zero gradient
    CHECK(dvf_run({"lt", "-p", "7", "-N", "4", "-m", "2", "49"}).code == 1);
    CHECK(dvf_run({"eval", "-p", "7", "-N", "4", "Q(1, x)", "--at", "7"}).code == 1);
    CHECK(dvf_run({"eval", "-p", "7", "-N", "8", "--series", data("geo.series"), "geo(x)", "--at", "7"}).code == 1);
    CHECK(dvf_run({"wprep", "-p", "7", "-N", "4", "--series", data("h.series"), "h", "--var", "X0"}).code == 1);

    const auto j = dvf_run({"solve", "-p", "7", "x + * 3", "--start", "1", "--json"});
    const auto report = nlohmann::json::parse(j.out);
    CHECK(report["error"]["name"] == "SyntaxError");
    CHECK(report["error"]["column"] == 5);
}

TEST_CASE("selftest passes") {
    const auto r = dvf_run({"selftest"});
    CHECK(r.code == 0);
    CHECK(!contains(r.out, "FAIL"));
}
