#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"

using saito::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "saito");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SAITO_DATA_DIR) + "/" + name; }

nlohmann::json machine(std::vector<std::string> args) {
    args.push_back("--mode");
    args.push_back("machine");
    auto r = invoke(args);
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = std::string(SAITO_BINARY_DIR) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("cli milnor and trivialize on E7") {
    auto doc = machine({"milnor", "--spec", data("e7.json")});
    CHECK(doc["schema_version"] == saito::cli::kSchemaVersion);
    CHECK(doc["mu"] == 7);
    CHECK(doc["basis"] == nlohmann::json({"1", "x1", "x1^2", "x2", "x1*x2", "x1^2*x2", "x2^2"}));
    auto t = machine({"trivialize", "--spec", data("e7.json"), "--input", "x1^3"});
    CHECK(t["image"] == "x1^3 + (2/9)*z");
    auto r = machine({"reduce", "--spec", data("e7.json"), "--input", "x1^4"});
    CHECK(r["class"] == "-(5/9)*z*[x1]");
    auto d = machine({"decompose", "--spec", data("e7.json"), "--input", "x2^3"});
    CHECK(d["recomposition_ok"] == true);
}

TEST_CASE("cli potential and check") {
    auto p = machine({"potential", "--spec", data("a2.json")});
    CHECK(p["potential"] == "-(1/24)*t2^4 + (1/2)*t1^2*t2");
    CHECK(p["wdvv"]["ok"] == true);
    auto c = machine({"check", "--spec", data("e7.json")});
    CHECK(c["all_passed"] == true);
}

TEST_CASE("cli rmatrix on A2") {
    auto doc = machine({"rmatrix", "--spec", data("a2.json"), "--order", "2"});
    CHECK(doc["r_order"] == 2);
    CHECK(doc["dense_oracle"]["verification"]["all_passed"] == true);
    CHECK(doc["dense_oracle"]["R"][1] == nlohmann::json::parse(R"([["0","7/48"],["5/48","0"]])"));
    // The recursion's R_1 commutes with B_0; see the README.
    CHECK(doc["recursion"]["verification"]["dubrovin"]["first_failure"] == 0);
    CHECK(doc["recursion_matches_oracle"] == false);
}

TEST_CASE("cli exit codes") {
    auto bad_len = write_temp("bad_len.json", R"({"variables":["x"],"weights":["1/3","1/2"],"f":"x^3"})");
    auto r = invoke({"milnor", "--spec", bad_len});
    CHECK(r.code == 1);
    CHECK(r.err.find("weights") != std::string::npos);
    auto bad_field = write_temp("bad_field.json", R"({"variables":["x"],"weights":["1/3"],"f":"x^3","order":{}})");
    CHECK(invoke({"milnor", "--spec", bad_field}).code == 1);
    auto bad_weight = write_temp("bad_weight.json", R"({"variables":["x"],"weights":["1/0"],"f":"x^3"})");
    r = invoke({"milnor", "--spec", bad_weight});
    CHECK(r.code == 1);
    CHECK(r.err.find("weights[0]") != std::string::npos);
    CHECK(invoke({"milnor", "--spec", data("missing.json")}).code == 1);
    CHECK(invoke({"rmatrix", "--spec", data("e7.json")}).code == 1);
    CHECK(invoke({"rmatrix", "--spec", data("a2.json"), "--point", "s9=1"}).code == 1);

    auto nonqh = write_temp("nonqh.json", R"({"variables":["x"],"weights":["1/3"],"f":"x^3 + x^2"})");
    r = invoke({"milnor", "--spec", nonqh});
    CHECK(r.code == 2);
    CHECK(r.err.find("not quasihomogeneous") != std::string::npos);
    r = invoke({"rmatrix", "--spec", data("a2.json"), "--point", "s1=0,s2=0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("not semisimple at s0") != std::string::npos);
    auto unverified = write_temp("unverified.json", R"({"variables":["x1","x2","x3"],"weights":["1/3","1/3","1/3"],
        "f":"x1^3 + x2^3 + x3^3","basis":["1","x1","x2","x3","x1*x2","x1*x3","x2*x3","x1*x2*x3"],
        "good_basis":["1","x1","x2","x3","x1*x2 + z","x1*x3","x2*x3","x1*x2*x3"]})");
    CHECK(invoke({"milnor", "--spec", unverified}).code == 2);

    CHECK(invoke({"reduce", "--spec", data("e7.json"), "--input", "s1*x1^4", "--order", "0"}).code == 3);
}

TEST_CASE("cli output is deterministic") {
    auto a = invoke({"check", "--spec", data("a2.json")});
    auto b = invoke({"check", "--spec", data("a2.json")});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("all_passed") != std::string::npos);
}
