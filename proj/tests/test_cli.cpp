#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef ARCFRAME_CLI_PATH
#define ARCFRAME_CLI_PATH "arcframe"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_file = "/tmp/arcframe_cli_test_out.txt";
    std::string cmd = std::string(ARCFRAME_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return RunResult{WEXITSTATUS(rc), ss.str()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
}

}  // namespace

TEST_CASE("enum") {
    auto r = run("enum --n 2");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["count"] == 2);

    auto r0 = run("enum --n 0");
    CHECK(r0.exit_code == 0);
    CHECK(nlohmann::json::parse(r0.out)["count"] == 1);

    CHECK(run("enum").exit_code == 2);
}

TEST_CASE("multiply") {
    write_file("/tmp/arcframe_unit.json", R"([{"a": [2,1], "b": [2,1], "dots": "0"},
                                              {"a": [2,1], "b": [2,1], "dots": "1"}])");
    auto r = run("multiply /tmp/arcframe_unit.json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["product"]["terms"].size() == 1);
    CHECK(j["product"]["terms"][0]["coeff"] == 1);
    CHECK(j["product"]["terms"][0]["element"]["dots"] == "1");

    write_file("/tmp/arcframe_dots.json", R"([{"a": [2,1], "b": [2,1], "dots": "1"},
                                              {"a": [2,1], "b": [2,1], "dots": "1"}])");
    auto rz = run("multiply /tmp/arcframe_dots.json");
    CHECK(rz.exit_code == 0);
    CHECK(nlohmann::json::parse(rz.out)["product"]["terms"].empty());

    // ternary genus-one product
    write_file("/tmp/arcframe_tern.json", R"([{"a": [4,3,2,1], "b": [2,1,4,3], "dots": "0"},
                                              {"a": [2,1,4,3], "b": [4,3,2,1], "dots": "0"},
                                              {"a": [4,3,2,1], "b": [2,1,4,3], "dots": "0"}])");
    auto rt = run("multiply /tmp/arcframe_tern.json");
    CHECK(rt.exit_code == 0);
    auto jt = nlohmann::json::parse(rt.out);
    REQUIRE(jt["product"]["terms"].size() == 1);
    CHECK(jt["product"]["terms"][0]["coeff"] == 2);

    CHECK(run("multiply /tmp/does_not_exist.json").exit_code == 2);
    write_file("/tmp/arcframe_bad.json", R"([{"a": [1,2], "b": [2,1], "dots": "0"}])");
    CHECK(run("multiply /tmp/arcframe_bad.json").exit_code == 2);
}

TEST_CASE("verify subcommands") {
    auto r = run("verify phi --n 1 --bounds 2");
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["ok"] == true);

    auto rs = run("verify signed --weight 1,1");
    CHECK(rs.exit_code == 0);
    CHECK(nlohmann::json::parse(rs.out)["ok"] == true);

    auto rq = run("verify qgroup --n 2 --ring f2");
    CHECK(rq.exit_code == 0);
    CHECK(nlohmann::json::parse(rq.out)["ok"] == true);

    CHECK(run("verify signed").exit_code == 2);  // missing weight
    CHECK(run("verify qgroup --n 2 --ring z").exit_code == 2);
}

TEST_CASE("corrupted sign table is rejected through the cli") {
    auto table = run("sign-table --weight 1,1,1,1");
    REQUIRE(table.exit_code == 0);
    auto j = nlohmann::json::parse(table.out);
    REQUIRE(j["entries"].size() > 0);
    // flip the sign of one ternary multiplication entry
    bool flipped = false;
    for (auto& e : j["entries"]) {
        std::string col = e["col"];
        if (!flipped && std::count(col.begin(), col.end(), '*') == 1) {
            e["sign"] = -1;
            flipped = true;
        }
    }
    REQUIRE(flipped);
    write_file("/tmp/arcframe_signs.json", j.dump());
    auto r = run("verify signed --weight 1,1,1,1 --signs /tmp/arcframe_signs.json");
    CHECK(r.exit_code == 1);
    auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["ok"] == false);
    bool named = false;
    for (auto& f : rep["failures"]) named |= f.get<std::string>().find("associativity fails on triple") != std::string::npos;
    CHECK(named);

    // the untouched table passes
    auto clean = run("sign-table --weight 1,1,1,1 --out /tmp/arcframe_signs_ok.json");
    REQUIRE(clean.exit_code == 0);
    auto ok = run("verify signed --weight 1,1,1,1 --signs /tmp/arcframe_signs_ok.json");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("qgroup subcommands") {
    auto r = run("qgroup-check --n 2 --relations tau_sq_e,dot_slide_e1 --ring f2");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["ok"] == true);
    for (auto& v : j["verdicts"]) CHECK(v["holds"] == true);

    auto rs = run("qgroup-signs --n 2 --relations dot_slide_e1");
    CHECK(rs.exit_code == 0);
    auto js = nlohmann::json::parse(rs.out);
    CHECK(js["ok"] == true);
    for (auto& rec : js["results"]) CHECK(rec["signs"].is_array());
}

TEST_CASE("kh") {
    write_file("/tmp/arcframe_hopf.txt", "cup 1\ncup 1\nx 2 1\nx 2 2\ncap 1\ncap 1\n");
    auto r = run("kh /tmp/arcframe_hopf.txt");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["total_dimension"] == 4);
    CHECK(j["d_squared_zero"] == true);

    write_file("/tmp/arcframe_unknot.txt", "# one free circle\nloop\n");
    auto ru = run("kh /tmp/arcframe_unknot.txt");
    CHECK(nlohmann::json::parse(ru.out)["total_dimension"] == 2);

    write_file("/tmp/arcframe_open.txt", "cup 1\n");
    CHECK(run("kh /tmp/arcframe_open.txt").exit_code == 2);
}

TEST_CASE("reports are byte identical across runs") {
    for (std::string args : {std::string("enum --n 3"), std::string("verify phi --n 1 --bounds 2 --seed 7"),
                             std::string("qgroup-signs --n 2")}) {
        auto r1 = run(args);
        auto r2 = run(args);
        CHECK(r1.exit_code == r2.exit_code);
        CHECK(r1.out == r2.out);
    }
}
