#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using contrastfix::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = {}) {
    const auto path = std::filesystem::temp_directory_path() / ("contrastfix_cli_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("check") {
    auto pass = run({"check", "#000", "#fff"});
    CHECK(pass.code == 0);
    CHECK(pass.out.find("21.00:1") != std::string::npos);
    CHECK(run({"check", "#ffff00", "#ffffff"}).code == 1);
    CHECK(run({"check", "#777777", "#ffffff", "--large"}).code == 0);
    CHECK(run({"check", "#777777", "#ffffff", "--level", "aaa", "--large"}).code == 1);
    const auto bad = run({"check", "#12345", "#fff"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("text color") != std::string::npos);
    CHECK(run({"check", "#000", "nope"}).err.find("background color") != std::string::npos);
}

TEST_CASE("fix") {
    const auto gray = run({"fix", "#777777", "#ffffff"});
    CHECK(gray.code == 0);
    CHECK(gray.out.rfind("fixed=#", 0) == 0);
    CHECK(gray.out.find("success=true") != std::string::npos);

    CHECK(run({"fix", "#ffff00", "#ffffff", "--mode", "0"}).code == 1);
    const auto yellow = run({"fix", "#ffff00", "#ffffff", "--mode", "2", "--format", "json"});
    CHECK(yellow.code == 0);
    const auto j = nlohmann::json::parse(yellow.out);
    CHECK(j["success"] == true);
    CHECK(j["ratio"].get<double>() >= 4.5);

    CHECK(run({"fix", "#777777", "#ffffff", "--mode", "3"}).code == 2);
    CHECK(run({"fix", "#777777"}).code == 2);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"fix", "--help"}).code == 0);
    CHECK(run({"bench", "--count", "0"}).code == 2);
    CHECK(run({"gen-dataset", "--count", "-3"}).code == 2);
}

TEST_CASE("batch skips bad rows and reports them") {
    const auto input = temp_file("batch.csv",
                                 "text_hex,bg_hex\n"
                                 "#777777,#ffffff\n"
                                 "#ggg,#ffffff\n"
                                 "#000000,#ffffff\n");
    const auto r = run({"batch", input.string()});
    CHECK(r.code == 0);
    CHECK(r.err.find(":3:") != std::string::npos);
    std::istringstream out(r.out);
    std::vector<std::string> lines;
    for (std::string line; std::getline(out, line);) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("line,index,category,text_hex,bg_hex,fixed_hex,success", 0) == 0);
    CHECK(lines[1].rfind("2,,,#777777,#ffffff,", 0) == 0);
    CHECK(lines[2].rfind("4,,,#000000,#ffffff,#000000,true", 0) == 0);
    CHECK(lines[3].find("rows=2") != std::string::npos);
    CHECK(lines[3].find("skipped=1") != std::string::npos);

    const auto json = run({"batch", input.string(), "--format", "json", "--mode", "0"});
    CHECK(json.code == 0);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j["results"].size() == 2);
    CHECK(j["warnings"][0]["line"] == 3);

    std::filesystem::remove(input);
}

TEST_CASE("batch file errors") {
    CHECK(run({"batch", "/nonexistent/input.csv"}).code == 2);
    const auto bad = temp_file("bad_header.csv", "text_hex,other\n#000,#fff\n");
    CHECK(run({"batch", bad.string()}).code == 2);
    std::filesystem::remove(bad);
}

TEST_CASE("gen-dataset and batch agree on formats") {
    const auto csv = temp_file("data.csv");
    CHECK(run({"gen-dataset", "--seed", "3", "--count", "25", "--output", csv.string()}).code == 0);
    std::ifstream in(csv);
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 26);

    const auto jsonl = temp_file("data.jsonl");
    CHECK(run({"gen-dataset", "--seed", "3", "--count", "25", "-o", jsonl.string()}).code == 0);
    const auto batch = run({"batch", jsonl.string(), "--mode", "1"});
    CHECK(batch.code == 0);
    CHECK(batch.err.empty());
    CHECK(batch.out.find("rows=25") != std::string::npos);

    const auto stdout_run = run({"gen-dataset", "--count", "3"});
    CHECK(stdout_run.out.rfind("index,category,text_hex,bg_hex,initial_ratio\n", 0) == 0);
    CHECK(nlohmann::json::parse(run({"gen-dataset", "--print-config"}).out).contains("hue_families"));

    std::filesystem::remove(csv);
    std::filesystem::remove(jsonl);
}

TEST_CASE("bench") {
    const auto r = run({"bench", "--count", "40", "--mode", "all", "--format", "json", "--threads", "2"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[1]["total_pairs"] == 40);

    const auto outcomes = temp_file("outcomes.csv");
    const auto text = run({"bench", "--count", "20", "--mode", "2", "--outcomes", outcomes.string()});
    CHECK(text.code == 0);
    CHECK(text.out.find("Reasonable") != std::string::npos);
    std::ifstream in(outcomes);
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 21);
    std::filesystem::remove(outcomes);
}
