#include "cli.hpp"

#include <graphcrop/dataset.hpp>
#include <graphcrop/tu_format.hpp>

#include "support/oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace graphcrop;
using oracle::TempDir;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// One five-node path plus a triangle, labeled 0 and 1.
void write_fixture(const std::filesystem::path &dir) {
    write_tu(make_dataset("PATH", {oracle::path(5).with_graph_label(0), oracle::complete(3).with_graph_label(1)}), dir);
}

} // namespace

TEST_CASE("cli stats") {
    TempDir dir("cli-stats");
    write_fixture(dir.path());
    const auto r = run({"stats", "--data", dir.path().string(), "--name", "PATH"});
    CHECK(r.code == 0);
    CHECK(r.out == "2 graphs, 4.00 nodes, 3.50 edges\n");

    TempDir empty("cli-empty");
    const auto e = run({"stats", "--data", empty.path().string(), "--name", "PATH"});
    CHECK(e.code == cli::DataFailure);
    CHECK_FALSE(e.err.empty());
}

TEST_CASE("cli stats flags a mismatch with published figures") {
    TempDir dir("cli-pub");
    write_tu(make_dataset("PROTEINS", {oracle::path(5).with_graph_label(0)}), dir.path());
    const auto r = run({"stats", "--data", dir.path().string(), "--name", "PROTEINS"});
    CHECK(r.code == 0);
    CHECK(r.err.find("published statistics are 1113 graphs, 39.06 nodes, 72.82 edges") != std::string::npos);
}

TEST_CASE("cli crop") {
    TempDir dir("cli-crop");
    write_fixture(dir.path());
    const std::string data = dir.path().string();

    auto r = run({"crop", "--data", data, "--name", "PATH", "--initial-node", "2", "--rho", "0.6"});
    REQUIRE(r.code == 0);
    auto obj = nlohmann::json::parse(r.out);
    CHECK(obj["kept"] == nlohmann::json({1, 2, 3}));
    CHECK(obj["initial_node"] == 2);
    CHECK(obj["edges"] == nlohmann::json::parse("[[0,1],[1,2]]"));
    CHECK(obj["scores"].size() == 5);

    r = run({"crop", "--data", data, "--name", "PATH", "--rho", "1", "--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["kept"] == nlohmann::json({0, 1, 2, 3, 4}));

    r = run({"crop", "--data", data, "--name", "PATH", "--initial-node", "5"});
    CHECK(r.code == cli::UsageFailure);
    r = run({"crop", "--data", data, "--name", "PATH", "--graph", "2"});
    CHECK(r.code == cli::UsageFailure);
}

TEST_CASE("cli diffusion") {
    TempDir dir("cli-diff");
    write_tu(make_dataset("E", {oracle::path(2).with_graph_label(0)}), dir.path());
    const auto r = run({"diffusion", "--data", dir.path().string(), "--name", "E", "--initial-node", "0", "--alpha",
                        "0.5"});
    REQUIRE(r.code == 0);
    const auto obj = nlohmann::json::parse(r.out);
    CHECK(obj["graph"] == 0);
    CHECK(obj["v"] == 0);
    CHECK(obj["metric"] == "ppr");
    CHECK(obj["scores"][0].get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(obj["scores"][1].get<double>() == doctest::Approx(1.0 / 3.0));

    const auto sp = run({"diffusion", "--data", dir.path().string(), "--name", "E", "--node", "1", "--metric", "sp"});
    CHECK(nlohmann::json::parse(sp.out)["scores"] == nlohmann::json({-1.0, 0.0}));
}

TEST_CASE("cli augment") {
    TempDir dir("cli-aug");
    write_fixture(dir.path());
    const std::string data = dir.path().string();

    SUBCASE("p = 0 reproduces the input") {
        TempDir out("cli-aug-out");
        const auto r = run({"augment", "--data", data, "--name", "PATH", "--out", out.path().string(), "--p", "0",
                            "--epochs", "1"});
        REQUIRE(r.code == 0);
        CHECK(same_structure(parse_tu(out.path(), "PATH"), parse_tu(dir.path(), "PATH")));
        CHECK(r.out.find("augmented fraction: 0.0000") != std::string::npos);
        CHECK(std::filesystem::exists(out.path() / "PATH_augment.json"));
    }
    SUBCASE("jsonl output is byte-identical across reruns") {
        TempDir a("cli-aug-a");
        TempDir b("cli-aug-b");
        const std::vector<std::string> common{"augment", "--data", data, "--name", "PATH", "--format", "jsonl",
                                              "--seed", "7", "--epochs", "5"};
        auto args_a = common;
        args_a.insert(args_a.end(), {"--out", a.path().string()});
        auto args_b = common;
        args_b.insert(args_b.end(), {"--out", b.path().string()});
        REQUIRE(run(args_a).code == 0);
        REQUIRE(run(args_b).code == 0);
        const auto text = oracle::read_text(a.path() / "PATH.jsonl");
        CHECK(std::count(text.begin(), text.end(), '\n') == 10);
        CHECK(text == oracle::read_text(b.path() / "PATH.jsonl"));
        CHECK(oracle::read_text(a.path() / "PATH_augment.json") == oracle::read_text(b.path() / "PATH_augment.json"));
    }
    SUBCASE("configuration errors exit 1") {
        TempDir out("cli-aug-bad");
        for (const auto &bad : std::vector<std::vector<std::string>>{
                 {"--rho", "0"}, {"--p", "2"}, {"--alpha", "0"}, {"--drop-rate", "1"}, {"--method", "mixup"}, {"--epochs", "0"}}) {
            std::vector<std::string> args{"augment", "--data", data, "--name", "PATH", "--out", out.path().string()};
            args.insert(args.end(), bad.begin(), bad.end());
            CHECK(run(args).code == cli::UsageFailure);
        }
    }
}

TEST_CASE("cli verify") {
    auto r = run({"verify", "--suite", "io"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS io", 0) == 0);
    CHECK(r.out.find("diffusion") == std::string::npos);

    r = run({"verify", "--suite", "policy", "--inject-fault"});
    CHECK(r.code == cli::VerificationFailure);
    CHECK(r.out.rfind("FAIL policy", 0) == 0);

    CHECK(run({"verify", "--suite", "nope"}).code == cli::UsageFailure);
}

TEST_CASE("cli usage") {
    CHECK(run({}).code == cli::UsageFailure);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"stats"}).code == cli::UsageFailure);
    CHECK(run({"frobnicate"}).code == cli::UsageFailure);
}
