#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoskit/cli.hpp"

using namespace chaoskit;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "chaoskit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("chaoskit_test_cli_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("exit status follows record outcomes") {
    cli::RunReport r;
    r.sections.push_back({"x", "y", {CheckReport{"g", {record_le("a", 1.0, 2.0)}}}});
    CHECK(cli::exit_status(r) == cli::exit_ok);
    r.sections[0].groups[0].records.push_back(record_le("b", 3.0, 2.0));
    CHECK(cli::exit_status(r) == cli::exit_check_failed);
    CheckRecord u = record_le("c", 1.0, 2.0);
    u.status = Status::unconverged;
    r.sections[0].groups[0].records.push_back(u);
    CHECK(cli::exit_status(r) == cli::exit_unconverged);
}

TEST_CASE("parse errors exit with 2 and run nothing") {
    const auto dir = scratch("bad");
    CHECK(invoke({"--output-dir", dir.string(), "no-such-command"}).status == cli::exit_usage);
    CHECK(invoke({"--output-dir", dir.string(), "pollard", "--k-max", "many"}).status == cli::exit_usage);
    CHECK(invoke({"--output-dir", dir.string()}).status == cli::exit_usage);
    const auto cfg = dir.string() + ".cfg";
    std::ofstream(cfg) << "seed=3\nunknown-key=1\n";
    CHECK(invoke({"--config", cfg, "--output-dir", dir.string(), "pollard"}).status == cli::exit_usage);
    CHECK_FALSE(std::filesystem::exists(dir / "pollard.json"));
}

TEST_CASE("invalid suite arguments exit with 2") {
    const auto dir = scratch("invalid");
    CHECK(invoke({"--output-dir", dir.string(), "hyper", "--p-list", "7"}).status == cli::exit_usage);
}

TEST_CASE("pollard run writes all three formats") {
    const auto dir = scratch("pollard");
    const auto r = invoke({"--output-dir", dir.string(), "pollard", "--t", "8", "--k-max", "30"});
    CHECK(r.status == cli::exit_ok);
    CHECK(r.out.find("PASS  pollard") != std::string::npos);
    const std::string csv = slurp(dir / "pollard.csv");
    CHECK(csv.rfind(std::string(cli::kCsvHeader) + "\n", 0) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "pollard.json"));
    CHECK(j["schema_version"] == cli::kSchemaVersion);
    CHECK(j["seed"] == kDefaultSeed);
    CHECK(j["config"]["pollard.k-max"] == "30");
    CHECK(j["exit_status"] == 0);
    CHECK(j["sections"][0]["groups"].size() == 2);
    const std::string text = slurp(dir / "pollard.txt");
    CHECK(text.find("seed: 20111223") != std::string::npos);
    CHECK(text.find("wall clock") != std::string::npos);
    CHECK(csv.find("wall clock") == std::string::npos);
}

TEST_CASE("config file values apply and flags win") {
    const auto dir = scratch("config");
    const auto cfg = dir.string() + ".cfg";
    std::ofstream(cfg) << "seed=77\npollard.k-max=28\npollard.k-min=7\n";
    CHECK(invoke({"--config", cfg, "--output-dir", dir.string(), "--format", "json", "pollard", "--k-min", "6"}).status == 0);
    auto j = nlohmann::json::parse(slurp(dir / "pollard.json"));
    CHECK(j["seed"] == 77);
    CHECK(j["config"]["pollard.k-max"] == "28");
    CHECK(j["config"]["pollard.k-min"] == "6");
    CHECK(invoke({"--config", cfg, "--seed", "5", "--output-dir", dir.string(), "--format", "json", "pollard"}).status == 0);
    j = nlohmann::json::parse(slurp(dir / "pollard.json"));
    CHECK(j["seed"] == 5);
    CHECK_FALSE(std::filesystem::exists(dir / "pollard.csv"));
}

TEST_CASE("reports are byte identical across reruns and worker counts") {
    const auto a = scratch("rep_a"), b = scratch("rep_b");
    const std::vector<std::string> common{"project-check", "--alpha", "1,1", "--t", "0.5,1"};
    auto args = [&](const std::filesystem::path& d, const char* workers) {
        std::vector<std::string> v{"--n-paths", "500", "--n-outer", "4", "--workers", workers, "--output-dir", d.string()};
        v.insert(v.end(), common.begin(), common.end());
        return v;
    };
    CHECK(invoke(args(a, "1")).status == 0);
    CHECK(invoke(args(b, "3")).status == 0);
    CHECK(slurp(a / "project-check.json") == slurp(b / "project-check.json"));
    CHECK(slurp(a / "project-check.csv") == slurp(b / "project-check.csv"));
}

TEST_CASE("measure files feed the widder subcommands") {
    const auto dir = scratch("measure");
    std::filesystem::create_directories(dir);
    const auto path = (dir / "mu.txt").string();
    std::ofstream(path) << "# w v\n0.25 -0.5\n0.75 1.0\n";
    const auto r = invoke({"--output-dir", dir.string(), "moment-characterize", "--measure", path, "--random-measures", "0"});
    CHECK(r.status == 0);
    CHECK(invoke({"--output-dir", dir.string(), "cf-recover", "--measure", (dir / "missing").string()}).status ==
          cli::exit_usage);
}
