#include <map>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "spares/csv.hpp"

namespace fs = std::filesystem;
using spares::cli::run;

namespace {

const std::string kConfig = std::string(SPARES_SOURCE_DIR) + "/data/case_study.json";

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("spares_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::map<std::string, std::string> quantities(const std::string& csv_text) {
    std::istringstream in(csv_text);
    const auto t = spares::csv::read_table(in);
    std::map<std::string, std::string> m;
    for (const auto& r : t.rows) m[r[0]] = r[1];
    return m;
}

std::map<std::string, std::string> text_quantities(const std::string& text) {
    std::istringstream in(text);
    std::map<std::string, std::string> m;
    std::string k, v;
    while (in >> k >> v) m[k] = v;
    return m;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("evaluate reports the reference strategy cost") {
    const auto r = call({"evaluate", "--config", kConfig, "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto q = quantities(r.out);
    CHECK(spares::csv::parse_double(q.at("tessac_musd_per_year")) == doctest::Approx(319.1).epsilon(0.01));
    CHECK(q.at("capacity_ok") == "1");
}

TEST_CASE("text and CSV formats carry identical numbers") {
    const auto csv = call({"evaluate", "--config", kConfig, "--format", "csv"});
    const auto text = call({"evaluate", "--config", kConfig});
    REQUIRE(csv.code == 0);
    REQUIRE(text.code == 0);
    CHECK(quantities(csv.out) == text_quantities(text.out));
}

TEST_CASE("missing key fails with its name") {
    const fs::path dir = scratch("missing");
    auto j = nlohmann::json::parse(slurp(kConfig));
    j["launch"].erase("cap_launch");
    std::ofstream(dir / "bad.json") << j.dump();
    const auto r = call({"evaluate", "--config", (dir / "bad.json").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("launch.cap_launch") != std::string::npos);
}

TEST_CASE("infeasible strategy exits with 2") {
    const fs::path dir = scratch("infeasible");
    auto j = nlohmann::json::parse(slurp(kConfig));
    j["strategy"]["s_plane"] = 1;
    j["strategy"]["k_s_parking"] = 1;
    std::ofstream(dir / "weak.json") << j.dump();
    CHECK(call({"evaluate", "--config", (dir / "weak.json").string()}).code == 2);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(call({}).code == 1);
    CHECK(call({"evaluate"}).code == 1);
    CHECK(call({"evaluate", "--config", kConfig, "--format", "xml"}).code == 1);
    CHECK(call({"launch-rockets"}).code == 1);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("fit-launch-data prints the constant gap") {
    const auto r = call({"fit-launch-data", std::string(SPARES_SOURCE_DIR) + "/tests/fixtures/constant_gaps.csv",
                         "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(quantities(r.out).at("mean_gap_days") == "45");
    CHECK(call({"fit-launch-data", "/nonexistent/dates.csv"}).code == 1);
}

TEST_CASE("optimize --inplane-only reports the baseline") {
    const fs::path dir = scratch("inplane");
    const auto r = call({"optimize", "--inplane-only", "--config", kConfig, "--format", "csv", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto q = quantities(r.out);
    CHECK(spares::csv::parse_double(q.at("inplane_tessac_musd_per_year")) == doctest::Approx(503.2).epsilon(0.10));
    CHECK(q.count("multi_feasible") == 0);
    CHECK(fs::exists(dir / "optimize_result.csv"));
    CHECK_FALSE(fs::exists(dir / "optimize_trace.csv"));
}

TEST_CASE("validate smoke run is fast and reproducible") {
    const fs::path a = scratch("validate_a"), b = scratch("validate_b");
    const auto t0 = std::chrono::steady_clock::now();
    const auto ra = call({"validate", "--config", kConfig, "--n", "2", "--reps", "5", "--horizon", "3",
                          "--seed", "8", "--out", a.string()});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto rb = call({"validate", "--config", kConfig, "--n", "2", "--reps", "5", "--horizon", "3",
                          "--seed", "8", "--jobs", "1", "--out", b.string()});
    CHECK(ra.code != 1);
    CHECK(secs < 60.0);
    CHECK(slurp(a / "validation_cases.csv") == slurp(b / "validation_cases.csv"));
    CHECK(slurp(a / "validation_summary.csv") == slurp(b / "validation_summary.csv"));
}

TEST_CASE("simulate writes reproducible files") {
    const fs::path dir = scratch("simulate");
    auto j = nlohmann::json::parse(slurp(kConfig));
    j["simulation"]["replications"] = 6;
    j["simulation"]["horizon_years"] = 4.0;
    std::ofstream(dir / "short.json") << j.dump();
    const auto cfg = (dir / "short.json").string();
    const auto a = call({"simulate", "--config", cfg, "--seed", "3", "--out", (dir / "a").string(),
                         "--events", (dir / "events.csv").string()});
    const auto b = call({"simulate", "--config", cfg, "--seed", "3", "--jobs", "3", "--out", (dir / "b").string()});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(slurp(dir / "a" / "simulate_replications.csv") == slurp(dir / "b" / "simulate_replications.csv"));
    CHECK(slurp(dir / "events.csv").rfind("time_days,event,location,stock\n", 0) == 0);

    // Every emitted number parses back to the same double.
    std::istringstream in(slurp(dir / "a" / "simulate_replications.csv"));
    const auto t = spares::csv::read_table(in);
    for (const auto& row : t.rows) {
        for (const auto& cell : row) {
            const double v = spares::csv::parse_double(cell);
            CHECK(spares::csv::parse_double(spares::csv::format_double(v)) == v);
        }
    }
}

TEST_CASE("sensitivity reports a failed rate with exit 2") {
    const fs::path dir = scratch("sens");
    auto j = nlohmann::json::parse(slurp(kConfig));
    j["optimization"]["ga"]["generations"] = 10;
    j["optimization"]["ga"]["restarts"] = 1;
    std::ofstream(dir / "quick.json") << j.dump();
    const auto r = call({"sensitivity", "--config", (dir / "quick.json").string(), "--rates", "0.01,0.9",
                         "--format", "csv"});
    CHECK(r.code == 2);
    CHECK(r.err.find("0.9") != std::string::npos);
}
