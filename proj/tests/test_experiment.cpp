#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "covlab/coverage.hpp"
#include "covlab/deploy.hpp"
#include "covlab/experiment.hpp"

using namespace covlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("covlab_test_" + std::to_string(
                                     std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("strategy names round-trip") {
    for (Strategy s : {Strategy::bidding, Strategy::dss, Strategy::ga, Strategy::gaussian,
                       Strategy::uniform})
        CHECK(strategy_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(strategy_from_string("simulated annealing"), config_error);
}

TEST_CASE("a bare config gets the derived defaults") {
    ExperimentConfig cfg = parse_config(R"({"schema_version": 1})");
    CHECK(cfg.field.width == 113.0);
    CHECK(cfg.field.height == 113.0);
    CHECK(cfg.field.base_station.x == doctest::Approx(56.5));
    CHECK(cfg.sensing_radius == 5.0);
    CHECK(cfg.effective_resolution() == doctest::Approx(0.5));
    REQUIRE(cfg.strategies.size() == 1);
    CHECK(cfg.strategies[0] == Strategy::ga);
    CHECK(cfg.node_counts == std::vector<int>{50});
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1});
    CHECK_FALSE(cfg.record_timing);
    CHECK(cfg.effective_gaussian().sigma_x == doctest::Approx(113.0 / 4.0));
    CHECK(cfg.effective_comm_range() == doctest::Approx(10.0));
    CHECK(cfg.effective_ga().sensing_radius == 5.0);
    CHECK(cfg.effective_ga().effective_resolution() == doctest::Approx(0.5));
}

TEST_CASE("config overrides are honoured") {
    ExperimentConfig cfg = parse_config(R"({
        "schema_version": 1,
        "field": {"width": 60, "height": 40, "base_station": {"x": 10, "y": 10}},
        "sensing_radius": 4,
        "resolution": 0.25,
        "strategies": ["uniform", "ga"],
        "node_counts": [10, 20],
        "seeds": [3, 4],
        "record_timing": true,
        "ga": {"population_size": 30, "max_generations": 12},
        "gaussian": {"sigma_x": 7, "sigma_y": 9},
        "bidding": {"mobile_fraction": 0.4, "max_rounds": 9},
        "dss": {"comm_range": 6.5, "init_sigma_fraction": 0.125}
    })");
    CHECK(cfg.field.width == 60.0);
    CHECK(cfg.field.base_station.y == 10.0);
    CHECK(cfg.sensing_radius == 4.0);
    CHECK(cfg.resolution == 0.25);
    CHECK(cfg.strategies == std::vector<Strategy>{Strategy::uniform, Strategy::ga});
    CHECK(cfg.node_counts == std::vector<int>{10, 20});
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4});
    CHECK(cfg.record_timing);
    CHECK(cfg.ga.population_size == 30);
    CHECK(cfg.ga.max_generations == 12);
    CHECK(cfg.gaussian.sigma_x == 7.0);
    CHECK(cfg.effective_gaussian().sigma_y == 9.0);
    CHECK(cfg.bidding.mobile_fraction == 0.4);
    CHECK(cfg.bidding.max_rounds == 9);
    CHECK(cfg.dss.motion.comm_range == 6.5);
    CHECK(cfg.dss.init_sigma_fraction == 0.125);
}

TEST_CASE("configs that must be rejected") {
    auto bad = [](const char* text) { CHECK_THROWS_AS(parse_config(text), config_error); };

    bad(R"({)");                                              // not JSON
    bad(R"([1, 2])");                                         // not an object
    bad(R"({"sensing_radius": 5})");                          // schema_version missing
    bad(R"({"schema_version": 2})");                          // unsupported version
    bad(R"({"schema_version": "1"})");                        // wrong type
    bad(R"({"schema_version": 1, "surprise": true})");        // unknown key
    bad(R"({"schema_version": 1, "strategy": "ga", "strategies": ["ga"]})");
    bad(R"({"schema_version": 1, "strategy": "tabu"})");      // unknown strategy
    bad(R"({"schema_version": 1, "strategies": []})");        // empty list
    bad(R"({"schema_version": 1, "node_counts": []})");
    bad(R"({"schema_version": 1, "node_counts": [0]})");
    bad(R"({"schema_version": 1, "seeds": []})");
    bad(R"({"schema_version": 1, "seeds": [-1]})");           // seeds are unsigned
    bad(R"({"schema_version": 1, "field": {"width": -3}})");
    bad(R"({"schema_version": 1, "field": {"bogus": 1}})");
    bad(R"({"schema_version": 1, "sensing_radius": 0})");
    bad(R"({"schema_version": 1, "resolution": 1.5})");       // coarser than r/5
    bad(R"({"schema_version": 1, "bidding": {"mobile_fraction": 1.0}})");
    bad(R"({"schema_version": 1, "dss": {"comm_range": -2}})");
    bad(R"({"schema_version": 1, "ga": {"population_size": 2}})");
}

TEST_CASE("load_config propagates file errors") {
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), config_error);
    TempDir tmp;
    const fs::path p = tmp.path / "cfg.json";
    std::ofstream(p) << R"({"schema_version": 1, "node_counts": [5]})";
    ExperimentConfig cfg = load_config(p);
    CHECK(cfg.node_counts == std::vector<int>{5});
}

TEST_CASE("run_job matches the underlying deployers") {
    ExperimentConfig cfg = parse_config(R"({"schema_version": 1})");

    SweepRow u = run_job(cfg, Strategy::uniform, 40, 9);
    const Deployment dep = deploy_uniform(cfg.field, 40, 5.0, Seed{9});
    CHECK(u.coverage == union_coverage(dep, 0.5).union_fraction);
    CHECK(u.steps == 0);
    CHECK(u.wall_ms == 0);  // timing off by default

    SweepRow g = run_job(cfg, Strategy::gaussian, 40, 9);
    const Deployment gdep = deploy_gaussian(cfg.field, 40, 5.0, cfg.effective_gaussian(), Seed{9});
    CHECK(g.coverage == union_coverage(gdep, 0.5).union_fraction);

    // deterministic reruns, cell by cell
    SweepRow u2 = run_job(cfg, Strategy::uniform, 40, 9);
    CHECK(u2.coverage == u.coverage);
}

TEST_CASE("a single uniform row tracks the closed-form coverage") {
    ExperimentConfig cfg = parse_config(R"({"schema_version": 1})");
    // n chosen so lambda * pi * r^2 is 1: coverage should sit near 1 - 1/e
    SweepRow row = run_job(cfg, Strategy::uniform, 163, 1);
    CHECK(std::abs(row.coverage - (1.0 - std::exp(-1.0))) <= 0.05);
}

TEST_CASE("sweeps run every cell in canonical order") {
    ExperimentConfig cfg = parse_config(R"({
        "schema_version": 1,
        "strategies": ["uniform", "gaussian"],
        "node_counts": [10, 5, 10],
        "seeds": [2, 1]
    })");
    TempDir tmp;
    const fs::path csv = tmp.path / "sweep.csv";
    SweepResult r = run_sweep(cfg, csv);

    // node_counts deduplicated: 2 strategies x 2 counts x 2 seeds
    REQUIRE(r.rows.size() == 8);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        const SweepRow& a = r.rows[i - 1];
        const SweepRow& b = r.rows[i];
        const auto ka = std::make_tuple(static_cast<int>(a.strategy), a.n, a.seed);
        const auto kb = std::make_tuple(static_cast<int>(b.strategy), b.n, b.seed);
        CHECK(ka < kb);
    }
    CHECK(r.rows.front().strategy == Strategy::gaussian);
    CHECK(r.rows.back().strategy == Strategy::uniform);

    // the streamed file and the in-memory serialization agree
    CHECK(slurp(csv) == csv_string(r));

    // reruns are byte-identical, serial or parallel
    const fs::path csv2 = tmp.path / "again.csv";
    run_sweep(cfg, csv2, 1);
    CHECK(slurp(csv2) == slurp(csv));

    // independence: a sub-sweep computes the same cells
    ExperimentConfig sub = cfg;
    sub.strategies = {Strategy::uniform};
    sub.node_counts = {10};
    SweepResult rs = run_sweep(sub, "");
    for (const SweepRow& row : rs.rows) {
        bool found = false;
        for (const SweepRow& orig : r.rows)
            if (orig.strategy == row.strategy && orig.n == row.n && orig.seed == row.seed) {
                CHECK(orig.coverage == row.coverage);
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("sweep fails before computing when the csv path is unwritable") {
    ExperimentConfig cfg = parse_config(R"({"schema_version": 1, "strategies": ["uniform"]})");
    CHECK_THROWS_AS(run_sweep(cfg, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST_CASE("csv serialization") {
    SweepResult r;
    r.rows = {{Strategy::ga, 50, 1, 0.283029, 2, 0},
              {Strategy::uniform, 50, 2, 0.25, 0, 12}};
    const std::string text = csv_string(r);
    CHECK(text == "strategy,n,seed,coverage,steps,wall_ms\n"
                  "ga,50,1,0.283029,2,0\n"
                  "uniform,50,2,0.250000,0,12\n");

    TempDir tmp;
    const fs::path p = tmp.path / "out.csv";
    emit_csv(r, p);
    SweepResult back = read_csv(p);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].strategy == Strategy::ga);
    CHECK(back.rows[0].n == 50);
    CHECK(back.rows[0].seed == 1);
    CHECK(back.rows[0].coverage == doctest::Approx(0.283029));
    CHECK(back.rows[0].steps == 2);
    CHECK(back.rows[1].wall_ms == 12);
}

TEST_CASE("csv parsing accepts quoting and other line endings") {
    TempDir tmp;
    const fs::path p = tmp.path / "quoted.csv";
    std::ofstream(p, std::ios::binary)
        << "strategy,n,seed,coverage,steps,wall_ms\r\n\"ga\",\"50\",1,\"0.5\",0,0\r\n";
    SweepResult r = read_csv(p);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].strategy == Strategy::ga);
    CHECK(r.rows[0].n == 50);
    CHECK(r.rows[0].coverage == doctest::Approx(0.5));
}

TEST_CASE("csv parsing rejects malformed files") {
    TempDir tmp;
    auto write = [&](const char* name, const std::string& text) {
        const fs::path p = tmp.path / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    };
    CHECK_THROWS_AS(read_csv(tmp.path / "missing.csv"), std::runtime_error);
    CHECK_THROWS_AS(read_csv(write("h.csv", "strategy,n\nga,1\n")), std::runtime_error);
    CHECK_THROWS_AS(read_csv(write("f.csv", "strategy,n,seed,coverage,steps,wall_ms\nga,1\n")),
                    std::runtime_error);
    CHECK_THROWS_AS(
        read_csv(write("t.csv", "strategy,n,seed,coverage,steps,wall_ms\nga,x,1,0.5,0,0\n")),
        std::runtime_error);

    // header only: a valid, empty sweep
    SweepResult empty = read_csv(write("e.csv", "strategy,n,seed,coverage,steps,wall_ms\n"));
    CHECK(empty.rows.empty());
}

TEST_CASE("per-strategy means") {
    SweepResult r;
    r.rows = {{Strategy::ga, 50, 1, 0.2, 0, 0},
              {Strategy::ga, 50, 2, 0.4, 0, 0},
              {Strategy::ga, 100, 1, 0.5, 0, 0},
              {Strategy::uniform, 50, 1, 0.1, 0, 0}};
    auto means = strategy_means(r);
    CHECK(means[Strategy::ga][50] == doctest::Approx(0.3));
    CHECK(means[Strategy::ga][100] == doctest::Approx(0.5));
    CHECK(means[Strategy::uniform][50] == doctest::Approx(0.1));
}

TEST_CASE("reference tables carry the published digits") {
    const auto& t2 = ReferenceTables::ga_coverage();
    REQUIRE(t2.size() == 10);
    CHECK(t2.at(50) == 30.9371);
    CHECK(t2.at(100) == 43.7516);
    CHECK(t2.at(150) == 50.52);
    CHECK(t2.at(200) == 59.5384);
    CHECK(t2.at(250) == 66.4327);
    CHECK(t2.at(300) == 72.9193);
    CHECK(t2.at(400) == 84.62);
    CHECK(t2.at(500) == 93.95);
    CHECK(t2.at(550) == 98.9833);
    CHECK(t2.at(586) == 99.99);

    const auto& t3 = ReferenceTables::gaussian_coverage();
    REQUIRE(t3.size() == 10);
    CHECK(t3.at(100) == 35.0);
    CHECK(t3.at(500) == 82.0);
    CHECK(t3.at(1000) == 99.99);
}

TEST_CASE("comparison against a reference table") {
    SweepResult r;
    // two seeds per count, means laid exactly on the table
    for (const auto& [n, pct] : ReferenceTables::ga_coverage()) {
        if (n == 586) continue;  // leave one count missing on purpose
        r.rows.push_back({Strategy::ga, n, 1, pct / 100.0 + 0.01, 0, 0});
        r.rows.push_back({Strategy::ga, n, 2, pct / 100.0 - 0.01, 0, 0});
    }
    ComparisonReport rep = compare_to_reference(r, ReferenceTables::ga_coverage(), Strategy::ga);
    REQUIRE(rep.entries.size() == 9);
    for (const ReferenceEntry& e : rep.entries) {
        CHECK(e.runs == 2);
        CHECK(e.delta == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(e.stddev == doctest::Approx(0.01 * std::sqrt(2.0)).epsilon(1e-6));
    }
    REQUIRE(rep.missing.size() == 1);
    CHECK(rep.missing[0] == 586);
    CHECK(rep.monotone_with_slack);

    SUBCASE("a dip beyond the slack trips the monotonicity flag") {
        for (SweepRow& row : r.rows)
            if (row.n == 300) row.coverage -= 0.20;
        ComparisonReport dipped = compare_to_reference(r, ReferenceTables::ga_coverage(), Strategy::ga);
        CHECK_FALSE(dipped.monotone_with_slack);
    }
    SUBCASE("a dip inside the slack is tolerated") {
        // push 300's mean just below 250's: a 0.01 dip against a 0.02 slack
        for (SweepRow& row : r.rows)
            if (row.n == 300) row.coverage = 66.4327 / 100.0 - 0.01;
        ComparisonReport dipped = compare_to_reference(r, ReferenceTables::ga_coverage(), Strategy::ga);
        CHECK(dipped.monotone_with_slack);
    }
}

TEST_CASE("report rendering names the conditioned config") {
    SweepResult r;
    r.rows = {{Strategy::ga, 50, 1, 0.3, 2, 0}};
    ComparisonReport rep = compare_to_reference(r, ReferenceTables::ga_coverage(), Strategy::ga);
    ExperimentConfig cfg = parse_config(R"({"schema_version": 1})");
    const std::string text = format_report(rep, cfg);
    CHECK(text.find("113") != std::string::npos);
    CHECK(text.find("monotone") != std::string::npos);
    CHECK(text.find("ga") != std::string::npos);
    CHECK(text.find("586") != std::string::npos);  // missing counts are listed

    ComparisonReport shape =
        compare_to_reference(r, ReferenceTables::gaussian_coverage(), Strategy::ga, true);
    CHECK(format_report(shape, cfg).find("shape-only") != std::string::npos);
}
