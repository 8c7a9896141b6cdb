#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "covlab/deploy.hpp"
#include "covlab/dss.hpp"
#include "covlab/ga.hpp"
#include "covlab/geometry.hpp"

namespace covlab {

// Anything wrong with the configuration itself (schema, types, ranges).
// The CLI maps this to exit code 2; genuine runtime failures stay exit 1.
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Enumerators are in the lexicographic order of their names so that sorting
// by enum value matches the canonical CSV row order.
enum class Strategy { bidding, dss, ga, gaussian, uniform };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);  // throws config_error

struct BiddingStrategyParams {
    double mobile_fraction = 0.2;  // share of n fielded as relocatable sensors
    int max_rounds = 50;
};

struct DssStrategyParams {
    DssParams motion;  // comm_range 0 selects 2 * sensing_radius
    // The spreading run starts from a cluster around the base station:
    // sigma = init_sigma_fraction * field dimension.
    double init_sigma_fraction = 0.25;
};

struct ExperimentConfig {
    Field field = Field::centered(113.0, 113.0);
    double sensing_radius = 5.0;
    double resolution = 0.0;  // 0 selects sensing_radius / 10
    std::vector<Strategy> strategies{Strategy::ga};
    std::vector<int> node_counts{50};
    std::vector<std::uint64_t> seeds{1};
    // When false (the default), wall_ms is written as 0 so that reruns of the
    // same config produce byte-identical CSV files.
    bool record_timing = false;

    GaParams ga;
    GaussianParams gaussian;  // sigma 0 selects field dimension / 4
    BiddingStrategyParams bidding;
    DssStrategyParams dss;

    double effective_resolution() const;
    GaussianParams effective_gaussian() const;
    double effective_comm_range() const;
    GaParams effective_ga() const;  // ga with sensing_radius/resolution applied

    void validate() const;  // throws config_error
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct SweepRow {
    Strategy strategy = Strategy::uniform;
    int n = 0;
    std::uint64_t seed = 0;
    double coverage = 0.0;  // union fraction in [0, 1]
    int steps = 0;          // generations, auction rounds or spreading iterations
    long long wall_ms = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // canonical (strategy, n, seed) order
};

// Runs one sweep cell from scratch. Deterministic in (cfg, strategy, n, seed);
// in particular the result does not depend on which other cells exist.
SweepRow run_job(const ExperimentConfig& cfg, Strategy strategy, int n, std::uint64_t seed);

// Cartesian product strategies x node_counts x seeds (each sorted and
// deduplicated). Rows are computed in parallel up to `jobs` (0 = all cores,
// 1 = serial) and streamed to csv_path in canonical order, flushed per row so
// an interrupted sweep leaves a usable prefix. Empty csv_path skips the file.
SweepResult run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& csv_path,
                      int jobs = 0);

// strategy,n,seed,coverage,steps,wall_ms with RFC-4180-style quoting.
std::string csv_string(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);
SweepResult read_csv(const std::filesystem::path& path);

// Mean coverage over seeds, per strategy and node count. Shared by the SVG
// plot and the reference reports so the two can never disagree.
std::map<Strategy, std::map<int, double>> strategy_means(const SweepResult& result);

// Published coverage percentages reproduced digit-for-digit.
struct ReferenceTables {
    // Published coverage-percent curves the sweeps are compared against,
    // keyed by node count.
    static const std::map<int, double>& ga_coverage();
    static const std::map<int, double>& gaussian_coverage();
};

struct ReferenceEntry {
    int n = 0;
    int runs = 0;
    double mean = 0.0;       // fraction
    double stddev = 0.0;     // fraction, sample stddev over seeds
    double reference = 0.0;  // percent, as published
    double delta = 0.0;      // mean * 100 - reference, percent points
};

struct ComparisonReport {
    Strategy strategy = Strategy::ga;
    // Shape-only comparisons disown the absolute deltas (the published runs
    // used unknown spread parameters); only orderings and trends are claimed.
    bool shape_only = false;
    std::vector<ReferenceEntry> entries;  // ascending n
    std::vector<int> missing;             // table node counts absent from result
    bool monotone_with_slack = true;      // means monotone increasing up to `slack`
    double slack = 0.02;
};

ComparisonReport compare_to_reference(const SweepResult& result,
                                      const std::map<int, double>& table, Strategy strategy,
                                      bool shape_only = false);

// Plain-text rendering, including the banner stating which (derived) field
// configuration the numbers are conditioned on.
std::string format_report(const ComparisonReport& report, const ExperimentConfig& cfg);

}  // namespace covlab
