// Command-line harness: single deployments, GA optimization, baseline
// relocation algorithms, node-count sweeps, reference reports and SVG plots.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "covlab/bidding.hpp"
#include "covlab/coverage.hpp"
#include "covlab/deploy.hpp"
#include "covlab/dss.hpp"
#include "covlab/experiment.hpp"
#include "covlab/ga.hpp"
#include "covlab/svg.hpp"

namespace fs = std::filesystem;
using namespace covlab;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("COVERAGE_LAB_SEED")) {
        const std::string text(env);
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw config_error("COVERAGE_LAB_SEED must be a non-negative integer, got '" +
                               text + "'");
        }
    }
    return 0;
}

void write_deployment_json(const Deployment& dep, const fs::path& path) {
    nlohmann::json doc;
    doc["field"] = {{"width", dep.field.width},
                    {"height", dep.field.height},
                    {"base_station",
                     {{"x", dep.field.base_station.x}, {"y", dep.field.base_station.y}}}};
    nlohmann::json sensors = nlohmann::json::array();
    for (const Sensor& s : dep.sensors)
        sensors.push_back({{"id", s.id}, {"x", s.pos.x}, {"y", s.pos.y}, {"r", s.sensing_radius}});
    doc["sensors"] = std::move(sensors);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

void write_history_csv(const std::vector<GaHistory>& histories, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "subarea,generation,best,mean\n";
    char buf[96];
    for (std::size_t k = 0; k < histories.size(); ++k)
        for (const GenerationStats& g : histories[k].generations) {
            std::snprintf(buf, sizeof buf, "%zu,%d,%.6f,%.6f\n", k, g.generation, g.best_fitness,
                          g.mean_fitness);
            out << buf;
        }
}

const char* stop_name(DssStop stop) {
    switch (stop) {
        case DssStop::converged: return "converged";
        case DssStop::oscillation: return "oscillation";
        case DssStop::iteration_cap: return "iteration_cap";
    }
    return "?";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sensor coverage experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_flag;
    int jobs = 0;
    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--seed", seed_flag, "master seed (overrides COVERAGE_LAB_SEED)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--jobs", jobs, "parallel jobs, 0 = all cores")->capture_default_str();

    auto* cmd_deploy =
        app.add_subcommand("deploy", "place sensors with one strategy, no optimization");
    cmd_deploy->fallthrough();
    std::string deploy_strategy = "uniform";
    int deploy_n = 0;
    cmd_deploy->add_option("--strategy", deploy_strategy, "uniform or gaussian")
        ->capture_default_str();
    cmd_deploy->add_option("--n", deploy_n, "sensor count")->required()->check(CLI::PositiveNumber);

    auto* cmd_optimize = app.add_subcommand("optimize", "subarea-parallel GA optimization");
    cmd_optimize->fallthrough();
    int optimize_n = 0;
    cmd_optimize->add_option("--n", optimize_n, "sensor count")
        ->required()
        ->check(CLI::PositiveNumber);

    auto* cmd_baseline =
        app.add_subcommand("baseline", "relocation baselines: auction bidding or self-spreading");
    cmd_baseline->fallthrough();
    std::string baseline_algorithm;
    int baseline_n = 0;
    cmd_baseline->add_option("--algorithm", baseline_algorithm, "bidding or dss")->required();
    cmd_baseline->add_option("--n", baseline_n, "sensor count")
        ->required()
        ->check(CLI::PositiveNumber);

    auto* cmd_sweep = app.add_subcommand("sweep", "strategies x node counts x seeds, CSV output");
    cmd_sweep->fallthrough();
    std::string sweep_csv = "sweep.csv";
    cmd_sweep->add_option("--csv", sweep_csv, "CSV file name inside --out")
        ->capture_default_str();

    auto* cmd_report = app.add_subcommand("report", "compare sweep CSV against reference tables");
    cmd_report->fallthrough();
    std::string report_csv;
    std::string report_table = "ga";
    std::string report_strategy;
    cmd_report->add_option("--csv", report_csv, "sweep CSV to read")->required();
    cmd_report->add_option("--table", report_table, "reference curve: ga or gaussian")
        ->capture_default_str();
    cmd_report->add_option("--strategy", report_strategy,
                           "strategy column to compare (defaults to the curve's strategy)");

    auto* cmd_plot = app.add_subcommand("plot", "render sweep CSV as an SVG chart");
    cmd_plot->fallthrough();
    std::string plot_csv;
    std::string plot_svg_name = "plot.svg";
    std::string plot_reference = "none";
    std::string plot_title = "coverage vs node count";
    cmd_plot->add_option("--csv", plot_csv, "sweep CSV to read")->required();
    cmd_plot->add_option("--svg", plot_svg_name, "SVG file name inside --out")
        ->capture_default_str();
    cmd_plot->add_option("--reference", plot_reference, "reference curve: ga, gaussian or none")
        ->capture_default_str();
    cmd_plot->add_option("--title", plot_title, "chart title")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const ExperimentConfig cfg =
            config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        const fs::path out(out_dir);
        fs::create_directories(out);
        const double res = cfg.effective_resolution();
        char line[256];

        if (*cmd_deploy) {
            const Seed seed{resolve_seed(seed_flag)};
            Deployment dep;
            if (deploy_strategy == "uniform")
                dep = deploy_uniform(cfg.field, deploy_n, cfg.sensing_radius, seed);
            else if (deploy_strategy == "gaussian")
                dep = deploy_gaussian(cfg.field, deploy_n, cfg.sensing_radius,
                                      cfg.effective_gaussian(), seed);
            else
                throw config_error("deploy supports --strategy uniform or gaussian");
            const CoverageReport report = union_coverage(dep, res);
            write_deployment_json(dep, out / "deployment.json");
            deployment_snapshot(dep, out / "deployment.svg");
            std::snprintf(line, sizeof line,
                          "deploy strategy=%s n=%d seed=%llu coverage=%.6f\n",
                          deploy_strategy.c_str(), deploy_n,
                          static_cast<unsigned long long>(seed.value), report.union_fraction);
            std::cout << line;
        } else if (*cmd_optimize) {
            const Seed seed{resolve_seed(seed_flag)};
            const OptimizeResult result =
                optimize_field(cfg.field, optimize_n, cfg.effective_ga(), seed, jobs);
            write_deployment_json(result.deployment, out / "ga_deployment.json");
            SnapshotOptions snap;
            snap.draw_subareas = true;
            snap.target_per_subarea = cfg.ga.target_per_subarea;
            deployment_snapshot(result.deployment, out / "ga_deployment.svg", snap);
            write_history_csv(result.histories, out / "ga_history.csv");
            for (std::size_t k = 0; k < result.histories.size(); ++k) {
                const GaHistory& h = result.histories[k];
                std::snprintf(line, sizeof line,
                              "subarea %zu: best=%.6f generations=%zu stop=%s\n", k,
                              h.generations.back().best_fitness, h.generations.size() - 1,
                              h.reason == StopReason::converged ? "converged" : "generation_cap");
                std::cout << line;
            }
            std::snprintf(line, sizeof line,
                          "optimize n=%d seed=%llu coverage=%.6f weighted_total=%.6f\n",
                          optimize_n, static_cast<unsigned long long>(seed.value),
                          result.report.union_fraction, result.weighted_total);
            std::cout << line;
        } else if (*cmd_baseline) {
            const Seed master{resolve_seed(seed_flag)};
            if (baseline_algorithm == "bidding") {
                int n_mobile =
                    static_cast<int>(std::lround(baseline_n * cfg.bidding.mobile_fraction));
                if (n_mobile >= baseline_n) n_mobile = baseline_n - 1;
                const int n_static = baseline_n - n_mobile;
                const Deployment statics = deploy_uniform(cfg.field, n_static, cfg.sensing_radius,
                                                          derive_seed(master, 0));
                std::vector<MobileSensor> mobiles;
                if (n_mobile > 0) {
                    const Deployment md = deploy_uniform(cfg.field, n_mobile, cfg.sensing_radius,
                                                         derive_seed(master, 1));
                    for (const Sensor& s : md.sensors) mobiles.push_back({s, 0.0, false});
                }
                Deployment before = statics;
                for (const MobileSensor& m : mobiles) before.sensors.push_back(m.sensor);
                for (std::size_t i = 0; i < before.sensors.size(); ++i)
                    before.sensors[i].id = static_cast<int>(i) + 1;
                const double cov_before = union_coverage(before, res).union_fraction;

                BiddingParams bp;
                bp.sensing_radius = cfg.sensing_radius;
                bp.max_rounds = cfg.bidding.max_rounds;
                const BiddingResult result = run_bidding(statics, std::move(mobiles), bp);
                const double cov_after = union_coverage(result.deployment, res).union_fraction;
                write_deployment_json(result.deployment, out / "baseline_deployment.json");
                deployment_snapshot(result.deployment, out / "baseline_deployment.svg");
                std::snprintf(line, sizeof line,
                              "baseline bidding n=%d (static=%d mobile=%d) seed=%llu "
                              "rounds=%zu moves=%d coverage %.6f -> %.6f\n",
                              baseline_n, n_static, n_mobile,
                              static_cast<unsigned long long>(master.value),
                              result.rounds.size(), result.moves, cov_before, cov_after);
                std::cout << line;
            } else if (baseline_algorithm == "dss") {
                GaussianParams init;
                init.sigma_x = cfg.dss.init_sigma_fraction * cfg.field.width;
                init.sigma_y = cfg.dss.init_sigma_fraction * cfg.field.height;
                const Deployment start = deploy_gaussian(cfg.field, baseline_n,
                                                         cfg.sensing_radius, init,
                                                         derive_seed(master, 0));
                const double cov_before = union_coverage(start, res).union_fraction;
                DssParams motion = cfg.dss.motion;
                motion.comm_range = cfg.effective_comm_range();
                const DssResult result = dss_run(start, motion, derive_seed(master, 1));
                const double cov_after = union_coverage(result.deployment, res).union_fraction;
                write_deployment_json(result.deployment, out / "baseline_deployment.json");
                deployment_snapshot(result.deployment, out / "baseline_deployment.svg");
                std::snprintf(line, sizeof line,
                              "baseline dss n=%d seed=%llu iterations=%d stop=%s "
                              "coverage %.6f -> %.6f\n",
                              baseline_n, static_cast<unsigned long long>(master.value),
                              result.iterations, stop_name(result.stop), cov_before, cov_after);
                std::cout << line;
            } else {
                throw config_error("baseline supports --algorithm bidding or dss");
            }
        } else if (*cmd_sweep) {
            const fs::path csv = out / sweep_csv;
            const SweepResult result = run_sweep(cfg, csv, jobs);
            std::snprintf(line, sizeof line, "sweep: %zu rows -> %s\n", result.rows.size(),
                          csv.string().c_str());
            std::cout << line;
        } else if (*cmd_report) {
            const SweepResult result = read_csv(report_csv);
            const bool gaussian_curve = report_table == "gaussian";
            if (!gaussian_curve && report_table != "ga")
                throw config_error("report supports --table ga or gaussian");
            const Strategy strategy = strategy_from_string(
                !report_strategy.empty() ? report_strategy : report_table);
            const auto& table = gaussian_curve ? ReferenceTables::gaussian_coverage()
                                               : ReferenceTables::ga_coverage();
            const ComparisonReport report =
                compare_to_reference(result, table, strategy, gaussian_curve);
            std::cout << format_report(report, cfg);
        } else if (*cmd_plot) {
            const SweepResult result = read_csv(plot_csv);
            PlotOptions options;
            options.title = plot_title;
            if (plot_reference == "ga")
                options.references["reference ga"] = ReferenceTables::ga_coverage();
            else if (plot_reference == "gaussian")
                options.references["reference gaussian"] = ReferenceTables::gaussian_coverage();
            else if (plot_reference != "none")
                throw config_error("plot supports --reference ga, gaussian or none");
            const fs::path svg = out / plot_svg_name;
            emit_plot(result, svg, options);
            std::cout << "plot: " << svg.string() << '\n';
        }
        return 0;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
