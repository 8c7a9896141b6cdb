#include "covlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"  // nlohmann JSON single header

#include "covlab/bidding.hpp"
#include "covlab/coverage.hpp"

namespace covlab {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::bidding: return "bidding";
        case Strategy::dss: return "dss";
        case Strategy::ga: return "ga";
        case Strategy::gaussian: return "gaussian";
        case Strategy::uniform: return "uniform";
    }
    throw std::logic_error("unknown strategy value");
}

Strategy strategy_from_string(const std::string& name) {
    for (Strategy s : {Strategy::bidding, Strategy::dss, Strategy::ga, Strategy::gaussian,
                       Strategy::uniform})
        if (name == to_string(s)) return s;
    throw config_error("unknown strategy '" + name +
                       "' (expected bidding|dss|ga|gaussian|uniform)");
}

double ExperimentConfig::effective_resolution() const {
    return resolution > 0.0 ? resolution : sensing_radius / 10.0;
}

GaussianParams ExperimentConfig::effective_gaussian() const {
    GaussianParams g = gaussian;
    if (g.sigma_x <= 0.0) g.sigma_x = field.width / 4.0;
    if (g.sigma_y <= 0.0) g.sigma_y = field.height / 4.0;
    return g;
}

double ExperimentConfig::effective_comm_range() const {
    return dss.motion.comm_range > 0.0 ? dss.motion.comm_range : 2.0 * sensing_radius;
}

GaParams ExperimentConfig::effective_ga() const {
    GaParams p = ga;
    p.sensing_radius = sensing_radius;
    p.resolution = resolution;
    return p;
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw config_error("config: " + msg); };
    try {
        field.validate();
    } catch (const std::exception& e) {
        fail(e.what());
    }
    if (!std::isfinite(sensing_radius) || !(sensing_radius > 0.0))
        fail("sensing_radius must be positive");
    if (!std::isfinite(resolution) || resolution < 0.0) fail("resolution must be >= 0");
    if (effective_resolution() > sensing_radius / 5.0)
        fail("resolution must be at most sensing_radius / 5");
    if (strategies.empty()) fail("strategies must not be empty");
    if (node_counts.empty()) fail("node_counts must not be empty");
    for (int n : node_counts)
        if (n < 1) fail("node_counts entries must be >= 1");
    if (seeds.empty()) fail("seeds must not be empty");
    try {
        effective_ga().validate();
    } catch (const std::exception& e) {
        fail(e.what());
    }
    if (gaussian.sigma_x < 0.0 || gaussian.sigma_y < 0.0)
        fail("gaussian sigmas must be >= 0 (0 selects field dimension / 4)");
    if (!(bidding.mobile_fraction >= 0.0 && bidding.mobile_fraction < 1.0))
        fail("bidding.mobile_fraction must lie in [0, 1)");
    if (bidding.max_rounds < 1) fail("bidding.max_rounds must be >= 1");
    if (dss.motion.comm_range < 0.0)
        fail("dss.comm_range must be >= 0 (0 selects 2 * sensing_radius)");
    if (!(dss.init_sigma_fraction > 0.0)) fail("dss.init_sigma_fraction must be positive");
    DssParams motion = dss.motion;
    motion.comm_range = effective_comm_range();
    try {
        motion.validate();
    } catch (const std::exception& e) {
        fail(e.what());
    }
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw config_error("config: unknown key '" + it.key() + "' in " + where);
    }
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw config_error("config: " + where + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw config_error("config: " + where + " must be an integer");
    return v.get<int>();
}

bool as_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) throw config_error("config: " + where + " must be a boolean");
    return v.get<bool>();
}

std::uint64_t as_seed(const json& v, const std::string& where) {
    if (!v.is_number_unsigned())
        throw config_error("config: " + where + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("config: top level must be an object");
    check_keys(doc, "top level",
               {"schema_version", "field", "sensing_radius", "resolution", "strategy",
                "strategies", "node_counts", "seeds", "record_timing", "ga", "gaussian",
                "bidding", "dss"});
    if (!doc.contains("schema_version")) throw config_error("config: schema_version is required");
    if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != 1)
        throw config_error("config: unsupported schema_version (expected 1)");

    ExperimentConfig cfg;
    if (doc.contains("field")) {
        const json& f = doc["field"];
        if (!f.is_object()) throw config_error("config: field must be an object");
        check_keys(f, "field", {"width", "height", "base_station"});
        double w = cfg.field.width;
        double h = cfg.field.height;
        if (f.contains("width")) w = as_number(f["width"], "field.width");
        if (f.contains("height")) h = as_number(f["height"], "field.height");
        Field fld;
        fld.width = w;
        fld.height = h;
        fld.base_station = {w / 2.0, h / 2.0};
        if (f.contains("base_station")) {
            const json& b = f["base_station"];
            if (!b.is_object()) throw config_error("config: field.base_station must be an object");
            check_keys(b, "field.base_station", {"x", "y"});
            if (b.contains("x")) fld.base_station.x = as_number(b["x"], "field.base_station.x");
            if (b.contains("y")) fld.base_station.y = as_number(b["y"], "field.base_station.y");
        }
        cfg.field = fld;  // range checks happen in validate()
    }
    if (doc.contains("sensing_radius"))
        cfg.sensing_radius = as_number(doc["sensing_radius"], "sensing_radius");
    if (doc.contains("resolution")) cfg.resolution = as_number(doc["resolution"], "resolution");
    if (doc.contains("record_timing"))
        cfg.record_timing = as_bool(doc["record_timing"], "record_timing");

    if (doc.contains("strategy") && doc.contains("strategies"))
        throw config_error("config: give either strategy or strategies, not both");
    if (doc.contains("strategy")) {
        if (!doc["strategy"].is_string())
            throw config_error("config: strategy must be a string");
        cfg.strategies = {strategy_from_string(doc["strategy"].get<std::string>())};
    }
    if (doc.contains("strategies")) {
        const json& arr = doc["strategies"];
        if (!arr.is_array() || arr.empty())
            throw config_error("config: strategies must be a non-empty array");
        cfg.strategies.clear();
        for (const json& v : arr) {
            if (!v.is_string()) throw config_error("config: strategies entries must be strings");
            cfg.strategies.push_back(strategy_from_string(v.get<std::string>()));
        }
    }

    if (doc.contains("node_counts")) {
        const json& arr = doc["node_counts"];
        if (!arr.is_array()) throw config_error("config: node_counts must be an array");
        cfg.node_counts.clear();
        for (const json& v : arr) cfg.node_counts.push_back(as_int(v, "node_counts entry"));
    }
    if (doc.contains("seeds")) {
        const json& arr = doc["seeds"];
        if (!arr.is_array()) throw config_error("config: seeds must be an array");
        cfg.seeds.clear();
        for (const json& v : arr) cfg.seeds.push_back(as_seed(v, "seeds entry"));
    }

    if (doc.contains("ga")) {
        const json& g = doc["ga"];
        if (!g.is_object()) throw config_error("config: ga must be an object");
        check_keys(g, "ga",
                   {"population_size", "crossover_rate", "mutation_rate", "elite_fraction",
                    "epsilon_stop", "max_generations", "target_per_subarea"});
        if (g.contains("population_size"))
            cfg.ga.population_size = as_int(g["population_size"], "ga.population_size");
        if (g.contains("crossover_rate"))
            cfg.ga.crossover_rate = as_number(g["crossover_rate"], "ga.crossover_rate");
        if (g.contains("mutation_rate"))
            cfg.ga.mutation_rate = as_number(g["mutation_rate"], "ga.mutation_rate");
        if (g.contains("elite_fraction"))
            cfg.ga.elite_fraction = as_number(g["elite_fraction"], "ga.elite_fraction");
        if (g.contains("epsilon_stop"))
            cfg.ga.epsilon_stop = as_number(g["epsilon_stop"], "ga.epsilon_stop");
        if (g.contains("max_generations"))
            cfg.ga.max_generations = as_int(g["max_generations"], "ga.max_generations");
        if (g.contains("target_per_subarea"))
            cfg.ga.target_per_subarea = as_int(g["target_per_subarea"], "ga.target_per_subarea");
    }
    if (doc.contains("gaussian")) {
        const json& g = doc["gaussian"];
        if (!g.is_object()) throw config_error("config: gaussian must be an object");
        check_keys(g, "gaussian", {"sigma_x", "sigma_y"});
        if (g.contains("sigma_x")) cfg.gaussian.sigma_x = as_number(g["sigma_x"], "gaussian.sigma_x");
        if (g.contains("sigma_y")) cfg.gaussian.sigma_y = as_number(g["sigma_y"], "gaussian.sigma_y");
    }
    if (doc.contains("bidding")) {
        const json& b = doc["bidding"];
        if (!b.is_object()) throw config_error("config: bidding must be an object");
        check_keys(b, "bidding", {"mobile_fraction", "max_rounds"});
        if (b.contains("mobile_fraction"))
            cfg.bidding.mobile_fraction = as_number(b["mobile_fraction"], "bidding.mobile_fraction");
        if (b.contains("max_rounds"))
            cfg.bidding.max_rounds = as_int(b["max_rounds"], "bidding.max_rounds");
    }
    if (doc.contains("dss")) {
        const json& d = doc["dss"];
        if (!d.is_object()) throw config_error("config: dss must be an object");
        check_keys(d, "dss",
                   {"comm_range", "step_scale", "max_iters", "oscillation_window",
                    "min_displacement", "init_sigma_fraction"});
        if (d.contains("comm_range"))
            cfg.dss.motion.comm_range = as_number(d["comm_range"], "dss.comm_range");
        if (d.contains("step_scale"))
            cfg.dss.motion.step_scale = as_number(d["step_scale"], "dss.step_scale");
        if (d.contains("max_iters")) cfg.dss.motion.max_iters = as_int(d["max_iters"], "dss.max_iters");
        if (d.contains("oscillation_window"))
            cfg.dss.motion.oscillation_window =
                as_int(d["oscillation_window"], "dss.oscillation_window");
        if (d.contains("min_displacement"))
            cfg.dss.motion.min_displacement =
                as_number(d["min_displacement"], "dss.min_displacement");
        if (d.contains("init_sigma_fraction"))
            cfg.dss.init_sigma_fraction =
                as_number(d["init_sigma_fraction"], "dss.init_sigma_fraction");
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

// Longest per-subarea generation count; the subareas evolve in lockstep under
// the parallel contract, so this is the sweep's step count for a GA cell.
int ga_steps(const std::vector<GaHistory>& histories) {
    int steps = 0;
    for (const GaHistory& h : histories)
        steps = std::max(steps, static_cast<int>(h.generations.size()) - 1);
    return steps;
}

}  // namespace

SweepRow run_job(const ExperimentConfig& cfg, Strategy strategy, int n, std::uint64_t seed) {
    SweepRow row;
    row.strategy = strategy;
    row.n = n;
    row.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    const double res = cfg.effective_resolution();
    const Seed master{seed};

    switch (strategy) {
        case Strategy::uniform: {
            const Deployment dep = deploy_uniform(cfg.field, n, cfg.sensing_radius, master);
            row.coverage = union_coverage(dep, res).union_fraction;
            break;
        }
        case Strategy::gaussian: {
            const Deployment dep = deploy_gaussian(cfg.field, n, cfg.sensing_radius,
                                                   cfg.effective_gaussian(), master);
            row.coverage = union_coverage(dep, res).union_fraction;
            break;
        }
        case Strategy::ga: {
            const OptimizeResult r = optimize_field(cfg.field, n, cfg.effective_ga(), master);
            row.coverage = r.report.union_fraction;
            row.steps = ga_steps(r.histories);
            break;
        }
        case Strategy::bidding: {
            int n_mobile = static_cast<int>(std::lround(n * cfg.bidding.mobile_fraction));
            if (n_mobile >= n) n_mobile = n - 1;  // keep at least one hole detector
            const int n_static = n - n_mobile;
            const Deployment statics =
                deploy_uniform(cfg.field, n_static, cfg.sensing_radius, derive_seed(master, 0));
            std::vector<MobileSensor> mobiles;
            if (n_mobile > 0) {
                const Deployment md = deploy_uniform(cfg.field, n_mobile, cfg.sensing_radius,
                                                     derive_seed(master, 1));
                mobiles.reserve(md.sensors.size());
                for (const Sensor& s : md.sensors) mobiles.push_back({s, 0.0, false});
            }
            BiddingParams bp;
            bp.sensing_radius = cfg.sensing_radius;
            bp.max_rounds = cfg.bidding.max_rounds;
            const BiddingResult br = run_bidding(statics, std::move(mobiles), bp);
            row.coverage = union_coverage(br.deployment, res).union_fraction;
            row.steps = static_cast<int>(br.rounds.size());
            break;
        }
        case Strategy::dss: {
            GaussianParams init;
            init.sigma_x = cfg.dss.init_sigma_fraction * cfg.field.width;
            init.sigma_y = cfg.dss.init_sigma_fraction * cfg.field.height;
            const Deployment start = deploy_gaussian(cfg.field, n, cfg.sensing_radius, init,
                                                     derive_seed(master, 0));
            DssParams motion = cfg.dss.motion;
            motion.comm_range = cfg.effective_comm_range();
            const DssResult dr = dss_run(start, motion, derive_seed(master, 1));
            row.coverage = union_coverage(dr.deployment, res).union_fraction;
            row.steps = dr.iterations;
            break;
        }
    }

    if (cfg.record_timing) {
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
    return row;
}

namespace {

constexpr const char* kCsvHeader = "strategy,n,seed,coverage,steps,wall_ms";

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_row(std::string& out, const SweepRow& row) {
    char buf[128];
    std::snprintf(buf, sizeof buf, ",%d,%llu,%.6f,%d,%lld\n", row.n,
                  static_cast<unsigned long long>(row.seed), row.coverage, row.steps,
                  row.wall_ms);
    out += csv_escape(to_string(row.strategy));
    out += buf;
}

}  // namespace

std::string csv_string(const SweepResult& result) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const SweepRow& row : result.rows) append_row(out, row);
    return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open CSV for writing: " + path.string());
    out << csv_string(result);
    out.flush();
    if (!out) throw std::runtime_error("failed writing CSV: " + path.string());
}

namespace {

// RFC-4180 state machine; quoted fields may hold commas, quotes and newlines.
std::vector<std::vector<std::string>> parse_csv_text(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> current;
    std::string field;
    bool in_quotes = false;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto end_field = [&] {
        current.push_back(field);
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(current));
        current.clear();
    };
    while (i < n) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                continue;
            }
            field += c;
            ++i;
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            ++i;
            continue;
        }
        if (c == ',') {
            end_field();
            ++i;
            continue;
        }
        if (c == '\r') {
            end_record();
            i += (i + 1 < n && text[i + 1] == '\n') ? 2 : 1;
            continue;
        }
        if (c == '\n') {
            end_record();
            ++i;
            continue;
        }
        field += c;
        ++i;
    }
    if (in_quotes) throw std::runtime_error("unterminated quote in CSV");
    if (!field.empty() || !current.empty()) end_record();
    return records;
}

}  // namespace

SweepResult read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read CSV: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    auto records = parse_csv_text(ss.str());
    std::erase_if(records, [](const std::vector<std::string>& r) {
        return r.size() == 1 && r[0].empty();
    });
    if (records.empty()) throw std::runtime_error("empty CSV: " + path.string());
    const std::vector<std::string> header{"strategy", "n", "seed", "coverage", "steps", "wall_ms"};
    if (records.front() != header)
        throw std::runtime_error("unexpected CSV header in " + path.string());

    SweepResult result;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const std::vector<std::string>& rec = records[r];
        const std::string where = path.string() + ": row " + std::to_string(r + 1);
        if (rec.size() != 6)
            throw std::runtime_error(where + " has " + std::to_string(rec.size()) +
                                     " fields, expected 6");
        SweepRow row;
        try {
            row.strategy = strategy_from_string(rec[0]);
            row.n = std::stoi(rec[1]);
            row.seed = std::stoull(rec[2]);
            row.coverage = std::stod(rec[3]);
            row.steps = std::stoi(rec[4]);
            row.wall_ms = std::stoll(rec[5]);
        } catch (const std::exception&) {
            throw std::runtime_error(where + " is malformed");
        }
        result.rows.push_back(row);
    }
    return result;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& csv_path,
                      int jobs) {
    cfg.validate();

    std::vector<Strategy> strategies = cfg.strategies;
    std::sort(strategies.begin(), strategies.end());
    strategies.erase(std::unique(strategies.begin(), strategies.end()), strategies.end());
    std::vector<int> counts = cfg.node_counts;
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
    std::vector<std::uint64_t> seeds = cfg.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    struct Cell {
        Strategy s;
        int n;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    cells.reserve(strategies.size() * counts.size() * seeds.size());
    for (Strategy s : strategies)
        for (int n : counts)
            for (std::uint64_t seed : seeds) cells.push_back({s, n, seed});

    std::ofstream out;
    const bool streaming = !csv_path.empty();
    if (streaming) {
        out.open(csv_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open CSV for writing: " + csv_path.string());
        out << kCsvHeader << '\n';
        out.flush();
        if (!out) throw std::runtime_error("failed writing CSV: " + csv_path.string());
    }

    SweepResult result;
    result.rows.resize(cells.size());
    std::vector<char> done(cells.size(), 0);
    std::size_t cursor = 0;
    bool failed = false;
    std::exception_ptr error;
    std::mutex mu;

    const std::int64_t total = static_cast<std::int64_t>(cells.size());
#ifdef _OPENMP
// An inactive region (jobs == 1) lets nested per-subarea parallelism through.
#pragma omp parallel for schedule(dynamic) \
    num_threads(jobs <= 0 ? omp_get_max_threads() : jobs) if (jobs != 1)
#endif
    for (std::int64_t i = 0; i < total; ++i) {
        SweepRow row;
        bool ok = true;
        try {
            row = run_job(cfg, cells[i].s, cells[i].n, cells[i].seed);
        } catch (...) {
            ok = false;
            std::lock_guard<std::mutex> lock(mu);
            failed = true;
            if (!error) error = std::current_exception();
        }
        if (ok) {
            std::lock_guard<std::mutex> lock(mu);
            result.rows[i] = row;
            done[i] = 1;
            // Flush every finished row that is next in canonical order, so a
            // killed sweep still leaves a valid CSV prefix behind.
            while (!failed && cursor < done.size() && done[cursor]) {
                if (streaming) {
                    std::string line;
                    append_row(line, result.rows[cursor]);
                    out << line;
                    out.flush();
                }
                ++cursor;
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return result;
}

std::map<Strategy, std::map<int, double>> strategy_means(const SweepResult& result) {
    std::map<Strategy, std::map<int, std::pair<double, int>>> acc;
    for (const SweepRow& row : result.rows) {
        auto& [sum, count] = acc[row.strategy][row.n];
        sum += row.coverage;
        count += 1;
    }
    std::map<Strategy, std::map<int, double>> means;
    for (const auto& [s, by_n] : acc)
        for (const auto& [n, sc] : by_n) means[s][n] = sc.first / sc.second;
    return means;
}

const std::map<int, double>& ReferenceTables::ga_coverage() {
    static const std::map<int, double> t{{50, 30.9371},  {100, 43.7516}, {150, 50.5200},
                                         {200, 59.5384}, {250, 66.4327}, {300, 72.9193},
                                         {400, 84.6200}, {500, 93.95},   {550, 98.9833},
                                         {586, 99.99}};
    return t;
}

const std::map<int, double>& ReferenceTables::gaussian_coverage() {
    static const std::map<int, double> t{{100, 35.0}, {200, 51.0}, {300, 63.0}, {400, 74.0},
                                         {500, 82.0}, {600, 88.0}, {700, 92.0}, {800, 95.0},
                                         {900, 97.0}, {1000, 99.99}};
    return t;
}

ComparisonReport compare_to_reference(const SweepResult& result,
                                      const std::map<int, double>& table, Strategy strategy,
                                      bool shape_only) {
    ComparisonReport report;
    report.strategy = strategy;
    report.shape_only = shape_only;

    std::map<int, std::vector<double>> samples;
    for (const SweepRow& row : result.rows)
        if (row.strategy == strategy) samples[row.n].push_back(row.coverage);

    for (const auto& [n, reference] : table) {
        auto it = samples.find(n);
        if (it == samples.end() || it->second.empty()) {
            report.missing.push_back(n);
            continue;
        }
        const std::vector<double>& xs = it->second;
        ReferenceEntry e;
        e.n = n;
        e.runs = static_cast<int>(xs.size());
        double sum = 0.0;
        for (double x : xs) sum += x;
        e.mean = sum / static_cast<double>(xs.size());
        if (xs.size() > 1) {
            double ss = 0.0;
            for (double x : xs) ss += (x - e.mean) * (x - e.mean);
            e.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
        }
        e.reference = reference;
        e.delta = e.mean * 100.0 - reference;
        report.entries.push_back(e);
    }
    for (std::size_t i = 1; i < report.entries.size(); ++i)
        if (report.entries[i].mean < report.entries[i - 1].mean - report.slack)
            report.monotone_with_slack = false;
    return report;
}

std::string format_report(const ComparisonReport& report, const ExperimentConfig& cfg) {
    char buf[320];
    std::string out = "reference comparison: strategy ";
    out += to_string(report.strategy);
    out += report.shape_only ? " (shape-only)\n" : "\n";
    std::snprintf(buf, sizeof buf,
                  "note: the published table omits field size, sensing radius and spread\n"
                  "parameters; values below are conditioned on this derived config:\n"
                  "field %.6g x %.6g, sensing radius %.6g, grid resolution %.6g\n",
                  cfg.field.width, cfg.field.height, cfg.sensing_radius,
                  cfg.effective_resolution());
    out += buf;
    if (report.shape_only)
        out += "shape-only: deltas are shown for context, only the trend is claimed\n";
    out += "\n      n  runs      mean    stddev  reference     delta\n";
    for (const ReferenceEntry& e : report.entries) {
        std::snprintf(buf, sizeof buf, "%7d %5d %8.2f%% %8.2f%% %10.4f %+9.4f\n", e.n, e.runs,
                      e.mean * 100.0, e.stddev * 100.0, e.reference, e.delta);
        out += buf;
    }
    if (!report.missing.empty()) {
        out += "missing node counts:";
        for (int n : report.missing) {
            out += ' ';
            out += std::to_string(n);
        }
        out += '\n';
    }
    std::snprintf(buf, sizeof buf, "monotone in n (%.2f slack): %s\n", report.slack,
                  report.monotone_with_slack ? "yes" : "no");
    out += buf;
    return out;
}

}  // namespace covlab
