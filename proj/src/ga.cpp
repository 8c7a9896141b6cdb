#include "covlab/ga.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace covlab {

int GaParams::elite_count() const {
    return std::max(1, static_cast<int>(std::lround(elite_fraction * population_size)));
}

void GaParams::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(crossover_rate) || !in_unit(mutation_rate) || !in_unit(elite_fraction))
        throw std::invalid_argument("ga params: rates must lie in [0, 1]");
    if (population_size < 4) throw std::invalid_argument("ga params: population_size must be >= 4");
    if (max_generations < 1) throw std::invalid_argument("ga params: max_generations must be >= 1");
    if (target_per_subarea < 1)
        throw std::invalid_argument("ga params: target_per_subarea must be >= 1");
    if (!(sensing_radius > 0.0))
        throw std::invalid_argument("ga params: sensing_radius must be positive");
    if (!(epsilon_stop >= 0.0)) throw std::invalid_argument("ga params: epsilon_stop must be >= 0");
    if (effective_resolution() > sensing_radius / 5.0)
        throw std::invalid_argument("ga params: resolution too coarse to resolve disks");
}

SubareaEvaluator::SubareaEvaluator(const Rect& subarea, const GaParams& params)
    : subarea_(subarea),
      radius_(params.sensing_radius),
      grid_(make_coverage_grid(subarea, params.effective_resolution())) {}

void SubareaEvaluator::evaluate(Chromosome& c) {
    grid_.clear();
    for (Gene& g : c.genes) {
        grid_.mark_disk(g.x, g.y, radius_);
        if (g.coverage < 0.0) g.coverage = disk_rect_area({g.x, g.y}, radius_, subarea_);
    }
    c.fitness = grid_.fraction();
}

namespace {

void check_in_bounds(const Population& pop, const Rect& subarea) {
    for (const Chromosome& c : pop)
        for (const Gene& g : c.genes)
            if (!subarea.contains({g.x, g.y}))
                throw std::logic_error("ga: gene escaped its subarea");
}

Population init_population_impl(const Rect& subarea, int quota, const GaParams& params,
                                std::mt19937_64& rng, SubareaEvaluator& eval) {
    std::uniform_real_distribution<double> ux(subarea.x0, subarea.x1);
    std::uniform_real_distribution<double> uy(subarea.y0, subarea.y1);
    Population pop(params.population_size);
    for (Chromosome& c : pop) {
        c.genes.resize(quota);
        for (int i = 0; i < quota; ++i) {
            c.genes[i].id = i + 1;
            c.genes[i].x = ux(rng);
            c.genes[i].y = uy(rng);
        }
        eval.evaluate(c);
    }
    return pop;
}

// Roulette draw over non-negative weights; uniform among `live` entries when
// the total weight is zero.
template <std::size_t N>
int roulette_pick(const std::array<double, N>& weights, const std::array<bool, N>& live,
                  std::mt19937_64& rng) {
    double total = 0.0;
    int live_count = 0;
    for (std::size_t i = 0; i < N; ++i)
        if (live[i]) {
            total += std::max(0.0, weights[i]);
            ++live_count;
        }
    if (total <= 0.0) {
        std::uniform_int_distribution<int> pick(0, live_count - 1);
        int k = pick(rng);
        for (std::size_t i = 0; i < N; ++i)
            if (live[i] && k-- == 0) return static_cast<int>(i);
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double r = u(rng);
    int last = -1;
    for (std::size_t i = 0; i < N; ++i) {
        if (!live[i]) continue;
        last = static_cast<int>(i);
        r -= std::max(0.0, weights[i]);
        if (r <= 0.0) return last;
    }
    return last;
}

double best_fitness(const Population& pop) {
    double best = 0.0;
    for (const Chromosome& c : pop) best = std::max(best, c.fitness);
    return best;
}

double mean_fitness(const Population& pop) {
    double sum = 0.0;
    for (const Chromosome& c : pop) sum += c.fitness;
    return pop.empty() ? 0.0 : sum / pop.size();
}

}  // namespace

Population init_population(const Rect& subarea, int quota, const GaParams& params, Seed seed) {
    params.validate();
    if (quota < 1) throw std::invalid_argument("init_population: quota must be >= 1");
    auto rng = make_rng(seed);
    SubareaEvaluator eval(subarea, params);
    return init_population_impl(subarea, quota, params, rng, eval);
}

std::pair<Chromosome, Chromosome> select_parents(const Population& pop, std::mt19937_64& rng) {
    const int n = static_cast<int>(pop.size());
    if (n < 3) throw std::invalid_argument("select_parents: population must have >= 3 members");

    // Three distinct indices, uniform over the population.
    std::array<int, 3> idx{};
    idx[0] = std::uniform_int_distribution<int>(0, n - 1)(rng);
    idx[1] = std::uniform_int_distribution<int>(0, n - 2)(rng);
    if (idx[1] >= idx[0]) ++idx[1];
    idx[2] = std::uniform_int_distribution<int>(0, n - 3)(rng);
    {
        int lo = std::min(idx[0], idx[1]);
        int hi = std::max(idx[0], idx[1]);
        if (idx[2] >= lo) ++idx[2];
        if (idx[2] >= hi) ++idx[2];
    }

    std::array<double, 3> weights{pop[idx[0]].fitness, pop[idx[1]].fitness, pop[idx[2]].fitness};
    std::array<bool, 3> live{true, true, true};
    const int first = roulette_pick(weights, live, rng);
    live[first] = false;
    const int second = roulette_pick(weights, live, rng);
    return {pop[idx[first]], pop[idx[second]]};
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, int i,
                                               int j) {
    const int n = static_cast<int>(a.genes.size());
    if (b.genes.size() != a.genes.size())
        throw std::invalid_argument("crossover: parents must have equal gene counts");
    if (i < 0 || j < i || j > n) throw std::invalid_argument("crossover: bad cut points");

    auto children = std::make_pair(a, b);
    if (i == j) return children;
    std::swap_ranges(children.first.genes.begin() + i, children.first.genes.begin() + j,
                     children.second.genes.begin() + i);
    children.first.fitness = -1.0;
    children.second.fitness = -1.0;
    return children;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            std::mt19937_64& rng) {
    const int n = static_cast<int>(a.genes.size());
    std::uniform_int_distribution<int> cut(0, n);
    int i = cut(rng);
    int j = cut(rng);
    if (i > j) std::swap(i, j);
    return crossover_at(a, b, i, j);
}

Chromosome mutate(const Chromosome& c, double rate, const Rect& subarea, std::mt19937_64& rng) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutate: rate must lie in [0, 1]");
    Chromosome out = c;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> ux(subarea.x0, subarea.x1);
    std::uniform_real_distribution<double> uy(subarea.y0, subarea.y1);
    bool changed = false;
    for (Gene& g : out.genes) {
        if (u01(rng) < rate) {
            g.x = ux(rng);
            g.y = uy(rng);
            g.coverage = -1.0;
            changed = true;
        }
    }
    if (changed) out.fitness = -1.0;
    return out;
}

std::pair<Chromosome, GaHistory> evolve(const Rect& subarea, int quota, const GaParams& params,
                                        Seed seed) {
    params.validate();
    if (quota < 1) throw std::invalid_argument("evolve: quota must be >= 1");

    // Separate streams for the initial spread and the generational loop.
    auto init_rng = make_rng(derive_seed(seed, 0));
    auto rng = make_rng(derive_seed(seed, 1));
    SubareaEvaluator eval(subarea, params);

    Population pop = init_population_impl(subarea, quota, params, init_rng, eval);

    GaHistory history;
    history.reason = StopReason::generation_cap;
    history.generations.push_back({0, best_fitness(pop), mean_fitness(pop)});
    double prev_best = history.generations.back().best_fitness;

    const std::size_t pool = static_cast<std::size_t>(params.population_size);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (int gen = 1; gen <= params.max_generations; ++gen) {
        Population offspring;
        offspring.reserve(pool);
        while (offspring.size() < pool) {
            auto [a, b] = select_parents(pop, rng);
            std::pair<Chromosome, Chromosome> children;
            if (u01(rng) < params.crossover_rate)
                children = crossover(a, b, rng);
            else
                children = {std::move(a), std::move(b)};
            children.first = mutate(children.first, params.mutation_rate, subarea, rng);
            children.second = mutate(children.second, params.mutation_rate, subarea, rng);
            offspring.push_back(std::move(children.first));
            if (offspring.size() < pool) offspring.push_back(std::move(children.second));
        }
        for (Chromosome& c : offspring)
            if (!c.evaluated()) eval.evaluate(c);

        // Intermediate pool of twice the population; the strongest half
        // survives, which carries the elites implicitly.
        Population merged;
        merged.reserve(pop.size() + offspring.size());
        std::move(pop.begin(), pop.end(), std::back_inserter(merged));
        std::move(offspring.begin(), offspring.end(), std::back_inserter(merged));
        std::stable_sort(merged.begin(), merged.end(),
                         [](const Chromosome& x, const Chromosome& y) {
                             return x.fitness > y.fitness;
                         });
        merged.resize(pool);
        pop = std::move(merged);
        check_in_bounds(pop, subarea);

        const double best = pop.front().fitness;
        history.generations.push_back({gen, best, mean_fitness(pop)});
        if (best + 1e-15 < prev_best) throw std::logic_error("ga: best fitness decreased");
        if (std::abs(best - prev_best) < params.epsilon_stop) {
            history.reason = StopReason::converged;
            break;
        }
        prev_best = best;
    }

    Chromosome best = pop.front();
    for (const Chromosome& c : pop)
        if (c.fitness > best.fitness) best = c;
    return {std::move(best), std::move(history)};
}

OptimizeResult optimize_field(const Field& field, int n, const GaParams& params, Seed seed,
                              int jobs) {
    params.validate();
    if (n < 1) throw std::invalid_argument("optimize_field: n must be >= 1");

    OptimizeResult result;
    result.subareas = partition(field, n, params.target_per_subarea);
    const int cells = result.subareas.cell_count();
    std::vector<std::pair<Chromosome, GaHistory>> evolved(cells);

    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (jobs != 1)
    for (int k = 0; k < cells; ++k) {
        evolved[k] = evolve(result.subareas.cells[k], result.subareas.node_quota[k], params,
                            derive_seed(seed, static_cast<std::uint64_t>(k)));
    }

    result.deployment.field = field;
    result.deployment.sensors.reserve(n);
    int next_id = 1;
    for (int k = 0; k < cells; ++k) {
        const Chromosome& best = evolved[k].first;
        for (const Gene& g : best.genes)
            result.deployment.sensors.push_back({next_id++, {g.x, g.y}, params.sensing_radius});
        result.histories.push_back(std::move(evolved[k].second));
    }

    // Reported per-subarea coverage is re-measured against the merged
    // deployment: disks near a border also cover their neighbours, which the
    // clipped evolution fitness deliberately ignores. Measuring the final
    // layout region by region keeps the area-weighted total consistent with
    // the merged union.
    std::vector<std::pair<double, double>> coverage_and_area;
    coverage_and_area.reserve(cells);
    for (int k = 0; k < cells; ++k) {
        CoverageGrid grid =
            make_coverage_grid(result.subareas.cells[k], params.effective_resolution());
        fill_union(grid, result.deployment.sensors);
        result.report.per_subarea.emplace_back(k, grid.fraction());
        coverage_and_area.emplace_back(grid.fraction(), result.subareas.cells[k].area());
    }
    result.weighted_total = total_fitness(coverage_and_area, field);

    CoverageReport merged = union_coverage(result.deployment, params.effective_resolution());
    result.report.union_fraction = merged.union_fraction;
    result.report.naive_sum_fraction = merged.naive_sum_fraction;
    result.report.overlap_excess = merged.overlap_excess;
    return result;
}

}  // namespace covlab
