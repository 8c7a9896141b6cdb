#pragma once

#include <random>
#include <utility>
#include <vector>

#include "covlab/coverage.hpp"
#include "covlab/geometry.hpp"
#include "covlab/rng.hpp"

namespace covlab {

// One node of a candidate placement: id, position within the owning subarea,
// and the node's clipped coverage area. coverage < 0 marks a stale cache.
struct Gene {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double coverage = -1.0;
};

// A candidate deployment of one subarea's nodes. fitness < 0 marks a stale
// cache; when fresh it equals the union coverage fraction of the decoded
// placement, clipped to the subarea.
struct Chromosome {
    std::vector<Gene> genes;
    double fitness = -1.0;

    bool evaluated() const { return fitness >= 0.0; }
};

using Population = std::vector<Chromosome>;

struct GaParams {
    int population_size = 100;
    double crossover_rate = 0.85;
    double mutation_rate = 0.05;
    double elite_fraction = 0.01;
    double epsilon_stop = 0.001;
    int max_generations = 50;
    int target_per_subarea = 50;
    double sensing_radius = 5.0;
    // Fitness grid resolution; 0 selects sensing_radius / 10.
    double resolution = 0.0;

    double effective_resolution() const {
        return resolution > 0.0 ? resolution : sensing_radius / 10.0;
    }
    int elite_count() const;
    void validate() const;
};

struct GenerationStats {
    int generation = 0;  // 0 is the initial population
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
};

enum class StopReason { converged, generation_cap };

struct GaHistory {
    std::vector<GenerationStats> generations;
    StopReason reason = StopReason::generation_cap;
};

// Evaluates chromosomes against one subarea with a reusable rasterization
// buffer. Refreshes stale per-gene clipped coverage caches as a side effect.
class SubareaEvaluator {
  public:
    SubareaEvaluator(const Rect& subarea, const GaParams& params);
    void evaluate(Chromosome& c);
    const Rect& subarea() const { return subarea_; }

  private:
    Rect subarea_;
    double radius_;
    CoverageGrid grid_;
};

// population_size independent uniform placements of `quota` nodes, all
// evaluated, gene ids 1..quota by position.
Population init_population(const Rect& subarea, int quota, const GaParams& params, Seed seed);

// Samples three distinct chromosomes uniformly, then draws two of the three
// without replacement with probability proportional to fitness. Falls back to
// a uniform draw when the remaining weights are all zero.
std::pair<Chromosome, Chromosome> select_parents(const Population& pop, std::mt19937_64& rng);

// Two-point crossover at the given cuts: children swap the gene slice [i, j).
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, int i,
                                               int j);

// Two-point crossover at uniformly drawn cuts 0 <= i <= j <= n.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            std::mt19937_64& rng);

// Each gene independently receives fresh uniform coordinates inside the
// subarea with probability `rate`; ids are preserved.
Chromosome mutate(const Chromosome& c, double rate, const Rect& subarea, std::mt19937_64& rng);

// Generational loop: offspring pool of population_size built via
// select/crossover/mutate, merged with the parents, sorted by fitness and
// truncated back to population_size. Stops when the best fitness improves by
// less than epsilon_stop between consecutive generations or at the
// generation cap.
std::pair<Chromosome, GaHistory> evolve(const Rect& subarea, int quota, const GaParams& params,
                                        Seed seed);

struct OptimizeResult {
    Deployment deployment;
    CoverageReport report;  // union estimate of the merged deployment
    std::vector<GaHistory> histories;
    SubareaGrid subareas;
    // Area-weighted total of the per-subarea coverages; cross-checks the
    // merged union estimate.
    double weighted_total = 0.0;
};

// Partitions the field, evolves every subarea independently (OpenMP-parallel,
// one derived seed per subarea), and merges the best chromosomes into a
// single deployment. jobs = 1 forces serial execution; 0 uses all threads.
OptimizeResult optimize_field(const Field& field, int n, const GaParams& params, Seed seed,
                              int jobs = 0);

}  // namespace covlab
