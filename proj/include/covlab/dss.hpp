#pragma once

#include <random>
#include <vector>

#include "covlab/geometry.hpp"
#include "covlab/rng.hpp"

namespace covlab {

struct DssParams {
    double comm_range = 10.0;
    double step_scale = 0.2;        // fraction of the repulsion actually walked
    int max_iters = 500;
    int oscillation_window = 8;     // how far back to look for a repeated state
    double min_displacement = 1e-3;

    void validate() const;
};

// One synchronous spreading step. Every node is pushed away from each
// neighbour closer than comm_range, harder when its own neighbourhood is
// crowded and when the pair is close; coincident pairs are split along a
// random direction. Positions are clamped to the field. Returns the largest
// distance any node actually moved.
double dss_step(std::vector<Point>& positions, const Field& field, const DssParams& params,
                std::mt19937_64& rng);

enum class DssStop { converged, oscillation, iteration_cap };

struct DssResult {
    Deployment deployment;
    int iterations = 0;
    DssStop stop = DssStop::iteration_cap;
};

// Iterates dss_step until movement dies out, the node layout revisits a
// recent state (the clamped dynamics can settle into a flip-flop), or
// max_iters elapse.
DssResult dss_run(const Deployment& start, const DssParams& params, Seed seed);

}  // namespace covlab
