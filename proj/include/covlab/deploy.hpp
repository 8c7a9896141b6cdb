#pragma once

#include "covlab/geometry.hpp"
#include "covlab/rng.hpp"

namespace covlab {

struct GaussianParams {
    double sigma_x = 0.0;
    double sigma_y = 0.0;
};

// n sensors i.i.d. uniform over the field, ids 1..n, deterministic per seed.
Deployment deploy_uniform(const Field& field, int n, double sensing_radius, Seed seed);

// n sensors drawn from the bivariate normal centered at the base station with
// independent axes, rejection-resampled until inside the field. Throws when
// the in-field acceptance rate is pathologically low.
Deployment deploy_gaussian(const Field& field, int n, double sensing_radius,
                           const GaussianParams& params, Seed seed);

}  // namespace covlab
