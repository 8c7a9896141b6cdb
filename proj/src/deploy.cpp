#include "covlab/deploy.hpp"

#include <random>
#include <stdexcept>

namespace covlab {

Deployment deploy_uniform(const Field& field, int n, double sensing_radius, Seed seed) {
    field.validate();
    if (n < 0) throw std::invalid_argument("deploy_uniform: n must be >= 0");
    if (!(sensing_radius > 0.0))
        throw std::invalid_argument("deploy_uniform: sensing radius must be positive");

    Deployment dep;
    dep.field = field;
    dep.sensors.reserve(n);
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> ux(0.0, field.width);
    std::uniform_real_distribution<double> uy(0.0, field.height);
    for (int i = 0; i < n; ++i) {
        const double x = ux(rng);
        const double y = uy(rng);
        dep.sensors.push_back({i + 1, {x, y}, sensing_radius});
    }
    return dep;
}

Deployment deploy_gaussian(const Field& field, int n, double sensing_radius,
                           const GaussianParams& params, Seed seed) {
    field.validate();
    if (n < 0) throw std::invalid_argument("deploy_gaussian: n must be >= 0");
    if (!(sensing_radius > 0.0))
        throw std::invalid_argument("deploy_gaussian: sensing radius must be positive");
    if (!(params.sigma_x > 0.0) || !(params.sigma_y > 0.0))
        throw std::invalid_argument("deploy_gaussian: sigmas must be positive");

    // 5000 rejected draws in a row indicate an in-field acceptance rate well
    // below 1%; treat the parameters as degenerate rather than spin.
    constexpr int kMaxTriesPerSensor = 5000;

    Deployment dep;
    dep.field = field;
    dep.sensors.reserve(n);
    const Rect bounds = field.rect();
    auto rng = make_rng(seed);
    std::normal_distribution<double> gx(0.0, params.sigma_x);
    std::normal_distribution<double> gy(0.0, params.sigma_y);
    for (int i = 0; i < n; ++i) {
        Point p;
        int tries = 0;
        do {
            if (++tries > kMaxTriesPerSensor)
                throw std::runtime_error(
                    "deploy_gaussian: degenerate params, samples almost never land in-field");
            p.x = field.base_station.x + gx(rng);
            p.y = field.base_station.y + gy(rng);
        } while (!bounds.contains(p));
        dep.sensors.push_back({i + 1, p, sensing_radius});
    }
    return dep;
}

}  // namespace covlab
