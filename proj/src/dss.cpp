#include "covlab/dss.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <stdexcept>

namespace covlab {

void DssParams::validate() const {
    if (!(comm_range > 0.0)) throw std::invalid_argument("dss: comm_range must be positive");
    if (!(step_scale > 0.0)) throw std::invalid_argument("dss: step_scale must be positive");
    if (max_iters < 1) throw std::invalid_argument("dss: max_iters must be >= 1");
    if (oscillation_window < 1)
        throw std::invalid_argument("dss: oscillation_window must be >= 1");
    if (!(min_displacement >= 0.0))
        throw std::invalid_argument("dss: min_displacement must be >= 0");
}

double dss_step(std::vector<Point>& positions, const Field& field, const DssParams& params,
                std::mt19937_64& rng) {
    const std::size_t n = positions.size();
    const double rc = params.comm_range;

    std::vector<int> density(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(positions[i], positions[j]) < rc) {
                density[i] += 1;
                density[j] += 1;
            }

    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::vector<Point> push(n, Point{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(positions[i], positions[j]);
            if (d >= rc) continue;
            double ux, uy;
            if (d < 1e-12) {
                // Coincident pair: split along one shared random direction.
                const double theta = angle(rng);
                ux = std::cos(theta);
                uy = std::sin(theta);
            } else {
                ux = (positions[i].x - positions[j].x) / d;
                uy = (positions[i].y - positions[j].y) / d;
            }
            const double closeness = (rc - d) / rc;
            const double fi = params.step_scale * density[i] * closeness;
            const double fj = params.step_scale * density[j] * closeness;
            push[i].x += fi * ux;
            push[i].y += fi * uy;
            push[j].x -= fj * ux;
            push[j].y -= fj * uy;
        }
    }

    const Rect bounds = field.rect();
    double max_moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Point next{positions[i].x + push[i].x, positions[i].y + push[i].y};
        next.x = std::clamp(next.x, bounds.x0, bounds.x1);
        next.y = std::clamp(next.y, bounds.y0, bounds.y1);
        max_moved = std::max(max_moved, distance(positions[i], next));
        positions[i] = next;
    }
    return max_moved;
}

namespace {

// FNV-1a over the raw position bytes; used only to spot revisited layouts.
std::uint64_t layout_hash(const std::vector<Point>& positions) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    for (const Point& p : positions) {
        mix(p.x);
        mix(p.y);
    }
    return h;
}

}  // namespace

DssResult dss_run(const Deployment& start, const DssParams& params, Seed seed) {
    params.validate();
    validate_deployment(start);

    std::vector<Point> positions(start.sensors.size());
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = start.sensors[i].pos;

    std::mt19937_64 rng = make_rng(seed);
    DssResult result;
    result.stop = DssStop::iteration_cap;
    std::deque<std::uint64_t> recent{layout_hash(positions)};

    for (int it = 1; it <= params.max_iters; ++it) {
        const double moved = dss_step(positions, start.field, params, rng);
        result.iterations = it;
        if (moved < params.min_displacement) {
            result.stop = DssStop::converged;
            break;
        }
        const std::uint64_t h = layout_hash(positions);
        if (std::find(recent.begin(), recent.end(), h) != recent.end()) {
            result.stop = DssStop::oscillation;
            break;
        }
        recent.push_back(h);
        while (recent.size() > static_cast<std::size_t>(params.oscillation_window))
            recent.pop_front();
    }

    result.deployment = start;
    for (std::size_t i = 0; i < positions.size(); ++i)
        result.deployment.sensors[i].pos = positions[i];
    return result;
}

}  // namespace covlab
