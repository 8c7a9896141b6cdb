#include "covlab/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

namespace covlab {

namespace {

inline int clamp_index(long long i, int n) {
    if (i < 0) return 0;
    if (i >= n) return n - 1;
    return static_cast<int>(i);
}

// Index range [first, last] of cell centers x0 + (i + 0.5) * h falling inside
// [lo, hi]; empty when first > last.
inline std::pair<int, int> center_range(double lo, double hi, double origin, double h, int n) {
    const int first = static_cast<int>(std::ceil((lo - origin) / h - 0.5));
    const int last = static_cast<int>(std::floor((hi - origin) / h - 0.5));
    return {clamp_index(first, n), std::min(last, n - 1)};
}

// Centers on one row satisfying dx^2 + dy^2 <= r^2. Seeded by the analytic
// chord half-width, then the endpoints are corrected with the very predicate
// the serial reference applies per center, so both kernels classify borderline
// centers identically.
inline std::pair<int, int> chord_range(double sx, double span, double dy2, double r2,
                                       double origin, double h, int n) {
    auto [ix0, ix1] = center_range(sx - span, sx + span, origin, h, n);
    auto inside = [&](int ix) {
        const double cx = origin + (ix + 0.5) * h;
        const double dx = cx - sx;
        return dx * dx + dy2 <= r2;
    };
    while (ix0 > 0 && inside(ix0 - 1)) --ix0;
    while (ix1 + 1 < n && inside(ix1 + 1)) ++ix1;
    while (ix0 <= ix1 && !inside(ix0)) ++ix0;
    while (ix1 >= ix0 && !inside(ix1)) --ix1;
    return {ix0, ix1};
}

}  // namespace

std::size_t CoverageGrid::covered_count() const {
    return std::accumulate(covered.begin(), covered.end(), std::size_t{0},
                           [](std::size_t acc, std::uint8_t v) { return acc + (v != 0); });
}

double CoverageGrid::fraction() const {
    return covered.empty() ? 0.0 : static_cast<double>(covered_count()) / covered.size();
}

void CoverageGrid::clear() {
    std::memset(covered.data(), 0, covered.size());
}

void CoverageGrid::mark_disk(double cx, double cy, double radius) {
    const double r2 = radius * radius;
    const auto [iy0, iy1] = center_range(cy - radius, cy + radius, rect.y0, hy, ny);
    for (int iy = iy0, last = iy1; iy <= last; ++iy) {
        const double dy = rect.y0 + (iy + 0.5) * hy - cy;
        const double span2 = r2 - dy * dy;
        if (span2 < 0.0) continue;
        const double span = std::sqrt(span2);
        auto [ix0, ix1] = chord_range(cx, span, dy * dy, r2, rect.x0, hx, nx);
        if (ix0 > ix1) continue;
        std::uint8_t* row = covered.data() + static_cast<std::size_t>(iy) * nx;
        std::memset(row + ix0, 1, static_cast<std::size_t>(ix1 - ix0 + 1));
    }
}

CoverageGrid make_coverage_grid(const Rect& rect, double cell_size) {
    if (!(cell_size > 0.0))
        throw std::invalid_argument("coverage grid: cell size must be positive");
    CoverageGrid g;
    g.rect = rect;
    g.cell_size = cell_size;
    g.nx = static_cast<int>(std::ceil(rect.width() / cell_size));
    g.ny = static_cast<int>(std::ceil(rect.height() / cell_size));
    g.hx = g.nx > 0 ? rect.width() / g.nx : cell_size;
    g.hy = g.ny > 0 ? rect.height() / g.ny : cell_size;
    g.covered.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
    return g;
}

void fill_union(CoverageGrid& grid, std::span<const Sensor> sensors) {
    grid.clear();
    const int ny = grid.ny;
    const int nx = grid.nx;
    const double hx = grid.hx;
    const double hy = grid.hy;
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < ny; ++iy) {
        const double cy = grid.rect.y0 + (iy + 0.5) * hy;
        std::uint8_t* row = grid.covered.data() + static_cast<std::size_t>(iy) * nx;
        for (const Sensor& s : sensors) {
            const double dy = cy - s.pos.y;
            const double r2 = s.sensing_radius * s.sensing_radius;
            const double span2 = r2 - dy * dy;
            if (span2 < 0.0) continue;
            const double span = std::sqrt(span2);
            auto [ix0, ix1] = chord_range(s.pos.x, span, dy * dy, r2, grid.rect.x0, hx, nx);
            if (ix0 > ix1) continue;
            std::memset(row + ix0, 1, static_cast<std::size_t>(ix1 - ix0 + 1));
        }
    }
}

namespace reference {

void fill_union(CoverageGrid& grid, std::span<const Sensor> sensors) {
    grid.clear();
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double cy = grid.rect.y0 + (iy + 0.5) * grid.hy;
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double cx = grid.rect.x0 + (ix + 0.5) * grid.hx;
            for (const Sensor& s : sensors) {
                const double dx = cx - s.pos.x;
                const double dy = cy - s.pos.y;
                if (dx * dx + dy * dy <= s.sensing_radius * s.sensing_radius) {
                    grid.covered[static_cast<std::size_t>(iy) * grid.nx + ix] = 1;
                    break;
                }
            }
        }
    }
}

}  // namespace reference

CoverageReport union_coverage(const Deployment& dep, double resolution) {
    if (!(resolution > 0.0))
        throw std::invalid_argument("union_coverage: resolution must be positive");
    CoverageReport report;
    if (dep.sensors.empty()) return report;

    double min_radius = dep.sensors.front().sensing_radius;
    for (const Sensor& s : dep.sensors) min_radius = std::min(min_radius, s.sensing_radius);
    if (resolution > min_radius / 5.0)
        throw std::invalid_argument(
            "union_coverage: resolution too coarse to resolve disks (need <= r/5)");

    CoverageGrid grid = make_coverage_grid(dep.field.rect(), resolution);
    fill_union(grid, dep.sensors);
    report.union_fraction = grid.fraction();

    const Rect bounds = dep.field.rect();
    double naive = 0.0;
    for (const Sensor& s : dep.sensors) naive += disk_rect_area(s, bounds);
    report.naive_sum_fraction = naive / dep.field.area();
    report.overlap_excess = report.naive_sum_fraction - report.union_fraction;
    return report;
}

double expected_random_coverage(double lambda_density, double sensing_radius) {
    if (lambda_density < 0.0 || sensing_radius < 0.0)
        throw std::domain_error("expected_random_coverage: inputs must be non-negative");
    return 1.0 - std::exp(-lambda_density * M_PI * sensing_radius * sensing_radius);
}

double total_fitness(std::span<const std::pair<double, double>> coverage_and_area,
                     const Field& field) {
    double area_sum = 0.0;
    double weighted = 0.0;
    for (const auto& [coverage, area] : coverage_and_area) {
        area_sum += area;
        weighted += coverage * area;
    }
    const double field_area = field.area();
    if (std::abs(area_sum - field_area) > 1e-6 * field_area)
        throw std::invalid_argument("total_fitness: subarea areas do not tile the field");
    return weighted / field_area;
}

EnergyResult transmission_energy(double distance, double alpha, double constant) {
    if (distance < 0.0) throw std::domain_error("transmission_energy: distance must be >= 0");
    EnergyResult r;
    r.energy = std::pow(distance, alpha) + constant;
    r.alpha_conformant = alpha > 2.0;
    return r;
}

}  // namespace covlab
