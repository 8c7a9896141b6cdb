#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "covlab/geometry.hpp"

namespace covlab {

// Rasterized union-of-disks occupancy over a rectangle. A cell counts as
// covered when its center lies within sensing radius of at least one disk.
// The requested cell_size fixes the cell counts (nx = ceil(width/cell_size));
// the actual pitches hx, hy are snapped down so the cells tile the rectangle
// exactly and every center stays inside it. Equal-area cells make fraction()
// an unbiased area estimate even when the sides are not multiples of the
// requested size.
struct CoverageGrid {
    Rect rect;
    double cell_size = 0.0;  // requested pitch
    double hx = 0.0;         // actual pitch, rect.width() / nx
    double hy = 0.0;         // actual pitch, rect.height() / ny
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> covered;  // row-major, ny rows of nx cells

    std::size_t cell_count() const { return covered.size(); }
    std::size_t covered_count() const;
    double fraction() const;

    void clear();
    // Marks all cell centers within `radius` of (cx, cy). Serial scanline.
    void mark_disk(double cx, double cy, double radius);
};

CoverageGrid make_coverage_grid(const Rect& rect, double cell_size);

// Production kernel: scanline rasterization, OpenMP-parallel over grid rows.
void fill_union(CoverageGrid& grid, std::span<const Sensor> sensors);

// Serial reference kept for testing and benchmarking: classifies every cell
// center by direct distance checks against all sensors.
namespace reference {
void fill_union(CoverageGrid& grid, std::span<const Sensor> sensors);
}

struct CoverageReport {
    double union_fraction = 0.0;
    double naive_sum_fraction = 0.0;
    double overlap_excess = 0.0;                      // naive - union
    std::vector<std::pair<int, double>> per_subarea;  // (subarea index, coverage)
};

// Union coverage of the deployment on a grid of the given resolution, plus the
// per-disk summed coverage (clipped to the field, overlap double-counted).
// Requires resolution <= min sensing radius / 5 when sensors are present.
CoverageReport union_coverage(const Deployment& dep, double resolution);

// Coverage probability of a uniform random deployment with node density
// `lambda_density`: 1 - exp(-lambda * pi * r^2).
double expected_random_coverage(double lambda_density, double sensing_radius);

// Area-weighted total coverage from per-subarea results. The subarea areas
// must tile the field (1e-6 relative tolerance).
double total_fitness(std::span<const std::pair<double, double>> coverage_and_area,
                     const Field& field);

struct EnergyResult {
    double energy = 0.0;
    // The model assumes a path-loss exponent above 2; false flags a
    // non-conformant alpha (the value is still computed).
    bool alpha_conformant = true;
};

// Transmission energy d^alpha + c.
EnergyResult transmission_energy(double distance, double alpha, double constant);

}  // namespace covlab
