#pragma once

#include <span>
#include <utility>
#include <vector>

#include "covlab/geometry.hpp"

namespace covlab {

// Convex polygon cell of the bounded Voronoi diagram, clipped to the field.
struct VoronoiCell {
    int owner_id = 0;
    std::vector<Point> vertices;  // counter-clockwise
};

// Shoelace area, positive for counter-clockwise order.
double polygon_area(std::span<const Point> polygon);

// One bounded cell per sensor, via iterative half-plane clipping of the field
// rectangle against the perpendicular bisectors (O(n^2)). Coincident sensor
// positions are separated by a deterministic 1e-9 jitter first; throws when
// every sensor sits on the same point.
std::vector<VoronoiCell> voronoi_cells(const Deployment& dep);

// Vertex of the cell polygon farthest from the owner; ties broken by the
// smallest (x, then y).
std::pair<Point, double> farthest_vertex(const VoronoiCell& cell, const Sensor& owner);

}  // namespace covlab
