#include "covlab/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace covlab {

double polygon_area(std::span<const Point> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2.0;
}

namespace {

// Clips a convex polygon against the half-plane dot(p - mid, dir) <= 0
// (Sutherland-Hodgman, one edge).
std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Point& mid,
                                  const Point& dir) {
    std::vector<Point> out;
    out.reserve(poly.size() + 1);
    const std::size_t n = poly.size();
    auto side = [&](const Point& p) { return (p.x - mid.x) * dir.x + (p.y - mid.y) * dir.y; };
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        const double sa = side(a);
        const double sb = side(b);
        if (sa <= 0.0) out.push_back(a);
        if ((sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb <= 0.0)) {
            const double t = sa / (sa - sb);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

// Drops consecutive near-duplicate vertices left behind by clipping.
std::vector<Point> dedupe(std::vector<Point> poly) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (const Point& p : poly) {
        if (out.empty() || distance(out.back(), p) > 1e-9) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= 1e-9) out.pop_back();
    return out;
}

}  // namespace

std::vector<VoronoiCell> voronoi_cells(const Deployment& dep) {
    const std::size_t n = dep.sensors.size();
    if (n < 1) throw std::invalid_argument("voronoi_cells: need at least one sensor");
    dep.field.validate();

    // Deterministic separation of exactly coincident sites.
    std::vector<Point> sites(n);
    std::map<std::pair<double, double>, int> seen;
    const Rect bounds = dep.field.rect();
    for (std::size_t i = 0; i < n; ++i) {
        Point p = dep.sensors[i].pos;
        int& count = seen[{p.x, p.y}];
        if (count > 0) {
            p.x = std::min(bounds.x1, p.x + 1e-9 * count);
            p.y = std::min(bounds.y1, p.y + 2e-9 * count);
        }
        ++count;
        sites[i] = p;
    }
    if (n >= 2) {
        bool all_same = true;
        for (std::size_t i = 1; i < n && all_same; ++i)
            all_same = distance(dep.sensors[i].pos, dep.sensors[0].pos) == 0.0;
        if (all_same && distance(sites[0], sites[1]) == 0.0)
            throw std::invalid_argument("voronoi_cells: all sensors coincident");
    }

    std::vector<VoronoiCell> cells(n);
    const std::vector<Point> field_poly{
        {bounds.x0, bounds.y0}, {bounds.x1, bounds.y0}, {bounds.x1, bounds.y1},
        {bounds.x0, bounds.y1}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Point> poly = field_poly;
        for (std::size_t j = 0; j < n && !poly.empty(); ++j) {
            if (j == i) continue;
            const Point mid{(sites[i].x + sites[j].x) / 2.0, (sites[i].y + sites[j].y) / 2.0};
            const Point dir{sites[j].x - sites[i].x, sites[j].y - sites[i].y};
            poly = clip_halfplane(poly, mid, dir);
        }
        cells[i].owner_id = dep.sensors[i].id;
        cells[i].vertices = dedupe(std::move(poly));
    }
    return cells;
}

std::pair<Point, double> farthest_vertex(const VoronoiCell& cell, const Sensor& owner) {
    if (cell.vertices.empty())
        throw std::invalid_argument("farthest_vertex: degenerate cell");
    Point best = cell.vertices.front();
    double best_d2 = -1.0;
    for (const Point& v : cell.vertices) {
        const double dx = v.x - owner.pos.x;
        const double dy = v.y - owner.pos.y;
        const double d2 = dx * dx + dy * dy;
        const double tol = 1e-9 * std::max(1.0, best_d2);
        if (d2 > best_d2 + tol) {
            best = v;
            best_d2 = d2;
        } else if (std::abs(d2 - best_d2) <= tol) {
            if (v.x < best.x || (v.x == best.x && v.y < best.y)) best = v;
        }
    }
    return {best, std::sqrt(best_d2)};
}

}  // namespace covlab
