#include "covlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace covlab {

void validate_deployment(const Deployment& dep) {
    dep.field.validate();
    const Rect bounds = dep.field.rect();
    std::unordered_set<int> ids;
    ids.reserve(dep.sensors.size());
    for (const Sensor& s : dep.sensors) {
        if (s.id < 1 || s.id > static_cast<int>(dep.sensors.size()))
            throw std::invalid_argument("deployment: sensor ids must be 1..n");
        if (!ids.insert(s.id).second)
            throw std::invalid_argument("deployment: duplicate sensor id " + std::to_string(s.id));
        if (!(s.sensing_radius > 0.0))
            throw std::invalid_argument("deployment: sensing radius must be positive");
        if (!finite(s.pos) || !bounds.contains(s.pos))
            throw std::invalid_argument("deployment: sensor " + std::to_string(s.id) +
                                        " lies outside the field");
    }
}

namespace {

// Largest divisor of p that is <= sqrt(p); pairs with p/d to give the most
// nearly square grid whose cell count is exactly p.
int near_square_divisor(int p) {
    int best = 1;
    for (int d = 1; d * static_cast<long long>(d) <= p; ++d)
        if (p % d == 0) best = d;
    return best;
}

}  // namespace

SubareaGrid partition(const Field& field, int n_nodes, int target_per_subarea) {
    field.validate();
    if (n_nodes < 1) throw std::invalid_argument("partition: n_nodes must be >= 1");
    if (target_per_subarea < 1)
        throw std::invalid_argument("partition: target_per_subarea must be >= 1");

    const int p = (n_nodes + target_per_subarea - 1) / target_per_subarea;
    const int rows = near_square_divisor(p);
    const int cols = p / rows;

    SubareaGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.cells.reserve(p);
    const double cw = field.width / cols;
    const double ch = field.height / rows;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            // Snap outer edges to the exact field bounds.
            const double x1 = (c + 1 == cols) ? field.width : (c + 1) * cw;
            const double y1 = (r + 1 == rows) ? field.height : (r + 1) * ch;
            grid.cells.push_back({c * cw, r * ch, x1, y1});
        }
    }

    grid.node_quota.assign(p, n_nodes / p);
    const int remainder = n_nodes % p;
    for (int i = 0; i < remainder; ++i) grid.node_quota[i] += 1;
    return grid;
}

namespace {

// Disk-rectangle intersection via strip integration of the circle centered at
// the origin. half_chord(h) is the positive x where the circle meets y = h.
double half_chord(double h, double r) { return (h < r) ? std::sqrt(r * r - h * h) : 0.0; }

// Antiderivative of (sqrt(r^2 - x^2) - h) dx.
double strip_integral(double x, double h, double r) {
    const double t = std::clamp(x / r, -1.0, 1.0);
    return 0.5 * (std::sqrt(std::max(0.0, r * r - x * x)) * x + r * r * std::asin(t)) - h * x;
}

// Area between the circle and the horizontal line y = h (h >= 0), restricted
// to x in [x0, x1].
double area_above_line(double x0, double x1, double h, double r) {
    if (x0 > x1) std::swap(x0, x1);
    const double s = half_chord(h, r);
    const double a = std::clamp(x0, -s, s);
    const double b = std::clamp(x1, -s, s);
    return strip_integral(b, h, r) - strip_integral(a, h, r);
}

double area_box_origin(double x0, double x1, double y0, double y1, double r) {
    if (y0 > y1) std::swap(y0, y1);
    if (y0 < 0.0) {
        if (y1 < 0.0) return area_box_origin(x0, x1, -y1, -y0, r);
        return area_above_line(x0, x1, 0.0, r) - area_above_line(x0, x1, -y0, r) +
               area_above_line(x0, x1, 0.0, r) - area_above_line(x0, x1, y1, r);
    }
    return area_above_line(x0, x1, y0, r) - area_above_line(x0, x1, y1, r);
}

}  // namespace

double disk_rect_area(const Point& center, double radius, const Rect& rect) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk_rect_area: radius must be positive");
    return area_box_origin(rect.x0 - center.x, rect.x1 - center.x, rect.y0 - center.y,
                           rect.y1 - center.y, radius);
}

}  // namespace covlab
