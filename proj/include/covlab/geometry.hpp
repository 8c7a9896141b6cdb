#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace covlab {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Axis-aligned rectangle, closed bounds.
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(const Point& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
};

// Rectangular sensing region [0,width]x[0,height] with a base station inside it.
struct Field {
    double width = 0.0;
    double height = 0.0;
    Point base_station;

    static Field centered(double width, double height) {
        Field f{width, height, {width / 2.0, height / 2.0}};
        f.validate();
        return f;
    }

    Rect rect() const { return {0.0, 0.0, width, height}; }
    double area() const { return width * height; }

    void validate() const {
        if (!(width > 0.0) || !(height > 0.0))
            throw std::invalid_argument("field: width and height must be positive");
        if (!finite(base_station) || !rect().contains(base_station))
            throw std::invalid_argument("field: base station must lie inside the field");
    }
};

struct Sensor {
    int id = 0;
    Point pos;
    double sensing_radius = 0.0;
};

struct Deployment {
    std::vector<Sensor> sensors;
    Field field;

    std::size_t size() const { return sensors.size(); }
};

// Checks the Deployment invariants: ids 1..n without duplicates, positive radii,
// every position inside the field. Throws on violation.
void validate_deployment(const Deployment& dep);

// Rectangular partition of a field into rows x cols congruent cells with a
// per-cell node quota. Cells are stored row-major, bottom row first.
struct SubareaGrid {
    int rows = 0;
    int cols = 0;
    std::vector<Rect> cells;
    std::vector<int> node_quota;

    int cell_count() const { return rows * cols; }
};

// Splits the field into p = ceil(n_nodes / target_per_subarea) cells arranged as
// the most nearly square rows x cols grid with rows*cols == p, and distributes
// node quotas so that they differ by at most one.
SubareaGrid partition(const Field& field, int n_nodes, int target_per_subarea);

// Exact area of the disk (center, radius) intersected with rect.
double disk_rect_area(const Point& center, double radius, const Rect& rect);

inline double disk_rect_area(const Sensor& s, const Rect& rect) {
    return disk_rect_area(s.pos, s.sensing_radius, rect);
}

inline bool contains(const Rect& r, const Point& p) { return r.contains(p); }

}  // namespace covlab
