#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "covlab/geometry.hpp"

using namespace covlab;

TEST_CASE("rect basics") {
    Rect r{1.0, 2.0, 4.0, 6.0};
    CHECK(r.width() == 3.0);
    CHECK(r.height() == 4.0);
    CHECK(r.area() == 12.0);
    // closed bounds
    CHECK(r.contains({1.0, 2.0}));
    CHECK(r.contains({4.0, 6.0}));
    CHECK(r.contains({2.5, 3.0}));
    CHECK_FALSE(r.contains({0.999, 3.0}));
    CHECK_FALSE(r.contains({2.5, 6.001}));
}

TEST_CASE("field validation") {
    Field f = Field::centered(113.0, 113.0);
    CHECK(f.base_station.x == doctest::Approx(56.5));
    CHECK(f.area() == doctest::Approx(12769.0));

    CHECK_THROWS_AS(Field::centered(0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(Field::centered(10.0, -5.0), std::invalid_argument);

    Field bad{10.0, 10.0, {11.0, 5.0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("deployment validation") {
    Field f = Field::centered(20.0, 20.0);
    Deployment dep;
    dep.field = f;
    dep.sensors = {{1, {1.0, 1.0}, 2.0}, {2, {5.0, 5.0}, 2.0}, {3, {19.0, 19.0}, 2.0}};
    CHECK_NOTHROW(validate_deployment(dep));

    SUBCASE("duplicate id") {
        dep.sensors[2].id = 2;
        CHECK_THROWS_AS(validate_deployment(dep), std::invalid_argument);
    }
    SUBCASE("ids not 1..n") {
        dep.sensors[0].id = 4;
        CHECK_THROWS_AS(validate_deployment(dep), std::invalid_argument);
    }
    SUBCASE("zero radius") {
        dep.sensors[1].sensing_radius = 0.0;
        CHECK_THROWS_AS(validate_deployment(dep), std::invalid_argument);
    }
    SUBCASE("outside field") {
        dep.sensors[1].pos = {20.5, 5.0};
        CHECK_THROWS_AS(validate_deployment(dep), std::invalid_argument);
    }
}

TEST_CASE("partition shape and quotas") {
    Field f = Field::centered(113.0, 113.0);

    struct Case {
        int n, target, cells, rows, cols;
    };
    // p = ceil(n / target), rows = largest divisor of p that is <= sqrt(p)
    const Case cases[] = {
        {50, 50, 1, 1, 1},  {100, 50, 2, 1, 2},  {150, 50, 3, 1, 3},
        {200, 50, 4, 2, 2}, {250, 50, 5, 1, 5},  {300, 50, 6, 2, 3},
        {586, 50, 12, 3, 4}, {51, 50, 2, 1, 2},  {1, 50, 1, 1, 1},
    };
    for (const Case& c : cases) {
        CAPTURE(c.n);
        SubareaGrid g = partition(f, c.n, c.target);
        CHECK(g.cell_count() == c.cells);
        CHECK(g.rows == c.rows);
        CHECK(g.cols == c.cols);
        CHECK(static_cast<int>(g.cells.size()) == c.cells);
        CHECK(static_cast<int>(g.node_quota.size()) == c.cells);

        // quotas: sum to n, spread at most one apart, every cell populated
        const int total = std::accumulate(g.node_quota.begin(), g.node_quota.end(), 0);
        CHECK(total == c.n);
        const auto [mn, mx] = std::minmax_element(g.node_quota.begin(), g.node_quota.end());
        CHECK(*mx - *mn <= 1);
        CHECK(*mn >= 1);

        // cells tile the field exactly
        double area = 0.0;
        for (const Rect& cell : g.cells) area += cell.area();
        CHECK(area == doctest::Approx(f.area()).epsilon(1e-12));
    }
}

TEST_CASE("partition cells snap edge to edge") {
    Field f = Field::centered(113.0, 113.0);
    SubareaGrid g = partition(f, 586, 50);  // 3 x 4
    REQUIRE(g.rows == 3);
    REQUIRE(g.cols == 4);
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            const Rect& cell = g.cells[r * g.cols + c];
            if (c + 1 < g.cols) CHECK(cell.x1 == g.cells[r * g.cols + c + 1].x0);
            if (r + 1 < g.rows) CHECK(cell.y1 == g.cells[(r + 1) * g.cols + c].y0);
        }
    }
    // outer border is the field border, exactly
    CHECK(g.cells.front().x0 == 0.0);
    CHECK(g.cells.front().y0 == 0.0);
    CHECK(g.cells.back().x1 == 113.0);
    CHECK(g.cells.back().y1 == 113.0);
}

TEST_CASE("partition rejects bad inputs") {
    Field f = Field::centered(10.0, 10.0);
    CHECK_THROWS_AS(partition(f, 0, 50), std::invalid_argument);
    CHECK_THROWS_AS(partition(f, -3, 50), std::invalid_argument);
    CHECK_THROWS_AS(partition(f, 10, 0), std::invalid_argument);
}

TEST_CASE("disk_rect_area analytic cases") {
    const double r = 2.0;
    const double full = M_PI * r * r;
    Rect box{0.0, 0.0, 20.0, 20.0};

    CHECK(disk_rect_area({10.0, 10.0}, r, box) == doctest::Approx(full).epsilon(1e-12));
    CHECK(disk_rect_area({0.0, 10.0}, r, box) == doctest::Approx(full / 2.0).epsilon(1e-12));
    CHECK(disk_rect_area({0.0, 0.0}, r, box) == doctest::Approx(full / 4.0).epsilon(1e-12));
    CHECK(disk_rect_area({20.0, 20.0}, r, box) == doctest::Approx(full / 4.0).epsilon(1e-12));
    CHECK(disk_rect_area({30.0, 10.0}, r, box) == 0.0);
    CHECK_THROWS_AS(disk_rect_area({10.0, 10.0}, 0.0, box), std::invalid_argument);

    // rect entirely inside the disk
    Rect tiny{9.5, 9.5, 10.5, 10.5};
    CHECK(disk_rect_area({10.0, 10.0}, 5.0, tiny) == doctest::Approx(tiny.area()).epsilon(1e-12));
}

TEST_CASE("disk_rect_area against a monte-carlo oracle") {
    std::mt19937_64 rng(991);
    Rect box{0.0, 0.0, 10.0, 7.0};
    std::uniform_real_distribution<double> cx(-3.0, 13.0);
    std::uniform_real_distribution<double> cy(-3.0, 10.0);
    std::uniform_real_distribution<double> cr(0.5, 6.0);
    std::uniform_real_distribution<double> px(box.x0, box.x1);
    std::uniform_real_distribution<double> py(box.y0, box.y1);

    const int samples = 400000;
    for (int k = 0; k < 10; ++k) {
        const Point c{cx(rng), cy(rng)};
        const double r = cr(rng);
        const double exact = disk_rect_area(c, r, box);

        int hits = 0;
        for (int s = 0; s < samples; ++s) {
            const double dx = px(rng) - c.x;
            const double dy = py(rng) - c.y;
            if (dx * dx + dy * dy <= r * r) ++hits;
        }
        const double mc = box.area() * hits / samples;
        // 5 sigma of the binomial estimate, floor for near-empty intersections
        const double p = std::clamp(exact / box.area(), 0.0, 1.0);
        const double tol = std::max(0.02, 5.0 * box.area() * std::sqrt(p * (1 - p) / samples));
        CAPTURE(k);
        CHECK(std::abs(exact - mc) <= tol);
    }
}
