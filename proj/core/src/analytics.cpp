#include "curvedepth/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "curvedepth/exact.hpp"
#include "curvedepth/parallel.hpp"
#include "curvedepth/stabbing.hpp"

namespace curvedepth {

RankResult rank_curves(std::span<const Polyline> curves, bool include_self) {
    if (curves.empty()) throw std::domain_error("rank_curves: empty population");
    RankResult result;
    result.include_self = include_self;
    result.order.resize(curves.size());

    parallel_for(curves.size(), [&](std::size_t i) {
        std::vector<Polyline> population;
        population.reserve(include_self ? curves.size() : curves.size() - 1);
        for (std::size_t j = 0; j < curves.size(); ++j) {
            if (!include_self && j == i) continue;
            population.push_back(curves[j]);
        }
        result.order[i] = {static_cast<int>(i), curve_depth(curves[i], population).depth};
    });

    std::stable_sort(result.order.begin(), result.order.end(),
                     [](const RankedCurve& a, const RankedCurve& b) { return a.depth > b.depth; });
    return result;
}

DepthField depth_field(std::span<const Polyline> curves, const BBox& bbox, const GridSpec& grid) {
    if (curves.empty()) throw std::domain_error("depth_field: empty population");
    if (grid.nx < 2 || grid.ny < 2) throw std::domain_error("depth_field: grid must be >= 2x2");

    DepthField field;
    field.bbox = bbox;
    field.nx = grid.nx;
    field.ny = grid.ny;
    field.values.resize(static_cast<std::size_t>(grid.nx) * grid.ny);

    const double sx = (bbox.x1 - bbox.x0) / (grid.nx - 1);
    const double sy = (bbox.y1 - bbox.y0) / (grid.ny - 1);
    parallel_for(field.values.size(), [&](std::size_t k) {
        const int iy = static_cast<int>(k) / grid.nx;
        const int ix = static_cast<int>(k) % grid.nx;
        const Point q{bbox.x0 + ix * sx, bbox.y0 + iy * sy};
        field.values[k] = point_depth(q, curves, /*normalized=*/true);
    });
    return field;
}

GridMedian median_point_grid(std::span<const Polyline> curves, const BBox& bbox,
                             const GridSpec& grid) {
    const DepthField field = depth_field(curves, bbox, grid);
    std::size_t best = 0;
    for (std::size_t k = 1; k < field.values.size(); ++k) {
        if (field.values[k] > field.values[best]) best = k;  // strict: first max wins
    }
    const int iy = static_cast<int>(best) / grid.nx;
    const int ix = static_cast<int>(best) % grid.nx;
    const double sx = (bbox.x1 - bbox.x0) / (grid.nx - 1);
    const double sy = (bbox.y1 - bbox.y0) / (grid.ny - 1);
    return {{bbox.x0 + ix * sx, bbox.y0 + iy * sy}, field.values[best]};
}

namespace {

Polyline hseg(double x0, double x1, double y) {
    return Polyline({{x0, y}, {x1, y}});
}

Polyline vseg(double x, double y0, double y1) {
    return Polyline({{x, y0}, {x, y1}});
}

Polyline shear_x(const Polyline& p, double lambda) {
    std::vector<Point> vs;
    vs.reserve(p.size());
    for (const Point& v : p.vertices()) vs.push_back({v.x + lambda * v.y, v.y});
    return Polyline(std::move(vs));
}

std::vector<int> rank_indices(std::span<const Polyline> curves) {
    std::vector<int> order;
    for (const RankedCurve& r : rank_curves(curves).order) order.push_back(r.index);
    return order;
}

ShearScenario run_shear() {
    // Four parallel vertical segments; depth is measured for one of the two
    // central ones against the other three, before and after an x-shear.
    const double lambda = 1.0;
    std::vector<Polyline> curves{vseg(0.0, 0.0, 1.0), vseg(0.9, 0.0, 1.0), vseg(1.1, 0.0, 1.0),
                                 vseg(2.0, 0.0, 1.0)};
    std::vector<Polyline> sheared;
    for (const Polyline& c : curves) sheared.push_back(shear_x(c, lambda));

    auto depth_of = [](std::span<const Polyline> all, std::size_t i) {
        std::vector<Polyline> rest;
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (j != i) rest.push_back(all[j]);
        }
        return curve_depth(all[i], rest).depth;
    };

    ShearScenario s;
    s.depth_before = depth_of(curves, 1);
    s.depth_after = depth_of(sheared, 1);
    s.rank_before = rank_indices(curves);
    s.rank_after = rank_indices(sheared);
    s.depth_changed = std::abs(s.depth_before - s.depth_after) > 1e-3;
    return s;
}

DecreasingDepthScenario run_decreasing() {
    // Two clusters of three horizontal segments; points between the clusters
    // score lower than points inside either one.
    std::vector<Polyline> curves{hseg(0.0, 1.0, -0.3), hseg(0.0, 1.0, 0.0), hseg(0.0, 1.0, 0.3),
                                 hseg(4.0, 5.0, -0.3), hseg(4.0, 5.0, 0.0), hseg(4.0, 5.0, 0.3)};

    DecreasingDepthScenario d;
    d.median = median_point_grid(curves, {0.0, -0.5, 5.0, 0.5}, {101, 21}).point;
    d.query = {4.5, 0.1};
    d.query_depth = point_depth(d.query, curves, /*normalized=*/true);
    for (int k = 1; k <= 9; ++k) {
        const double alpha = 0.1 * k;
        const Point m_alpha = d.median + alpha * (d.query - d.median);
        const double depth = point_depth(m_alpha, curves, /*normalized=*/true);
        d.path_depths.push_back(depth);
        if (depth < d.query_depth - 1e-9) d.violated = true;
    }
    return d;
}

RobustnessScenario run_robustness() {
    // Edges of a regular octagon as separate curves; replacing one with a
    // small loop far away relocates the grid median into the loop. The
    // octagon is rotated off-axis so grid nodes never land on its corners
    // (where two curves meet and the depth doubles).
    const double radius = 2.0;
    const double twist = 0.2;
    std::vector<Polyline> octagon;
    for (int k = 0; k < 8; ++k) {
        const double a0 = twist + 2.0 * std::numbers::pi * k / 8.0;
        const double a1 = twist + 2.0 * std::numbers::pi * (k + 1) / 8.0;
        octagon.push_back(Polyline({{radius * std::cos(a0), radius * std::sin(a0)},
                                    {radius * std::cos(a1), radius * std::sin(a1)}}));
    }

    RobustnessScenario r;
    r.original_median = median_point_grid(octagon, {-4.0, -4.0, 4.0, 4.0}, {33, 33}).point;

    auto displaced = [&](double d) {
        const double cx = d + 3.0;
        std::vector<Polyline> corrupted = octagon;
        corrupted[0] = Polyline({{cx - 0.5, -0.5}, {cx + 0.5, -0.5}, {cx + 0.5, 0.5},
                                 {cx - 0.5, 0.5}, {cx - 0.5, -0.5}});
        const BBox bbox{-4.0, -5.0, cx + 3.0, 5.0};
        const int nx = static_cast<int>(std::lround(2.0 * (bbox.x1 - bbox.x0))) + 1;
        const GridMedian gm = median_point_grid(corrupted, bbox, {nx, 21});
        return distance(gm.point, r.original_median);
    };
    r.displacement_d10 = displaced(10.0);
    r.displacement_d100 = displaced(100.0);
    r.moved_d10 = r.displacement_d10 >= 10.0;
    r.moved_d100 = r.displacement_d100 >= 100.0;
    return r;
}

}  // namespace

CounterexampleReport counterexample_suite() {
    CounterexampleReport report;
    report.shear = run_shear();
    report.decreasing = run_decreasing();
    report.robustness = run_robustness();
    return report;
}

}  // namespace curvedepth
