#pragma once

#include <span>
#include <vector>

#include "curvedepth/geometry.hpp"

namespace curvedepth {

struct RankedCurve {
    int index = 0;
    double depth = 0.0;
};

/// Population ordered by exact depth, non-increasing; ties keep curve order.
struct RankResult {
    std::vector<RankedCurve> order;
    bool include_self = false;
};

struct BBox {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

struct GridSpec {
    int nx = 2;
    int ny = 2;
};

/// Normalized point depths over a regular grid, row-major from (x0, y0).
struct DepthField {
    BBox bbox;
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

struct GridMedian {
    Point point;
    double depth = 0.0;  // normalized
};

/// Depth of each curve against the rest of the population (or the whole
/// population with include_self), computed with the exact algorithm.
RankResult rank_curves(std::span<const Polyline> curves, bool include_self = false);

/// Grid argmax of normalized point depth; ties resolve to the lowest
/// (row, column). Throws std::domain_error for an empty population or a grid
/// smaller than 2x2.
GridMedian median_point_grid(std::span<const Polyline> curves, const BBox& bbox,
                             const GridSpec& grid);

DepthField depth_field(std::span<const Polyline> curves, const BBox& bbox, const GridSpec& grid);

struct ShearScenario {
    double depth_before = 0.0;
    double depth_after = 0.0;
    std::vector<int> rank_before;  // curve indices, deepest first
    std::vector<int> rank_after;
    bool depth_changed = false;  // |before - after| > 1e-3
};

struct DecreasingDepthScenario {
    Point median;
    Point query;
    double query_depth = 0.0;
    std::vector<double> path_depths;  // at alpha = 0.1 .. 0.9
    bool violated = false;            // some path point is shallower than the query
};

struct RobustnessScenario {
    Point original_median;
    double displacement_d10 = 0.0;   // after corrupting one curve at distance 10
    double displacement_d100 = 0.0;  // same at distance 100
    bool moved_d10 = false;
    bool moved_d100 = false;
};

struct CounterexampleReport {
    ShearScenario shear;
    DecreasingDepthScenario decreasing;
    RobustnessScenario robustness;
};

/// Three fixed constructions: a shear that changes a depth by a measurable
/// margin, a two-cluster population where depth dips between the median and a
/// query, and a corrupted regular-polygon population whose grid median jumps
/// arbitrarily far.
CounterexampleReport counterexample_suite();

}  // namespace curvedepth
