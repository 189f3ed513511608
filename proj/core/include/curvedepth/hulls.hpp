#pragma once

#include <span>
#include <vector>

#include "curvedepth/geometry.hpp"

namespace curvedepth {

/// Outer hull per population curve plus, for every (curve, query segment)
/// pair, the hulls of the connected components obtained by cutting the curve
/// at its intersections with that segment. A dangling single segment or point
/// forms a degenerate hull.
struct HullHierarchy {
    std::vector<ConvexHull> outer;  // one per curve
    /// inner[curve][query segment] -> component hulls
    std::vector<std::vector<std::vector<ConvexHull>>> inner;
};

/// Common tangent lines over all outer-hull pairs and their intersection
/// parameters along each query segment (the stabbing-update point set).
struct TangentEventSet {
    std::vector<TangentLine> lines;
    std::vector<std::vector<double>> s_points;  // per query segment, sorted t in [0, 1]
};

HullHierarchy build_hierarchy(std::span<const Polyline> curves, const Polyline& query);

TangentEventSet tangent_event_set(const HullHierarchy& hierarchy, const Polyline& query);

}  // namespace curvedepth
