#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curvedepth/geometry.hpp"

namespace curvedepth {

// Angular tolerance for merging arcs and deduplicating arrangement
// boundaries; coincidences tighter than this are treated as float noise.
inline constexpr double kAngleTol = 1e-12;

/// Identity of a population vertex: curve index within the population and
/// vertex index within that curve. Boundary ownership is tracked with these
/// so interval snapshots can be compared and integrated symbolically.
struct VertexRef {
    int curve = -1;
    int vertex = -1;

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
    friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Closed counterclockwise arc from `start` spanning `width`; width 2*pi
/// denotes the full circle, width 0 a single direction.
struct AngularArc {
    double start = 0.0;
    double width = 0.0;

    bool contains(double theta, double tol = kAngleTol) const;
};

/// Arc annotated with the population vertices that define its endpoints.
struct ArcSpan {
    double start = 0.0;
    double width = 0.0;
    VertexRef start_vertex;
    VertexRef end_vertex;
};

/// Union of pairwise-disjoint arcs of stabbing directions from a root point
/// toward one curve; `full` marks coverage of the whole circle (root on the
/// curve, or surrounded by it).
struct DirectionSet {
    bool full = false;
    std::vector<ArcSpan> arcs;  // sorted by start, disjoint

    bool contains(double theta, double tol = kAngleTol) const;
    double total_width() const;
};

struct Boundary {
    double angle = 0.0;
    VertexRef vertex;
    bool antipodal = false;  // boundary sits at angle_to(root, vertex) + pi
};

/// Sorted cell decomposition of [0, 2*pi) around a root point. Boundaries are
/// antipodally closed by construction: the first `half()` entries lie in
/// [0, pi) and the rest are their exact mirrors, so cell j pairs with cell
/// j + half() modulo the cell count.
struct CircularArrangement {
    std::vector<Boundary> boundaries;  // empty means a single full-circle cell
    std::vector<int> stab;             // per cell, at the cell midpoint
    std::vector<bool> min_indicator;   // stab(cell) <= stab(antipodal cell)

    std::size_t half() const { return boundaries.size() / 2; }
    std::size_t cell_count() const { return boundaries.empty() ? 1 : boundaries.size(); }
    std::size_t antipodal_cell(std::size_t j) const;
    double cell_width(std::size_t j) const;
    double cell_midpoint(std::size_t j) const;
};

/// Directions {angle_to(q, p) : p in s}. Root on the closed segment gives the
/// full circle; a root collinear with the segment but outside it gives a
/// zero-width arc.
AngularArc segment_arc(Point q, const Segment& s);

/// Circular union of segment_arc over all edges (or the single vertex
/// direction for a point curve). A ray at theta intersects the curve iff
/// theta is in the result. `curve_index` tags the endpoint identities.
DirectionSet curve_direction_set(Point q, const Polyline& curve, int curve_index = 0);

/// Number of curves intersected by the ray, each counted once.
int stab_count(const Ray& r, std::span<const Polyline> curves);

CircularArrangement build_arrangement(Point q, std::span<const Polyline> curves);

/// Integral over [0, pi) of min(stab(theta), stab(theta + pi)), evaluated
/// exactly from the arrangement (no 1/pi factor).
double point_depth_raw(Point q, std::span<const Polyline> curves);
double point_depth_raw(const CircularArrangement& arr);

/// point_depth_raw / pi; with `normalized`, further divided by the number of
/// curves (0 for an empty population).
double point_depth(Point q, std::span<const Polyline> curves, bool normalized = false);

}  // namespace curvedepth
