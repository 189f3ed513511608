#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvedepth/geometry.hpp"
#include "curvedepth/stabbing.hpp"

namespace curvedepth {

enum class EventSource { QueryVertex, CurveCrossing, HullTangent, VertexPairLine };

/// A parameter along one query segment at which the circular arrangement may
/// change combinatorially.
struct EventPoint {
    int segment = 0;
    double t = 0.0;  // in [0, 1] along that segment
    EventSource source = EventSource::VertexPairLine;
};

/// Sub-segment of the query on which the arrangement keeps one combinatorial
/// structure. The snapshot is taken at the interval midpoint in the segment's
/// frame (root at (x, 0), population transformed by the same frame), with the
/// defining population vertex of every boundary resolved to frame
/// coordinates.
struct InvariantInterval {
    int segment = 0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double x_lo = 0.0;  // frame x of t_lo (t * segment length)
    double x_hi = 0.0;
    CircularArrangement arrangement;
    std::vector<Point> boundary_vertex;  // frame coords, parallel to boundaries
};

struct IntervalContribution {
    int segment = 0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double contribution = 0.0;  // un-scaled share of `raw`
};

struct DepthResult {
    double raw = 0.0;         // integral over the query of point_depth_raw
    double depth = 0.0;       // raw / (pi * length)
    double normalized = 0.0;  // depth / population size (0 for empty population)
    double length = 0.0;
    std::vector<IntervalContribution> per_interval;
};

struct ExactOptions {
    bool hull_prune = false;
    /// Extra cut points merged into the generated event set; refining the
    /// partition never changes the result beyond float noise.
    std::vector<EventPoint> extra_events;
};

/// Raised when an interval still fails the invariance probes after the
/// maximum bisection depth; names the offending location.
class DegeneracyError : public std::runtime_error {
  public:
    DegeneracyError(int segment, double t_lo, double t_hi);
    int segment() const { return segment_; }
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }

  private:
    int segment_;
    double t_lo_;
    double t_hi_;
};

/// Event candidates per query segment: query vertices, query/population
/// crossings, and intersections with lines through population vertex pairs
/// (every combinatorial change of the arrangement happens on such a line).
/// With hull_prune the pair lines are restricted to locally bitangent pairs,
/// augmented with the common tangents of the outer hulls.
std::vector<EventPoint> generate_events(const Polyline& query,
                                        std::span<const Polyline> curves,
                                        bool use_hull_prune = false);

std::vector<InvariantInterval> partition_into_invariant_intervals(
    const Polyline& query, std::span<const Polyline> curves,
    std::span<const EventPoint> events);

/// Antiderivative of x -> atan2(p.y, p.x - x) on a branch-continuous
/// interval. Throws std::domain_error at the singular point p (p.y == 0 and
/// x == p.x).
double boundary_antiderivative(Point p, double x);

/// Angular area swept by cell `cell` of the interval snapshot as the root
/// moves across the interval; exact via antiderivative differences.
double cell_area_integral(const InvariantInterval& interval, std::size_t cell);

/// Un-scaled depth contribution of one interval: sum over antipodal cell
/// pairs of min(stab, antipodal stab) times the swept angular area.
double interval_depth(const InvariantInterval& interval);

/// Exact curve stabbing depth. A zero-length (single vertex) query delegates
/// to the point depth. Contributions accumulate in (segment, t_lo) order with
/// compensated summation, so results do not depend on the worker count.
DepthResult curve_depth(const Polyline& query, std::span<const Polyline> curves,
                        const ExactOptions& options = {});

}  // namespace curvedepth
