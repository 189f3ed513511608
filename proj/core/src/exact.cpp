#include "curvedepth/exact.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>

#include "curvedepth/parallel.hpp"

namespace curvedepth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEventTol = 1e-12;
constexpr int kMaxBisection = 20;

struct FlatVertex {
    Point p;
    int curve;
    int vertex;
};

std::vector<FlatVertex> flatten_vertices(std::span<const Polyline> curves) {
    std::vector<FlatVertex> out;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& vs = curves[c].vertices();
        for (std::size_t v = 0; v < vs.size(); ++v) {
            out.push_back({vs[v], static_cast<int>(c), static_cast<int>(v)});
        }
    }
    return out;
}

// Both incident edges of the vertex weakly on one side of the line through
// `p` and `other`; lines violating this at either end cannot host a boundary
// swap, which is what makes the pruned pair basis sufficient.
bool locally_supports(const Polyline& curve, int vertex, Point p, Point other) {
    const Point dir = other - p;
    double lo = 0.0, hi = 0.0;
    const auto& vs = curve.vertices();
    if (vertex > 0) {
        const double s = cross(dir, vs[vertex - 1] - p);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (vertex + 1 < static_cast<int>(vs.size())) {
        const double s = cross(dir, vs[vertex + 1] - p);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return lo >= -kIncidenceTol || hi <= kIncidenceTol;
}

std::optional<double> line_segment_param(Point qa, Point qb, Point u, Point v) {
    const double denom = cross(qb - qa, v - u);
    if (std::abs(denom) <= kIncidenceTol) return std::nullopt;  // parallel or coincident
    const double t = cross(u - qa, v - u) / denom;
    if (t < -kEventTol || t > 1.0 + kEventTol) return std::nullopt;
    return std::clamp(t, 0.0, 1.0);
}

int source_priority(EventSource s) {
    switch (s) {
        case EventSource::QueryVertex: return 0;
        case EventSource::CurveCrossing: return 1;
        case EventSource::HullTangent: return 2;
        case EventSource::VertexPairLine: return 3;
    }
    return 3;
}

void sort_and_dedup(std::vector<EventPoint>& events) {
    std::sort(events.begin(), events.end(), [](const EventPoint& a, const EventPoint& b) {
        if (a.segment != b.segment) return a.segment < b.segment;
        if (a.t != b.t) return a.t < b.t;
        return source_priority(a.source) < source_priority(b.source);
    });
    std::vector<EventPoint> out;
    for (const EventPoint& e : events) {
        if (!out.empty() && out.back().segment == e.segment && e.t - out.back().t <= kEventTol) {
            continue;
        }
        out.push_back(e);
    }
    events = std::move(out);
}

// Per-segment state shared by probing and integration.
struct SegmentCtx {
    int segment = 0;
    double length = 0.0;
    AffineFrame frame;
    std::vector<Polyline> framed;  // population in frame coordinates

    Point vertex(VertexRef v) const { return framed[v.curve].vertices()[v.vertex]; }
};

SegmentCtx make_segment_ctx(const Polyline& query, int segment,
                            std::span<const Polyline> curves) {
    SegmentCtx ctx;
    ctx.segment = segment;
    const Segment seg = query.edge(segment);
    ctx.length = seg.length();
    ctx.frame = to_frame(seg);
    ctx.framed.reserve(curves.size());
    for (const Polyline& c : curves) {
        std::vector<Point> vs;
        vs.reserve(c.size());
        for (const Point& p : c.vertices()) vs.push_back(ctx.frame.apply(p));
        ctx.framed.emplace_back(std::move(vs));
    }
    return ctx;
}

struct CanonicalKey {
    int full_stab = -1;  // set when there are no boundaries
    std::vector<std::tuple<VertexRef, bool>> ids;
    std::vector<int> stab;
    std::vector<bool> indicator;

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_key(const CircularArrangement& arr) {
    CanonicalKey key;
    if (arr.boundaries.empty()) {
        key.full_stab = arr.stab[0];
        return key;
    }
    const std::size_t n = arr.boundaries.size();
    std::size_t anchor = 0;
    auto id_of = [&](std::size_t j) {
        return std::tuple(arr.boundaries[j].vertex, arr.boundaries[j].antipodal);
    };
    for (std::size_t j = 1; j < n; ++j) {
        if (id_of(j) < id_of(anchor)) anchor = j;
    }
    key.ids.reserve(n);
    key.stab.reserve(n);
    key.indicator.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = (anchor + k) % n;
        key.ids.push_back(id_of(j));
        key.stab.push_back(arr.stab[j]);
        key.indicator.push_back(arr.min_indicator[j]);
    }
    return key;
}

CircularArrangement arrangement_at(const SegmentCtx& ctx, double x) {
    return build_arrangement({x, 0.0}, ctx.framed);
}

InvariantInterval make_snapshot(const SegmentCtx& ctx, double t_lo, double t_hi,
                                CircularArrangement arr) {
    InvariantInterval iv;
    iv.segment = ctx.segment;
    iv.t_lo = t_lo;
    iv.t_hi = t_hi;
    iv.x_lo = t_lo * ctx.length;
    iv.x_hi = t_hi * ctx.length;
    iv.boundary_vertex.reserve(arr.boundaries.size());
    for (const Boundary& b : arr.boundaries) iv.boundary_vertex.push_back(ctx.vertex(b.vertex));
    iv.arrangement = std::move(arr);
    return iv;
}

void collect_intervals(const SegmentCtx& ctx, double t_lo, double t_hi, int depth,
                       std::vector<InvariantInterval>& out) {
    const double x_lo = t_lo * ctx.length;
    const double x_hi = t_hi * ctx.length;
    const double w = x_hi - x_lo;
    CircularArrangement mid = arrangement_at(ctx, x_lo + 0.5 * w);
    const CanonicalKey key_mid = canonical_key(mid);
    const bool stable = canonical_key(arrangement_at(ctx, x_lo + 0.25 * w)) == key_mid &&
                        canonical_key(arrangement_at(ctx, x_lo + 0.75 * w)) == key_mid;
    if (stable) {
        out.push_back(make_snapshot(ctx, t_lo, t_hi, std::move(mid)));
        return;
    }
    if (depth >= kMaxBisection) throw DegeneracyError(ctx.segment, t_lo, t_hi);
    const double t_mid = 0.5 * (t_lo + t_hi);
    collect_intervals(ctx, t_lo, t_mid, depth + 1, out);
    collect_intervals(ctx, t_mid, t_hi, depth + 1, out);
}

// Antiderivative evaluation that takes the one-sided limit 0 at the singular
// point; interval endpoints may sit exactly on a population vertex.
double antiderivative_value(Point p, double x) {
    const double u = p.x - x;
    if (p.y == 0.0) return -(u * std::atan2(0.0, u));
    return -(u * std::atan2(p.y, u) + 0.5 * p.y * std::log(u * u + p.y * p.y));
}

double boundary_angle(Point p, bool antipodal, double x) {
    return std::atan2(p.y, p.x - x) + (antipodal ? kPi : 0.0);
}

struct Job {
    int segment;
    double t_lo;
    double t_hi;
};

}  // namespace

DegeneracyError::DegeneracyError(int segment, double t_lo, double t_hi)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "cyclic invariance failed after max bisection on segment " << segment
             << ", t in [" << t_lo << ", " << t_hi << "]";
          return os.str();
      }()),
      segment_(segment),
      t_lo_(t_lo),
      t_hi_(t_hi) {}

std::vector<EventPoint> generate_events(const Polyline& query,
                                        std::span<const Polyline> curves,
                                        bool use_hull_prune) {
    std::vector<EventPoint> events;
    if (query.size() < 2) return events;

    const std::vector<FlatVertex> verts = flatten_vertices(curves);

    std::vector<TangentLine> hull_lines;
    if (use_hull_prune && curves.size() >= 2) {
        std::vector<ConvexHull> hulls;
        hulls.reserve(curves.size());
        for (const Polyline& c : curves) hulls.push_back(convex_hull(c.vertices()));
        for (std::size_t i = 0; i < hulls.size(); ++i) {
            for (std::size_t j = i + 1; j < hulls.size(); ++j) {
                for (const TangentLine& l : common_tangents(hulls[i], hulls[j])) {
                    hull_lines.push_back(l);
                }
            }
        }
    }

    for (int si = 0; si + 1 < static_cast<int>(query.size()); ++si) {
        const Segment seg = query.edge(si);
        events.push_back({si, 0.0, EventSource::QueryVertex});
        events.push_back({si, 1.0, EventSource::QueryVertex});

        const double seg_len2 = dot(seg.b - seg.a, seg.b - seg.a);
        for (const FlatVertex& fv : verts) {
            if (point_on_segment(fv.p, seg)) {
                const double t = std::clamp(dot(fv.p - seg.a, seg.b - seg.a) / seg_len2, 0.0, 1.0);
                events.push_back({si, t, EventSource::CurveCrossing});
            }
        }
        for (const Polyline& c : curves) {
            for (std::size_t e = 0; e + 1 < c.size(); ++e) {
                const Point u = c.vertices()[e];
                const Point v = c.vertices()[e + 1];
                if (const auto t = line_segment_param(seg.a, seg.b, u, v)) {
                    // A pair-line hit is a crossing only if it lands on the edge.
                    const Point hit = seg.a + *t * (seg.b - seg.a);
                    if (point_on_segment(hit, Segment(u, v))) {
                        events.push_back({si, *t, EventSource::CurveCrossing});
                    }
                }
            }
        }

        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                const Point u = verts[i].p;
                const Point v = verts[j].p;
                if (distance(u, v) <= kIncidenceTol) continue;
                if (use_hull_prune) {
                    if (!locally_supports(curves[verts[i].curve], verts[i].vertex, u, v) ||
                        !locally_supports(curves[verts[j].curve], verts[j].vertex, v, u)) {
                        continue;
                    }
                }
                if (const auto t = line_segment_param(seg.a, seg.b, u, v)) {
                    events.push_back({si, *t, EventSource::VertexPairLine});
                }
            }
        }

        for (const TangentLine& l : hull_lines) {
            if (const auto t = line_segment_param(seg.a, seg.b, l.a, l.b)) {
                events.push_back({si, *t, EventSource::HullTangent});
            }
        }
    }

    sort_and_dedup(events);
    return events;
}

std::vector<InvariantInterval> partition_into_invariant_intervals(
    const Polyline& query, std::span<const Polyline> curves,
    std::span<const EventPoint> events) {
    std::vector<InvariantInterval> out;
    for (int si = 0; si + 1 < static_cast<int>(query.size()); ++si) {
        std::vector<double> ts{0.0, 1.0};
        for (const EventPoint& e : events) {
            if (e.segment == si) ts.push_back(e.t);
        }
        std::sort(ts.begin(), ts.end());
        const SegmentCtx ctx = make_segment_ctx(query, si, curves);
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            if (ts[k + 1] - ts[k] <= kEventTol) continue;
            collect_intervals(ctx, ts[k], ts[k + 1], 0, out);
        }
    }
    return out;
}

double boundary_antiderivative(Point p, double x) {
    if (p.y == 0.0 && p.x - x == 0.0) {
        throw std::domain_error("boundary_antiderivative: singular at the defining vertex");
    }
    return antiderivative_value(p, x);
}

double cell_area_integral(const InvariantInterval& interval, std::size_t cell) {
    const CircularArrangement& arr = interval.arrangement;
    const double dx = interval.x_hi - interval.x_lo;
    if (arr.boundaries.empty()) return kTwoPi * dx;

    const std::size_t n = arr.boundaries.size();
    const std::size_t lo = cell;
    const std::size_t hi = (cell + 1) % n;
    const Point p_lo = interval.boundary_vertex[lo];
    const Point p_hi = interval.boundary_vertex[hi];
    const bool a_lo = arr.boundaries[lo].antipodal;
    const bool a_hi = arr.boundaries[hi].antipodal;

    const double x_mid = 0.5 * (interval.x_lo + interval.x_hi);
    const double width_mid = arr.cell_width(cell);
    const double delta_mid =
        boundary_angle(p_hi, a_hi, x_mid) - boundary_angle(p_lo, a_lo, x_mid);
    const double shift = kTwoPi * std::round((width_mid - delta_mid) / kTwoPi);

    // The shifted width must stay inside [0, 2*pi] across the interval; a
    // violation means the snapshot does not describe the whole interval.
    for (const double f : {0.25, 0.5, 0.75}) {
        const double x = interval.x_lo + f * dx;
        const double w =
            boundary_angle(p_hi, a_hi, x) - boundary_angle(p_lo, a_lo, x) + shift;
        if (w < -1e-9 || w > kTwoPi + 1e-9) {
            throw std::runtime_error("cell_area_integral: inconsistent cell width inside interval");
        }
    }

    // The antipodal offsets are constant in x and integrate linearly, like
    // the winding shift.
    const double offset = (a_hi ? kPi : 0.0) - (a_lo ? kPi : 0.0) + shift;
    const double area = (antiderivative_value(p_hi, interval.x_hi) -
                         antiderivative_value(p_hi, interval.x_lo)) -
                        (antiderivative_value(p_lo, interval.x_hi) -
                         antiderivative_value(p_lo, interval.x_lo)) +
                        offset * dx;
    return std::max(area, 0.0);
}

double interval_depth(const InvariantInterval& interval) {
    const CircularArrangement& arr = interval.arrangement;
    const double dx = interval.x_hi - interval.x_lo;
    if (arr.boundaries.empty()) return arr.stab[0] * kPi * dx;

    double total = 0.0;
    const std::size_t m = arr.half();
    for (std::size_t j = 0; j < m; ++j) {
        const int s = std::min(arr.stab[j], arr.stab[j + m]);
        if (s > 0) total += s * cell_area_integral(interval, j);
    }
    return total;
}

DepthResult curve_depth(const Polyline& query, std::span<const Polyline> curves,
                        const ExactOptions& options) {
    DepthResult result;
    result.length = arc_length(query);
    const std::size_t n = curves.size();

    if (query.size() == 1) {
        result.raw = point_depth_raw(query.vertices()[0], curves);
        result.depth = result.raw / kPi;
        result.normalized = n == 0 ? 0.0 : result.depth / static_cast<double>(n);
        return result;
    }

    std::vector<EventPoint> events = generate_events(query, curves, options.hull_prune);
    for (const EventPoint& e : options.extra_events) {
        if (e.segment >= 0 && e.segment + 1 < static_cast<int>(query.size()) && e.t >= 0.0 &&
            e.t <= 1.0) {
            events.push_back(e);
        }
    }
    sort_and_dedup(events);

    // One job per candidate interval; jobs are independent and results are
    // reduced in (segment, t_lo) order afterwards.
    std::vector<Job> jobs;
    std::vector<SegmentCtx> ctxs;
    for (int si = 0; si + 1 < static_cast<int>(query.size()); ++si) {
        ctxs.push_back(make_segment_ctx(query, si, curves));
        std::vector<double> ts;
        for (const EventPoint& e : events) {
            if (e.segment == si) ts.push_back(e.t);
        }
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            if (ts[k + 1] - ts[k] <= kEventTol) continue;
            jobs.push_back({si, ts[k], ts[k + 1]});
        }
    }

    struct JobResult {
        std::vector<InvariantInterval> intervals;
        std::vector<double> contributions;
        std::exception_ptr error;
    };
    std::vector<JobResult> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        JobResult& jr = results[i];
        try {
            collect_intervals(ctxs[jobs[i].segment], jobs[i].t_lo, jobs[i].t_hi, 0, jr.intervals);
            jr.contributions.reserve(jr.intervals.size());
            for (const InvariantInterval& iv : jr.intervals) {
                jr.contributions.push_back(interval_depth(iv));
            }
        } catch (...) {
            jr.error = std::current_exception();
        }
    });

    double sum = 0.0, comp = 0.0;  // compensated accumulation in fixed order
    for (JobResult& jr : results) {
        if (jr.error) std::rethrow_exception(jr.error);
        for (std::size_t k = 0; k < jr.intervals.size(); ++k) {
            const InvariantInterval& iv = jr.intervals[k];
            const double value = jr.contributions[k];
            const double y = value - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            result.per_interval.push_back({iv.segment, iv.t_lo, iv.t_hi, value});
        }
    }

    result.raw = sum;
    result.depth = result.raw / (kPi * result.length);
    result.normalized = n == 0 ? 0.0 : result.depth / static_cast<double>(n);
    return result;
}

}  // namespace curvedepth
