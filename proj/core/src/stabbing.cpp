#include "curvedepth/stabbing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvedepth {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

bool AngularArc::contains(double theta, double tol) const {
    if (width >= kTwoPi - tol) return true;
    const double d = normalize_angle(theta - start);
    return d <= width + tol || d >= kTwoPi - tol;
}

bool DirectionSet::contains(double theta, double tol) const {
    if (full) return true;
    return std::any_of(arcs.begin(), arcs.end(), [&](const ArcSpan& a) {
        const double d = normalize_angle(theta - a.start);
        return d <= a.width + tol || d >= kTwoPi - tol;
    });
}

double DirectionSet::total_width() const {
    if (full) return kTwoPi;
    double w = 0.0;
    for (const ArcSpan& a : arcs) w += a.width;
    return w;
}

std::size_t CircularArrangement::antipodal_cell(std::size_t j) const {
    if (boundaries.empty()) return 0;
    return (j + half()) % boundaries.size();
}

double CircularArrangement::cell_width(std::size_t j) const {
    if (boundaries.empty()) return kTwoPi;
    const double lo = boundaries[j].angle;
    const double hi =
        (j + 1 < boundaries.size()) ? boundaries[j + 1].angle : boundaries[0].angle + kTwoPi;
    return hi - lo;
}

double CircularArrangement::cell_midpoint(std::size_t j) const {
    if (boundaries.empty()) return 0.0;
    return normalize_angle(boundaries[j].angle + 0.5 * cell_width(j));
}

AngularArc segment_arc(Point q, const Segment& s) {
    if (point_on_segment(q, s)) return {0.0, kTwoPi};
    if (orientation(q, s.a, s.b) == 0) {
        const Point nearest = distance(q, s.a) <= distance(q, s.b) ? s.a : s.b;
        return {angle_to(q, nearest), 0.0};
    }
    const double alpha = angle_to(q, s.a);
    const double beta = angle_to(q, s.b);
    const double w = normalize_angle(beta - alpha);
    if (w <= kPi) return {alpha, w};
    return {beta, kTwoPi - w};
}

namespace {

ArcSpan edge_arc(Point q, Point a, Point b, int curve, int va, int vb) {
    // Caller has excluded q on the closed edge.
    if (orientation(q, a, b) == 0) {
        const bool near_a = distance(q, a) <= distance(q, b);
        const Point nearest = near_a ? a : b;
        const VertexRef id{curve, near_a ? va : vb};
        return {angle_to(q, nearest), 0.0, id, id};
    }
    const double alpha = angle_to(q, a);
    const double beta = angle_to(q, b);
    const double w = normalize_angle(beta - alpha);
    if (w <= kPi) return {alpha, w, {curve, va}, {curve, vb}};
    return {beta, kTwoPi - w, {curve, vb}, {curve, va}};
}

}  // namespace

DirectionSet curve_direction_set(Point q, const Polyline& curve, int curve_index) {
    DirectionSet ds;
    if (curve.size() == 1) {
        const Point v = curve.vertices()[0];
        if (distance(q, v) <= kIncidenceTol) {
            ds.full = true;
        } else {
            const VertexRef id{curve_index, 0};
            ds.arcs.push_back({angle_to(q, v), 0.0, id, id});
        }
        return ds;
    }

    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        if (point_on_segment(q, curve.edge(i))) {
            ds.full = true;  // root on the curve: every closed ray meets it
            return ds;
        }
    }

    struct Raw {
        double start, end;  // end = start + width, may exceed 2*pi
        VertexRef sid, eid;
    };
    std::vector<Raw> raw;
    raw.reserve(curve.edge_count());
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const ArcSpan a = edge_arc(q, curve.vertices()[i], curve.vertices()[i + 1],
                                   curve_index, static_cast<int>(i), static_cast<int>(i) + 1);
        raw.push_back({a.start, a.start + a.width, a.start_vertex, a.end_vertex});
    }
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.start < b.start; });

    std::vector<Raw> merged;
    for (const Raw& r : raw) {
        if (!merged.empty() && r.start <= merged.back().end + kAngleTol) {
            if (r.end > merged.back().end) {
                merged.back().end = r.end;
                merged.back().eid = r.eid;
            }
        } else {
            merged.push_back(r);
        }
    }
    // The last arc may spill past 2*pi and absorb arcs at the front.
    while (merged.size() > 1 && merged.front().start + kTwoPi <= merged.back().end + kAngleTol) {
        if (merged.front().end + kTwoPi > merged.back().end) {
            merged.back().end = merged.front().end + kTwoPi;
            merged.back().eid = merged.front().eid;
        }
        merged.erase(merged.begin());
    }
    if (merged.size() == 1 && merged.front().end - merged.front().start >= kTwoPi - kAngleTol) {
        ds.full = true;
        return ds;
    }
    for (const Raw& r : merged) {
        ds.arcs.push_back({normalize_angle(r.start), r.end - r.start, r.sid, r.eid});
    }
    std::sort(ds.arcs.begin(), ds.arcs.end(),
              [](const ArcSpan& a, const ArcSpan& b) { return a.start < b.start; });
    return ds;
}

int stab_count(const Ray& r, std::span<const Polyline> curves) {
    const Point d = r.direction();
    int count = 0;
    for (const Polyline& c : curves) {
        if (c.size() == 1) {
            const Point v = c.vertices()[0];
            if (std::abs(cross(d, v - r.root)) <= kIncidenceTol &&
                dot(d, v - r.root) >= -kIncidenceTol) {
                ++count;
            }
            continue;
        }
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            if (detail::ray_hits(r.root, d, c.edge(i))) {
                ++count;
                break;
            }
        }
    }
    return count;
}

CircularArrangement build_arrangement(Point q, std::span<const Polyline> curves) {
    struct Base {
        double angle;  // in [0, pi)
        VertexRef vertex;
        bool antipodal;
    };
    std::vector<Base> base;
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const DirectionSet ds = curve_direction_set(q, curves[ci], static_cast<int>(ci));
        if (ds.full) continue;
        for (const ArcSpan& a : ds.arcs) {
            const double endpoints[2] = {a.start, normalize_angle(a.start + a.width)};
            const VertexRef ids[2] = {a.start_vertex, a.end_vertex};
            for (int k = 0; k < 2; ++k) {
                const double ang = endpoints[k];
                if (ang < kPi) {
                    base.push_back({ang, ids[k], false});
                } else {
                    base.push_back({ang - kPi, ids[k], true});
                }
            }
        }
    }

    std::sort(base.begin(), base.end(), [](const Base& a, const Base& b) {
        if (a.angle != b.angle) return a.angle < b.angle;
        if (a.vertex != b.vertex) return a.vertex < b.vertex;
        return a.antipodal < b.antipodal;
    });

    // Deduplicate modulo pi, keeping the smallest identity per group.
    std::vector<Base> dedup;
    for (const Base& b : base) {
        if (!dedup.empty() && b.angle - dedup.back().angle <= kAngleTol) {
            auto key = [](const Base& x) { return std::tuple(x.vertex, x.antipodal); };
            if (key(b) < key(dedup.back())) {
                dedup.back().vertex = b.vertex;
                dedup.back().antipodal = b.antipodal;
            }
        } else {
            dedup.push_back(b);
        }
    }
    if (dedup.size() >= 2 &&
        (kPi - dedup.back().angle) + dedup.front().angle <= kAngleTol) {
        auto key = [](const Base& x) { return std::tuple(x.vertex, x.antipodal); };
        if (key(dedup.back()) < key(dedup.front())) {
            dedup.front().vertex = dedup.back().vertex;
            dedup.front().antipodal = dedup.back().antipodal;
        }
        dedup.pop_back();
    }

    CircularArrangement arr;
    const std::size_t m = dedup.size();
    arr.boundaries.reserve(2 * m);
    for (const Base& b : dedup) arr.boundaries.push_back({b.angle, b.vertex, b.antipodal});
    for (const Base& b : dedup) arr.boundaries.push_back({b.angle + kPi, b.vertex, !b.antipodal});

    const std::size_t cells = arr.cell_count();
    arr.stab.resize(cells);
    arr.min_indicator.resize(cells);
    if (m == 0) {
        arr.stab[0] = stab_count(Ray(q, 0.0), curves);
        arr.min_indicator[0] = true;
        return arr;
    }
    for (std::size_t j = 0; j < cells; ++j) {
        arr.stab[j] = stab_count(Ray(q, arr.cell_midpoint(j)), curves);
    }
    for (std::size_t j = 0; j < cells; ++j) {
        arr.min_indicator[j] = arr.stab[j] <= arr.stab[arr.antipodal_cell(j)];
    }
    return arr;
}

double point_depth_raw(const CircularArrangement& arr) {
    if (arr.boundaries.empty()) return arr.stab[0] * kPi;
    double total = 0.0;
    const std::size_t m = arr.half();
    for (std::size_t j = 0; j < m; ++j) {
        const int s = std::min(arr.stab[j], arr.stab[j + m]);
        if (s > 0) total += s * arr.cell_width(j);
    }
    return total;
}

double point_depth_raw(Point q, std::span<const Polyline> curves) {
    return point_depth_raw(build_arrangement(q, curves));
}

double point_depth(Point q, std::span<const Polyline> curves, bool normalized) {
    double d = point_depth_raw(q, curves) / kPi;
    if (normalized) {
        d = curves.empty() ? 0.0 : d / static_cast<double>(curves.size());
    }
    return d;
}

}  // namespace curvedepth
