#include "curvedepth/hulls.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace curvedepth {

namespace {

// Cut positions along a curve, measured as edge index + parameter in [0, 1].
struct CutPos {
    std::size_t edge;
    double t;

    double key() const { return static_cast<double>(edge) + t; }
};

std::optional<double> edge_cut_param(const Segment& edge, const Segment& query_seg) {
    const Point r = edge.b - edge.a;
    const Point s = query_seg.b - query_seg.a;
    const double denom = cross(r, s);
    if (std::abs(denom) <= kIncidenceTol) return std::nullopt;  // parallel; overlaps handled via endpoints
    const double t = cross(query_seg.a - edge.a, s) / denom;
    const double u = cross(query_seg.a - edge.a, r) / denom;
    if (t < -kIncidenceTol || t > 1.0 + kIncidenceTol) return std::nullopt;
    if (u < -kIncidenceTol || u > 1.0 + kIncidenceTol) return std::nullopt;
    return std::clamp(t, 0.0, 1.0);
}

std::vector<ConvexHull> cut_components(const Polyline& curve, const Segment& query_seg) {
    if (curve.size() == 1) {
        return {convex_hull(curve.vertices())};
    }

    std::vector<CutPos> cuts;
    for (std::size_t e = 0; e + 1 < curve.size(); ++e) {
        const Segment edge = curve.edge(e);
        if (const auto t = edge_cut_param(edge, query_seg)) {
            cuts.push_back({e, *t});
        } else {
            // Collinear overlap: cut at whichever endpoints lie on the query segment.
            if (point_on_segment(edge.a, query_seg)) cuts.push_back({e, 0.0});
            if (point_on_segment(edge.b, query_seg)) cuts.push_back({e, 1.0});
        }
    }
    std::sort(cuts.begin(), cuts.end(), [](const CutPos& a, const CutPos& b) {
        return a.key() < b.key();
    });
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](const CutPos& a, const CutPos& b) {
                               return std::abs(a.key() - b.key()) <= 1e-12;
                           }),
               cuts.end());

    auto point_at = [&](const CutPos& c) {
        const Segment e = curve.edge(c.edge);
        return e.a + c.t * (e.b - e.a);
    };

    std::vector<ConvexHull> hulls;
    double from_key = 0.0;
    Point from_point = curve.vertices().front();
    auto emit = [&](double to_key, Point to_point) {
        if (to_key - from_key <= 1e-12) return;
        std::vector<Point> pts;
        pts.push_back(from_point);
        // Interior vertices strictly between the two cut positions.
        const std::size_t first = static_cast<std::size_t>(std::ceil(from_key - 1e-12));
        for (std::size_t v = first; v < curve.size(); ++v) {
            const double vk = static_cast<double>(v);
            if (vk <= from_key + 1e-12) continue;
            if (vk >= to_key - 1e-12) break;
            pts.push_back(curve.vertices()[v]);
        }
        if (distance(pts.back(), to_point) > 1e-12 || pts.size() == 1) pts.push_back(to_point);
        hulls.push_back(convex_hull(pts));
        from_key = to_key;
        from_point = to_point;
    };

    for (const CutPos& c : cuts) emit(c.key(), point_at(c));
    emit(static_cast<double>(curve.size() - 1), curve.vertices().back());
    if (hulls.empty()) hulls.push_back(convex_hull(curve.vertices()));
    return hulls;
}

std::optional<double> line_query_param(const Segment& seg, const TangentLine& line) {
    const double denom = cross(seg.b - seg.a, line.b - line.a);
    if (std::abs(denom) <= kIncidenceTol) return std::nullopt;
    const double t = cross(line.a - seg.a, line.b - line.a) / denom;
    if (t < -1e-12 || t > 1.0 + 1e-12) return std::nullopt;
    return std::clamp(t, 0.0, 1.0);
}

}  // namespace

HullHierarchy build_hierarchy(std::span<const Polyline> curves, const Polyline& query) {
    HullHierarchy h;
    h.outer.reserve(curves.size());
    for (const Polyline& c : curves) h.outer.push_back(convex_hull(c.vertices()));

    const std::size_t seg_count = query.size() < 2 ? 0 : query.size() - 1;
    h.inner.resize(curves.size());
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        h.inner[ci].reserve(seg_count);
        for (std::size_t si = 0; si < seg_count; ++si) {
            h.inner[ci].push_back(cut_components(curves[ci], query.edge(si)));
        }
    }
    return h;
}

TangentEventSet tangent_event_set(const HullHierarchy& hierarchy, const Polyline& query) {
    TangentEventSet set;
    for (std::size_t i = 0; i < hierarchy.outer.size(); ++i) {
        for (std::size_t j = i + 1; j < hierarchy.outer.size(); ++j) {
            const auto lines = common_tangents(hierarchy.outer[i], hierarchy.outer[j]);
            set.lines.insert(set.lines.end(), lines.begin(), lines.end());
        }
    }

    const std::size_t seg_count = query.size() < 2 ? 0 : query.size() - 1;
    set.s_points.resize(seg_count);
    for (std::size_t si = 0; si < seg_count; ++si) {
        const Segment seg = query.edge(si);
        for (const TangentLine& l : set.lines) {
            if (const auto t = line_query_param(seg, l)) set.s_points[si].push_back(*t);
        }
        std::sort(set.s_points[si].begin(), set.s_points[si].end());
    }
    return set;
}

}  // namespace curvedepth
