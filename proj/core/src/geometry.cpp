#include "curvedepth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvedepth {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Point make_point(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("point coordinates must be finite");
    }
    return {x, y};
}

double distance(Point a, Point b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Segment::Segment(Point a_, Point b_) : a(a_), b(b_) {
    if (a.x == b.x && a.y == b.y) {
        throw std::invalid_argument("degenerate segment");
    }
}

Polyline::Polyline(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) {
        throw std::invalid_argument("polyline needs at least one vertex");
    }
    for (const Point& p : vertices_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("polyline vertex must be finite");
        }
    }
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i] == vertices_[i - 1]) {
            throw std::invalid_argument("consecutive polyline vertices must be distinct");
        }
    }
}

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

Ray::Ray(Point root_, double angle_) : root(root_), angle(normalize_angle(angle_)) {}

Point Ray::direction() const {
    return {std::cos(angle), std::sin(angle)};
}

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    if (v > kIncidenceTol) return 1;
    if (v < -kIncidenceTol) return -1;
    return 0;
}

double angle_to(Point q, Point p) {
    if (p == q) {
        throw std::domain_error("angle_to: coincident points");
    }
    return normalize_angle(std::atan2(p.y - q.y, p.x - q.x));
}

double arc_length(const Polyline& p) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        total += distance(p.vertices()[i], p.vertices()[i + 1]);
    }
    return total;
}

bool point_on_segment(Point p, const Segment& s) {
    if (std::abs(cross(s.b - s.a, p - s.a)) > kIncidenceTol) return false;
    const double t = dot(p - s.a, s.b - s.a);
    return t >= -kIncidenceTol && t <= dot(s.b - s.a, s.b - s.a) + kIncidenceTol;
}

namespace detail {

bool ray_hits(Point root, Point d, const Segment& s) {
    const Point ra = s.a - root;
    const Point rb = s.b - root;
    const double oa = cross(d, ra);
    const double ob = cross(d, rb);

    if (oa == 0.0 && ob == 0.0) {
        // Segment collinear with the ray line: hit iff any part lies forward.
        return dot(d, ra) >= -kIncidenceTol || dot(d, rb) >= -kIncidenceTol;
    }
    if ((oa > 0.0 && ob > 0.0) || (oa < 0.0 && ob < 0.0)) return false;

    // Endpoints straddle (or one touches) the ray line. The forward test
    // needs the incidence tolerance: for a root exactly on the segment the
    // true value is 0 and the computed one carries rounding of either sign.
    const double t = oa / (oa - ob);
    const Point hit = s.a + t * (s.b - s.a);
    return dot(d, hit - root) >= -kIncidenceTol;
}

}  // namespace detail

bool ray_segment_intersects(const Ray& r, const Segment& s) {
    return detail::ray_hits(r.root, r.direction(), s);
}

ConvexHull convex_hull(std::span<const Point> points) {
    if (points.empty()) {
        throw std::domain_error("convex_hull: empty input");
    }
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.size() == 1) return ConvexHull{{pts[0]}};

    // Monotone chain with strict turns so no three hull vertices are collinear.
    auto build = [&](auto begin, auto end) {
        std::vector<Point> chain;
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   cross(chain.back() - chain[chain.size() - 2], *it - chain.back()) <=
                       kIncidenceTol) {
                chain.pop_back();
            }
            chain.push_back(*it);
        }
        return chain;
    };
    std::vector<Point> lower = build(pts.begin(), pts.end());
    std::vector<Point> upper = build(pts.rbegin(), pts.rend());

    if (lower.size() == 2 && upper.size() == 2) {
        return ConvexHull{{lower[0], lower[1]}};  // collinear input
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return ConvexHull{std::move(lower)};
}

bool hull_contains(const ConvexHull& h, Point p, double tol) {
    const auto& v = h.vertices;
    if (v.size() == 1) return distance(v[0], p) <= tol;
    if (v.size() == 2) return point_on_segment(p, Segment(v[0], v[1]));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        if (cross(b - a, p - a) < -tol) return false;
    }
    return true;
}

namespace {

bool segments_touch(const Segment& s1, const Segment& s2) {
    auto side = [](Point a, Point b, Point c) { return cross(b - a, c - a); };
    const double d1 = side(s1.a, s1.b, s2.a);
    const double d2 = side(s1.a, s1.b, s2.b);
    const double d3 = side(s2.a, s2.b, s1.a);
    const double d4 = side(s2.a, s2.b, s1.b);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    return point_on_segment(s2.a, s1) || point_on_segment(s2.b, s1) ||
           point_on_segment(s1.a, s2) || point_on_segment(s1.b, s2);
}

std::vector<Segment> hull_edges(const ConvexHull& h) {
    std::vector<Segment> edges;
    const auto& v = h.vertices;
    if (v.size() == 2) {
        edges.emplace_back(v[0], v[1]);
    } else if (v.size() >= 3) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            edges.emplace_back(v[i], v[(i + 1) % v.size()]);
        }
    }
    return edges;
}

bool hull_inside(const ConvexHull& inner, const ConvexHull& outer) {
    return std::all_of(inner.vertices.begin(), inner.vertices.end(),
                       [&](Point p) { return hull_contains(outer, p); });
}

}  // namespace

HullPairClass classify_hull_pair(const ConvexHull& a, const ConvexHull& b) {
    if (hull_inside(a, b) || hull_inside(b, a)) return HullPairClass::Nested;
    const auto ea = hull_edges(a);
    const auto eb = hull_edges(b);
    for (const Segment& s1 : ea) {
        for (const Segment& s2 : eb) {
            if (segments_touch(s1, s2)) return HullPairClass::BoundariesIntersect;
        }
    }
    return HullPairClass::Disjoint;
}

std::vector<TangentLine> common_tangents(const ConvexHull& a, const ConvexHull& b) {
    if (classify_hull_pair(a, b) == HullPairClass::Nested) return {};

    // Brute force over vertex pairs: a line is tangent when each hull lies
    // weakly on one of its sides (it touches each through the defining
    // vertex). Pairs along a shared supporting edge give the same line once.
    auto supports = [](const ConvexHull& h, Point u, Point v) {
        double lo = 0.0, hi = 0.0;
        for (const Point& w : h.vertices) {
            const double o = cross(v - u, w - u);
            lo = std::min(lo, o);
            hi = std::max(hi, o);
        }
        return lo >= -kIncidenceTol || hi <= kIncidenceTol;
    };
    auto same_line = [](const TangentLine& l, Point u, Point v) {
        const Point d = l.b - l.a;
        const double len = std::hypot(d.x, d.y);
        return std::abs(cross(d, u - l.a)) <= 1e-9 * len && std::abs(cross(d, v - l.a)) <= 1e-9 * len;
    };

    std::vector<TangentLine> lines;
    for (const Point& va : a.vertices) {
        for (const Point& vb : b.vertices) {
            if (distance(va, vb) <= kIncidenceTol) continue;
            if (!supports(a, va, vb) || !supports(b, va, vb)) continue;
            const bool duplicate = std::any_of(lines.begin(), lines.end(), [&](const TangentLine& l) {
                return same_line(l, va, vb);
            });
            if (!duplicate) lines.push_back({va, vb});
        }
    }
    return lines;
}

AffineFrame to_frame(const Segment& seg) {
    const double len = seg.length();
    AffineFrame f;
    f.ux = (seg.b.x - seg.a.x) / len;
    f.uy = (seg.b.y - seg.a.y) / len;
    f.tx = -(f.ux * seg.a.x + f.uy * seg.a.y);
    f.ty = -(-f.uy * seg.a.x + f.ux * seg.a.y);
    return f;
}

Point AffineFrame::apply(Point p) const {
    return {ux * p.x + uy * p.y + tx, -uy * p.x + ux * p.y + ty};
}

AffineFrame AffineFrame::inverse() const {
    AffineFrame inv;
    inv.ux = ux;
    inv.uy = -uy;
    inv.tx = -(ux * tx - uy * ty);
    inv.ty = -(uy * tx + ux * ty);
    return inv;
}

}  // namespace curvedepth
