#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace curvedepth {

// Tolerance used by incidence predicates (collinearity, on-segment tests,
// boundary deduplication). Inputs are expected at desk scale, roughly
// coordinates in [-1e3, 1e3].
inline constexpr double kIncidenceTol = 1e-12;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

Point make_point(double x, double y);  // rejects NaN/infinity

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double distance(Point a, Point b);

struct Segment {
    Point a;
    Point b;

    Segment(Point a_, Point b_);  // rejects degenerate (a == b)
    double length() const { return distance(a, b); }
};

/// Ordered vertex chain; a single vertex is a degenerate point curve.
class Polyline {
  public:
    explicit Polyline(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const { return vertices_.size() - 1; }
    Segment edge(std::size_t i) const { return Segment(vertices_[i], vertices_[i + 1]); }

  private:
    std::vector<Point> vertices_;
};

struct Ray {
    Point root;
    double angle = 0.0;  // normalized to [0, 2*pi) at construction

    Ray(Point root_, double angle_);
    Point direction() const;
};

/// Rigid frame mapping a source segment onto the positive x-axis with the
/// first endpoint at the origin. Distances and angle differences are
/// preserved.
struct AffineFrame {
    double ux = 1.0, uy = 0.0;  // unit direction of the source segment
    double tx = 0.0, ty = 0.0;

    Point apply(Point p) const;
    AffineFrame inverse() const;
};

struct ConvexHull {
    std::vector<Point> vertices;  // counterclockwise; 1 or 2 entries for degenerate hulls
};

/// A line through two distinct points, tangent to a pair of hulls.
struct TangentLine {
    Point a;
    Point b;
};

enum class HullPairClass { Disjoint, BoundariesIntersect, Nested };

double normalize_angle(double theta);  // into [0, 2*pi)

/// Sign of the cross product (b-a) x (c-a): +1 counterclockwise, 0 collinear
/// within kIncidenceTol, -1 clockwise.
int orientation(Point a, Point b, Point c);

/// Polar angle of p - q in [0, 2*pi). Throws std::domain_error when p == q.
double angle_to(Point q, Point p);

double arc_length(const Polyline& p);

bool point_on_segment(Point p, const Segment& s);

/// Closed ray against closed segment; touching endpoints and a root lying on
/// the segment both count as intersections.
bool ray_segment_intersects(const Ray& r, const Segment& s);

namespace detail {
/// Same predicate with a precomputed direction vector for hot loops.
bool ray_hits(Point root, Point dir, const Segment& s);
}  // namespace detail

/// Counterclockwise hull with duplicates collapsed; collinear input yields a
/// 2-vertex hull, a single point a 1-vertex hull. Throws on empty input.
ConvexHull convex_hull(std::span<const Point> points);

bool hull_contains(const ConvexHull& h, Point p, double tol = kIncidenceTol);

HullPairClass classify_hull_pair(const ConvexHull& a, const ConvexHull& b);

/// All lines touching each hull in exactly one vertex: 4 for disjoint hulls,
/// the (at most 2) outer tangents when boundaries intersect, none when one
/// hull is nested in the other.
std::vector<TangentLine> common_tangents(const ConvexHull& a, const ConvexHull& b);

AffineFrame to_frame(const Segment& seg);
inline Point apply_frame(const AffineFrame& f, Point p) { return f.apply(p); }

}  // namespace curvedepth
