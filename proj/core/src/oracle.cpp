#include "curvedepth/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace curvedepth {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(int samples) {
    if (samples < 8 || (samples & (samples - 1)) != 0) {
        throw std::invalid_argument("oracle grid sizes must be >= 8 and powers of two");
    }
}

// Flattened edges for the hot ray-cast loop.
struct EdgeTable {
    struct Edge {
        double ax, ay, bx, by;
    };
    std::vector<Edge> edges;
    std::vector<std::size_t> curve_begin;  // size n + 1
    std::vector<Point> lone_vertices;      // single-vertex curves
    std::vector<bool> is_point_curve;

    explicit EdgeTable(std::span<const Polyline> curves) {
        curve_begin.push_back(0);
        for (const Polyline& c : curves) {
            is_point_curve.push_back(c.size() == 1);
            if (c.size() == 1) {
                lone_vertices.push_back(c.vertices()[0]);
            } else {
                lone_vertices.push_back({0.0, 0.0});
                for (std::size_t i = 0; i + 1 < c.size(); ++i) {
                    const Point a = c.vertices()[i];
                    const Point b = c.vertices()[i + 1];
                    edges.push_back({a.x, a.y, b.x, b.y});
                }
            }
            curve_begin.push_back(edges.size());
        }
    }

    // Closed-ray intersection, matching ray_segment_intersects.
    bool curve_hit(std::size_t ci, double qx, double qy, double dx, double dy) const {
        if (is_point_curve[ci]) {
            const double vx = lone_vertices[ci].x - qx;
            const double vy = lone_vertices[ci].y - qy;
            return std::abs(dx * vy - dy * vx) <= kIncidenceTol &&
                   dx * vx + dy * vy >= -kIncidenceTol;
        }
        for (std::size_t e = curve_begin[ci]; e < curve_begin[ci + 1]; ++e) {
            const double rax = edges[e].ax - qx, ray = edges[e].ay - qy;
            const double rbx = edges[e].bx - qx, rby = edges[e].by - qy;
            const double oa = dx * ray - dy * rax;
            const double ob = dx * rby - dy * rbx;
            if (oa == 0.0 && ob == 0.0) {
                if (dx * rax + dy * ray >= -kIncidenceTol || dx * rbx + dy * rby >= -kIncidenceTol) {
                    return true;
                }
                continue;
            }
            if ((oa > 0.0 && ob > 0.0) || (oa < 0.0 && ob < 0.0)) continue;
            const double t = oa / (oa - ob);
            const double hx = rax + t * (rbx - rax);
            const double hy = ray + t * (rby - ray);
            // Tolerant forward test: a root on the segment rounds either way.
            if (dx * hx + dy * hy >= -kIncidenceTol) return true;
        }
        return false;
    }

    std::size_t curve_count() const { return curve_begin.size() - 1; }
};

double point_depth_sum(const EdgeTable& table, double qx, double qy,
                       std::span<const double> cos_table, std::span<const double> sin_table) {
    // cos/sin tables hold the K midpoint directions in [0, pi); the opposite
    // ray is the negated direction.
    long long acc = 0;
    const std::size_t n = table.curve_count();
    for (std::size_t j = 0; j < cos_table.size(); ++j) {
        const double dx = cos_table[j], dy = sin_table[j];
        int fwd = 0;
        for (std::size_t ci = 0; ci < n; ++ci) {
            if (table.curve_hit(ci, qx, qy, dx, dy)) ++fwd;
        }
        if (fwd == 0) continue;
        int bwd = 0;
        for (std::size_t ci = 0; ci < n; ++ci) {
            if (table.curve_hit(ci, qx, qy, -dx, -dy)) ++bwd;
        }
        acc += std::min(fwd, bwd);
    }
    return static_cast<double>(acc);
}

}  // namespace

double oracle_point_depth(Point q, std::span<const Polyline> curves, int angle_samples) {
    check_grid(angle_samples);
    if (curves.empty()) return 0.0;
    const EdgeTable table(curves);
    std::vector<double> cs(angle_samples), sn(angle_samples);
    for (int j = 0; j < angle_samples; ++j) {
        const double theta = (j + 0.5) * kPi / angle_samples;
        cs[j] = std::cos(theta);
        sn[j] = std::sin(theta);
    }
    return point_depth_sum(table, q.x, q.y, cs, sn) / angle_samples;
}

double oracle_curve_depth(const Polyline& query, std::span<const Polyline> curves,
                          int point_samples, int angle_samples) {
    const double length = arc_length(query);
    if (length == 0.0) return oracle_point_depth(query.vertices()[0], curves, angle_samples);
    check_grid(point_samples);
    check_grid(angle_samples);
    if (curves.empty()) return 0.0;

    const EdgeTable table(curves);
    std::vector<double> cs(angle_samples), sn(angle_samples);
    for (int j = 0; j < angle_samples; ++j) {
        const double theta = (j + 0.5) * kPi / angle_samples;
        cs[j] = std::cos(theta);
        sn[j] = std::sin(theta);
    }

    double total = 0.0;
    std::size_t edge = 0;
    double consumed = 0.0;  // arc length before the current edge
    for (int i = 0; i < point_samples; ++i) {
        const double s = (i + 0.5) * length / point_samples;
        while (edge + 2 < query.size() && consumed + query.edge(edge).length() < s) {
            consumed += query.edge(edge).length();
            ++edge;
        }
        const Segment e = query.edge(edge);
        const double t = (s - consumed) / e.length();
        const Point q = e.a + t * (e.b - e.a);
        total += point_depth_sum(table, q.x, q.y, cs, sn);
    }
    return total / (static_cast<double>(point_samples) * angle_samples);
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double b, double fa,
                double fm, double fb, double whole, double tol, int depth) {
    if (depth > 60) throw std::runtime_error("quadrature: no convergence");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    if (std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace curvedepth
