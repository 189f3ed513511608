#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "curvedepth/geometry.hpp"
#include "curvedepth/monte_carlo.hpp"

namespace curvedepth::testing {

/// Stateful wrapper over the counter RNG for test-side generation.
class TestRng {
  public:
    explicit TestRng(std::uint64_t seed) : rng_{seed} {}

    double uniform() { return rng_.uniform(counter_++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1. - 1e-12));
    }

  private:
    CounterRng rng_;
    std::uint64_t counter_ = 0;
};

inline Polyline random_polyline(TestRng& rng, int min_vertices, int max_vertices,
                                double lo = -10.0, double hi = 10.0) {
    const int m = rng.uniform_int(min_vertices, max_vertices);
    std::vector<Point> vs;
    while (static_cast<int>(vs.size()) < m) {
        const Point p{rng.uniform(lo, hi), rng.uniform(lo, hi)};
        if (!vs.empty() && distance(vs.back(), p) < 0.05) continue;
        vs.push_back(p);
    }
    return Polyline(std::move(vs));
}

struct RandomInstance {
    Polyline query;
    std::vector<Polyline> population;
};

inline RandomInstance random_instance(std::uint64_t seed, int max_curves = 4,
                                      int max_vertices = 5) {
    TestRng rng(seed);
    RandomInstance inst{random_polyline(rng, 2, max_vertices), {}};
    const int n = rng.uniform_int(1, max_curves);
    for (int i = 0; i < n; ++i) {
        inst.population.push_back(random_polyline(rng, 2, max_vertices));
    }
    return inst;
}

/// Similarity transform: rotation, uniform scale, translation, optional
/// reflection (y sign flip applied before the rotation).
struct Similarity {
    double angle = 0.0;
    double scale = 1.0;
    Point shift;
    bool reflect = false;

    Point apply(Point p) const {
        const double y = reflect ? -p.y : p.y;
        const double c = std::cos(angle), s = std::sin(angle);
        return {scale * (c * p.x - s * y) + shift.x, scale * (s * p.x + c * y) + shift.y};
    }
    Polyline apply(const Polyline& poly) const {
        std::vector<Point> vs;
        vs.reserve(poly.size());
        for (const Point& p : poly.vertices()) vs.push_back(apply(p));
        return Polyline(std::move(vs));
    }
    std::vector<Polyline> apply(const std::vector<Polyline>& curves) const {
        std::vector<Polyline> out;
        out.reserve(curves.size());
        for (const Polyline& c : curves) out.push_back(apply(c));
        return out;
    }
};

inline Similarity random_similarity(TestRng& rng) {
    return {rng.uniform(0.0, 6.28), rng.uniform(0.5, 3.0),
            {rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)}, rng.uniform() < 0.5};
}

// Two horizontal unit-offset plates; the standing closed-form fixture.
inline std::vector<Polyline> plates() {
    return {Polyline({{-1.0, 1.0}, {1.0, 1.0}}), Polyline({{-1.0, -1.0}, {1.0, -1.0}})};
}

inline Polyline plates_query() { return Polyline({{-1.0, 0.0}, {1.0, 0.0}}); }

/// Exact depth of plates_query against plates(): (pi - 2 ln 2) / (2 pi).
inline double plates_depth() {
    return (std::numbers::pi - 2.0 * std::log(2.0)) / (2.0 * std::numbers::pi);
}

}  // namespace curvedepth::testing
