#pragma once

#include <functional>
#include <span>

#include "curvedepth/geometry.hpp"

namespace curvedepth {

/// Brute-force references used to cross-check the event-driven computation.
/// Deterministic midpoint grids keep probes off degenerate configurations;
/// grid sizes must be >= 8 and powers of two.
struct OracleConfig {
    int angle_samples = 4096;
    int point_samples = 1024;
};

/// Riemann midpoint sum of min(stab(theta), stab(theta + pi)) over [0, pi),
/// already scaled by 1/pi (the 1/pi and the cell width pi/K cancel to 1/K).
double oracle_point_depth(Point q, std::span<const Polyline> curves, int angle_samples);

/// Arc-length-uniform midpoint grid along the query; average of
/// oracle_point_depth. A zero-length query delegates to the point oracle.
double oracle_curve_depth(const Polyline& query, std::span<const Polyline> curves,
                          int point_samples, int angle_samples);

inline double oracle_curve_depth(const Polyline& query, std::span<const Polyline> curves,
                                 const OracleConfig& cfg = {}) {
    return oracle_curve_depth(query, curves, cfg.point_samples, cfg.angle_samples);
}

/// Adaptive Simpson estimate of the integral of f over [a, b] within tol.
/// Throws std::runtime_error when the recursion fails to converge.
double quadrature(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace curvedepth
