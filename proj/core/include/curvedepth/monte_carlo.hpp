#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curvedepth/geometry.hpp"

namespace curvedepth {

/// Counter-based deterministic generator: draw k of a run is a pure function
/// of (seed, k), so samples can be produced in any order or in parallel and
/// still be bit-identical.
struct CounterRng {
    std::uint64_t seed = 0;

    std::uint64_t bits(std::uint64_t counter) const;
    double uniform(std::uint64_t counter) const;  // in [0, 1)
};

struct McConfig {
    std::uint64_t samples = 0;  // must be > 0
    std::uint64_t seed = 0;
};

/// Sampled stabbing-number histogram and the depth estimate derived from it.
/// d_hat lives on the un-normalized depth scale [0, n].
struct McEstimate {
    std::vector<std::uint64_t> counts;  // histogram of min stabbing numbers, size n + 1
    std::vector<double> p_hat;          // counts / N
    double d_hat = 0.0;
    double d_hat_normalized = 0.0;
    std::size_t population = 0;
    std::uint64_t samples = 0;
};

/// Point uniform by arc length: a segment is selected with probability
/// proportional to its length, then a uniform parameter on it. Throws
/// std::domain_error for a zero-length polyline.
Point sample_point(const Polyline& curve, const CounterRng& rng, std::uint64_t counter);

/// Shoots `cfg.samples` opposite ray pairs from arc-length-uniform roots with
/// uniform elevations in [0, pi) and records the smaller stabbing number of
/// each pair.
McEstimate estimate_depth(const Polyline& query, std::span<const Polyline> curves,
                          const McConfig& cfg);

/// Samples sufficient for the closeness guarantee at precision epsilon on the
/// un-normalized depth scale: ceil(20 (n+1) n^2 / epsilon^2), at least 1.
std::uint64_t required_samples(double epsilon, std::size_t population);

/// Lower bound on P(|estimate - depth| < epsilon) for N samples:
/// max(0, 1 - 3 exp(-N epsilon^2 / (25 n^2))).
double closeness_bound(std::uint64_t samples, double epsilon, std::size_t population);

}  // namespace curvedepth
