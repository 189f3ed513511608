#include "curvedepth/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "curvedepth/parallel.hpp"
#include "curvedepth/stabbing.hpp"

namespace curvedepth {

namespace {
constexpr double kPi = std::numbers::pi;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    return mix64(mix64(seed) ^ mix64(counter * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull));
}

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

Point sample_point(const Polyline& curve, const CounterRng& rng, std::uint64_t counter) {
    const double length = arc_length(curve);
    if (length <= 0.0) throw std::domain_error("sample_point: zero-length polyline");

    // One draw picks both the segment (probability proportional to length)
    // and the position on it.
    const double s = rng.uniform(counter) * length;
    double consumed = 0.0;
    for (std::size_t e = 0; e + 1 < curve.size(); ++e) {
        const Segment seg = curve.edge(e);
        const double len = seg.length();
        if (s <= consumed + len || e + 2 == curve.size()) {
            const double t = std::clamp((s - consumed) / len, 0.0, 1.0);
            return seg.a + t * (seg.b - seg.a);
        }
        consumed += len;
    }
    return curve.vertices().back();
}

McEstimate estimate_depth(const Polyline& query, std::span<const Polyline> curves,
                          const McConfig& cfg) {
    if (cfg.samples == 0) throw std::invalid_argument("estimate_depth: samples must be positive");
    const double length = arc_length(query);
    if (length <= 0.0) throw std::domain_error("estimate_depth: zero-length query");

    const std::size_t n = curves.size();
    const CounterRng rng{cfg.seed};

    // Chunked histograms: sample k is a pure function of (seed, k), and the
    // integer reduction is order-independent, so any schedule yields the
    // same estimate without holding all samples in memory.
    constexpr std::uint64_t kChunk = 1 << 14;
    const std::size_t chunks = static_cast<std::size_t>((cfg.samples + kChunk - 1) / kChunk);
    std::vector<std::vector<std::uint64_t>> histograms(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        std::vector<std::uint64_t> local(n + 1, 0);
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(cfg.samples, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
            const Point q = sample_point(query, rng, 2 * i);
            const double theta = rng.uniform(2 * i + 1) * kPi;
            const int fwd = stab_count(Ray(q, theta), curves);
            const int minimum =
                fwd == 0 ? 0 : std::min(fwd, stab_count(Ray(q, theta + kPi), curves));
            ++local[static_cast<std::size_t>(minimum)];
        }
        histograms[c] = std::move(local);
    });

    McEstimate est;
    est.population = n;
    est.samples = cfg.samples;
    est.counts.assign(n + 1, 0);
    for (const auto& local : histograms) {
        for (std::size_t k = 0; k <= n; ++k) est.counts[k] += local[k];
    }
    est.p_hat.resize(n + 1);
    double d = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        est.p_hat[k] = static_cast<double>(est.counts[k]) / static_cast<double>(cfg.samples);
        d += static_cast<double>(k) * est.p_hat[k];
    }
    est.d_hat = d;
    est.d_hat_normalized = n == 0 ? 0.0 : d / static_cast<double>(n);
    return est;
}

std::uint64_t required_samples(double epsilon, std::size_t population) {
    if (epsilon <= 0.0) throw std::domain_error("required_samples: epsilon must be positive");
    const double n = static_cast<double>(population);
    const double raw = std::ceil(20.0 * (n + 1.0) * n * n / (epsilon * epsilon));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(raw));
}

double closeness_bound(std::uint64_t samples, double epsilon, std::size_t population) {
    if (population == 0) return 1.0;
    const double n = static_cast<double>(population);
    const double v =
        1.0 - 3.0 * std::exp(-(static_cast<double>(samples) * epsilon * epsilon) / (25.0 * n * n));
    return std::max(0.0, v);
}

}  // namespace curvedepth
