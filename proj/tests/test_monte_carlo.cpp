#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvedepth/exact.hpp"
#include "curvedepth/monte_carlo.hpp"
#include "support.hpp"

using namespace curvedepth;
using namespace curvedepth::testing;

TEST_CASE("sample_point: mass proportional to segment length") {
    const Polyline p({{0, 0}, {1, 0}, {1, 3}});
    const CounterRng rng{7};
    int on_second = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        const Point q = sample_point(p, rng, static_cast<std::uint64_t>(i));
        if (q.y > 1e-12) ++on_second;
    }
    CHECK(std::abs(on_second / static_cast<double>(trials) - 0.75) < 0.01);
}

TEST_CASE("sample_point: mean position on a unit segment") {
    const Polyline p({{0, 0}, {1, 0}});
    const CounterRng rng{11};
    double sum = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) sum += sample_point(p, rng, static_cast<std::uint64_t>(i)).x;
    CHECK(std::abs(sum / trials - 0.5) < 0.005);
}

TEST_CASE("sample_point: parameter uniformity (Kolmogorov-Smirnov at 1%)") {
    const Polyline p({{0, 0}, {1, 0}});
    const CounterRng rng{13};
    const int trials = 10000;
    std::vector<double> xs(trials);
    for (int i = 0; i < trials; ++i) xs[i] = sample_point(p, rng, static_cast<std::uint64_t>(i)).x;
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (int i = 0; i < trials; ++i) {
        ks = std::max(ks, std::abs(xs[i] - (i + 1.0) / trials));
        ks = std::max(ks, std::abs(xs[i] - i / static_cast<double>(trials)));
    }
    CHECK(ks < 1.63 / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("sample_point rejects zero-length polylines") {
    CHECK_THROWS_AS(sample_point(Polyline({{1, 1}}), CounterRng{1}, 0), std::domain_error);
}

TEST_CASE("estimate_depth on the plates fixture") {
    const auto curves = plates();
    const McEstimate est = estimate_depth(plates_query(), curves, {100000, 42});
    CHECK(std::abs(est.d_hat - plates_depth()) < 0.01);
    CHECK(est.counts[0] + est.counts[1] + est.counts[2] == 100000);
    CHECK(est.d_hat_normalized == doctest::Approx(est.d_hat / 2));
    CHECK(est.d_hat >= 0.0);
    CHECK(est.d_hat <= 2.0);
}

TEST_CASE("estimate_depth: empty population and far query") {
    CHECK(estimate_depth(plates_query(), std::vector<Polyline>{}, {1000, 1}).d_hat == 0.0);
    const McEstimate far = estimate_depth(Polyline({{50, 50}, {52, 50}}), plates(), {1000, 1});
    CHECK(far.d_hat == 0.0);
    CHECK(far.counts[0] == 1000);
}

TEST_CASE("estimate_depth is deterministic and seed sensitive") {
    const auto curves = plates();
    const McEstimate a = estimate_depth(plates_query(), curves, {5000, 99});
    const McEstimate b = estimate_depth(plates_query(), curves, {5000, 99});
    CHECK(a.counts == b.counts);
    CHECK(a.d_hat == b.d_hat);
    const McEstimate c = estimate_depth(plates_query(), curves, {5000, 100});
    CHECK(a.counts != c.counts);
}

TEST_CASE("required_samples") {
    CHECK(required_samples(0.5, 2) == 960);
    CHECK(required_samples(1.0, 1) == 40);
    CHECK(required_samples(100.0, 1) == 1);
    CHECK_THROWS_AS(required_samples(0.0, 2), std::domain_error);
    CHECK_THROWS_AS(required_samples(-1.0, 2), std::domain_error);
}

TEST_CASE("closeness_bound") {
    CHECK(closeness_bound(960, 0.5, 2) == doctest::Approx(1.0 - 3.0 * std::exp(-2.4)).epsilon(1e-15));
    CHECK(closeness_bound(960, 0.5, 2) == doctest::Approx(0.72788).epsilon(1e-4));
    CHECK(closeness_bound(0, 0.5, 2) == 0.0);
    CHECK(closeness_bound(100000000, 0.5, 2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("estimator is unbiased and covered on the plates fixture") {
    const auto curves = plates();
    const Polyline query = plates_query();
    const double exact = curve_depth(query, curves).depth;

    const int trials = 200;
    const std::uint64_t n_samples = required_samples(0.5, curves.size());
    REQUIRE(n_samples == 960);

    int within = 0;
    std::vector<double> estimates(trials);
    for (int s = 0; s < trials; ++s) {
        estimates[s] = estimate_depth(query, curves, {n_samples, static_cast<std::uint64_t>(s)}).d_hat;
        if (std::abs(estimates[s] - exact) < 0.5) ++within;
    }
    CHECK(within / static_cast<double>(trials) >= closeness_bound(n_samples, 0.5, curves.size()));

    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= trials;
    double var = 0.0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= (trials - 1);
    const double stderr_mean = std::sqrt(var / trials);
    CHECK(std::abs(mean - exact) <= 3.0 * stderr_mean);
}
