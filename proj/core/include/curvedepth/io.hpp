#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvedepth/analytics.hpp"
#include "curvedepth/exact.hpp"
#include "curvedepth/geometry.hpp"
#include "curvedepth/monte_carlo.hpp"

namespace curvedepth {

struct NamedCurve {
    std::string id;
    Polyline curve;
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reads {"curves": [{"id": ..., "points": [[x, y], ...]}, ...]}. Repeated
/// consecutive points are collapsed with a warning; malformed JSON,
/// non-finite numbers, duplicate ids, and empty curves raise ParseError.
std::vector<NamedCurve> parse_curve_set(const std::string& text,
                                        std::vector<std::string>* warnings = nullptr);

std::string serialize_curve_set(std::span<const NamedCurve> curves);

/// Machine-readable depth report; optional fields are emitted only when set.
struct DepthReport {
    std::string query;
    std::size_t population = 0;
    double depth_raw = 0.0;
    double depth = 0.0;
    double depth_normalized = 0.0;
    double length = 0.0;
    std::size_t intervals = 0;
    std::string method;  // "exact" or "mc"
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
};

DepthReport make_report(const std::string& query_id, std::size_t population,
                        const DepthResult& result);
DepthReport make_report(const std::string& query_id, double query_length, const McEstimate& est,
                        std::uint64_t seed);

std::string to_json(const DepthReport& report);

std::string point_report_json(Point q, std::size_t population, double depth_raw);

std::string rank_csv(const RankResult& rank, std::span<const NamedCurve> curves);

std::string median_json(const GridMedian& median, const BBox& bbox, const GridSpec& grid);

/// Row-major CSV (rows run along y) with bbox and resolution header lines.
std::string field_csv(const DepthField& field);

std::string events_json(std::span<const EventPoint> events);

}  // namespace curvedepth
