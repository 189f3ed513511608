#include "curvedepth/io.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace curvedepth {

using ordered_json = nlohmann::ordered_json;

std::vector<NamedCurve> parse_curve_set(const std::string& text,
                                        std::vector<std::string>* warnings) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("curves") || !doc["curves"].is_array()) {
        throw ParseError("expected an object with a \"curves\" array");
    }

    std::vector<NamedCurve> out;
    std::set<std::string> seen;
    std::size_t index = 0;
    for (const auto& entry : doc["curves"]) {
        const std::string where = "curves[" + std::to_string(index) + "]";
        ++index;
        if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
            !entry.contains("points") || !entry["points"].is_array()) {
            throw ParseError(where + ": expected {\"id\": string, \"points\": [[x,y],...]}");
        }
        const std::string id = entry["id"].get<std::string>();
        if (!seen.insert(id).second) throw ParseError(where + ": duplicate id \"" + id + "\"");
        if (entry["points"].empty()) throw ParseError(where + ": curve has no points");

        std::vector<Point> pts;
        for (const auto& coords : entry["points"]) {
            if (!coords.is_array() || coords.size() != 2 || !coords[0].is_number() ||
                !coords[1].is_number()) {
                throw ParseError(where + ": points must be [x, y] number pairs");
            }
            const double x = coords[0].get<double>();
            const double y = coords[1].get<double>();
            if (!std::isfinite(x) || !std::isfinite(y)) {
                throw ParseError(where + ": coordinates must be finite");
            }
            if (!pts.empty() && pts.back().x == x && pts.back().y == y) {
                if (warnings) {
                    warnings->push_back(where + ": collapsed repeated consecutive point (" +
                                        std::to_string(x) + ", " + std::to_string(y) + ")");
                }
                continue;
            }
            pts.push_back({x, y});
        }
        out.push_back({id, Polyline(std::move(pts))});
    }
    return out;
}

std::string serialize_curve_set(std::span<const NamedCurve> curves) {
    ordered_json doc;
    doc["curves"] = ordered_json::array();
    for (const NamedCurve& nc : curves) {
        ordered_json entry;
        entry["id"] = nc.id;
        entry["points"] = ordered_json::array();
        for (const Point& p : nc.curve.vertices()) {
            entry["points"].push_back(ordered_json::array({p.x, p.y}));
        }
        doc["curves"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

DepthReport make_report(const std::string& query_id, std::size_t population,
                        const DepthResult& result) {
    DepthReport r;
    r.query = query_id;
    r.population = population;
    r.depth_raw = result.raw;
    r.depth = result.depth;
    r.depth_normalized = result.normalized;
    r.length = result.length;
    r.intervals = result.per_interval.size();
    r.method = "exact";
    return r;
}

DepthReport make_report(const std::string& query_id, double query_length, const McEstimate& est,
                        std::uint64_t seed) {
    DepthReport r;
    r.query = query_id;
    r.population = est.population;
    r.depth = est.d_hat;
    r.depth_normalized = est.d_hat_normalized;
    r.depth_raw = est.d_hat * std::numbers::pi * query_length;
    r.length = query_length;
    r.intervals = 0;
    r.method = "mc";
    r.seed = seed;
    r.samples = est.samples;
    return r;
}

std::string to_json(const DepthReport& report) {
    ordered_json j;
    j["query"] = report.query;
    j["n"] = report.population;
    j["depth_raw"] = report.depth_raw;
    j["depth"] = report.depth;
    j["depth_normalized"] = report.depth_normalized;
    j["length"] = report.length;
    j["intervals"] = report.intervals;
    j["method"] = report.method;
    if (report.seed) j["seed"] = *report.seed;
    if (report.samples) j["samples"] = *report.samples;
    return j.dump(2) + "\n";
}

std::string point_report_json(Point q, std::size_t population, double depth_raw) {
    ordered_json j;
    j["x"] = q.x;
    j["y"] = q.y;
    j["n"] = population;
    j["depth_raw"] = depth_raw;
    j["depth"] = depth_raw / std::numbers::pi;
    j["depth_normalized"] =
        population == 0 ? 0.0 : depth_raw / std::numbers::pi / static_cast<double>(population);
    return j.dump(2) + "\n";
}

std::string rank_csv(const RankResult& rank, std::span<const NamedCurve> curves) {
    std::ostringstream os;
    os << "id,depth\n";
    os.precision(17);
    for (const RankedCurve& rc : rank.order) {
        os << curves[static_cast<std::size_t>(rc.index)].id << "," << rc.depth << "\n";
    }
    return os.str();
}

std::string median_json(const GridMedian& median, const BBox& bbox, const GridSpec& grid) {
    ordered_json j;
    j["x"] = median.point.x;
    j["y"] = median.point.y;
    j["depth_normalized"] = median.depth;
    j["bbox"] = ordered_json::array({bbox.x0, bbox.y0, bbox.x1, bbox.y1});
    j["res"] = ordered_json::array({grid.nx, grid.ny});
    return j.dump(2) + "\n";
}

std::string field_csv(const DepthField& field) {
    std::ostringstream os;
    os.precision(17);
    os << "# bbox," << field.bbox.x0 << "," << field.bbox.y0 << "," << field.bbox.x1 << ","
       << field.bbox.y1 << "\n";
    os << "# res," << field.nx << "," << field.ny << "\n";
    for (int iy = 0; iy < field.ny; ++iy) {
        for (int ix = 0; ix < field.nx; ++ix) {
            if (ix) os << ",";
            os << field.at(ix, iy);
        }
        os << "\n";
    }
    return os.str();
}

std::string events_json(std::span<const EventPoint> events) {
    ordered_json arr = ordered_json::array();
    for (const EventPoint& e : events) {
        ordered_json j;
        j["segment"] = e.segment;
        j["t"] = e.t;
        switch (e.source) {
            case EventSource::QueryVertex: j["source"] = "query_vertex"; break;
            case EventSource::CurveCrossing: j["source"] = "curve_crossing"; break;
            case EventSource::HullTangent: j["source"] = "hull_tangent"; break;
            case EventSource::VertexPairLine: j["source"] = "vertex_pair_line"; break;
        }
        arr.push_back(std::move(j));
    }
    ordered_json doc;
    doc["events"] = std::move(arr);
    return doc.dump(2) + "\n";
}

}  // namespace curvedepth
