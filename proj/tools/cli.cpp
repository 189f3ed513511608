#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "curvedepth/analytics.hpp"
#include "curvedepth/exact.hpp"
#include "curvedepth/hulls.hpp"
#include "curvedepth/io.hpp"
#include "curvedepth/monte_carlo.hpp"
#include "curvedepth/stabbing.hpp"

namespace curvedepth::cli {

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<NamedCurve> load_curves(const std::string& path) {
    std::vector<std::string> warnings;
    auto curves = parse_curve_set(read_file(path), &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return curves;
}

std::vector<Polyline> polylines_of(const std::vector<NamedCurve>& curves) {
    std::vector<Polyline> out;
    out.reserve(curves.size());
    for (const NamedCurve& nc : curves) out.push_back(nc.curve);
    return out;
}

struct QueryOptions {
    std::string population_path;
    std::string query_path;
    std::string query_id;
    bool include_self = false;
};

void add_query_options(CLI::App* cmd, QueryOptions& q, bool with_include_self = true) {
    cmd->add_option("--population", q.population_path, "curve set JSON file")->required();
    auto* file = cmd->add_option("--query", q.query_path, "curve set JSON file; first curve is the query");
    auto* id = cmd->add_option("--query-id", q.query_id, "id of a population curve to query");
    file->excludes(id);
    id->excludes(file);
    if (with_include_self) {
        cmd->add_flag("--include-self", q.include_self,
                      "keep the queried curve in its own population");
    }
}

struct ResolvedQuery {
    std::string id;
    Polyline query;
    std::vector<Polyline> population;
};

ResolvedQuery resolve_query(const QueryOptions& q) {
    const auto population_curves = load_curves(q.population_path);
    if (!q.query_path.empty()) {
        const auto query_curves = load_curves(q.query_path);
        if (query_curves.empty()) throw ParseError(q.query_path + ": query file has no curves");
        return {query_curves.front().id, query_curves.front().curve,
                polylines_of(population_curves)};
    }
    if (q.query_id.empty()) throw ParseError("one of --query or --query-id is required");
    std::optional<Polyline> query;
    std::vector<Polyline> population;
    for (const NamedCurve& nc : population_curves) {
        if (nc.id == q.query_id) {
            query = nc.curve;
            if (!q.include_self) continue;
        }
        population.push_back(nc.curve);
    }
    if (!query) throw ParseError("no curve with id \"" + q.query_id + "\" in population");
    return {q.query_id, *query, std::move(population)};
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"curve stabbing depth of polylines"};
    app.require_subcommand(1);

    // depth
    QueryOptions depth_q;
    bool depth_normalized = false;
    bool depth_hull_prune = false;
    auto* depth_cmd = app.add_subcommand("depth", "exact depth of a query polyline");
    add_query_options(depth_cmd, depth_q);
    depth_cmd->add_flag("--normalized", depth_normalized, "no-op: reports always carry both depth scales");
    depth_cmd->add_flag("--hull-prune", depth_hull_prune, "prune pair events with hull tangency");

    // point-depth
    std::string pd_population;
    double pd_x = 0.0, pd_y = 0.0;
    auto* pd_cmd = app.add_subcommand("point-depth", "depth of a single point");
    pd_cmd->add_option("--population", pd_population)->required();
    pd_cmd->add_option("--x", pd_x)->required();
    pd_cmd->add_option("--y", pd_y)->required();

    // mc
    QueryOptions mc_q;
    std::uint64_t mc_samples = 0;
    double mc_epsilon = 0.0;
    std::uint64_t mc_seed = 0;
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo depth estimate");
    add_query_options(mc_cmd, mc_q);
    auto* samples_opt = mc_cmd->add_option("--samples", mc_samples, "ray sample count");
    auto* epsilon_opt =
        mc_cmd->add_option("--epsilon", mc_epsilon, "precision; sample count from the closeness bound");
    samples_opt->excludes(epsilon_opt);
    epsilon_opt->excludes(samples_opt);
    mc_cmd->add_option("--seed", mc_seed)->required();
    bool mc_normalized = false;
    mc_cmd->add_flag("--normalized", mc_normalized, "no-op: reports always carry both depth scales");

    // rank
    std::string rank_population;
    bool rank_include_self = false;
    auto* rank_cmd = app.add_subcommand("rank", "order population curves by depth");
    rank_cmd->add_option("--population", rank_population)->required();
    rank_cmd->add_flag("--include-self", rank_include_self);

    // median / grid
    std::string median_population;
    std::vector<double> median_bbox;
    int median_res = 0;
    auto* median_cmd = app.add_subcommand("median", "grid search for the deepest point");
    median_cmd->add_option("--population", median_population)->required();
    median_cmd->add_option("--bbox", median_bbox, "x0 y0 x1 y1")->expected(4)->required();
    median_cmd->add_option("--res", median_res, "grid resolution per axis")->required();

    std::string grid_population;
    std::vector<double> grid_bbox;
    int grid_res = 0;
    std::string grid_out;
    auto* grid_cmd = app.add_subcommand("grid", "depth field over a bounding box");
    grid_cmd->add_option("--population", grid_population)->required();
    grid_cmd->add_option("--bbox", grid_bbox, "x0 y0 x1 y1")->expected(4)->required();
    grid_cmd->add_option("--res", grid_res, "grid resolution per axis")->required();
    grid_cmd->add_option("--out", grid_out, "output CSV path")->required();

    // events
    QueryOptions events_q;
    bool events_hulls = false;
    bool events_hull_prune = false;
    auto* events_cmd = app.add_subcommand("events", "dump the event set of the exact algorithm");
    add_query_options(events_cmd, events_q);
    events_cmd->add_flag("--hulls", events_hulls, "include the hull hierarchy and tangent set");
    events_cmd->add_flag("--hull-prune", events_hull_prune);

    // compare
    QueryOptions compare_q;
    std::uint64_t compare_samples = 0;
    std::uint64_t compare_seed = 0;
    auto* compare_cmd = app.add_subcommand("compare", "exact vs Monte Carlo");
    add_query_options(compare_cmd, compare_q);
    compare_cmd->add_option("--samples", compare_samples)->required();
    compare_cmd->add_option("--seed", compare_seed)->required();

    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));  // CLI11 takes reversed args

    if (depth_cmd->parsed()) {
        const ResolvedQuery rq = resolve_query(depth_q);
        ExactOptions options;
        options.hull_prune = depth_hull_prune;
        const DepthResult result = curve_depth(rq.query, rq.population, options);
        std::cout << to_json(make_report(rq.id, rq.population.size(), result));
        return 0;
    }
    if (pd_cmd->parsed()) {
        const auto curves = polylines_of(load_curves(pd_population));
        const Point q = make_point(pd_x, pd_y);
        std::cout << point_report_json(q, curves.size(), point_depth_raw(q, curves));
        return 0;
    }
    if (mc_cmd->parsed()) {
        const ResolvedQuery rq = resolve_query(mc_q);
        McConfig cfg;
        cfg.seed = mc_seed;
        if (*samples_opt) {
            cfg.samples = mc_samples;
        } else if (*epsilon_opt) {
            cfg.samples = required_samples(mc_epsilon, rq.population.size());
        } else {
            throw CLI::RequiredError("--samples or --epsilon");
        }
        const McEstimate est = estimate_depth(rq.query, rq.population, cfg);
        std::cout << to_json(make_report(rq.id, arc_length(rq.query), est, cfg.seed));
        return 0;
    }
    if (rank_cmd->parsed()) {
        const auto named = load_curves(rank_population);
        std::cout << rank_csv(rank_curves(polylines_of(named), rank_include_self), named);
        return 0;
    }
    if (median_cmd->parsed()) {
        const auto curves = polylines_of(load_curves(median_population));
        const BBox bbox{median_bbox[0], median_bbox[1], median_bbox[2], median_bbox[3]};
        const GridSpec grid{median_res, median_res};
        std::cout << median_json(median_point_grid(curves, bbox, grid), bbox, grid);
        return 0;
    }
    if (grid_cmd->parsed()) {
        const auto curves = polylines_of(load_curves(grid_population));
        const BBox bbox{grid_bbox[0], grid_bbox[1], grid_bbox[2], grid_bbox[3]};
        const DepthField field = depth_field(curves, bbox, {grid_res, grid_res});
        std::ofstream out(grid_out, std::ios::binary);
        if (!out) throw ParseError("cannot write file: " + grid_out);
        out << field_csv(field);
        return 0;
    }
    if (events_cmd->parsed()) {
        const ResolvedQuery rq = resolve_query(events_q);
        const auto events = generate_events(rq.query, rq.population, events_hull_prune);
        std::string dump = events_json(events);
        if (events_hulls) {
            const HullHierarchy hierarchy = build_hierarchy(rq.population, rq.query);
            const TangentEventSet tangents = tangent_event_set(hierarchy, rq.query);
            std::ostringstream os;
            os.precision(17);
            os << "{\n  \"hierarchy\": {\n    \"outer_hulls\": [";
            for (std::size_t i = 0; i < hierarchy.outer.size(); ++i) {
                os << (i ? "," : "") << hierarchy.outer[i].vertices.size();
            }
            os << "],\n    \"inner_hull_counts\": [";
            for (std::size_t i = 0; i < hierarchy.inner.size(); ++i) {
                os << (i ? "," : "") << "[";
                for (std::size_t j = 0; j < hierarchy.inner[i].size(); ++j) {
                    os << (j ? "," : "") << hierarchy.inner[i][j].size();
                }
                os << "]";
            }
            os << "]\n  },\n  \"tangent_lines\": " << tangents.lines.size()
               << ",\n  \"s_points\": [";
            for (std::size_t si = 0; si < tangents.s_points.size(); ++si) {
                os << (si ? "," : "") << "[";
                for (std::size_t k = 0; k < tangents.s_points[si].size(); ++k) {
                    os << (k ? "," : "") << tangents.s_points[si][k];
                }
                os << "]";
            }
            os << "],\n  \"events\": " << dump.substr(dump.find('[')) ;
            dump = os.str();
        }
        std::cout << dump;
        return 0;
    }
    if (compare_cmd->parsed()) {
        const ResolvedQuery rq = resolve_query(compare_q);
        const DepthResult exact = curve_depth(rq.query, rq.population);
        const McEstimate est = estimate_depth(rq.query, rq.population, {compare_samples, compare_seed});
        std::ostringstream os;
        os << "{\n  \"exact\": " << to_json(make_report(rq.id, rq.population.size(), exact))
           << ",\n  \"mc\": " << to_json(make_report(rq.id, arc_length(rq.query), est, compare_seed))
           << ",\n  \"abs_error\": ";
        os.precision(17);
        os << std::abs(exact.depth - est.d_hat) << "\n}\n";
        std::cout << os.str();
        return 0;
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const CLI::CallForHelp&) {
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace curvedepth::cli
