#include "core/environment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "core/error.hpp"

namespace v2x {

Environment::Environment(std::vector<std::pair<Prism, std::string>> obstacles,
                         std::vector<Material> materials)
    : materials_(std::move(materials)) {
    std::unordered_map<std::string, std::uint32_t> by_name;
    for (std::size_t i = 0; i < materials_.size(); ++i) {
        materials_[i].validate();
        if (!by_name.emplace(materials_[i].name, static_cast<std::uint32_t>(i)).second)
            fail(ErrorCode::argument, "duplicate material \"" + materials_[i].name + "\"");
    }

    prisms_.reserve(obstacles.size());
    material_index_.reserve(obstacles.size());
    obstacle_aabbs_.reserve(obstacles.size());
    bool first = true;
    for (auto& [prism, material_name] : obstacles) {
        const auto it = by_name.find(material_name);
        if (it == by_name.end())
            fail(ErrorCode::argument,
                 "obstacle #" + std::to_string(prisms_.size()) + " references unknown material \"" +
                     material_name + "\"");
        if (first) {
            bounds_ = prism.aabb();
            first = false;
        } else {
            bounds_.expand(prism.aabb());
        }
        obstacle_aabbs_.push_back(prism.aabb());
        boxes_.lo_x.push_back(prism.aabb().lo.x);
        boxes_.hi_x.push_back(prism.aabb().hi.x);
        boxes_.lo_y.push_back(prism.aabb().lo.y);
        boxes_.hi_y.push_back(prism.aabb().hi.y);
        boxes_.lo_z.push_back(prism.aabb().lo.z);
        boxes_.hi_z.push_back(prism.aabb().hi.z);
        material_index_.push_back(it->second);
        prisms_.push_back(std::move(prism));
    }
}

namespace {

Vec3 parse_triple(const std::string& text, const std::string& where) {
    std::istringstream in(text);
    Vec3 v;
    if (!(in >> v.x >> v.y >> v.z))
        fail(ErrorCode::parse, where + ": expected three numbers, got \"" + text + "\"");
    std::string rest;
    if (in >> rest)
        fail(ErrorCode::parse, where + ": trailing content \"" + rest + "\"");
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
        fail(ErrorCode::parse, where + ": coordinates must be finite");
    return v;
}

double parse_number(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        fail(ErrorCode::parse, where + ": not a number: \"" + text + "\"");
    }
    if (used != text.size())
        fail(ErrorCode::parse, where + ": not a number: \"" + text + "\"");
    return value;
}

using AttrMap = std::unordered_map<std::string, std::string>;

AttrMap collect_attributes(const boost::property_tree::ptree& node, const std::string& where,
                           std::initializer_list<const char*> allowed) {
    AttrMap attrs;
    const auto xmlattr = node.get_child_optional("<xmlattr>");
    if (xmlattr) {
        for (const auto& [name, value] : *xmlattr) {
            if (std::find_if(allowed.begin(), allowed.end(),
                             [&name](const char* a) { return name == a; }) == allowed.end())
                fail(ErrorCode::parse, where + ": unknown attribute \"" + name + "\"");
            attrs[name] = value.get_value<std::string>();
        }
    }
    for (const char* a : allowed)
        if (!attrs.count(a))
            fail(ErrorCode::parse, where + ": missing attribute \"" + a + "\"");
    return attrs;
}

Environment parse_environment(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        fail(ErrorCode::parse, std::string("malformed XML: ") + e.what());
    }

    const auto root = tree.get_child_optional("environment");
    if (!root)
        fail(ErrorCode::parse, "document root must be <environment>");

    std::vector<Material> materials;
    std::vector<std::pair<Prism, std::string>> obstacles;
    std::size_t material_ordinal = 0;
    std::size_t object_ordinal = 0;

    for (const auto& [name, node] : *root) {
        if (name == "<xmlattr>")
            fail(ErrorCode::parse, "<environment> takes no attributes");
        if (name == "material") {
            const std::string where = "material #" + std::to_string(material_ordinal++);
            AttrMap attrs =
                collect_attributes(node, where, {"name", "permittivity", "lossTangent"});
            Material mat{attrs["name"], parse_number(attrs["permittivity"], where),
                         parse_number(attrs["lossTangent"], where)};
            try {
                mat.validate();
            } catch (const Error& e) {
                fail(ErrorCode::parse, where + ": " + e.what());
            }
            materials.push_back(std::move(mat));
        } else if (name == "object") {
            const std::string where = "object #" + std::to_string(object_ordinal++);
            AttrMap attrs =
                collect_attributes(node, where, {"type", "position", "size", "material"});
            if (attrs["type"] != "cuboid")
                fail(ErrorCode::parse, where + ": unknown shape type \"" + attrs["type"] + "\"");
            const Vec3 position = parse_triple(attrs["position"], where + " position");
            const Vec3 size = parse_triple(attrs["size"], where + " size");
            if (!(size.x > 0.0 && size.y > 0.0 && size.z > 0.0))
                fail(ErrorCode::parse, where + ": size extents must all be positive");
            try {
                obstacles.emplace_back(
                    Prism::box(position.x, position.y, position.z, size.x, size.y, size.z),
                    attrs["material"]);
            } catch (const Error& e) {
                fail(ErrorCode::parse, where + ": " + e.what());
            }
        } else {
            fail(ErrorCode::parse, "unknown element <" + name + "> in <environment>");
        }
    }

    try {
        return Environment(std::move(obstacles), std::move(materials));
    } catch (const Error& e) {
        fail(ErrorCode::parse, e.what());
    }
}

} // namespace

Environment Environment::from_xml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::io, "cannot open environment file \"" + path + "\"");
    return parse_environment(in);
}

Environment Environment::from_xml_string(std::string_view xml) {
    std::istringstream in{std::string(xml)};
    return parse_environment(in);
}

std::vector<ObstacleHit> scan_intersections(const Environment& env, const Segment& seg,
                                            EvalStats& stats) {
    const std::size_t count = env.obstacle_count();
    stats.obstacle_tests += count;

    std::vector<ObstacleHit> hits;
    if (count == 0) return hits;

    // Broad phase: branch-free candidate compaction over the box arrays. The
    // per-obstacle outcome is data-dependent, so a short-circuiting loop
    // would mispredict heavily on large scans.
    const Aabb seg_box = Aabb::of_segment(seg);
    const Environment::BoxArrays& boxes = env.boxes();
    thread_local std::vector<std::uint32_t> candidates;
    if (candidates.size() < count) candidates.resize(count);
    std::size_t candidate_count = 0;
    for (std::size_t id = 0; id < count; ++id) {
        const bool overlap =
            (boxes.lo_x[id] <= seg_box.hi.x) & (seg_box.lo.x <= boxes.hi_x[id]) &
            (boxes.lo_y[id] <= seg_box.hi.y) & (seg_box.lo.y <= boxes.hi_y[id]) &
            (boxes.lo_z[id] <= seg_box.hi.z) & (seg_box.lo.z <= boxes.hi_z[id]);
        candidates[candidate_count] = static_cast<std::uint32_t>(id);
        candidate_count += overlap;
    }

    for (std::size_t i = 0; i < candidate_count; ++i) {
        const std::uint32_t id = candidates[i];
        if (auto hit = segment_prism_intersection(seg, env.prism(id))) {
            hit->obstacle_id = static_cast<std::int32_t>(id);
            hits.push_back({*hit, &env.material_of(id)});
        }
    }
    stats.intersections_found += hits.size();
    return hits;
}

namespace {

LinkResult evaluate_one_link(const Environment& env, const Transmission& tx, const Vehicle& rx,
                             const RadioConfig& cfg, LossModel model, EvalStats& stats) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ++stats.links_considered;

    LinkResult result;
    result.tx_id = tx.tx_id;
    result.rx_id = rx.id;
    result.distance_m = distance(tx.position, rx.position);

    if (cull_by_boundary(result.distance_m, cfg)) {
        ++stats.links_culled;
        result.culled = true;
        result.delivered = false;
        result.pathloss_db = nan;
        result.obstacle_loss_db = nan;
        result.rx_power_dbm = nan;
        return result;
    }

    const std::vector<ObstacleHit> hits =
        scan_intersections(env, Segment{tx.position, rx.position}, stats);
    const LossFactor loss =
        model == LossModel::ideal ? ideal_loss(hits) : dielectric_loss(hits, cfg.carrier_frequency_hz);

    result.pathloss_db = pathloss_db(result.distance_m, cfg);
    // +0.0 keeps a lossless path at exactly 0 dB instead of -0.
    result.obstacle_loss_db = -10.0 * std::log10(loss.power_factor) + 0.0;
    result.rx_power_dbm = received_power_dbm(result.pathloss_db, loss.power_factor, cfg);
    result.delivered = !loss.blocked && result.rx_power_dbm >= cfg.rx_sensitivity_dbm;
    return result;
}

void sort_by_rx(std::vector<LinkResult>& results) {
    std::sort(results.begin(), results.end(),
              [](const LinkResult& a, const LinkResult& b) { return a.rx_id < b.rx_id; });
}

} // namespace

std::vector<LinkResult> evaluate_links_sequential(const Environment& env, const Transmission& tx,
                                                  std::span<const Vehicle> receivers,
                                                  const RadioConfig& cfg, LossModel model,
                                                  EvalStats& stats) {
    std::vector<LinkResult> results;
    results.reserve(receivers.size());
    for (const Vehicle& rx : receivers)
        results.push_back(evaluate_one_link(env, tx, rx, cfg, model, stats));
    sort_by_rx(results);
    return results;
}

std::vector<LinkResult> evaluate_links_parallel(const Environment& env, const Transmission& tx,
                                                std::span<const Vehicle> receivers,
                                                const RadioConfig& cfg, LossModel model,
                                                WorkerPool& pool, EvalStats& stats) {
    const std::size_t n = receivers.size();
    const int workers = pool.worker_count();
    std::vector<LinkResult> results(n);
    std::vector<EvalStats> worker_stats(static_cast<std::size_t>(workers));

    pool.run([&](int worker) {
        const std::size_t begin = n * static_cast<std::size_t>(worker) /
                                  static_cast<std::size_t>(workers);
        const std::size_t end = n * (static_cast<std::size_t>(worker) + 1) /
                                static_cast<std::size_t>(workers);
        EvalStats& local = worker_stats[static_cast<std::size_t>(worker)];
        for (std::size_t i = begin; i < end; ++i)
            results[i] = evaluate_one_link(env, tx, receivers[i], cfg, model, local);
    });

    for (const EvalStats& s : worker_stats) stats += s;
    sort_by_rx(results);
    return results;
}

std::vector<LinkResult> evaluate_links_parallel(const Environment& env, const Transmission& tx,
                                                std::span<const Vehicle> receivers,
                                                const RadioConfig& cfg, LossModel model,
                                                const WorkerPoolConfig& pool_cfg,
                                                EvalStats& stats) {
    WorkerPool pool(pool_cfg.worker_count);
    return evaluate_links_parallel(env, tx, receivers, cfg, model, pool, stats);
}

} // namespace v2x
