#include "hurstlab/graph_io.hpp"

#include <json.hpp>
#include <map>
#include <sstream>

#include "hurstlab/errors.hpp"

namespace hurstlab {

namespace {

using nlohmann::json;

std::int32_t lookup_vertex(const std::map<std::string, std::int32_t>& index,
                           const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end()) throw InvalidArgument("graph references unknown vertex '" + name + "'");
    return it->second;
}

json affine_to_json(const AffineInH& a) {
    return json{{"const", 0.5 * static_cast<double>(a.const2)},
                {"h_coeff", 0.5 * static_cast<double>(a.hcoef2)},
                {"pretty", a.pretty()}};
}

}  // namespace

WeightedGraph graph_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("graph JSON is malformed: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw InvalidArgument("graph JSON needs a 'vertices' array");

    WeightedGraph g;
    std::map<std::string, std::int32_t> index;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string()) throw InvalidArgument("vertex names must be strings");
        const std::string name = v.get<std::string>();
        if (index.count(name)) throw InvalidArgument("duplicate vertex '" + name + "'");
        index[name] = g.add_vertex(name);
    }
    if (doc.contains("q")) {
        for (const auto& item : doc["q"]) {
            const auto v = lookup_vertex(index, item.at("v").get<std::string>());
            g.set_vertex_weight(v, item.at("slot").get<std::int32_t>(),
                                item.at("w").get<std::int64_t>());
        }
    }
    if (doc.contains("theta")) {
        for (const auto& item : doc["theta"]) {
            const auto u = lookup_vertex(index, item.at("u").get<std::string>());
            const auto v = lookup_vertex(index, item.at("v").get<std::string>());
            g.add_edge_weight({u, item.at("uslot").get<std::int32_t>()},
                              {v, item.at("vslot").get<std::int32_t>()},
                              item.at("w").get<std::int64_t>());
        }
    }
    return g;
}

std::string graph_to_json(const WeightedGraph& g) {
    json doc;
    doc["vertices"] = g.vertex_names();
    json q = json::array();
    for (std::int32_t v = 0; v < g.vertex_count(); ++v)
        for (std::int32_t slot = 1; slot <= 2; ++slot)
            if (const auto w = g.vertex_weight(v, slot); w > 0)
                q.push_back({{"v", g.vertex_names()[static_cast<std::size_t>(v)]},
                             {"slot", slot},
                             {"w", w}});
    doc["q"] = std::move(q);
    json theta = json::array();
    for (const auto& [key, w] : g.edge_weights())
        theta.push_back({{"u", g.vertex_names()[static_cast<std::size_t>(key.first.vertex)]},
                         {"uslot", key.first.slot},
                         {"v", g.vertex_names()[static_cast<std::size_t>(key.second.vertex)]},
                         {"vslot", key.second.slot},
                         {"w", w}});
    doc["theta"] = std::move(theta);
    return doc.dump();
}

std::string exponent_report_to_json(const ExponentReport& report, std::optional<double> h) {
    json doc;
    json comps = json::array();
    for (const auto& c : report.components) {
        json jc{{"vertices", c.vertices},
                {"q_bar", c.q_bar},
                {"q_bar_1", c.q_bar_1},
                {"q_bar_2", c.q_bar_2},
                {"theta_bar", c.theta_bar},
                {"e1_edges", c.e1_edges},
                {"e2_edges", c.e2_edges},
                {"ell2", c.ell2},
                {"e_q", affine_to_json(c.e_q)},
                {"e_theta", affine_to_json(c.e_theta)},
                {"e", affine_to_json(c.e)}};
        if (h) jc["value_at_h"] = c.e.at(*h);
        comps.push_back(std::move(jc));
    }
    doc["components"] = std::move(comps);
    doc["exponent"] = affine_to_json(report.total);
    if (h) {
        doc["h"] = *h;
        doc["value_at_h"] = report.total.at(*h);
    }
    return doc.dump(2);
}

std::string exponent_report_table(const ExponentReport& report, std::optional<double> h) {
    std::ostringstream out;
    out << "component  vertices                 qbar q1 q2 thbar |E1| |E2| l2  e(C)\n";
    for (std::size_t i = 0; i < report.components.size(); ++i) {
        const auto& c = report.components[i];
        std::string verts;
        for (const auto& v : c.vertices) {
            if (!verts.empty()) verts += ",";
            verts += v;
        }
        if (verts.size() > 24) verts = verts.substr(0, 21) + "...";
        out << "  " << i << "        " << verts;
        for (std::size_t pad = verts.size(); pad < 25; ++pad) out << ' ';
        out << c.q_bar << "    " << c.q_bar_1 << "  " << c.q_bar_2 << "  " << c.theta_bar
            << "     " << c.e1_edges << "    " << c.e2_edges << "    " << c.ell2 << "   "
            << c.e.pretty() << "\n";
    }
    out << "total exponent: " << report.total.pretty();
    if (h) out << "  (= " << report.total.at(*h) << " at H = " << *h << ")";
    out << "\n";
    return out.str();
}

}  // namespace hurstlab
