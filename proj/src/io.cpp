#include "dendrodyn/io.hpp"

#include "dendrodyn/errors.hpp"

namespace dendrodyn {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::string text(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

Rational rational(const Json& j, const std::string& where) {
    try {
        return parse_rational(text(j, where));
    } catch (const ParseError& e) {
        bad(where, e.what());
    }
}

}  // namespace

Json tree_to_json(const MetricTree& tree) {
    Json j;
    j["vertices"] = Json::array();
    for (VertexId v : tree.vertices()) j["vertices"].push_back(tree.vertex_name(v));
    j["edges"] = Json::array();
    for (EdgeId e : tree.edges()) {
        const auto& edge = tree.edge(e);
        Json je;
        je["id"] = edge.name;
        je["ends"] = Json::array({tree.vertex_name(edge.first), tree.vertex_name(edge.second)});
        je["length"] = to_string(edge.length);
        j["edges"].push_back(std::move(je));
    }
    return j;
}

Json point_to_json(const MetricTree& tree, const TreePoint& p) {
    Json j;
    if (p.is_vertex()) {
        j["vertex"] = tree.vertex_name(p.vertex());
    } else {
        j["edge"] = tree.edge_name(p.edge());
        j["t"] = to_string(p.t());
    }
    return j;
}

Json map_to_json(const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    Json j = tree_to_json(tree);
    j["vertex_images"] = Json::object();
    for (VertexId v : tree.vertices()) j["vertex_images"][tree.vertex_name(v)] = point_to_json(tree, f.vertex_image(v));
    j["edge_pieces"] = Json::object();
    for (EdgeId e : tree.edges()) {
        Json list = Json::array();
        for (const auto& bp : f.breakpoints(e)) {
            Json jb;
            jb["t"] = to_string(bp.t);
            jb["image"] = point_to_json(tree, bp.image);
            list.push_back(std::move(jb));
        }
        j["edge_pieces"][tree.edge_name(e)] = std::move(list);
    }
    return j;
}

MetricTree tree_from_json(const Json& j) {
    const Json& jv = field(j, "vertices", "tree");
    if (!jv.is_array()) bad("vertices", "expected an array");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < jv.size(); ++i) names.push_back(text(jv[i], "vertices[" + std::to_string(i) + "]"));
    const Json& je = field(j, "edges", "tree");
    if (!je.is_array()) bad("edges", "expected an array");
    std::vector<MetricTree::EdgeSpec> edges;
    for (std::size_t i = 0; i < je.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const Json& ends = field(je[i], "ends", where);
        if (!ends.is_array() || ends.size() != 2) bad(where + ".ends", "expected two vertex names");
        edges.push_back({text(field(je[i], "id", where), where + ".id"), text(ends[0], where + ".ends[0]"),
                         text(ends[1], where + ".ends[1]"), rational(field(je[i], "length", where), where + ".length")});
    }
    try {
        return MetricTree(std::move(names), std::move(edges));
    } catch (const StructuralError& e) {
        bad("tree", e.what());
    }
}

TreePoint point_from_json(const MetricTree& tree, const Json& j) {
    if (!j.is_object()) bad("point", "expected an object");
    if (j.contains("vertex")) {
        const std::string name = text(j["vertex"], "point.vertex");
        auto v = tree.find_vertex(name);
        if (!v) bad("point", "unknown vertex \"" + name + "\"");
        return TreePoint::at_vertex(*v);
    }
    const std::string name = text(field(j, "edge", "point"), "point.edge");
    auto e = tree.find_edge(name);
    if (!e) bad("point", "unknown edge \"" + name + "\"");
    const Rational t = rational(field(j, "t", "point"), "point.t");
    if (t <= 0 || t >= 1) bad("point", "edge parameter must lie strictly between 0 and 1; use the vertex form");
    return TreePoint::on_edge(tree, *e, t);
}

PLTreeMap map_from_json(const Json& j) {
    auto tree = std::make_shared<const MetricTree>(tree_from_json(j));
    const Json& vi = field(j, "vertex_images", "map");
    const Json& ep = field(j, "edge_pieces", "map");
    std::vector<TreePoint> images;
    for (VertexId v : tree->vertices()) {
        const std::string& name = tree->vertex_name(v);
        images.push_back(point_from_json(*tree, field(vi, name.c_str(), "vertex_images")));
    }
    std::vector<std::vector<Breakpoint>> pieces;
    for (EdgeId e : tree->edges()) {
        const std::string& name = tree->edge_name(e);
        const Json& list = field(ep, name.c_str(), "edge_pieces");
        if (!list.is_array()) bad("edge_pieces." + name, "expected an array");
        std::vector<Breakpoint> bps;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "edge_pieces." + name + "[" + std::to_string(i) + "]";
            bps.push_back({rational(field(list[i], "t", where), where + ".t"),
                           point_from_json(*tree, field(list[i], "image", where))});
        }
        pieces.push_back(std::move(bps));
    }
    if (vi.size() != tree->vertex_count()) bad("vertex_images", "entries for unknown vertices");
    if (ep.size() != tree->edge_count()) bad("edge_pieces", "entries for unknown edges");
    try {
        return PLTreeMap(tree, std::move(images), std::move(pieces));
    } catch (const StructuralError& e) {
        bad("map", e.what());
    }
}

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
    }
}

PLTreeMap read_map(std::string_view text) { return map_from_json(parse_json_text(text)); }

std::string write_map(const PLTreeMap& f) { return map_to_json(f).dump(2) + "\n"; }

TreePoint parse_point_spec(const MetricTree& tree, std::string_view spec) {
    const auto at = spec.find('@');
    if (at == std::string_view::npos) {
        auto v = tree.find_vertex(spec);
        if (!v) throw ParseError("unknown vertex \"" + std::string(spec) + "\"");
        return TreePoint::at_vertex(*v);
    }
    auto e = tree.find_edge(spec.substr(0, at));
    if (!e) throw ParseError("unknown edge \"" + std::string(spec.substr(0, at)) + "\"");
    const Rational t = parse_rational(spec.substr(at + 1));
    if (t < 0 || t > 1) throw ParseError("edge parameter outside [0,1]");
    return TreePoint::on_edge(tree, *e, t);
}

Json to_json(const MetricTree& tree, const Subtree& s) {
    Json j;
    j["vertices"] = Json::array();
    for (VertexId v : tree.vertices())
        if (s.contains_vertex(v)) j["vertices"].push_back(tree.vertex_name(v));
    j["segments"] = Json::array();
    for (EdgeId e : tree.edges()) {
        for (const auto& iv : s.intervals(e)) {
            Json seg;
            seg["edge"] = tree.edge_name(e);
            seg["from"] = to_string(iv.lo);
            seg["to"] = to_string(iv.hi);
            j["segments"].push_back(std::move(seg));
        }
    }
    j["connected"] = s.is_connected(tree);
    return j;
}

Json to_json(const MetricTree& tree, const RecurrenceWitness& w) {
    Json j;
    j["reason"] = to_string(w.reason);
    j["point"] = point_to_json(tree, w.point);
    if (w.partner) j["partner"] = point_to_json(tree, *w.partner);
    j["power"] = w.power;
    j["image"] = point_to_json(tree, w.image);
    if (w.arc_start) j["arc"] = Json::array({point_to_json(tree, *w.arc_start), point_to_json(tree, *w.arc_end)});
    return j;
}

Json to_json(const MetricTree& tree, const RecurrenceVerdict& v) {
    Json j;
    j["pointwise_recurrent"] = v.pointwise_recurrent;
    if (v.identity_power) j["identity_power"] = *v.identity_power;
    if (v.witness) j["witness"] = to_json(tree, *v.witness);
    return j;
}

Json to_json(const MetricTree& tree, const PropertyReport& r) {
    Json j;
    j["name"] = r.name;
    j["applicable"] = r.applicable;
    j["passed"] = r.passed;
    j["checked"] = r.checked;
    j["failures"] = Json::array();
    for (const auto& f : r.failures) {
        Json jf;
        jf["check"] = f.check;
        jf["detail"] = f.detail;
        jf["points"] = Json::array();
        for (const auto& p : f.points) jf["points"].push_back(point_to_json(tree, p));
        j["failures"].push_back(std::move(jf));
    }
    return j;
}

Json to_json(const MetricTree& tree, const NestedCycles& c) {
    Json j = Json::array();
    for (const auto& level : c.levels) {
        Json jl;
        jl["n"] = level.n;
        jl["period"] = level.period;
        jl["sets"] = Json::array();
        for (std::size_t i = 0; i < level.sets.size(); ++i) {
            Json js;
            js["index"] = level.index[i];
            js["attachment"] = point_to_json(tree, level.attachment(i));
            js["toward"] = point_to_json(tree, level.sets[i].representative(tree));
            jl["sets"].push_back(std::move(js));
        }
        j.push_back(std::move(jl));
    }
    return j;
}

Json to_json(const OdometerAddress& a) {
    Json j;
    j["type"] = a.type.periods();
    j["digits"] = a.digits;
    return j;
}

Json to_json(const AddingMachineFlags& f) {
    Json j;
    j["open"] = f.open;
    j["nonempty_chains"] = f.nonempty_chains;
    j["injective"] = f.injective;
    j["onto"] = f.onto;
    j["classification"] = to_string(f.classification);
    return j;
}

}  // namespace dendrodyn
