#include "dendrodyn/tree.hpp"

#include <algorithm>
#include <deque>

#include "dendrodyn/errors.hpp"

namespace dendrodyn {

MetricTree::MetricTree(std::vector<std::string> vertex_names, std::vector<EdgeSpec> edges)
    : vertex_names_(std::move(vertex_names)) {
    if (vertex_names_.empty()) throw StructuralError("tree has no vertices");
    for (std::uint32_t i = 0; i < vertex_names_.size(); ++i) {
        if (!vertex_lookup_.emplace(vertex_names_[i], VertexId{i}).second) {
            throw StructuralError("duplicate vertex id '" + vertex_names_[i] + "'");
        }
    }
    if (edges.size() + 1 != vertex_names_.size()) {
        throw StructuralError("a tree on " + std::to_string(vertex_names_.size()) + " vertices needs " +
                              std::to_string(vertex_names_.size() - 1) + " edges, got " +
                              std::to_string(edges.size()));
    }
    incident_.resize(vertex_names_.size());
    edges_.reserve(edges.size());
    for (auto& spec : edges) {
        const EdgeId id{static_cast<std::uint32_t>(edges_.size())};
        if (!edge_lookup_.emplace(spec.name, id).second) {
            throw StructuralError("duplicate edge id '" + spec.name + "'");
        }
        auto first = find_vertex(spec.first);
        auto second = find_vertex(spec.second);
        if (!first || !second) {
            throw StructuralError("edge '" + spec.name + "' references an unknown vertex");
        }
        if (*first == *second) throw StructuralError("edge '" + spec.name + "' is a loop");
        if (spec.length <= 0) throw StructuralError("edge '" + spec.name + "' has non-positive length");
        incident_[first->index].push_back(id);
        incident_[second->index].push_back(id);
        edges_.push_back(Edge{std::move(spec.name), *first, *second, std::move(spec.length)});
    }

    // |E| = |V| - 1 plus connectivity gives acyclicity.
    depth_.assign(vertex_names_.size(), 0);
    parent_edge_.assign(vertex_names_.size(), std::nullopt);
    std::vector<bool> seen(vertex_names_.size(), false);
    std::deque<VertexId> queue{VertexId{0}};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop_front();
        for (EdgeId e : incident_[v.index]) {
            const VertexId w = opposite(e, v);
            if (seen[w.index]) continue;
            seen[w.index] = true;
            ++reached;
            depth_[w.index] = depth_[v.index] + 1;
            parent_edge_[w.index] = e;
            queue.push_back(w);
        }
    }
    if (reached != vertex_names_.size()) throw StructuralError("vertex/edge graph is not connected");
}

std::optional<VertexId> MetricTree::find_vertex(std::string_view name) const {
    auto it = vertex_lookup_.find(std::string(name));
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> MetricTree::find_edge(std::string_view name) const {
    auto it = edge_lookup_.find(std::string(name));
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
}

VertexId MetricTree::vertex_id(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw StructuralError("unknown vertex '" + std::string(name) + "'");
}

EdgeId MetricTree::edge_id(std::string_view name) const {
    if (auto e = find_edge(name)) return *e;
    throw StructuralError("unknown edge '" + std::string(name) + "'");
}

VertexId MetricTree::opposite(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    if (ed.first == v) return ed.second;
    if (ed.second == v) return ed.first;
    throw StructuralError("vertex is not an endpoint of edge '" + ed.name + "'");
}

Rational MetricTree::endpoint_param(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    if (ed.first == v) return Rational(0);
    if (ed.second == v) return Rational(1);
    throw StructuralError("vertex is not an endpoint of edge '" + ed.name + "'");
}

std::vector<MetricTree::Step> MetricTree::path(VertexId a, VertexId b) const {
    std::vector<Step> from_a;
    std::vector<Step> from_b;
    while (a != b) {
        if (depth_[a.index] >= depth_[b.index]) {
            const EdgeId e = *parent_edge_[a.index];
            const VertexId up = opposite(e, a);
            from_a.push_back({e, a, up});
            a = up;
        } else {
            const EdgeId e = *parent_edge_[b.index];
            const VertexId up = opposite(e, b);
            from_b.push_back({e, up, b});
            b = up;
        }
    }
    from_a.insert(from_a.end(), from_b.rbegin(), from_b.rend());
    return from_a;
}

std::vector<VertexId> MetricTree::vertices() const {
    std::vector<VertexId> out(vertex_count());
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = VertexId{i};
    return out;
}

std::vector<EdgeId> MetricTree::edges() const {
    std::vector<EdgeId> out(edge_count());
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = EdgeId{i};
    return out;
}

TreePoint TreePoint::on_edge(const MetricTree& tree, EdgeId e, const Rational& t) {
    if (e.index >= tree.edge_count()) throw StructuralError("edge index out of range");
    if (t < 0 || t > 1) throw StructuralError("edge parameter " + to_string(t) + " outside [0,1]");
    if (t == 0) return TreePoint(tree.edge(e).first);
    if (t == 1) return TreePoint(tree.edge(e).second);
    return TreePoint(e, t);
}

VertexId TreePoint::vertex() const {
    if (!is_vertex_) throw StructuralError("point is not a vertex");
    return vertex_;
}

EdgeId TreePoint::edge() const {
    if (is_vertex_) throw StructuralError("point is a vertex");
    return edge_;
}

const Rational& TreePoint::t() const {
    if (is_vertex_) throw StructuralError("point is a vertex");
    return t_;
}

std::optional<Rational> TreePoint::param_on(const MetricTree& tree, EdgeId e) const {
    if (!is_vertex_) {
        if (edge_ == e) return t_;
        return std::nullopt;
    }
    const auto& ed = tree.edge(e);
    if (ed.first == vertex_) return Rational(0);
    if (ed.second == vertex_) return Rational(1);
    return std::nullopt;
}

bool TreePoint::valid_in(const MetricTree& tree) const {
    if (is_vertex_) return vertex_.index < tree.vertex_count();
    return edge_.index < tree.edge_count() && t_ > 0 && t_ < 1;
}

bool TreePoint::operator==(const TreePoint& other) const {
    if (is_vertex_ != other.is_vertex_) return false;
    if (is_vertex_) return vertex_ == other.vertex_;
    return edge_ == other.edge_ && t_ == other.t_;
}

std::strong_ordering TreePoint::operator<=>(const TreePoint& other) const {
    if (is_vertex_ != other.is_vertex_) {
        return is_vertex_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (is_vertex_) return vertex_ <=> other.vertex_;
    if (auto c = edge_ <=> other.edge_; c != 0) return c;
    const int c = cmp(t_, other.t_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string describe(const MetricTree& tree, const TreePoint& p) {
    if (p.is_vertex()) return tree.vertex_name(p.vertex());
    return tree.edge_name(p.edge()) + "@" + to_string(p.t());
}

std::vector<Germ> germs_at(const MetricTree& tree, const TreePoint& p) {
    std::vector<Germ> out;
    if (p.is_vertex()) {
        for (EdgeId e : tree.incident(p.vertex())) {
            out.push_back({e, tree.edge(e).first == p.vertex()});
        }
    } else {
        out.push_back({p.edge(), false});
        out.push_back({p.edge(), true});
    }
    return out;
}

}  // namespace dendrodyn
