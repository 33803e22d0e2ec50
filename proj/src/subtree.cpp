#include "dendrodyn/subtree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "dendrodyn/errors.hpp"

namespace dendrodyn {

namespace {

void merge_into(std::vector<Interval>& list, Interval add) {
    std::vector<Interval> out;
    out.reserve(list.size() + 1);
    bool placed = false;
    for (auto& iv : list) {
        if (iv.hi < add.lo) {
            out.push_back(std::move(iv));
        } else if (add.hi < iv.lo) {
            if (!placed) {
                out.push_back(add);
                placed = true;
            }
            out.push_back(std::move(iv));
        } else {
            if (iv.lo < add.lo) add.lo = iv.lo;
            if (iv.hi > add.hi) add.hi = iv.hi;
        }
    }
    if (!placed) out.push_back(std::move(add));
    list = std::move(out);
}

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<std::size_t> parent_;
};

}  // namespace

Subtree Subtree::empty(const MetricTree& tree) {
    Subtree s;
    s.vertices_.assign(tree.vertex_count(), false);
    s.edges_.assign(tree.edge_count(), {});
    return s;
}

Subtree Subtree::whole(const MetricTree& tree) {
    Subtree s;
    s.vertices_.assign(tree.vertex_count(), true);
    s.edges_.assign(tree.edge_count(), {Interval{Rational(0), Rational(1)}});
    return s;
}

Subtree Subtree::of_point(const MetricTree& tree, const TreePoint& p) {
    Subtree s = empty(tree);
    s.insert(tree, p);
    return s;
}

Subtree Subtree::of_arc(const MetricTree& tree, const Arc& a) {
    Subtree s = empty(tree);
    s.insert(tree, a);
    return s;
}

void Subtree::insert(const MetricTree& tree, const TreePoint& p) {
    if (!p.valid_in(tree)) throw StructuralError("point not in tree");
    if (p.is_vertex()) {
        vertices_.at(p.vertex().index) = true;
    } else {
        insert(tree, p.edge(), p.t(), p.t());
    }
}

void Subtree::insert(const MetricTree& tree, EdgeId e, Rational lo, Rational hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo < 0 || hi > 1) throw StructuralError("interval outside [0,1]");
    const auto& ed = tree.edge(e);
    if (lo == 0) vertices_.at(ed.first.index) = true;
    if (hi == 1) vertices_.at(ed.second.index) = true;
    if (lo == hi && (lo == 0 || lo == 1)) return;
    merge_into(edges_.at(e.index), Interval{std::move(lo), std::move(hi)});
}

void Subtree::insert(const MetricTree& tree, const Arc& a) {
    insert(tree, a.source());
    insert(tree, a.target());
    for (const auto& seg : a.segments()) insert(tree, seg.edge, seg.from, seg.to);
}

void Subtree::insert(const MetricTree& tree, const Subtree& other) {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (other.vertices_.at(v)) vertices_[v] = true;
    }
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        for (const auto& iv : other.edges_.at(e)) insert(tree, EdgeId{e}, iv.lo, iv.hi);
    }
}

bool Subtree::contains(const TreePoint& p) const {
    if (p.is_vertex()) return vertices_.at(p.vertex().index);
    for (const auto& iv : edges_.at(p.edge().index)) {
        if (iv.lo <= p.t() && p.t() <= iv.hi) return true;
    }
    return false;
}

std::vector<EdgeId> Subtree::whole_edges() const {
    std::vector<EdgeId> out;
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        const auto& list = edges_[e];
        if (list.size() == 1 && list[0].lo == 0 && list[0].hi == 1) out.push_back(EdgeId{e});
    }
    return out;
}

bool Subtree::is_empty() const {
    return std::none_of(vertices_.begin(), vertices_.end(), [](bool b) { return b; }) &&
           std::all_of(edges_.begin(), edges_.end(), [](const auto& l) { return l.empty(); });
}

bool Subtree::includes(const Subtree& other) const {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (other.vertices_.at(v) && !vertices_[v]) return false;
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        for (const auto& iv : other.edges_.at(e)) {
            const bool covered = std::any_of(edges_[e].begin(), edges_[e].end(),
                                             [&](const Interval& mine) { return mine.lo <= iv.lo && iv.hi <= mine.hi; });
            if (!covered) return false;
        }
    }
    return true;
}

Subtree Subtree::intersected(const MetricTree& tree, const Subtree& other) const {
    Subtree out = empty(tree);
    for (std::size_t v = 0; v < vertices_.size(); ++v) out.vertices_[v] = vertices_[v] && other.vertices_.at(v);
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        for (const auto& a : edges_[e]) {
            for (const auto& b : other.edges_.at(e)) {
                Rational lo = a.lo > b.lo ? a.lo : b.lo;
                Rational hi = a.hi < b.hi ? a.hi : b.hi;
                if (lo <= hi) out.insert(tree, EdgeId{e}, lo, hi);
            }
        }
    }
    return out;
}

std::vector<Subtree> Subtree::components(const MetricTree& tree) const {
    // Nodes: vertices first, then intervals in edge order.
    std::vector<std::pair<std::uint32_t, std::size_t>> interval_nodes;
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        for (std::size_t i = 0; i < edges_[e].size(); ++i) interval_nodes.emplace_back(e, i);
    }
    const std::size_t nv = vertices_.size();
    DisjointSets sets(nv + interval_nodes.size());
    for (std::size_t k = 0; k < interval_nodes.size(); ++k) {
        const auto [e, i] = interval_nodes[k];
        const auto& iv = edges_[e][i];
        const auto& ed = tree.edge(EdgeId{e});
        if (iv.lo == 0) sets.join(nv + k, ed.first.index);
        if (iv.hi == 1) sets.join(nv + k, ed.second.index);
    }
    std::vector<std::size_t> roots;
    std::vector<Subtree> out;
    auto slot = [&](std::size_t node) -> Subtree& {
        const std::size_t r = sets.find(node);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it != roots.end()) return out[static_cast<std::size_t>(it - roots.begin())];
        roots.push_back(r);
        out.push_back(empty(tree));
        return out.back();
    };
    for (std::uint32_t v = 0; v < nv; ++v) {
        if (vertices_[v]) slot(v).vertices_[v] = true;
    }
    for (std::size_t k = 0; k < interval_nodes.size(); ++k) {
        const auto [e, i] = interval_nodes[k];
        slot(nv + k).edges_[e].push_back(edges_[e][i]);
    }
    return out;
}

bool Subtree::is_connected(const MetricTree& tree) const { return components(tree).size() == 1; }

std::vector<TreePoint> Subtree::representatives(const MetricTree& tree) const {
    std::vector<TreePoint> out;
    for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v]) out.push_back(TreePoint::at_vertex(VertexId{v}));
    }
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        for (const auto& iv : edges_[e]) {
            const EdgeId id{e};
            if (iv.lo > 0) out.push_back(TreePoint::on_edge(tree, id, iv.lo));
            if (iv.lo < iv.hi) out.push_back(TreePoint::on_edge(tree, id, Rational((iv.lo + iv.hi) / 2)));
            if (iv.hi < 1 && iv.hi != iv.lo) out.push_back(TreePoint::on_edge(tree, id, iv.hi));
        }
    }
    return out;
}

Rational Subtree::total_length(const MetricTree& tree) const {
    Rational total = 0;
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        for (const auto& iv : edges_[e]) total += (iv.hi - iv.lo) * tree.edge(EdgeId{e}).length;
    }
    return total;
}

std::optional<Rational> Subtree::first_hit(const MetricTree& tree, const Arc& a) const {
    if (contains(a.source())) return Rational(0);
    Rational offset = 0;
    for (const auto& seg : a.segments()) {
        const auto& ed = tree.edge(seg.edge);
        const bool up = seg.to > seg.from;
        std::optional<Rational> best;
        auto consider = [&](const Rational& t) {
            const bool inside = up ? (seg.from <= t && t <= seg.to) : (seg.to <= t && t <= seg.from);
            if (!inside) return;
            if (!best || (up ? t < *best : t > *best)) best = t;
        };
        if (vertices_[ed.first.index]) consider(Rational(0));
        if (vertices_[ed.second.index]) consider(Rational(1));
        for (const auto& iv : edges_[seg.edge.index]) {
            // Nearest point of [lo,hi] to seg.from in the travel direction.
            if (up) {
                if (iv.hi >= seg.from) consider(iv.lo > seg.from ? iv.lo : seg.from);
            } else {
                if (iv.lo <= seg.from) consider(iv.hi < seg.from ? iv.hi : seg.from);
            }
        }
        if (best) {
            Rational d = up ? Rational(*best - seg.from) : Rational(seg.from - *best);
            return Rational(offset + d * ed.length);
        }
        Rational d = up ? Rational(seg.to - seg.from) : Rational(seg.from - seg.to);
        offset += d * ed.length;
    }
    return std::nullopt;
}

bool Branch::contains(const MetricTree& tree, const TreePoint& p) const {
    if (p == base) return false;
    return arc(tree, base, p).initial_germ() == germ;
}

TreePoint Branch::representative(const MetricTree& tree) const {
    Rational start = base.is_vertex() ? tree.endpoint_param(germ.edge, base.vertex()) : base.t();
    Rational end = germ.increasing ? Rational(1) : Rational(0);
    return TreePoint::on_edge(tree, germ.edge, Rational((start + end) / 2));
}

Subtree Branch::closure(const MetricTree& tree) const {
    Subtree s = Subtree::empty(tree);
    s.insert(tree, base);
    Rational start = base.is_vertex() ? tree.endpoint_param(germ.edge, base.vertex()) : base.t();
    Rational end = germ.increasing ? Rational(1) : Rational(0);
    s.insert(tree, germ.edge, start, end);
    const auto& ed = tree.edge(germ.edge);
    const VertexId far = germ.increasing ? ed.second : ed.first;
    std::deque<std::pair<VertexId, EdgeId>> queue{{far, germ.edge}};
    while (!queue.empty()) {
        auto [v, via] = queue.front();
        queue.pop_front();
        for (EdgeId e : tree.incident(v)) {
            if (e == via) continue;
            s.insert(tree, e, Rational(0), Rational(1));
            queue.emplace_back(tree.opposite(e, v), e);
        }
    }
    return s;
}

std::vector<Branch> complement_components(const MetricTree& tree, const Subtree& y) {
    if (y.is_empty() || !y.is_connected(tree)) {
        throw StructuralError("complement components need a connected non-empty set");
    }
    std::vector<Branch> out;
    for (VertexId v : tree.vertices()) {
        if (!y.contains_vertex(v)) continue;
        for (EdgeId e : tree.incident(v)) {
            const bool from_first = tree.edge(e).first == v;
            const auto& list = y.intervals(e);
            const bool enters = std::any_of(list.begin(), list.end(), [&](const Interval& iv) {
                return from_first ? (iv.lo == 0 && iv.hi > 0) : (iv.hi == 1 && iv.lo < 1);
            });
            if (!enters) out.push_back(Branch{TreePoint::at_vertex(v), Germ{e, from_first}});
        }
    }
    for (EdgeId e : tree.edges()) {
        for (const auto& iv : y.intervals(e)) {
            if (iv.lo > 0) out.push_back(Branch{TreePoint::on_edge(tree, e, iv.lo), Germ{e, false}});
            if (iv.hi < 1) out.push_back(Branch{TreePoint::on_edge(tree, e, iv.hi), Germ{e, true}});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dendrodyn
