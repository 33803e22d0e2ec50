#include "dendrodyn/pl_map.hpp"

#include <algorithm>

#include "dendrodyn/errors.hpp"
#include "dendrodyn/tree_core.hpp"

namespace dendrodyn {

namespace {

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? Rational(a - b) : Rational(b - a); }

// Pieces [a,b] -> arc(x,y) and [b,c] -> arc(y,z) form a single piece.
bool mergeable(const MetricTree& tree, const Breakpoint& p0, const Breakpoint& p1, const Breakpoint& p2) {
    const bool first_constant = p0.image == p1.image;
    const bool second_constant = p1.image == p2.image;
    if (first_constant || second_constant) return first_constant && second_constant;
    const Rational d01 = distance(tree, p0.image, p1.image);
    const Rational d12 = distance(tree, p1.image, p2.image);
    const Rational d02 = distance(tree, p0.image, p2.image);
    return d01 + d12 == d02 && d01 * (p2.t - p1.t) == d12 * (p1.t - p0.t);
}

std::vector<Breakpoint> normalized(const MetricTree& tree, std::vector<Breakpoint> in) {
    std::vector<Breakpoint> out;
    out.reserve(in.size());
    for (auto& bp : in) {
        if (out.size() >= 2 && mergeable(tree, out[out.size() - 2], out.back(), bp)) {
            out.back() = std::move(bp);
        } else {
            out.push_back(std::move(bp));
        }
    }
    return out;
}

void append_breakpoint(std::vector<Breakpoint>& list, Rational t, TreePoint image) {
    if (!list.empty() && list.back().t == t) return;
    list.push_back({std::move(t), std::move(image)});
}

}  // namespace

PLTreeMap::PLTreeMap(TreePtr tree, std::vector<TreePoint> vertex_images, std::vector<std::vector<Breakpoint>> edge_pieces)
    : tree_(std::move(tree)), vertex_images_(std::move(vertex_images)) {
    if (!tree_) throw StructuralError("map without a tree");
    const MetricTree& t = *tree_;
    if (vertex_images_.size() != t.vertex_count()) throw StructuralError("one image per vertex required");
    for (const auto& p : vertex_images_) {
        if (!p.valid_in(t)) throw StructuralError("vertex image is not a point of the tree");
    }
    if (edge_pieces.size() != t.edge_count()) throw StructuralError("one piece list per edge required");
    pieces_.reserve(edge_pieces.size());
    for (EdgeId e : t.edges()) {
        auto& list = edge_pieces[e.index];
        const std::string& name = t.edge_name(e);
        if (list.size() < 2) throw StructuralError("edge '" + name + "' needs at least two breakpoints");
        if (list.front().t != 0 || list.back().t != 1) {
            throw StructuralError("breakpoints of edge '" + name + "' must start at 0 and end at 1");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!list[i].image.valid_in(t)) throw StructuralError("image off the tree on edge '" + name + "'");
            if (i > 0 && list[i].t <= list[i - 1].t) {
                throw StructuralError("breakpoints of edge '" + name + "' must increase strictly");
            }
        }
        if (list.front().image != vertex_images_[t.edge(e).first.index] ||
            list.back().image != vertex_images_[t.edge(e).second.index]) {
            throw StructuralError("edge '" + name + "' disagrees with its vertex images");
        }
        pieces_.push_back(normalized(t, std::move(list)));
    }
    arcs_.reserve(pieces_.size());
    for (const auto& list : pieces_) {
        std::vector<Arc> row;
        row.reserve(list.size() - 1);
        for (std::size_t i = 0; i + 1 < list.size(); ++i) row.push_back(arc(t, list[i].image, list[i + 1].image));
        arcs_.push_back(std::move(row));
    }
}

PLTreeMap PLTreeMap::identity(TreePtr tree) {
    std::vector<TreePoint> images;
    std::vector<std::vector<Breakpoint>> pieces;
    for (VertexId v : tree->vertices()) images.push_back(TreePoint::at_vertex(v));
    for (EdgeId e : tree->edges()) {
        const auto& ed = tree->edge(e);
        pieces.push_back({{Rational(0), TreePoint::at_vertex(ed.first)}, {Rational(1), TreePoint::at_vertex(ed.second)}});
    }
    return PLTreeMap(std::move(tree), std::move(images), std::move(pieces));
}

PLTreeMap PLTreeMap::constant(TreePtr tree, const TreePoint& value) {
    std::vector<TreePoint> images(tree->vertex_count(), value);
    std::vector<std::vector<Breakpoint>> pieces(tree->edge_count(), {{Rational(0), value}, {Rational(1), value}});
    return PLTreeMap(std::move(tree), std::move(images), std::move(pieces));
}

std::size_t PLTreeMap::piece_count() const {
    std::size_t n = 0;
    for (const auto& list : pieces_) n += list.size() - 1;
    return n;
}

TreePoint PLTreeMap::at(EdgeId e, const Rational& t) const {
    const auto& list = pieces_.at(e.index);
    auto it = std::upper_bound(list.begin(), list.end(), t, [](const Rational& v, const Breakpoint& bp) { return v < bp.t; });
    if (it == list.begin()) throw StructuralError("edge parameter below 0");
    const std::size_t i = static_cast<std::size_t>(it - list.begin()) - 1;
    if (list[i].t == t) return list[i].image;
    if (i + 1 >= list.size()) throw StructuralError("edge parameter above 1");
    const Arc& a = arcs_[e.index][i];
    const Rational s = a.length() * (t - list[i].t) / (list[i + 1].t - list[i].t);
    return a.point_at(*tree_, s);
}

TreePoint PLTreeMap::operator()(const TreePoint& x) const {
    if (!x.valid_in(*tree_)) throw StructuralError("point not in the domain");
    if (x.is_vertex()) return vertex_images_[x.vertex().index];
    return at(x.edge(), x.t());
}

bool PLTreeMap::is_identity() const {
    const MetricTree& t = *tree_;
    for (VertexId v : t.vertices()) {
        if (vertex_images_[v.index] != TreePoint::at_vertex(v)) return false;
    }
    return std::all_of(pieces_.begin(), pieces_.end(), [](const auto& list) { return list.size() == 2; });
}

bool PLTreeMap::shares_tree(const PLTreeMap& other) const {
    return tree_ == other.tree_ || *tree_ == *other.tree_;
}

bool PLTreeMap::operator==(const PLTreeMap& other) const {
    return shares_tree(other) && vertex_images_ == other.vertex_images_ && pieces_ == other.pieces_;
}

TreePoint evaluate_power(const PLTreeMap& f, const TreePoint& x, std::uint64_t n) {
    TreePoint y = x;
    for (std::uint64_t i = 0; i < n; ++i) y = f(y);
    return y;
}

PLTreeMap compose(const PLTreeMap& g, const PLTreeMap& f, std::size_t piece_cap) {
    if (!g.shares_tree(f)) throw PreconditionError("composition of maps on different trees");
    const MetricTree& tree = f.tree();
    std::vector<TreePoint> images;
    images.reserve(tree.vertex_count());
    for (const auto& p : f.vertex_images()) images.push_back(g(p));

    std::vector<std::vector<Breakpoint>> pieces;
    pieces.reserve(tree.edge_count());
    std::size_t raw_total = 0;
    for (EdgeId e : tree.edges()) {
        const auto& list = f.breakpoints(e);
        std::vector<Breakpoint> out;
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            const Rational& t0 = list[i].t;
            const Rational& t1 = list[i + 1].t;
            const Arc& a = f.piece_arc(e, i);
            const TreePoint start = g(a.source());
            append_breakpoint(out, t0, start);
            if (a.degenerate()) {
                out.push_back({t1, start});
                continue;
            }
            // Every g-breakpoint crossed by the image arc, plus every vertex it passes.
            const Rational scale = (t1 - t0) / a.length();
            Rational offset = 0;
            for (const auto& seg : a.segments()) {
                const Rational& len = tree.edge(seg.edge).length;
                const auto& gbps = g.breakpoints(seg.edge);
                const bool up = seg.to > seg.from;
                auto emit = [&](const Rational& param) {
                    const Rational s = offset + abs_diff(param, seg.from) * len;
                    append_breakpoint(out, Rational(t0 + s * scale), g.at(seg.edge, param));
                };
                if (up) {
                    for (const auto& bp : gbps) {
                        if (bp.t > seg.from && bp.t < seg.to) emit(bp.t);
                    }
                } else {
                    for (auto it = gbps.rbegin(); it != gbps.rend(); ++it) {
                        if (it->t < seg.from && it->t > seg.to) emit(it->t);
                    }
                }
                emit(seg.to);
                offset += abs_diff(seg.to, seg.from) * len;
            }
        }
        raw_total += out.size();
        if (raw_total > 16 * piece_cap) throw ResourceError("composition exceeds the piece cap");
        pieces.push_back(std::move(out));
    }
    PLTreeMap result(f.tree_ptr(), std::move(images), std::move(pieces));
    if (result.piece_count() > piece_cap) {
        throw ResourceError("composition has " + std::to_string(result.piece_count()) + " pieces, cap is " +
                            std::to_string(piece_cap));
    }
    return result;
}

PLTreeMap iterate(const PLTreeMap& f, std::uint64_t n, std::size_t piece_cap) {
    PLTreeMap result = PLTreeMap::identity(f.tree_ptr());
    PLTreeMap base = f;
    bool first = true;
    while (n > 0) {
        if (n & 1U) {
            result = first ? base : compose(base, result, piece_cap);
            first = false;
        }
        n >>= 1U;
        if (n > 0) base = compose(base, base, piece_cap);
    }
    return result;
}

Subtree image_of_arc(const PLTreeMap& f, const Arc& a) {
    const MetricTree& tree = f.tree();
    Subtree out = Subtree::of_point(tree, f(a.source()));
    for (const auto& seg : a.segments()) {
        const Rational& lo = std::min(seg.from, seg.to);
        const Rational& hi = std::max(seg.from, seg.to);
        const auto& list = f.breakpoints(seg.edge);
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            const Rational& a0 = std::max(lo, list[i].t);
            const Rational& b0 = std::min(hi, list[i + 1].t);
            if (a0 > b0) continue;
            out.insert(tree, arc(tree, f.at(seg.edge, a0), f.at(seg.edge, b0)));
        }
    }
    return out;
}

Subtree image(const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    Subtree out = Subtree::empty(tree);
    for (const auto& p : f.vertex_images()) out.insert(tree, p);
    for (EdgeId e : tree.edges()) {
        for (std::size_t i = 0; i + 1 < f.breakpoints(e).size(); ++i) out.insert(tree, f.piece_arc(e, i));
    }
    return out;
}

Subtree preimage(const PLTreeMap& f, const TreePoint& y) {
    const MetricTree& tree = f.tree();
    Subtree out = Subtree::empty(tree);
    for (VertexId v : tree.vertices()) {
        if (f.vertex_image(v) == y) out.insert(tree, TreePoint::at_vertex(v));
    }
    for (EdgeId e : tree.edges()) {
        const auto& list = f.breakpoints(e);
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            const Arc& a = f.piece_arc(e, i);
            if (a.degenerate()) {
                if (a.source() == y) out.insert(tree, e, list[i].t, list[i + 1].t);
                continue;
            }
            if (auto s = a.position_of(tree, y)) {
                out.insert(tree, TreePoint::on_edge(tree, e, list[i].t + (list[i + 1].t - list[i].t) * *s / a.length()));
            }
        }
    }
    return out;
}

Subtree fixed_points(const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    Subtree out = Subtree::empty(tree);
    for (VertexId v : tree.vertices()) {
        if (f.vertex_image(v) == TreePoint::at_vertex(v)) out.insert(tree, TreePoint::at_vertex(v));
    }
    for (EdgeId e : tree.edges()) {
        const Rational& len = tree.edge(e).length;
        const auto& list = f.breakpoints(e);
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            const Rational& t0 = list[i].t;
            const Rational& t1 = list[i + 1].t;
            const Rational dt = t1 - t0;
            const Arc& a = f.piece_arc(e, i);
            if (a.degenerate()) {
                const TreePoint& p = a.source();
                if (!p.is_vertex() && p.edge() == e && t0 <= p.t() && p.t() <= t1) out.insert(tree, p);
                continue;
            }
            // Only the part of the image arc running along edge e can hold
            // edge-interior fixed points; vertices were handled above.
            Rational s0 = 0;
            for (const auto& seg : a.segments()) {
                const Rational seg_len = abs_diff(seg.to, seg.from) * tree.edge(seg.edge).length;
                if (seg.edge != e) {
                    s0 += seg_len;
                    continue;
                }
                const Rational s1 = s0 + seg_len;
                const int sign = seg.to > seg.from ? 1 : -1;
                // Image parameter at domain t: seg.from + sign*(L*(t-t0)/dt - s0)/len.
                const Rational beta = sign * a.length() / (dt * len);
                const Rational alpha = seg.from - sign * (a.length() * t0 / dt + s0) / len;
                const Rational lo = t0 + s0 * dt / a.length();
                const Rational hi = t0 + s1 * dt / a.length();
                if (beta == 1) {
                    if (alpha == 0) out.insert(tree, e, lo, hi);
                } else {
                    const Rational root = alpha / (1 - beta);
                    if (lo <= root && root <= hi && root > 0 && root < 1) out.insert(tree, TreePoint::on_edge(tree, e, root));
                }
                break;
            }
        }
    }
    return out;
}

namespace {

// Domain parameter on edge e mapped to y, given that f is injective on e.
std::optional<Rational> preimage_on_edge(const PLTreeMap& f, EdgeId e, const TreePoint& y) {
    const auto& list = f.breakpoints(e);
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
        const Arc& a = f.piece_arc(e, i);
        if (a.degenerate()) {
            if (a.source() == y) return list[i].t;
            continue;
        }
        if (auto s = a.position_of(f.tree(), y)) return Rational(list[i].t + (list[i + 1].t - list[i].t) * *s / a.length());
    }
    return std::nullopt;
}

std::optional<VertexId> shared_vertex(const MetricTree& tree, EdgeId a, EdgeId b) {
    const auto& ea = tree.edge(a);
    const auto& eb = tree.edge(b);
    for (VertexId v : {ea.first, ea.second}) {
        if (v == eb.first || v == eb.second) return v;
    }
    return std::nullopt;
}

}  // namespace

InjectivityReport is_injective(const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    auto fail = [&](EdgeId e1, const Rational& t1, EdgeId e2, const Rational& t2) {
        return InjectivityReport{false, std::pair{TreePoint::on_edge(tree, e1, t1), TreePoint::on_edge(tree, e2, t2)}};
    };

    for (EdgeId e : tree.edges()) {
        const auto& list = f.breakpoints(e);
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            if (f.piece_arc(e, i).degenerate()) return fail(e, list[i].t, e, list[i + 1].t);
        }
        // A fold: the two pieces meeting at an interior breakpoint leave its image the same way.
        for (std::size_t i = 1; i + 1 < list.size(); ++i) {
            const Arc back = arc(tree, list[i].image, list[i - 1].image);
            const Arc& ahead = f.piece_arc(e, i);
            if (back.initial_germ() != ahead.initial_germ()) continue;
            const Rational overlap = Subtree::of_arc(tree, back).intersected(tree, Subtree::of_arc(tree, ahead)).total_length(tree);
            const Rational half = overlap / 2;
            const Rational back_speed = back.length() / (list[i].t - list[i - 1].t);
            const Rational ahead_speed = ahead.length() / (list[i + 1].t - list[i].t);
            return fail(e, Rational(list[i].t - half / back_speed), e, Rational(list[i].t + half / ahead_speed));
        }
    }

    // Each edge now maps homeomorphically onto the arc between its end images.
    const auto edges = tree.edges();
    std::vector<Subtree> edge_images;
    for (EdgeId e : edges) {
        const auto& ed = tree.edge(e);
        edge_images.push_back(Subtree::of_arc(tree, arc(tree, f.vertex_image(ed.first), f.vertex_image(ed.second))));
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Subtree common = edge_images[i].intersected(tree, edge_images[j]);
            if (common.is_empty()) continue;
            const auto shared = shared_vertex(tree, edges[i], edges[j]);
            std::optional<TreePoint> allowed;
            if (shared) allowed = f.vertex_image(*shared);
            if (allowed && common == Subtree::of_point(tree, *allowed)) continue;
            for (const auto& y : common.representatives(tree)) {
                if (allowed && y == *allowed) continue;
                auto t1 = preimage_on_edge(f, edges[i], y);
                auto t2 = preimage_on_edge(f, edges[j], y);
                if (t1 && t2) return fail(edges[i], *t1, edges[j], *t2);
            }
            throw InvariantError("overlapping edge images without a common preimage");
        }
    }
    return {};
}

PLTreeMap retraction_map(const PLTreeMap::TreePtr& tree_ptr, const Subtree& y) {
    const MetricTree& tree = *tree_ptr;
    std::vector<TreePoint> images;
    for (VertexId v : tree.vertices()) images.push_back(retract(tree, y, TreePoint::at_vertex(v)));
    std::vector<std::vector<Breakpoint>> pieces;
    for (EdgeId e : tree.edges()) {
        const auto& ed = tree.edge(e);
        std::optional<Rational> lo;
        std::optional<Rational> hi;
        if (y.contains_vertex(ed.first)) lo = hi = Rational(0);
        for (const auto& iv : y.intervals(e)) {
            if (!lo) lo = iv.lo;
            hi = iv.hi;
        }
        if (y.contains_vertex(ed.second)) {
            if (!lo) lo = Rational(1);
            hi = Rational(1);
        }
        std::vector<Breakpoint> list;
        if (!lo) {
            const TreePoint p = images[ed.first.index];
            list = {{Rational(0), p}, {Rational(1), p}};
        } else {
            const TreePoint plo = TreePoint::on_edge(tree, e, *lo);
            const TreePoint phi = TreePoint::on_edge(tree, e, *hi);
            append_breakpoint(list, Rational(0), plo);
            append_breakpoint(list, *lo, plo);
            append_breakpoint(list, *hi, phi);
            append_breakpoint(list, Rational(1), phi);
        }
        pieces.push_back(std::move(list));
    }
    return PLTreeMap(tree_ptr, std::move(images), std::move(pieces));
}

}  // namespace dendrodyn
