#include "dendrodyn/arc.hpp"

#include <algorithm>

#include "dendrodyn/errors.hpp"

namespace dendrodyn {

namespace {

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? Rational(a - b) : Rational(b - a); }

struct Anchor {
    VertexId vertex;
    std::optional<ArcSegment> stub;  // from the point to the vertex, or to the point from the vertex
};

// The ways an arc may leave p: through a vertex, possibly via a partial edge.
std::vector<Anchor> anchors(const MetricTree& tree, const TreePoint& p, bool leaving) {
    if (p.is_vertex()) return {Anchor{p.vertex(), std::nullopt}};
    const auto& ed = tree.edge(p.edge());
    auto stub = [&](const Rational& end) {
        return leaving ? ArcSegment{p.edge(), p.t(), end} : ArcSegment{p.edge(), end, p.t()};
    };
    return {Anchor{ed.first, stub(Rational(0))}, Anchor{ed.second, stub(Rational(1))}};
}

}  // namespace

std::optional<Germ> Arc::initial_germ() const {
    if (segments_.empty()) return std::nullopt;
    return segments_.front().initial_germ();
}

TreePoint Arc::point_at(const MetricTree& tree, const Rational& s) const {
    if (s < 0 || s > length_) throw PreconditionError("arclength outside the arc");
    if (s == 0) return source_;
    if (s == length_) return target_;
    Rational remaining = s;
    for (const auto& seg : segments_) {
        const Rational& len = tree.edge(seg.edge).length;
        Rational span = abs_diff(seg.to, seg.from) * len;
        if (remaining <= span) {
            Rational delta = remaining / len;
            Rational t = seg.to > seg.from ? Rational(seg.from + delta) : Rational(seg.from - delta);
            return TreePoint::on_edge(tree, seg.edge, t);
        }
        remaining -= span;
    }
    return target_;
}

std::optional<Rational> Arc::position_of(const MetricTree& tree, const TreePoint& p) const {
    if (p == source_) return Rational(0);
    Rational offset = 0;
    for (const auto& seg : segments_) {
        const Rational& len = tree.edge(seg.edge).length;
        if (auto t = p.param_on(tree, seg.edge)) {
            const Rational& lo = std::min(seg.from, seg.to);
            const Rational& hi = std::max(seg.from, seg.to);
            if (*t >= lo && *t <= hi) return Rational(offset + abs_diff(*t, seg.from) * len);
        }
        offset += abs_diff(seg.to, seg.from) * len;
    }
    return std::nullopt;
}

Arc arc(const MetricTree& tree, const TreePoint& a, const TreePoint& b) {
    if (!a.valid_in(tree) || !b.valid_in(tree)) throw StructuralError("point not in tree");
    if (a == b) return Arc(a, b, {}, Rational(0));

    std::vector<ArcSegment> segments;
    if (!a.is_vertex() && !b.is_vertex() && a.edge() == b.edge()) {
        segments.push_back({a.edge(), a.t(), b.t()});
    } else {
        // Exactly one anchor combination yields a simple path.
        bool found = false;
        for (const auto& from : anchors(tree, a, true)) {
            for (const auto& to : anchors(tree, b, false)) {
                auto steps = tree.path(from.vertex, to.vertex);
                const bool reuses = std::any_of(steps.begin(), steps.end(), [&](const auto& st) {
                    return (from.stub && st.edge == from.stub->edge) || (to.stub && st.edge == to.stub->edge);
                });
                if (reuses) continue;
                if (from.stub) segments.push_back(*from.stub);
                for (const auto& st : steps) {
                    segments.push_back(
                        {st.edge, tree.endpoint_param(st.edge, st.from), tree.endpoint_param(st.edge, st.to)});
                }
                if (to.stub) segments.push_back(*to.stub);
                found = true;
                break;
            }
            if (found) break;
        }
        if (!found) throw StructuralError("no simple path between points");
    }

    Rational length = 0;
    for (const auto& seg : segments) length += abs_diff(seg.to, seg.from) * tree.edge(seg.edge).length;
    return Arc(a, b, std::move(segments), std::move(length));
}

}  // namespace dendrodyn
