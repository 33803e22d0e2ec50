#pragma once

#include <vector>

#include "dendrodyn/arc.hpp"

namespace dendrodyn {

// Closed parameter interval [lo, hi] on one edge.
struct Interval {
    Rational lo;
    Rational hi;
    bool operator==(const Interval&) const = default;
};

// A closed subset of a MetricTree made of finitely many vertices and
// closed edge segments. Canonical form: per edge, intervals are sorted,
// disjoint and merged; an interval reaching t = 0 or t = 1 implies the
// corresponding vertex is a member, and degenerate intervals at a vertex
// are stored as that vertex only. Structural equality is set equality.
//
// Most producers yield connected sets; fixed-point sets of arbitrary
// maps need not be, so connectivity is a query, not an invariant.
class Subtree {
  public:
    Subtree() = default;

    static Subtree empty(const MetricTree& tree);
    static Subtree whole(const MetricTree& tree);
    static Subtree of_point(const MetricTree& tree, const TreePoint& p);
    static Subtree of_arc(const MetricTree& tree, const Arc& a);

    void insert(const MetricTree& tree, const TreePoint& p);
    void insert(const MetricTree& tree, EdgeId e, Rational lo, Rational hi);
    void insert(const MetricTree& tree, const Arc& a);
    void insert(const MetricTree& tree, const Subtree& other);

    bool contains(const TreePoint& p) const;
    bool contains_vertex(VertexId v) const { return vertices_.at(v.index); }
    const std::vector<Interval>& intervals(EdgeId e) const { return edges_.at(e.index); }
    std::vector<EdgeId> whole_edges() const;

    bool is_empty() const;
    bool includes(const Subtree& other) const;
    Subtree intersected(const MetricTree& tree, const Subtree& other) const;

    bool is_connected(const MetricTree& tree) const;
    std::vector<Subtree> components(const MetricTree& tree) const;

    // Vertices, segment endpoints and segment midpoints, in canonical order.
    std::vector<TreePoint> representatives(const MetricTree& tree) const;
    Rational total_length(const MetricTree& tree) const;

    // Arclength (from the source) of the first point of `a` in the set.
    std::optional<Rational> first_hit(const MetricTree& tree, const Arc& a) const;

    bool operator==(const Subtree&) const = default;

  private:
    std::vector<bool> vertices_;
    std::vector<std::vector<Interval>> edges_;
};

// A component of X \ {base}: everything reached from `base` by leaving
// along `germ`. Its closure is the component plus `base`.
struct Branch {
    TreePoint base;
    Germ germ;

    bool contains(const MetricTree& tree, const TreePoint& p) const;
    Subtree closure(const MetricTree& tree) const;
    // A point of the branch on the first edge it leaves along.
    TreePoint representative(const MetricTree& tree) const;

    auto operator<=>(const Branch&) const = default;
    bool operator==(const Branch&) const = default;
};

// Components of X \ Y for a connected, non-empty Y.
std::vector<Branch> complement_components(const MetricTree& tree, const Subtree& y);

}  // namespace dendrodyn
