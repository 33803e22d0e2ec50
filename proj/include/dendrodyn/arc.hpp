#pragma once

#include <optional>
#include <vector>

#include "dendrodyn/tree.hpp"

namespace dendrodyn {

// One edge traversal of an arc, from edge parameter `from` to `to` (from != to).
struct ArcSegment {
    EdgeId edge;
    Rational from;
    Rational to;

    Germ initial_germ() const { return {edge, to > from}; }
    bool operator==(const ArcSegment&) const = default;
};

// The unique arc [source, target] of a tree, as an ordered simple
// edge traversal. Degenerate when source == target.
class Arc {
  public:
    Arc(TreePoint source, TreePoint target, std::vector<ArcSegment> segments, Rational length)
        : source_(std::move(source)),
          target_(std::move(target)),
          segments_(std::move(segments)),
          length_(std::move(length)) {}

    const TreePoint& source() const { return source_; }
    const TreePoint& target() const { return target_; }
    const std::vector<ArcSegment>& segments() const { return segments_; }
    const Rational& length() const { return length_; }
    bool degenerate() const { return segments_.empty(); }

    std::optional<Germ> initial_germ() const;

    // Point at arclength s from the source, 0 <= s <= length.
    TreePoint point_at(const MetricTree& tree, const Rational& s) const;

    // Arclength position of p from the source, if p lies on the arc.
    std::optional<Rational> position_of(const MetricTree& tree, const TreePoint& p) const;

    bool contains(const MetricTree& tree, const TreePoint& p) const {
        return position_of(tree, p).has_value();
    }

    bool operator==(const Arc&) const = default;

  private:
    TreePoint source_;
    TreePoint target_;
    std::vector<ArcSegment> segments_;
    Rational length_;
};

Arc arc(const MetricTree& tree, const TreePoint& a, const TreePoint& b);

inline Rational distance(const MetricTree& tree, const TreePoint& a, const TreePoint& b) {
    return arc(tree, a, b).length();
}

}  // namespace dendrodyn
