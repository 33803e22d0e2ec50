#pragma once

#include <span>
#include <vector>

#include "dendrodyn/subtree.hpp"

namespace dendrodyn {

enum class PointClass { endpoint, cutpoint, branchpoint };

const char* to_string(PointClass c);

struct PointOrder {
    std::size_t count = 0;
    PointClass kind = PointClass::endpoint;
};

// Number of components of X \ {x} and the resulting class. A single-vertex
// tree has order 0, reported as an endpoint.
PointOrder order_of(const MetricTree& tree, const TreePoint& x);

// The components of X \ {x}; each closure is the component plus x.
std::vector<Branch> components_minus_point(const MetricTree& tree, const TreePoint& x);

// True iff x lies strictly inside [a, b]. Requires a != x != b.
bool separates(const MetricTree& tree, const TreePoint& x, const TreePoint& a, const TreePoint& b);

// Smallest connected set containing every point of `points` (non-empty).
Subtree connected_hull(const MetricTree& tree, std::span<const TreePoint> points);

// The retraction p_Y: z itself when z is in Y, otherwise the unique w in Y
// with (w, z] disjoint from Y. Y must be connected and non-empty.
TreePoint retract(const MetricTree& tree, const Subtree& y, const TreePoint& z);

}  // namespace dendrodyn
