#include "dendrodyn/tree_core.hpp"

#include "dendrodyn/errors.hpp"

namespace dendrodyn {

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::endpoint: return "endpoint";
        case PointClass::cutpoint: return "cutpoint";
        case PointClass::branchpoint: return "branchpoint";
    }
    return "?";
}

PointOrder order_of(const MetricTree& tree, const TreePoint& x) {
    if (!x.valid_in(tree)) throw StructuralError("point not in tree");
    PointOrder out;
    out.count = germs_at(tree, x).size();
    if (out.count > 2) {
        out.kind = PointClass::branchpoint;
    } else if (out.count == 2) {
        out.kind = PointClass::cutpoint;
    }
    return out;
}

std::vector<Branch> components_minus_point(const MetricTree& tree, const TreePoint& x) {
    if (!x.valid_in(tree)) throw StructuralError("point not in tree");
    std::vector<Branch> out;
    for (const Germ& g : germs_at(tree, x)) out.push_back(Branch{x, g});
    return out;
}

bool separates(const MetricTree& tree, const TreePoint& x, const TreePoint& a, const TreePoint& b) {
    if (x == a || x == b) throw PreconditionError("separating point coincides with an endpoint");
    return arc(tree, a, b).contains(tree, x);
}

Subtree connected_hull(const MetricTree& tree, std::span<const TreePoint> points) {
    if (points.empty()) throw PreconditionError("connected hull of an empty set");
    Subtree hull = Subtree::of_point(tree, points.front());
    for (const auto& p : points.subspan(1)) hull.insert(tree, arc(tree, points.front(), p));
    return hull;
}

TreePoint retract(const MetricTree& tree, const Subtree& y, const TreePoint& z) {
    if (y.is_empty() || !y.is_connected(tree)) throw StructuralError("retraction target must be connected and non-empty");
    if (y.contains(z)) return z;
    const TreePoint anchor = y.representatives(tree).front();
    const Arc path = arc(tree, z, anchor);
    const auto hit = y.first_hit(tree, path);
    if (!hit) throw InvariantError("retraction found no point of the target on the arc");
    return path.point_at(tree, *hit);
}

}  // namespace dendrodyn
