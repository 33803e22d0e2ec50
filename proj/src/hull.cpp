#include "dendrodyn/hull.hpp"

#include "dendrodyn/errors.hpp"
#include "dendrodyn/tree_core.hpp"

namespace dendrodyn {

namespace {

std::vector<TreePoint> images_of(const PLTreeMap& f, std::span<const TreePoint> points) {
    std::vector<TreePoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(f(p));
    return out;
}

}  // namespace

HullExtension extend_through_hull(const PLTreeMap& f, std::span<const TreePoint> points, std::size_t piece_cap) {
    return iterated_extension(f, points, 1, piece_cap);
}

HullExtension iterated_extension(const PLTreeMap& f, std::span<const TreePoint> points, std::uint64_t n,
                                 std::size_t piece_cap) {
    if (n == 0) throw PreconditionError("iterated extension needs n >= 1");
    const MetricTree& tree = f.tree();
    const Subtree domain = connected_hull(tree, points);
    PLTreeMap map = retraction_map(f.tree_ptr(), domain);
    std::vector<TreePoint> current(points.begin(), points.end());
    Subtree target = domain;
    for (std::uint64_t i = 1; i <= n; ++i) {
        current = images_of(f, current);
        target = connected_hull(tree, current);
        map = compose(retraction_map(f.tree_ptr(), target), compose(f, map, piece_cap), piece_cap);
    }
    return HullExtension{domain, target, std::move(map)};
}

PeriodicInHull find_periodic_in_hull(const PLTreeMap& f, std::span<const TreePoint> points, std::uint64_t n,
                                     const PeriodicSearchOptions& options) {
    const MetricTree& tree = f.tree();
    const HullExtension ext = iterated_extension(f, points, n, options.piece_cap);
    if (!ext.target.includes(ext.domain)) {
        throw PreconditionError("ch(f^n(E)) does not contain ch(E)");
    }
    const PLTreeMap g = compose(retraction_map(f.tree_ptr(), ext.domain), ext.map, options.piece_cap);

    for (const auto& x : fixed_points(g).representatives(tree)) {
        if (evaluate_power(f, x, n) == x) return PeriodicInHull{x, 1, false};
    }

    // Every g-fixed point lies in a region where g is constant: look for
    // g-periodic points on which g and f^n agree along the whole orbit.
    PLTreeMap power = g;
    for (std::uint64_t k = 2; k <= options.max_multiplier; ++k) {
        power = compose(g, power, options.piece_cap);
        for (const auto& x : fixed_points(power).representatives(tree)) {
            TreePoint y = x;
            bool inside = true;
            for (std::uint64_t step = 1; step <= k && inside; ++step) {
                y = evaluate_power(f, y, n);
                inside = ext.domain.contains(y);
            }
            if (inside && y == x) return PeriodicInHull{x, k, true};
        }
    }
    throw InvariantError("no periodic point found in the hull although ch(f^n(E)) contains it");
}

}  // namespace dendrodyn
