#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dendrodyn/pl_map.hpp"

namespace testsupport {

using namespace dendrodyn;

inline Rational q(long n, long d = 1) { return make_rational(n, d); }

inline std::shared_ptr<const MetricTree> tree_of(std::vector<std::string> names,
                                                 std::vector<MetricTree::EdgeSpec> edges) {
    return std::make_shared<const MetricTree>(std::move(names), std::move(edges));
}

// Path v0 - v1 - ... - v{n} with unit edges e0..e{n-1}.
inline std::shared_ptr<const MetricTree> path_tree(int edges) {
    std::vector<std::string> names;
    std::vector<MetricTree::EdgeSpec> specs;
    for (int i = 0; i <= edges; ++i) names.push_back("v" + std::to_string(i));
    for (int i = 0; i < edges; ++i) {
        specs.push_back({"e" + std::to_string(i), names[i], names[i + 1], q(1)});
    }
    return tree_of(names, specs);
}

// Centre c, leaves a, b, d, unit edges ca, cb, cd (each from c).
inline std::shared_ptr<const MetricTree> s3() {
    return tree_of({"c", "a", "b", "d"}, {{"ca", "c", "a", q(1)}, {"cb", "c", "b", q(1)}, {"cd", "c", "d", q(1)}});
}

inline TreePoint V(const MetricTree& t, const std::string& name) { return TreePoint::at_vertex(t.vertex_id(name)); }
inline TreePoint P(const MetricTree& t, const std::string& edge, const Rational& s) {
    return TreePoint::on_edge(t, t.edge_id(edge), s);
}

// Map from per-edge breakpoint lists; vertex images are read off the ends.
inline PLTreeMap map_of(std::shared_ptr<const MetricTree> tree,
                        std::vector<std::vector<std::pair<Rational, TreePoint>>> pieces) {
    std::vector<TreePoint> vimg(tree->vertex_count(), TreePoint::at_vertex(VertexId{0}));
    std::vector<bool> seen(tree->vertex_count(), false);
    std::vector<std::vector<Breakpoint>> bps;
    for (std::size_t e = 0; e < pieces.size(); ++e) {
        const auto& edge = tree->edge(EdgeId{static_cast<std::uint32_t>(e)});
        std::vector<Breakpoint> list;
        for (auto& [t, p] : pieces[e]) list.push_back({t, p});
        vimg[edge.first.index] = list.front().image;
        vimg[edge.second.index] = list.back().image;
        seen[edge.first.index] = seen[edge.second.index] = true;
        bps.push_back(std::move(list));
    }
    return PLTreeMap(tree, std::move(vimg), std::move(bps));
}

inline std::shared_ptr<const MetricTree> unit_interval() { return path_tree(1); }

// T on [0,1]: 0 -> 0, 1/2 -> 1, 1 -> 0.
inline PLTreeMap tent() {
    auto t = unit_interval();
    return map_of(t, {{{q(0), V(*t, "v0")}, {q(1, 2), V(*t, "v1")}, {q(1), V(*t, "v0")}}});
}

// S3 rotation a -> b -> d -> a.
inline PLTreeMap rho() {
    auto t = s3();
    return map_of(t, {{{q(0), V(*t, "c")}, {q(1), V(*t, "b")}},
                      {{q(0), V(*t, "c")}, {q(1), V(*t, "d")}},
                      {{q(0), V(*t, "c")}, {q(1), V(*t, "a")}}});
}

// Random tree on n vertices, vertex i > 0 attached to a random earlier one.
inline std::shared_ptr<const MetricTree> random_tree(std::mt19937_64& rng, int n) {
    std::vector<std::string> names;
    std::vector<MetricTree::EdgeSpec> specs;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (int i = 1; i < n; ++i) {
        int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
        long num = std::uniform_int_distribution<long>(1, 5)(rng);
        long den = std::uniform_int_distribution<long>(1, 3)(rng);
        if (rng() & 1) specs.push_back({"e" + std::to_string(i), names[parent], names[i], q(num, den)});
        else specs.push_back({"e" + std::to_string(i), names[i], names[parent], q(num, den)});
    }
    return tree_of(names, specs);
}

inline TreePoint random_point(std::mt19937_64& rng, const MetricTree& tree, long denom = 8) {
    if (tree.edge_count() == 0 || rng() % 3 == 0) {
        auto v = std::uniform_int_distribution<std::uint32_t>(0, tree.vertex_count() - 1)(rng);
        return TreePoint::at_vertex(VertexId{v});
    }
    auto e = std::uniform_int_distribution<std::uint32_t>(0, tree.edge_count() - 1)(rng);
    long k = std::uniform_int_distribution<long>(0, denom)(rng);
    return TreePoint::on_edge(tree, EdgeId{e}, q(k, denom));
}

// Random PL map: each vertex goes to a random point, each edge gets a few
// random interior breakpoints with random images.
inline PLTreeMap random_map(std::mt19937_64& rng, std::shared_ptr<const MetricTree> tree, int max_inner = 2) {
    std::vector<TreePoint> vimg;
    for (std::size_t i = 0; i < tree->vertex_count(); ++i) vimg.push_back(random_point(rng, *tree));
    std::vector<std::vector<Breakpoint>> bps;
    for (auto e : tree->edges()) {
        const auto& edge = tree->edge(e);
        std::vector<Breakpoint> list{{q(0), vimg[edge.first.index]}};
        int inner = std::uniform_int_distribution<int>(0, max_inner)(rng);
        for (int i = 1; i <= inner; ++i) list.push_back({q(i, inner + 1), random_point(rng, *tree)});
        list.push_back({q(1), vimg[edge.second.index]});
        bps.push_back(std::move(list));
    }
    return PLTreeMap(tree, std::move(vimg), std::move(bps));
}

}  // namespace testsupport
