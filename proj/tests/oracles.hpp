#pragma once

// Brute-force reference computations on a tree subdivided at given points.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "dendrodyn/arc.hpp"

namespace oracles {

using namespace dendrodyn;

struct Link {
    std::size_t to;
    EdgeId edge;
    Rational from_t;
    Rational to_t;
};

// The tree as a plain graph, with the given points inserted as extra nodes.
struct Subdivided {
    std::vector<TreePoint> nodes;
    std::vector<std::vector<Link>> adj;

    Subdivided(const MetricTree& tree, const std::vector<TreePoint>& marks) {
        for (auto v : tree.vertices()) nodes.push_back(TreePoint::at_vertex(v));
        for (const auto& m : marks) {
            if (std::find(nodes.begin(), nodes.end(), m) == nodes.end()) nodes.push_back(m);
        }
        adj.resize(nodes.size());
        for (auto e : tree.edges()) {
            std::vector<std::pair<Rational, std::size_t>> chain;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (auto t = nodes[i].param_on(tree, e)) chain.emplace_back(*t, i);
            }
            std::sort(chain.begin(), chain.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                const auto& [ta, na] = chain[i];
                const auto& [tb, nb] = chain[i + 1];
                adj[na].push_back({nb, e, ta, tb});
                adj[nb].push_back({na, e, tb, ta});
            }
        }
    }

    std::size_t node(const TreePoint& p) const {
        return static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), p) - nodes.begin());
    }

    // Every simple path between two nodes, as link sequences.
    std::vector<std::vector<Link>> all_paths(std::size_t a, std::size_t b) const {
        std::vector<std::vector<Link>> out;
        std::vector<Link> current;
        std::vector<bool> on(nodes.size(), false);
        std::function<void(std::size_t)> dfs = [&](std::size_t u) {
            if (u == b) {
                out.push_back(current);
                return;
            }
            on[u] = true;
            for (const auto& l : adj[u]) {
                if (on[l.to]) continue;
                current.push_back(l);
                dfs(l.to);
                current.pop_back();
            }
            on[u] = false;
        };
        dfs(a);
        return out;
    }

    // Number of connected components after deleting node x.
    std::size_t components_without(std::size_t x) const {
        std::vector<bool> seen(nodes.size(), false);
        seen[x] = true;
        std::size_t count = 0;
        for (std::size_t s = 0; s < nodes.size(); ++s) {
            if (seen[s]) continue;
            ++count;
            std::vector<std::size_t> stack{s};
            seen[s] = true;
            while (!stack.empty()) {
                auto u = stack.back();
                stack.pop_back();
                for (const auto& l : adj[u]) {
                    if (!seen[l.to]) {
                        seen[l.to] = true;
                        stack.push_back(l.to);
                    }
                }
            }
        }
        return count;
    }
};

// Arc segments from a link path, merging consecutive links on one edge.
inline std::vector<ArcSegment> merge_links(const std::vector<Link>& links) {
    std::vector<ArcSegment> out;
    for (const auto& l : links) {
        if (!out.empty() && out.back().edge == l.edge && out.back().to == l.from_t) {
            out.back().to = l.to_t;
        } else {
            out.push_back({l.edge, l.from_t, l.to_t});
        }
    }
    return out;
}

inline Rational segments_length(const MetricTree& tree, const std::vector<ArcSegment>& segs) {
    Rational total = 0;
    for (const auto& s : segs) total += abs(s.to - s.from) * tree.edge(s.edge).length;
    return total;
}

}  // namespace oracles
