#include "dendrodyn/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "dendrodyn/errors.hpp"

namespace dendrodyn {

namespace {

using Tree = std::shared_ptr<const MetricTree>;

Rational q(long n, long d = 1) { return make_rational(n, d); }

TreePoint vx(const MetricTree& t, const std::string& name) { return TreePoint::at_vertex(t.vertex_id(name)); }

// Map sending vertex v to sigma[v] and every edge isometrically onto the
// edge joining the images of its ends.
PLTreeMap isometric_map(const Tree& tree, const std::vector<VertexId>& sigma) {
    std::vector<TreePoint> vimg;
    for (auto v : sigma) vimg.push_back(TreePoint::at_vertex(v));
    std::vector<std::vector<Breakpoint>> pieces;
    for (EdgeId e : tree->edges()) {
        const auto& edge = tree->edge(e);
        pieces.push_back({{q(0), vimg[edge.first.index]}, {q(1), vimg[edge.second.index]}});
    }
    return PLTreeMap(tree, std::move(vimg), std::move(pieces));
}

// Per-edge breakpoint lists of f, for editing.
std::vector<std::vector<Breakpoint>> pieces_of(const PLTreeMap& f) {
    std::vector<std::vector<Breakpoint>> out;
    for (EdgeId e : f.tree().edges()) out.push_back(f.breakpoints(e));
    return out;
}

// Arm J_j: t in [0,1/2] runs along [p, x_j], t in [1/2,1] is the identity.
std::vector<Breakpoint> stretched_arm(const MetricTree& t, std::uint32_t j) {
    const EdgeId e = t.edge_id("J" + std::to_string(j));
    return {{q(0), vx(t, "p")}, {q(1, 2), TreePoint::on_edge(t, e, q(1, 2))}, {q(1), vx(t, "t" + std::to_string(j))}};
}

std::vector<Breakpoint> constant_piece(const TreePoint& p) { return {{q(0), p}, {q(1), p}}; }

}  // namespace

Tree star_dendrite(std::uint32_t k) {
    if (k < 2) throw PreconditionError("star_dendrite needs k >= 2");
    std::vector<std::string> names{"o", "p"};
    std::vector<MetricTree::EdgeSpec> edges{{"I", "o", "p", q(1)}};
    for (std::uint32_t j = 2; j <= k; ++j) {
        names.push_back("t" + std::to_string(j));
        edges.push_back({"J" + std::to_string(j), "o", names.back(), q(1, j)});
    }
    return std::make_shared<const MetricTree>(std::move(names), std::move(edges));
}

PLTreeMap arconbad_map(std::uint32_t k) {
    Tree tree = star_dendrite(k);
    const MetricTree& t = *tree;
    const TreePoint p = vx(t, "p");
    std::vector<TreePoint> vimg(t.vertex_count(), p);
    std::vector<std::vector<Breakpoint>> pieces{constant_piece(p)};
    for (std::uint32_t j = 2; j <= k; ++j) {
        vimg[t.vertex_id("t" + std::to_string(j)).index] = vx(t, "t" + std::to_string(j));
        pieces.push_back(stretched_arm(t, j));
    }
    return PLTreeMap(tree, std::move(vimg), std::move(pieces));
}

PLTreeMap arconbad1_map(std::uint32_t k) {
    if (k < 2 || k > 60) throw PreconditionError("arconbad1_map needs 2 <= k <= 60");
    std::vector<std::string> names{"o"};
    std::vector<MetricTree::EdgeSpec> edges;
    for (std::uint32_t j = 1; j <= k + 1; ++j) {
        names.push_back("y" + std::to_string(j));
        edges.push_back({"I" + std::to_string(j - 1), names[names.size() - 2], names.back(), q(1, 2L << (j - 1))});
    }
    names.push_back("p");
    edges.push_back({"tail", names[names.size() - 2], "p", q(1, 2L << k)});
    for (std::uint32_t j = 2; j <= k + 1; ++j) {
        names.push_back("t" + std::to_string(j));
        edges.push_back({"J" + std::to_string(j), "o", names.back(), q(1, j)});
    }
    Tree tree = std::make_shared<const MetricTree>(std::move(names), std::move(edges));
    const MetricTree& t = *tree;
    const TreePoint o = vx(t, "o"), p = vx(t, "p");

    std::vector<TreePoint> vimg(t.vertex_count(), o);
    vimg[t.vertex_id("o").index] = p;
    for (std::uint32_t j = 2; j <= k + 1; ++j) vimg[t.vertex_id("t" + std::to_string(j)).index] = vx(t, "t" + std::to_string(j));

    std::vector<std::vector<Breakpoint>> pieces(t.edge_count());
    pieces[t.edge_id("I0").index] = {{q(0), p}, {q(1), o}};
    for (std::uint32_t j = 1; j <= k; ++j) {
        pieces[t.edge_id("I" + std::to_string(j)).index] = {
            {q(0), o}, {q(1, 2), vx(t, "t" + std::to_string(j + 1))}, {q(1), o}};
    }
    pieces[t.edge_id("tail").index] = constant_piece(o);
    for (std::uint32_t j = 2; j <= k + 1; ++j) pieces[t.edge_id("J" + std::to_string(j)).index] = stretched_arm(t, j);
    return PLTreeMap(tree, std::move(vimg), std::move(pieces));
}

SpreadReport arconbad1_spread(const PLTreeMap& f, std::uint32_t k, std::size_t samples) {
    const MetricTree& t = f.tree();
    const EdgeId ik = t.edge_id("I" + std::to_string(k));
    const Rational radius = distance(t, TreePoint::at_vertex(t.edge(ik).first), vx(t, "p"));
    std::vector<TreePoint> images;
    for (std::size_t i = 0; i <= samples; ++i) {
        const TreePoint u = TreePoint::on_edge(t, ik, make_rational(static_cast<long>(i), static_cast<long>(samples)));
        images.push_back(f(f(u)));
    }
    Rational spread = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            Rational d = distance(t, images[i], images[j]);
            if (d > spread) {
                spread = d;
                bi = i;
                bj = j;
            }
        }
    }
    return SpreadReport{radius, spread, {images[bi], images[bj]}};
}

bool edgewise_continuous(const PLTreeMap& f) {
    const MetricTree& t = f.tree();
    for (EdgeId e : t.edges()) {
        const auto& bps = f.breakpoints(e);
        if (bps.front().image != f.vertex_image(t.edge(e).first)) return false;
        if (bps.back().image != f.vertex_image(t.edge(e).second)) return false;
        for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
            if (f.at(e, bps[i].t) != bps[i].image) return false;
            const Arc& a = f.piece_arc(e, i);
            if (a.source() != bps[i].image || a.target() != bps[i + 1].image) return false;
            if (!a.contains(t, f.at(e, (bps[i].t + bps[i + 1].t) / 2))) return false;
        }
    }
    return true;
}

PLTreeMap rotation_star(std::uint32_t arms, const Rational& arm_length) {
    if (arms < 2) throw PreconditionError("rotation_star needs at least two arms");
    if (arm_length <= 0) throw PreconditionError("arm length must be positive");
    std::vector<std::string> names{"c"};
    std::vector<MetricTree::EdgeSpec> edges;
    for (std::uint32_t i = 0; i < arms; ++i) {
        names.push_back("l" + std::to_string(i));
        edges.push_back({"a" + std::to_string(i), "c", names.back(), arm_length});
    }
    Tree tree = std::make_shared<const MetricTree>(std::move(names), std::move(edges));
    std::vector<VertexId> sigma{VertexId{0}};
    for (std::uint32_t i = 0; i < arms; ++i) sigma.push_back(VertexId{1 + (i + 1) % arms});
    return isometric_map(tree, sigma);
}

PLTreeMap odometer_tower(std::size_t depth, const OdometerType& periods) {
    if (depth == 0 || periods.depth() != depth) throw PreconditionError("odometer_tower needs one period per level");
    if (periods[0] < 2) throw PreconditionError("odometer_tower needs m_0 >= 2");
    if (depth > 30) throw PreconditionError("odometer_tower depth is limited to 30");
    std::vector<std::string> names{"r", "s"};
    std::vector<MetricTree::EdgeSpec> edges{{"st", "r", "s", q(1)}};
    auto vname = [](std::size_t level, std::uint64_t j) { return "v" + std::to_string(level) + "_" + std::to_string(j); };
    for (std::size_t level = 1; level <= depth; ++level) {
        for (std::uint64_t j = 0; j < periods[level - 1]; ++j) {
            names.push_back(vname(level, j));
            const std::string parent = level == 1 ? "r" : vname(level - 1, j % periods[level - 2]);
            edges.push_back({"e" + std::to_string(level) + "_" + std::to_string(j), parent, names.back(),
                             q(1, 1L << (level - 1))});
        }
    }
    Tree tree = std::make_shared<const MetricTree>(std::move(names), std::move(edges));
    std::vector<VertexId> sigma{tree->vertex_id("r"), tree->vertex_id("s")};
    for (std::size_t level = 1; level <= depth; ++level) {
        for (std::uint64_t j = 0; j < periods[level - 1]; ++j) {
            sigma.push_back(tree->vertex_id(vname(level, (j + 1) % periods[level - 1])));
        }
    }
    return isometric_map(tree, sigma);
}

namespace {

Tree unit_interval() {
    return std::make_shared<const MetricTree>(std::vector<std::string>{"a", "b"},
                                              std::vector<MetricTree::EdgeSpec>{{"e", "a", "b", q(1)}});
}

PLTreeMap interval_map(std::vector<std::pair<Rational, Rational>> graph) {
    Tree tree = unit_interval();
    const EdgeId e{0};
    std::vector<Breakpoint> bps;
    for (auto& [t, y] : graph) bps.push_back({t, TreePoint::on_edge(*tree, e, y)});
    std::vector<TreePoint> vimg{bps.front().image, bps.back().image};
    return PLTreeMap(tree, std::move(vimg), {std::move(bps)});
}

}  // namespace

PLTreeMap interval_flip() { return interval_map({{q(0), q(1)}, {q(1), q(0)}}); }
PLTreeMap shift_map() { return interval_map({{q(0), q(1, 2)}, {q(1), q(1)}}); }
PLTreeMap tent_map() { return interval_map({{q(0), q(0)}, {q(1, 2), q(1)}, {q(1), q(0)}}); }

namespace {

struct RawEdge {
    int a;
    int b;
    Rational length;
};

// Trees with symmetry: copies of a random rooted tree around a centre
// vertex or a centre edge, or an unstructured random tree.
std::pair<int, std::vector<RawEdge>> symmetric_random_tree(std::mt19937_64& rng) {
    static const Rational lengths[] = {q(1, 2), q(1), q(3, 2), q(2)};
    auto pick_length = [&] { return lengths[rng() % 4]; };
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    std::vector<RawEdge> edges;
    const int mode = pick(0, 2);
    if (mode == 2) {
        const int n = pick(2, 12);
        for (int i = 1; i < n; ++i) edges.push_back({pick(0, i - 1), i, rng() % 2 ? q(1) : q(2)});
        return {n, edges};
    }
    const int copies = mode == 0 ? pick(1, 4) : 2;
    const int size = mode == 0 ? pick(1, 11 / copies) : pick(1, 6);
    std::vector<int> parent(size, -1);
    std::vector<Rational> len(size);
    for (int i = 1; i < size; ++i) {
        parent[i] = pick(0, i - 1);
        len[i] = pick_length();
    }
    const Rational link = pick_length();
    const int offset = mode == 0 ? 1 : 0;
    for (int c = 0; c < copies; ++c) {
        const int base = offset + c * size;
        for (int i = 1; i < size; ++i) edges.push_back({base + parent[i], base + i, len[i]});
        if (mode == 0) edges.push_back({0, base, link});
    }
    if (mode == 1) edges.push_back({0, size, link});
    return {offset + copies * size, edges};
}

class AutomorphismSampler {
  public:
    AutomorphismSampler(int n, const std::vector<RawEdge>& edges) : adj_(n) {
        for (const auto& e : edges) {
            adj_[e.a].push_back({e.b, e.length});
            adj_[e.b].push_back({e.a, e.length});
        }
    }

    std::uint64_t count() const {
        auto centre = centres();
        if (centre.size() == 1) return count_at(centre[0], -1);
        const int u = centre[0], w = centre[1];
        std::uint64_t c = count_at(u, w) * count_at(w, u);
        return label(u, w) == label(w, u) ? 2 * c : c;
    }

    std::vector<int> sample(std::mt19937_64& rng) const {
        std::vector<int> sigma(adj_.size(), -1);
        auto centre = centres();
        if (centre.size() == 1) {
            map_subtree(centre[0], -1, centre[0], -1, sigma, rng);
        } else {
            const int u = centre[0], w = centre[1];
            if (label(u, w) == label(w, u) && rng() % 2) {
                map_subtree(u, w, w, u, sigma, rng);
                map_subtree(w, u, u, w, sigma, rng);
            } else {
                map_subtree(u, w, u, w, sigma, rng);
                map_subtree(w, u, w, u, sigma, rng);
            }
        }
        return sigma;
    }

  private:
    struct Nb {
        int to;
        Rational length;
    };
    std::vector<std::vector<Nb>> adj_;

    std::vector<int> centres() const {
        const int n = static_cast<int>(adj_.size());
        std::vector<int> degree(n);
        std::vector<int> layer;
        for (int v = 0; v < n; ++v) {
            degree[v] = static_cast<int>(adj_[v].size());
            if (degree[v] <= 1) layer.push_back(v);
        }
        int remaining = n;
        while (remaining > 2) {
            remaining -= static_cast<int>(layer.size());
            std::vector<int> next;
            for (int v : layer)
                for (const auto& nb : adj_[v])
                    if (--degree[nb.to] == 1) next.push_back(nb.to);
            layer = std::move(next);
        }
        std::sort(layer.begin(), layer.end());
        return layer;
    }

    // Canonical label of the subtree at v hanging away from `parent`.
    std::string label(int v, int parent) const {
        std::vector<std::string> parts;
        for (const auto& nb : adj_[v])
            if (nb.to != parent) parts.push_back(key(nb, v));
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (const auto& p : parts) out += p;
        return out + ")";
    }

    std::string key(const Nb& nb, int from) const { return to_string(nb.length) + label(nb.to, from); }

    std::uint64_t count_at(int v, int parent) const {
        std::map<std::string, std::uint64_t> groups;
        std::uint64_t c = 1;
        for (const auto& nb : adj_[v]) {
            if (nb.to == parent) continue;
            c *= count_at(nb.to, v);
            c *= ++groups[key(nb, v)];
        }
        return c;
    }

    void map_subtree(int a, int pa, int b, int pb, std::vector<int>& sigma, std::mt19937_64& rng) const {
        sigma[a] = b;
        std::map<std::string, std::vector<int>> from, to;
        for (const auto& nb : adj_[a])
            if (nb.to != pa) from[key(nb, a)].push_back(nb.to);
        for (const auto& nb : adj_[b])
            if (nb.to != pb) to[key(nb, b)].push_back(nb.to);
        for (auto& [k, sources] : from) {
            auto& targets = to.at(k);
            std::shuffle(targets.begin(), targets.end(), rng);
            for (std::size_t i = 0; i < sources.size(); ++i) map_subtree(sources[i], a, targets[i], b, sigma, rng);
        }
    }
};

}  // namespace

FiniteOrderInstance random_finite_order_map(std::uint64_t tree_seed, std::uint64_t order_seed) {
    std::mt19937_64 tree_rng(tree_seed);
    auto [n, raw] = symmetric_random_tree(tree_rng);

    // Shuffle vertex labels and edge orientations so that nothing downstream
    // can rely on the construction order.
    std::vector<int> relabel(n);
    for (int i = 0; i < n; ++i) relabel[i] = i;
    std::shuffle(relabel.begin(), relabel.end(), tree_rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<MetricTree::EdgeSpec> specs;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        int a = relabel[raw[i].a], b = relabel[raw[i].b];
        if (tree_rng() % 2) std::swap(a, b);
        specs.push_back({"e" + std::to_string(i), names[a], names[b], raw[i].length});
    }
    Tree tree = std::make_shared<const MetricTree>(names, std::move(specs));

    std::vector<RawEdge> relabelled;
    for (const auto& e : raw) relabelled.push_back({relabel[e.a], relabel[e.b], e.length});
    AutomorphismSampler sampler(n, relabelled);
    std::mt19937_64 order_rng(order_seed);
    const auto sigma = sampler.sample(order_rng);
    std::vector<VertexId> image;
    for (int v : sigma) image.push_back(VertexId{static_cast<std::uint32_t>(v)});
    return FiniteOrderInstance{isometric_map(tree, image), sampler.count()};
}

PLTreeMap random_folding(std::uint64_t seed) {
    const PLTreeMap base = random_finite_order_map(seed, seed * 0x9E3779B97F4A7C15ULL + 1).map;
    const MetricTree& t = base.tree();
    std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);
    auto vimg = base.vertex_images();
    auto pieces = pieces_of(base);

    if (rng() % 2 == 0) {
        const EdgeId e{static_cast<std::uint32_t>(rng() % t.edge_count())};
        const TreePoint a = vimg[t.edge(e).first.index], b = vimg[t.edge(e).second.index];
        const Arc target = arc(t, a, b);
        const Rational len = target.length();
        pieces[e.index] = {{q(0), a},
                           {q(1, 3), target.point_at(t, len * 2 / 3)},
                           {q(2, 3), target.point_at(t, len / 3)},
                           {q(1), b}};
    } else {
        std::vector<VertexId> leaves;
        for (VertexId v : t.vertices())
            if (t.degree(v) == 1) leaves.push_back(v);
        const VertexId leaf = leaves[rng() % leaves.size()];
        const EdgeId e = t.incident(leaf)[0];
        const VertexId other = t.opposite(e, leaf);
        const Arc target = arc(t, vimg[other.index], vimg[leaf.index]);
        vimg[leaf.index] = target.point_at(t, target.length() / 2);
        pieces[e.index] = {{q(0), vimg[t.edge(e).first.index]}, {q(1), vimg[t.edge(e).second.index]}};
    }
    return PLTreeMap(base.tree_ptr(), std::move(vimg), std::move(pieces));
}

const char* to_string(FixtureKind k) {
    switch (k) {
        case FixtureKind::star: return "star";
        case FixtureKind::arconbad: return "arconbad";
        case FixtureKind::arconbad1: return "arconbad1";
        case FixtureKind::interval: return "interval";
        case FixtureKind::rotation: return "rotation";
        case FixtureKind::tower: return "tower";
        case FixtureKind::shift: return "shift";
        case FixtureKind::tent: return "tent";
        case FixtureKind::random_finite_order: return "random_finite_order";
        case FixtureKind::random_folding: return "random_folding";
    }
    return "?";
}

std::optional<FixtureKind> parse_fixture_kind(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(FixtureKind::random_folding); ++i) {
        auto k = static_cast<FixtureKind>(i);
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

PLTreeMap make_fixture(const FixtureSpec& spec) {
    auto param = [&](std::size_t i, std::uint64_t fallback) {
        return i < spec.params.size() ? spec.params[i] : fallback;
    };
    auto small = [&](std::uint64_t v) {
        if (v > 4096) throw PreconditionError("fixture parameter too large");
        return static_cast<std::uint32_t>(v);
    };
    switch (spec.kind) {
        case FixtureKind::star: return PLTreeMap::identity(star_dendrite(small(param(0, 3))));
        case FixtureKind::arconbad: return arconbad_map(small(param(0, 3)));
        case FixtureKind::arconbad1: return arconbad1_map(small(param(0, 4)));
        case FixtureKind::interval: return interval_flip();
        case FixtureKind::rotation: return rotation_star(small(param(0, 3)), spec.length);
        case FixtureKind::tower: {
            const std::vector<std::uint64_t> periods = spec.params.empty() ? std::vector<std::uint64_t>{2, 4} : spec.params;
            return odometer_tower(periods.size(), OdometerType(periods));
        }
        case FixtureKind::shift: return shift_map();
        case FixtureKind::tent: return tent_map();
        case FixtureKind::random_finite_order:
            return random_finite_order_map(spec.seed, spec.seed * 0x9E3779B97F4A7C15ULL + 1).map;
        case FixtureKind::random_folding: return random_folding(spec.seed);
    }
    throw PreconditionError("unknown fixture kind");
}

}  // namespace dendrodyn
