#include "dendrodyn/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dendrodyn/errors.hpp"
#include "dendrodyn/tree_core.hpp"

namespace dendrodyn {

namespace {

std::uint64_t capped_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    const std::uint64_t g = std::gcd(a, b);
    const unsigned __int128 l = static_cast<unsigned __int128>(a / g) * b;
    if (l > cap) throw InconclusiveError("required power exceeds the cap of " + std::to_string(cap));
    return static_cast<std::uint64_t>(l);
}

// Germ of f at the vertex v along edge e, as a germ at f(v).
Germ image_germ(const PLTreeMap& f, VertexId v, EdgeId e) {
    const MetricTree& tree = f.tree();
    const auto& bps = f.breakpoints(e);
    const bool at_first = tree.edge(e).first == v;
    const TreePoint& from = at_first ? bps.front().image : bps.back().image;
    const TreePoint& next = at_first ? bps[1].image : bps[bps.size() - 2].image;
    auto g = arc(tree, from, next).initial_germ();
    if (!g) throw InvariantError("constant piece at a vertex of an injective map");
    return *g;
}

// Order of the germ permutation induced at a vertex fixed by h.
std::uint64_t germ_permutation_order(const PLTreeMap& h, VertexId v) {
    const MetricTree& tree = h.tree();
    const TreePoint base = TreePoint::at_vertex(v);
    const auto germs = germs_at(tree, base);
    std::map<Germ, Germ> perm;
    for (EdgeId e : tree.incident(v)) {
        const Germ from{e, tree.edge(e).first == v};
        perm.emplace(from, image_germ(h, v, e));
    }
    std::uint64_t order = 1;
    std::map<Germ, bool> seen;
    for (const auto& g : germs) {
        if (seen[g]) continue;
        std::uint64_t length = 0;
        Germ cur = g;
        do {
            seen[cur] = true;
            cur = perm.at(cur);
            ++length;
        } while (cur != g);
        order = std::lcm(order, length);
    }
    return order;
}

// Maximal arc through e whose interior vertices all have degree 2.
std::pair<TreePoint, TreePoint> topological_edge(const MetricTree& tree, EdgeId e) {
    auto walk = [&](VertexId v, EdgeId via) {
        while (tree.degree(v) == 2) {
            EdgeId next = tree.incident(v)[0] == via ? tree.incident(v)[1] : tree.incident(v)[0];
            v = tree.opposite(next, v);
            via = next;
        }
        return TreePoint::at_vertex(v);
    };
    return {walk(tree.edge(e).first, e), walk(tree.edge(e).second, e)};
}

// Midpoint of the first parameter gap of `s` on some edge.
std::optional<TreePoint> gap_point(const MetricTree& tree, const Subtree& s) {
    for (EdgeId e : tree.edges()) {
        std::vector<Interval> covered;
        if (s.contains_vertex(tree.edge(e).first)) covered.push_back({0, 0});
        for (const auto& iv : s.intervals(e)) covered.push_back(iv);
        if (s.contains_vertex(tree.edge(e).second)) covered.push_back({1, 1});
        Rational reach = 0;
        bool started = false;
        for (const auto& iv : covered) {
            if (started ? iv.lo > reach : iv.lo > 0) {
                return TreePoint::on_edge(tree, e, (reach + iv.lo) / 2);
            }
            started = true;
            reach = std::max(reach, iv.hi);
        }
        if (!started) return TreePoint::on_edge(tree, e, Rational(1, 2));
        if (reach < 1) return TreePoint::on_edge(tree, e, (reach + 1) / 2);
    }
    return std::nullopt;
}

struct OrbitShape {
    std::vector<TreePoint> orbit;  // x, f(x), ..., up to the first repeat
    std::optional<std::size_t> cycle_start;
};

OrbitShape trace_orbit(const PLTreeMap& f, const TreePoint& x, std::uint64_t steps) {
    OrbitShape out;
    std::map<TreePoint, std::size_t> seen;
    TreePoint z = x;
    for (std::uint64_t i = 0; i <= steps; ++i) {
        auto [it, fresh] = seen.emplace(z, out.orbit.size());
        if (!fresh) {
            out.cycle_start = it->second;
            return out;
        }
        out.orbit.push_back(z);
        z = f(z);
    }
    return out;
}

}  // namespace

std::optional<std::uint64_t> point_period(const PLTreeMap& f, const TreePoint& x, std::uint64_t max_period) {
    TreePoint z = x;
    for (std::uint64_t p = 1; p <= max_period; ++p) {
        z = f(z);
        if (z == x) return p;
    }
    return std::nullopt;
}

Subtree fixed_set(const PLTreeMap& f, std::uint64_t n, std::size_t piece_cap) {
    if (n == 0) throw PreconditionError("fixed_set needs n >= 1");
    return fixed_points(iterate(f, n, piece_cap));
}

Subtree periodic_union(const PLTreeMap& f, std::uint64_t n, std::size_t piece_cap) {
    return periodic_structure(f, n, 0, piece_cap).unions.back();
}

PeriodicStructure periodic_structure(const PLTreeMap& f, std::uint64_t n, std::uint64_t max_period,
                                     std::size_t piece_cap) {
    if (n == 0) throw PreconditionError("periodic structure needs n >= 1");
    const MetricTree& tree = f.tree();
    PeriodicStructure out;
    PLTreeMap power = f;
    Subtree acc = Subtree::empty(tree);
    for (std::uint64_t i = 1; i <= n; ++i) {
        if (i > 1) power = compose(f, power, piece_cap);
        out.fixed.push_back(fixed_points(power));
        acc.insert(tree, out.fixed.back());
        out.unions.push_back(acc);
    }
    if (max_period > 0) {
        for (VertexId v : tree.vertices()) out.vertex_periods.push_back(point_period(f, TreePoint::at_vertex(v), max_period));
    }
    return out;
}

const char* to_string(WitnessReason r) {
    switch (r) {
        case WitnessReason::non_injective: return "non_injective";
        case WitnessReason::non_periodic_cutpoint: return "non_periodic_cutpoint";
        case WitnessReason::escaping_orbit: return "escaping_orbit";
    }
    return "?";
}

RecurrenceVerdict decide_pointwise_recurrent(const PLTreeMap& f, const RecurrenceOptions& options) {
    const MetricTree& tree = f.tree();
    RecurrenceVerdict verdict;

    const auto inj = is_injective(f);
    if (!inj.injective) {
        const auto& [a, b] = *inj.witness;
        verdict.witness = RecurrenceWitness{WitnessReason::non_injective, a, b, 1, f(a), std::nullopt, std::nullopt};
        return verdict;
    }
    if (tree.edge_count() == 0) {
        verdict.pointwise_recurrent = true;
        verdict.identity_power = 1;
        return verdict;
    }

    // An embedding maps branchpoints to branchpoints, so it permutes them.
    std::vector<VertexId> branchpoints;
    for (VertexId v : tree.vertices())
        if (tree.degree(v) >= 3) branchpoints.push_back(v);

    std::uint64_t m0 = 1;
    for (VertexId v : branchpoints) {
        auto p = point_period(f, TreePoint::at_vertex(v), options.max_period);
        if (!p) {
            throw InconclusiveError("orbit of branchpoint " + tree.vertex_name(v) + " did not close within " +
                                    std::to_string(options.max_period) + " steps");
        }
        m0 = capped_lcm(m0, *p, options.power_cap);
    }
    const PLTreeMap h0 = iterate(f, m0, options.piece_cap);

    std::uint64_t k = 1;
    if (branchpoints.empty()) {
        // The tree is an arc; h0 either keeps or reverses its orientation.
        std::vector<VertexId> leaves;
        for (VertexId v : tree.vertices())
            if (tree.degree(v) == 1) leaves.push_back(v);
        const Arc whole = arc(tree, TreePoint::at_vertex(leaves[0]), TreePoint::at_vertex(leaves[1]));
        const auto s0 = whole.position_of(tree, h0.vertex_image(leaves[0]));
        const auto s1 = whole.position_of(tree, h0.vertex_image(leaves[1]));
        if (*s0 > *s1) k = 2;
    } else {
        for (VertexId v : branchpoints) k = capped_lcm(k, germ_permutation_order(h0, v), options.power_cap);
    }
    if (static_cast<unsigned __int128>(m0) * k > options.power_cap) {
        throw InconclusiveError("required power exceeds the cap of " + std::to_string(options.power_cap));
    }
    const std::uint64_t m = m0 * k;
    const PLTreeMap h = k == 1 ? h0 : iterate(h0, k, options.piece_cap);

    if (h.is_identity()) {
        std::uint64_t n = 1;
        for (VertexId v : tree.vertices()) {
            auto p = point_period(f, TreePoint::at_vertex(v), m);
            if (!p) throw InvariantError("vertex not periodic although f^" + std::to_string(m) + " is the identity");
            n = std::lcm(n, *p);
        }
        if (!iterate(f, n, options.piece_cap).is_identity()) {
            throw InvariantError("f^N is not the identity for N the lcm of vertex periods");
        }
        verdict.pointwise_recurrent = true;
        verdict.identity_power = n;
        return verdict;
    }

    // h maps every topological edge into itself, increasingly; any point it
    // moves is not periodic.
    auto x = gap_point(tree, fixed_points(h));
    if (!x) throw InvariantError("a map other than the identity fixes every point");
    const auto [start, end] = topological_edge(tree, x->edge());
    const bool moved_end = h(start) != start || h(end) != end;
    verdict.witness = RecurrenceWitness{moved_end ? WitnessReason::escaping_orbit : WitnessReason::non_periodic_cutpoint,
                                        *x, std::nullopt, m, h(*x), start, end};
    return verdict;
}

bool verify_witness(const PLTreeMap& f, const RecurrenceWitness& w) {
    const MetricTree& tree = f.tree();
    if (!w.point.valid_in(tree)) return false;
    if (w.reason == WitnessReason::non_injective) {
        return w.partner && *w.partner != w.point && w.partner->valid_in(tree) && f(w.point) == f(*w.partner) &&
               f(w.point) == w.image;
    }
    if (!w.arc_start || !w.arc_end || w.power == 0) return false;
    if (!is_injective(f).injective) return false;
    const Arc j = arc(tree, *w.arc_start, *w.arc_end);
    if (!j.contains(tree, w.point)) return false;
    const auto s = j.position_of(tree, evaluate_power(f, *w.arc_start, w.power));
    const auto e = j.position_of(tree, evaluate_power(f, *w.arc_end, w.power));
    if (!s || !e || !(*s < *e)) return false;
    const TreePoint hx = evaluate_power(f, w.point, w.power);
    return hx == w.image && hx != w.point;
}

ReturnResult returns_to_components(const PLTreeMap& f, const TreePoint& x, const TreePoint& y, std::uint64_t k,
                                   std::uint64_t horizon) {
    const MetricTree& tree = f.tree();
    if (x == y) throw PreconditionError("returns_to_components needs x != y");
    const Branch home{y, *arc(tree, y, x).initial_germ()};
    ReturnResult out;
    out.horizon = horizon;
    TreePoint z = x;
    for (std::uint64_t m = 1; m <= horizon; ++m) {
        z = evaluate_power(f, z, k);
        if (home.contains(tree, z)) {
            out.returned = true;
            out.step = m;
            return out;
        }
    }
    return out;
}

Branch forward_component(const PLTreeMap& f, std::uint64_t n, const TreePoint& x) {
    const TreePoint y = evaluate_power(f, x, n);
    if (y == x) throw PreconditionError("forward_component needs f^n(x) != x");
    return Branch{x, *arc(f.tree(), x, y).initial_germ()};
}

OmegaEstimate omega_limit_estimate(const PLTreeMap& f, const TreePoint& x, std::uint64_t burn_in,
                                   std::uint64_t window) {
    OmegaEstimate out;
    const OrbitShape shape = trace_orbit(f, x, burn_in + window);
    if (shape.cycle_start) {
        out.exact = true;
        out.points.assign(shape.orbit.begin() + static_cast<std::ptrdiff_t>(*shape.cycle_start), shape.orbit.end());
    } else {
        const auto first = std::min<std::size_t>(burn_in + 1, shape.orbit.size());
        out.points.assign(shape.orbit.begin() + static_cast<std::ptrdiff_t>(first), shape.orbit.end());
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

void PropertyReport::fail(std::string check, std::string detail, std::vector<TreePoint> points) {
    passed = false;
    failures.push_back({std::move(check), std::move(detail), std::move(points)});
}

std::vector<TreePoint> grid_samples(const MetricTree& tree, std::size_t per_edge) {
    std::vector<TreePoint> out;
    for (VertexId v : tree.vertices()) out.push_back(TreePoint::at_vertex(v));
    const long denom = static_cast<long>(per_edge) + 1;
    for (EdgeId e : tree.edges())
        for (long i = 1; i < denom; ++i) out.push_back(TreePoint::on_edge(tree, e, make_rational(i, denom)));
    return out;
}

PropertyReport check_property_A(const PLTreeMap& f, const std::vector<TreePoint>& samples,
                                const CheckOptions& options) {
    const MetricTree& tree = f.tree();
    PropertyReport report;
    report.name = "property_A";

    ++report.checked;
    const Subtree img = image(f);
    if (img != Subtree::whole(tree)) {
        report.fail("surjective", "f(X) is a proper subtree",
                    {complement_components(tree, img).front().representative(tree)});
    }

    std::vector<bool> done(tree.vertex_count(), false);
    for (VertexId v : tree.vertices()) {
        if (done[v.index]) continue;
        const TreePoint start = TreePoint::at_vertex(v);
        if (!point_period(f, start, options.max_period)) continue;
        std::vector<TreePoint> cycle{start};
        for (TreePoint z = f(start); z != start; z = f(z)) cycle.push_back(z);
        for (const auto& p : cycle)
            if (p.is_vertex()) done[p.vertex().index] = true;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            ++report.checked;
            const TreePoint& pred = cycle[(i + cycle.size() - 1) % cycle.size()];
            const Subtree pre = preimage(f, cycle[i]);
            if (pre == Subtree::of_point(tree, pred)) continue;
            for (const auto& y : pre.representatives(tree)) {
                if (y != pred) {
                    report.fail("fully_invariant", "a point off the periodic orbit maps onto it", {y, cycle[i]});
                    break;
                }
            }
        }
    }

    for (const auto& x : samples) {
        ++report.checked;
        const OrbitShape shape = trace_orbit(f, x, options.max_period + options.horizon);
        if (shape.cycle_start && *shape.cycle_start > 0) {
            report.fail("grand_orbit", "eventually periodic point off its limit cycle",
                        {x, shape.orbit[*shape.cycle_start]});
        }
    }
    return report;
}

PropertyReport check_no_preperiodic(const PLTreeMap& f, const std::vector<TreePoint>& samples,
                                    const CheckOptions& options) {
    const MetricTree& tree = f.tree();
    PropertyReport report;
    report.name = "no_preperiodic";
    for (const auto& x : samples) {
        ++report.checked;
        const OrbitShape shape = trace_orbit(f, x, options.max_period + options.horizon);
        if (!shape.cycle_start || *shape.cycle_start == 0) continue;
        const TreePoint& y = shape.orbit[*shape.cycle_start - 1];
        const std::uint64_t period = shape.orbit.size() - *shape.cycle_start;
        const TreePoint gy = evaluate_power(f, y, period);
        const Arc sep = arc(tree, y, gy);
        const TreePoint z = sep.point_at(tree, sep.length() / 2);
        const bool returns = returns_to_components(f, y, z, period, 2).returned;
        report.fail("preperiodic",
                    "g = f^" + std::to_string(period) + " sends y onto a g-fixed point beyond z" +
                        (returns ? " (separator check failed)" : ""),
                    {x, y, z});
    }
    return report;
}

PropertyReport check_imposs(const PLTreeMap& f, std::uint64_t n, const std::vector<TreePoint>& samples,
                            const CheckOptions& options) {
    const MetricTree& tree = f.tree();
    PropertyReport report;
    report.name = "imposs";
    try {
        RecurrenceOptions ro;
        ro.piece_cap = options.piece_cap;
        report.applicable = decide_pointwise_recurrent(f, ro).pointwise_recurrent;
    } catch (const std::runtime_error&) {
        report.applicable = false;
    }
    const auto anchors = fixed_set(f, n, options.piece_cap).representatives(tree);
    for (const auto& t : samples) {
        const TreePoint ft = evaluate_power(f, t, n);
        if (ft == t) {
            report.checked += anchors.size();
            continue;
        }
        for (const auto& x : anchors) {
            ++report.checked;
            if (x == t) continue;
            if (arc(tree, x, ft).contains(tree, t)) {
                report.fail("imposs", "[x', t] lies inside [x', f^n(t))", {x, t, ft});
            }
        }
    }
    return report;
}

PropertyReport check_escape(const PLTreeMap& f, std::uint64_t n, const std::vector<TreePoint>& samples,
                            const CheckOptions& options) {
    const MetricTree& tree = f.tree();
    PropertyReport report;
    report.name = "escape";
    try {
        PLTreeMap power = f;
        for (std::uint64_t i = 1; i <= options.max_period && report.applicable; ++i) {
            if (i > 1) power = compose(f, power, options.piece_cap);
            for (const auto& p : fixed_points(power).representatives(tree)) {
                if (order_of(tree, p).count >= 2) {
                    report.applicable = false;
                    break;
                }
            }
        }
    } catch (const ResourceError&) {
        report.applicable = false;
    }
    if (!report.applicable) return report;

    for (const auto& x : samples) {
        const TreePoint fx = evaluate_power(f, x, n);
        if (fx == x) continue;
        ++report.checked;
        const Branch ahead{x, *arc(tree, x, fx).initial_germ()};
        TreePoint z = fx;
        for (std::uint64_t m = 1; m <= options.horizon; ++m) {
            if (z != x && !ahead.contains(tree, z)) {
                report.fail("escape", "f^n-orbit left A_{f^n}(x)", {x, z});
                break;
            }
            z = evaluate_power(f, z, n);
        }
    }
    return report;
}

}  // namespace dendrodyn
