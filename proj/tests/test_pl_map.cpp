#include <doctest.h>

#include "dendrodyn/errors.hpp"
#include "dendrodyn/hull.hpp"
#include "dendrodyn/tree_core.hpp"
#include "support.hpp"

using namespace dendrodyn;
using namespace testsupport;

namespace {

std::vector<TreePoint> grid(const MetricTree& tree, long denom) {
    std::vector<TreePoint> out;
    for (auto v : tree.vertices()) out.push_back(TreePoint::at_vertex(v));
    for (auto e : tree.edges())
        for (long k = 1; k < denom; ++k) out.push_back(TreePoint::on_edge(tree, e, q(k, denom)));
    return out;
}

}  // namespace

TEST_CASE("evaluate examples") {
    PLTreeMap T = tent();
    const auto& t = T.tree();
    CHECK(T(P(t, "e0", q(1, 4))) == P(t, "e0", q(1, 2)));
    CHECK(T(P(t, "e0", q(3, 4))) == P(t, "e0", q(1, 2)));
    CHECK(T(P(t, "e0", q(1, 5))) == P(t, "e0", q(2, 5)));

    auto id = PLTreeMap::identity(s3());
    TreePoint x = P(id.tree(), "cb", q(2, 7));
    CHECK(id(x) == x);

    PLTreeMap r = rho();
    CHECK(r(P(r.tree(), "ca", q(1, 2))) == P(r.tree(), "cb", q(1, 2)));
}

TEST_CASE("construction validates continuity") {
    auto t = unit_interval();
    std::vector<TreePoint> vimg{V(*t, "v0"), V(*t, "v1")};
    CHECK_THROWS_AS(PLTreeMap(t, vimg, {{{q(0), V(*t, "v1")}, {q(1), V(*t, "v1")}}}), StructuralError);
    CHECK_THROWS_AS(PLTreeMap(t, vimg, {{{q(0), V(*t, "v0")}, {q(1, 2), V(*t, "v0")}}}), StructuralError);
    CHECK_THROWS_AS(PLTreeMap(t, vimg, {{{q(0), V(*t, "v0")}, {q(1, 2), V(*t, "v1")}, {q(1, 2), V(*t, "v1")},
                                         {q(1), V(*t, "v1")}}}),
                    StructuralError);
}

TEST_CASE("normal form merges collinear pieces") {
    auto t = unit_interval();
    PLTreeMap a = map_of(t, {{{q(0), V(*t, "v0")}, {q(1, 3), P(*t, "e0", q(1, 3))}, {q(1), V(*t, "v1")}}});
    CHECK(a.is_identity());
    CHECK(a == PLTreeMap::identity(t));
    PLTreeMap b = map_of(t, {{{q(0), V(*t, "v0")}, {q(1, 3), P(*t, "e0", q(1, 2))}, {q(1), V(*t, "v1")}}});
    CHECK_FALSE(b.is_identity());
    CHECK(b.breakpoints(EdgeId{0}).size() == 3);
}

TEST_CASE("compose and iterate examples") {
    PLTreeMap T = tent();
    const auto& t = T.tree();
    PLTreeMap T2 = iterate(T, 2);
    CHECK(T2(P(t, "e0", q(1, 8))) == P(t, "e0", q(1, 2)));
    CHECK(T2.breakpoints(EdgeId{0}).size() == 5);
    CHECK(iterate(T, 1) == T);
    CHECK(iterate(rho(), 3).is_identity());
    CHECK_FALSE(iterate(rho(), 2).is_identity());
    CHECK(iterate(T, 0).is_identity());
    CHECK_THROWS_AS(iterate(T, 30, 1000), ResourceError);
}

TEST_CASE("composition soundness on random maps") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 40; ++round) {
        auto tree = random_tree(rng, 1 + static_cast<int>(rng() % 7));
        PLTreeMap f = random_map(rng, tree);
        PLTreeMap g = random_map(rng, tree);
        PLTreeMap gf = compose(g, f);
        for (int k = 0; k < 100; ++k) {
            TreePoint x = random_point(rng, *tree, 97);
            CHECK(gf(x) == g(f(x)));
        }
        PLTreeMap f3 = iterate(f, 3);
        for (int k = 0; k < 20; ++k) {
            TreePoint x = random_point(rng, *tree, 31);
            CHECK(f3(x) == evaluate_power(f, x, 3));
        }
    }
}

TEST_CASE("image_of_arc") {
    PLTreeMap T = tent();
    const auto& t = T.tree();
    CHECK(image_of_arc(T, arc(t, V(t, "v0"), V(t, "v1"))) == Subtree::whole(t));
    CHECK(image(T) == Subtree::whole(t));

    auto star = s3();
    auto id = PLTreeMap::identity(star);
    Arc i = arc(*star, V(*star, "a"), P(*star, "cd", q(1, 3)));
    CHECK(image_of_arc(id, i) == Subtree::of_arc(*star, i));

    PLTreeMap r = rho();
    const auto& rt = r.tree();
    Subtree got = image_of_arc(r, arc(rt, V(rt, "a"), P(rt, "cb", q(1, 2))));
    Subtree expected = Subtree::of_arc(rt, arc(rt, V(rt, "b"), V(rt, "c")));
    expected.insert(rt, arc(rt, V(rt, "c"), P(rt, "cd", q(1, 2))));
    CHECK(got == expected);

    std::mt19937_64 rng(43);
    for (int round = 0; round < 40; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 7));
        PLTreeMap f = random_map(rng, tree);
        Arc a = arc(*tree, random_point(rng, *tree), random_point(rng, *tree));
        Subtree img = image_of_arc(f, a);
        CHECK(img.is_connected(*tree));
        for (long k = 0; k <= 24; ++k) {
            if (a.degenerate()) break;
            CHECK(img.contains(f(a.point_at(*tree, a.length() * q(k, 24)))));
        }
    }
}

TEST_CASE("injectivity") {
    PLTreeMap T = tent();
    auto rep = is_injective(T);
    CHECK_FALSE(rep.injective);
    REQUIRE(rep.witness);
    CHECK(rep.witness->first != rep.witness->second);
    CHECK(T(rep.witness->first) == T(rep.witness->second));
    CHECK(is_injective(rho()).injective);

    std::mt19937_64 rng(47);
    int injective_seen = 0;
    for (int round = 0; round < 300; ++round) {
        auto tree = random_tree(rng, 1 + static_cast<int>(rng() % 5));
        PLTreeMap f = random_map(rng, tree, static_cast<int>(rng() % 2));
        auto r = is_injective(f);
        if (!r.injective) {
            REQUIRE(r.witness);
            CHECK(r.witness->first != r.witness->second);
            CHECK(f(r.witness->first) == f(r.witness->second));
        } else {
            ++injective_seen;
            for (const auto& x : grid(*tree, 12)) CHECK(preimage(f, f(x)) == Subtree::of_point(*tree, x));
        }
    }
    CHECK(injective_seen > 0);
}

TEST_CASE("fixed points") {
    PLTreeMap T = tent();
    const auto& t = T.tree();
    Subtree expected = Subtree::of_point(t, V(t, "v0"));
    expected.insert(t, P(t, "e0", q(2, 3)));
    CHECK(fixed_points(T) == expected);
    CHECK(fixed_points(rho()) == Subtree::of_point(rho().tree(), V(rho().tree(), "c")));
    CHECK(fixed_points(PLTreeMap::identity(s3())) == Subtree::whole(*s3()));

    std::mt19937_64 rng(53);
    for (int round = 0; round < 200; ++round) {
        auto tree = random_tree(rng, 1 + static_cast<int>(rng() % 7));
        PLTreeMap f = random_map(rng, tree);
        Subtree fix = fixed_points(f);
        CHECK_FALSE(fix.is_empty());
        for (const auto& x : fix.representatives(*tree)) CHECK(f(x) == x);
        for (const auto& x : grid(*tree, 24)) CHECK(fix.contains(x) == (f(x) == x));
    }
}

TEST_CASE("retraction map agrees with retract") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 40; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 9));
        std::vector<TreePoint> pts{random_point(rng, *tree), random_point(rng, *tree), random_point(rng, *tree)};
        Subtree y = connected_hull(*tree, pts);
        PLTreeMap p = retraction_map(tree, y);
        for (const auto& z : grid(*tree, 10)) CHECK(p(z) == retract(*tree, y, z));
    }
}

TEST_CASE("hull extensions") {
    PLTreeMap r = rho();
    const auto& rt = r.tree();
    std::vector<TreePoint> leaves{V(rt, "a"), V(rt, "b"), V(rt, "d")};
    auto ext = extend_through_hull(r, leaves);
    CHECK(ext.domain == Subtree::whole(rt));
    CHECK(ext.map == r);
    CHECK(iterated_extension(r, leaves, 3).map.is_identity());

    PLTreeMap T = tent();
    const auto& t = T.tree();
    std::vector<TreePoint> e{V(t, "v0"), P(t, "e0", q(1, 2))};
    auto et = extend_through_hull(T, e);
    CHECK(et.target == Subtree::whole(t));
    for (long k = 0; k <= 16; ++k) {
        TreePoint x = TreePoint::on_edge(t, EdgeId{0}, q(k, 32));
        CHECK(et.map(x) == T(x));
    }
    // {0, 1} alone collapses to {0}; quarter points keep the hull [0, 1].
    std::vector<TreePoint> ends{V(t, "v0"), P(t, "e0", q(1, 4)), P(t, "e0", q(1, 2)), P(t, "e0", q(3, 4)), V(t, "v1")};
    CHECK(iterated_extension(T, ends, 1).target == Subtree::whole(t));
    CHECK(iterated_extension(T, ends, 2).map == iterate(T, 2));

    // Pointwise oracle: F_n(y) = p_{Z_n} f ... p_{Z_1} f (y) on Y.
    std::mt19937_64 rng(61);
    for (int round = 0; round < 40; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 6));
        PLTreeMap f = random_map(rng, tree, 1);
        std::vector<TreePoint> pts{random_point(rng, *tree), random_point(rng, *tree), random_point(rng, *tree)};
        std::uint64_t n = 1 + rng() % 3;
        auto fn = iterated_extension(f, pts, n);
        std::vector<Subtree> hulls;
        std::vector<TreePoint> cur = pts;
        for (std::uint64_t i = 0; i < n; ++i) {
            for (auto& p : cur) p = f(p);
            hulls.push_back(connected_hull(*tree, cur));
        }
        CHECK(fn.target == hulls.back());
        for (const auto& y : fn.domain.representatives(*tree)) {
            TreePoint z = y;
            for (const auto& h : hulls) z = retract(*tree, h, f(z));
            CHECK(fn.map(y) == z);
        }
        // Agreement with f^n on T_n.
        for (const auto& y : grid(*tree, 12)) {
            if (!fn.domain.contains(y)) continue;
            TreePoint z = y;
            bool stays = true;
            for (const auto& h : hulls) {
                z = f(z);
                stays = stays && h.contains(z);
            }
            if (stays) CHECK(fn.map(y) == z);
        }
    }
}

TEST_CASE("periodic point in a hull") {
    PLTreeMap T = tent();
    const auto& t = T.tree();
    std::vector<TreePoint> ends{V(t, "v0"), P(t, "e0", q(1, 4)), P(t, "e0", q(1, 2)), P(t, "e0", q(3, 4)), V(t, "v1")};
    std::vector<TreePoint> collapsing{V(t, "v0"), V(t, "v1")};
    CHECK_THROWS_AS(find_periodic_in_hull(T, collapsing, 1), PreconditionError);
    auto p1 = find_periodic_in_hull(T, ends, 1);
    CHECK((p1.point == V(t, "v0") || p1.point == P(t, "e0", q(2, 3))));
    auto p2 = find_periodic_in_hull(T, ends, 2);
    std::vector<TreePoint> allowed{V(t, "v0"), P(t, "e0", q(2, 5)), P(t, "e0", q(2, 3)), P(t, "e0", q(4, 5))};
    CHECK(std::find(allowed.begin(), allowed.end(), p2.point) != allowed.end());

    PLTreeMap r = rho();
    const auto& rt = r.tree();
    std::vector<TreePoint> leaves{V(rt, "a"), V(rt, "b"), V(rt, "d")};
    CHECK(find_periodic_in_hull(r, leaves, 1).point == V(rt, "c"));

    std::vector<TreePoint> bad{P(t, "e0", q(1, 8)), P(t, "e0", q(1, 4))};
    PLTreeMap contract = map_of(T.tree_ptr(), {{{q(0), V(t, "v0")}, {q(1), P(t, "e0", q(1, 2))}}});
    CHECK_THROWS_AS(find_periodic_in_hull(contract, bad, 1), PreconditionError);
}

TEST_CASE("hull hypothesis without an f^n-fixed point in the hull") {
    // a <-> b on S3, everything else pushed onto the third arm: ch(f(E)) = ch(E)
    // for E = {a, b}, yet f has no fixed point in ch(E).
    auto t = s3();
    TreePoint m = P(*t, "cd", q(1, 2));
    PLTreeMap f = map_of(t, {{{q(0), m}, {q(1), V(*t, "b")}}, {{q(0), m}, {q(1), V(*t, "a")}}, {{q(0), m}, {q(1), m}}});
    std::vector<TreePoint> e{V(*t, "a"), V(*t, "b")};
    auto found = find_periodic_in_hull(f, e, 1);
    CHECK(found.fallback_used);
    CHECK(found.multiplier == 2);
    CHECK(evaluate_power(f, found.point, 2) == found.point);
    Subtree y = connected_hull(*t, e);
    CHECK(y.contains(found.point));
    CHECK(y.contains(f(found.point)));
    CHECK(fixed_points(f).intersected(*t, y).is_empty());
}
