#include <doctest.h>

#include "dendrodyn/errors.hpp"
#include "dendrodyn/tree_core.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dendrodyn;
using namespace testsupport;

TEST_CASE("tree construction rejects non-trees") {
    CHECK_THROWS_AS(MetricTree({}, {}), StructuralError);
    CHECK_THROWS_AS(MetricTree({"a", "b"}, {}), StructuralError);
    CHECK_THROWS_AS(MetricTree({"a", "b"}, {{"e", "a", "b", q(0)}}), StructuralError);
    CHECK_THROWS_AS(MetricTree({"a", "b"}, {{"e", "a", "c", q(1)}}), StructuralError);
    CHECK_THROWS_AS(MetricTree({"a", "a"}, {{"e", "a", "a", q(1)}}), StructuralError);
    CHECK_THROWS_AS(MetricTree({"a", "b", "c"}, {{"e", "a", "b", q(1)}, {"f", "b", "a", q(1)}}), StructuralError);
    CHECK_NOTHROW(MetricTree({"a"}, {}));
}

TEST_CASE("points are canonical") {
    auto t = path_tree(1);
    CHECK(P(*t, "e0", q(0)) == V(*t, "v0"));
    CHECK(P(*t, "e0", q(1)) == V(*t, "v1"));
    CHECK_FALSE(P(*t, "e0", q(1, 2)).is_vertex());
    CHECK_THROWS(P(*t, "e0", q(3, 2)));
}

TEST_CASE("arc examples") {
    auto path = path_tree(2);
    Arc a = arc(*path, V(*path, "v0"), V(*path, "v2"));
    REQUIRE(a.segments().size() == 2);
    CHECK(a.segments()[0] == ArcSegment{path->edge_id("e0"), q(0), q(1)});
    CHECK(a.segments()[1] == ArcSegment{path->edge_id("e1"), q(0), q(1)});
    CHECK(a.length() == 2);

    Arc d = arc(*path, P(*path, "e1", q(1, 3)), P(*path, "e1", q(1, 3)));
    CHECK(d.degenerate());
    CHECK(d.length() == 0);

    auto star = s3();
    Arc ab = arc(*star, V(*star, "a"), V(*star, "b"));
    CHECK(ab.length() == 2);
    CHECK(ab.contains(*star, V(*star, "c")));
    CHECK_FALSE(ab.contains(*star, P(*star, "cd", q(1, 2))));
}

TEST_CASE("arc matches brute-force path search on random trees") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 60; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 11));
        for (int k = 0; k < 15; ++k) {
            TreePoint a = random_point(rng, *tree);
            TreePoint b = random_point(rng, *tree);
            oracles::Subdivided g(*tree, {a, b});
            auto paths = g.all_paths(g.node(a), g.node(b));
            REQUIRE(paths.size() == 1);
            auto expected = oracles::merge_links(paths.front());
            Arc got = arc(*tree, a, b);
            CHECK(got.segments() == expected);
            CHECK(got.length() == oracles::segments_length(*tree, expected));

            // Sub-arc property.
            if (!got.degenerate()) {
                Rational s1 = got.length() / 3, s2 = got.length() * 3 / 4;
                TreePoint c = got.point_at(*tree, s1), d = got.point_at(*tree, s2);
                Arc cd = arc(*tree, c, d);
                CHECK(cd.length() == s2 - s1);
                CHECK(got.contains(*tree, cd.point_at(*tree, cd.length() / 2)));
            }
        }
    }
}

TEST_CASE("order_of examples and oracle") {
    auto star = s3();
    CHECK(order_of(*star, V(*star, "c")).count == 3);
    CHECK(order_of(*star, V(*star, "c")).kind == PointClass::branchpoint);
    CHECK(order_of(*star, V(*star, "a")).kind == PointClass::endpoint);
    auto mid = order_of(*star, P(*star, "ca", q(1, 2)));
    CHECK(mid.count == 2);
    CHECK(mid.kind == PointClass::cutpoint);

    std::mt19937_64 rng(5);
    for (int round = 0; round < 40; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 11));
        for (int k = 0; k < 10; ++k) {
            TreePoint x = random_point(rng, *tree);
            oracles::Subdivided g(*tree, {x});
            CHECK(order_of(*tree, x).count == g.components_without(g.node(x)));
        }
    }
}

TEST_CASE("components_minus_point partition") {
    auto star = s3();
    CHECK(components_minus_point(*star, V(*star, "c")).size() == 3);
    auto seg = path_tree(1);
    CHECK(components_minus_point(*seg, P(*seg, "e0", q(1, 2))).size() == 2);

    TreePoint m = P(*star, "ca", q(1, 2));
    auto parts = components_minus_point(*star, m);
    REQUIRE(parts.size() == 2);
    int toward_a = 0;
    for (const auto& b : parts) {
        if (b.contains(*star, V(*star, "a"))) {
            ++toward_a;
            CHECK_FALSE(b.contains(*star, V(*star, "b")));
        } else {
            CHECK(b.contains(*star, V(*star, "b")));
            CHECK(b.contains(*star, V(*star, "d")));
            CHECK(b.contains(*star, V(*star, "c")));
        }
    }
    CHECK(toward_a == 1);

    std::mt19937_64 rng(17);
    for (int round = 0; round < 30; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 11));
        TreePoint x = random_point(rng, *tree);
        auto comps = components_minus_point(*tree, x);
        Subtree united = Subtree::of_point(*tree, x);
        for (const auto& c : comps) {
            Subtree cl = c.closure(*tree);
            CHECK(cl.is_connected(*tree));
            CHECK(cl.contains(x));
            united.insert(*tree, cl);
        }
        CHECK(united == Subtree::whole(*tree));
        for (int k = 0; k < 10; ++k) {
            TreePoint y = random_point(rng, *tree);
            int hits = 0;
            for (const auto& c : comps) hits += c.contains(*tree, y) ? 1 : 0;
            CHECK(hits == (y == x ? 0 : 1));
        }
    }
}

TEST_CASE("separates") {
    auto path = path_tree(2);
    CHECK(separates(*path, V(*path, "v1"), V(*path, "v0"), V(*path, "v2")));
    auto star = s3();
    CHECK_FALSE(separates(*star, V(*star, "a"), V(*star, "c"), V(*star, "b")));
    CHECK(separates(*star, P(*star, "ca", q(1, 2)), V(*star, "a"), V(*star, "b")));
    CHECK_THROWS_AS(separates(*star, V(*star, "a"), V(*star, "a"), V(*star, "b")), PreconditionError);

    // Agrees with the component criterion.
    std::mt19937_64 rng(23);
    for (int round = 0; round < 200; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 8));
        TreePoint x = random_point(rng, *tree), a = random_point(rng, *tree), b = random_point(rng, *tree);
        if (x == a || x == b) continue;
        bool apart = true;
        for (const auto& c : components_minus_point(*tree, x)) {
            if (c.contains(*tree, a) && c.contains(*tree, b)) apart = false;
        }
        CHECK(separates(*tree, x, a, b) == apart);
    }
}

TEST_CASE("order additivity on random quadruples") {
    std::mt19937_64 rng(29);
    int tested = 0;
    for (int round = 0; round < 3000; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 6));
        TreePoint a = random_point(rng, *tree, 4), b = random_point(rng, *tree, 4);
        TreePoint c = random_point(rng, *tree, 4), d = random_point(rng, *tree, 4);
        if (a == b || b == c || c == d || a == c || b == d) continue;
        if (!separates(*tree, b, a, c) || !separates(*tree, c, b, d)) continue;
        ++tested;
        Arc ad = arc(*tree, a, d);
        CHECK(ad.contains(*tree, b));
        CHECK(ad.contains(*tree, c));
    }
    CHECK(tested > 0);
}

TEST_CASE("connected_hull") {
    auto star = s3();
    std::vector<TreePoint> leaves{V(*star, "a"), V(*star, "b"), V(*star, "d")};
    CHECK(connected_hull(*star, leaves) == Subtree::whole(*star));
    std::vector<TreePoint> one{P(*star, "cb", q(1, 3))};
    CHECK(connected_hull(*star, one) == Subtree::of_point(*star, one[0]));
    auto path = path_tree(2);
    std::vector<TreePoint> e{V(*path, "v0"), P(*path, "e1", q(1, 2))};
    CHECK(connected_hull(*path, e).total_length(*path) == q(3, 2));
    CHECK_THROWS_AS(connected_hull(*path, std::span<const TreePoint>{}), PreconditionError);

    std::mt19937_64 rng(31);
    for (int round = 0; round < 40; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 11));
        std::vector<TreePoint> pts;
        for (int k = 0; k < 4; ++k) pts.push_back(random_point(rng, *tree));
        Subtree hull = connected_hull(*tree, pts);
        CHECK(hull.is_connected(*tree));
        // Union of pairwise arcs oracle.
        Subtree unions = Subtree::of_point(*tree, pts[0]);
        for (const auto& x : pts)
            for (const auto& y : pts) unions.insert(*tree, arc(*tree, x, y));
        CHECK(hull == unions);
        auto reps = hull.representatives(*tree);
        for (const auto& x : reps) {
            for (const auto& y : reps) {
                Arc xy = arc(*tree, x, y);
                if (!xy.degenerate()) CHECK(hull.contains(xy.point_at(*tree, xy.length() / 3)));
            }
        }
    }
}

TEST_CASE("retract") {
    auto star = s3();
    Subtree y = Subtree::of_arc(*star, arc(*star, V(*star, "a"), V(*star, "c")));
    CHECK(retract(*star, y, V(*star, "b")) == V(*star, "c"));
    CHECK(retract(*star, y, P(*star, "ca", q(1, 4))) == P(*star, "ca", q(1, 4)));
    auto path = path_tree(2);
    TreePoint m = P(*path, "e0", q(1, 2));
    Subtree y2 = Subtree::of_arc(*path, arc(*path, V(*path, "v0"), m));
    CHECK(retract(*path, y2, V(*path, "v2")) == m);

    std::mt19937_64 rng(37);
    for (int round = 0; round < 40; ++round) {
        auto tree = random_tree(rng, 2 + static_cast<int>(rng() % 11));
        std::vector<TreePoint> pts{random_point(rng, *tree), random_point(rng, *tree)};
        Subtree hull = connected_hull(*tree, pts);
        for (int k = 0; k < 10; ++k) {
            TreePoint z = random_point(rng, *tree);
            TreePoint w = retract(*tree, hull, z);
            CHECK(hull.contains(w));
            CHECK(retract(*tree, hull, w) == w);
            // (w, z] misses Y: the closed arc meets Y only at w.
            Arc wz = arc(*tree, w, z);
            Subtree meet = Subtree::of_arc(*tree, wz).intersected(*tree, hull);
            CHECK(meet == Subtree::of_point(*tree, w));
        }
    }
}
