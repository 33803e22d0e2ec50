#include <doctest.h>

#include <set>

#include "dendrodyn/errors.hpp"
#include "dendrodyn/fixtures.hpp"
#include "dendrodyn/tree_core.hpp"
#include "support.hpp"

using namespace dendrodyn;
using testsupport::P;
using testsupport::q;
using testsupport::V;

TEST_CASE("star dendrite") {
    auto s3 = star_dendrite(3);
    CHECK(s3->vertex_count() == 4);
    CHECK(s3->edge_count() == 3);
    CHECK(star_dendrite(2)->edge_count() == 2);
    auto s5 = star_dendrite(5);
    std::vector<Rational> arms;
    for (int j = 2; j <= 5; ++j) arms.push_back(s5->edge(s5->edge_id("J" + std::to_string(j))).length);
    CHECK(arms == std::vector<Rational>{q(1, 2), q(1, 3), q(1, 4), q(1, 5)});
    CHECK_THROWS_AS(star_dendrite(1), PreconditionError);
}

TEST_CASE("arconbad fixed set") {
    for (std::uint32_t k : {3u, 5u, 8u}) {
        PLTreeMap f = arconbad_map(k);
        const auto& t = f.tree();
        Subtree fix = fixed_set(f, 1);
        Subtree expected = Subtree::of_point(t, V(t, "p"));
        for (std::uint32_t j = 2; j <= k; ++j) expected.insert(t, t.edge_id("J" + std::to_string(j)), q(1, 2), q(1));
        CHECK(fix == expected);
        CHECK_FALSE(fix.contains(V(t, "o")));
        Rational nearest = 100;
        for (const auto& c : fix.components(t)) {
            for (const auto& x : c.representatives(t)) nearest = std::min(nearest, distance(t, V(t, "o"), x));
        }
        CHECK(nearest == q(1, 2 * k));
        CHECK_FALSE(is_injective(f).injective);
        CHECK_FALSE(decide_pointwise_recurrent(f).pointwise_recurrent);
    }
}

TEST_CASE("arconbad1 truncation") {
    PLTreeMap f = arconbad1_map(4);
    const auto& t = f.tree();
    CHECK(edgewise_continuous(f));
    Arc i1 = arc(t, V(t, "y1"), V(t, "y2"));
    CHECK(image_of_arc(f, i1) == Subtree::of_arc(t, arc(t, V(t, "o"), V(t, "t2"))));
    for (std::uint32_t j = 1; j <= 4; ++j) {
        Arc ij = arc(t, V(t, "y" + std::to_string(j)), V(t, "y" + std::to_string(j + 1)));
        CHECK(distance(t, V(t, "y" + std::to_string(j)), V(t, "p")) == q(1, 1L << j));
        CHECK(image_of_arc(f, ij) == Subtree::of_arc(t, arc(t, V(t, "o"), V(t, "t" + std::to_string(j + 1)))));
    }
    CHECK(image_of_arc(f, arc(t, V(t, "o"), V(t, "y1"))) == Subtree::of_arc(t, arc(t, V(t, "o"), V(t, "p"))));
    auto spread = arconbad1_spread(f, 4);
    CHECK(spread.radius == q(1, 16));
    CHECK(spread.spread >= q(1, 3));
    CHECK(f(f(V(t, "p"))) == V(t, "p"));
}

TEST_CASE("rotation star") {
    PLTreeMap r5 = rotation_star(5, q(2, 3));
    auto v = decide_pointwise_recurrent(r5);
    CHECK(v.identity_power == 5u);
    const auto& t = r5.tree();
    auto o = omega_limit_estimate(r5, V(t, "l0"), 0, 10);
    CHECK(o.exact);
    CHECK(o.points.size() == 5);
    CHECK(decide_pointwise_recurrent(rotation_star(2)).identity_power == 2u);
}

TEST_CASE("odometer tower vertex periods") {
    PLTreeMap f = odometer_tower(2, OdometerType({2, 4}));
    const auto& t = f.tree();
    CHECK(point_period(f, V(t, "r"), 10) == 1u);
    CHECK(point_period(f, V(t, "v1_1"), 10) == 2u);
    for (int j = 0; j < 4; ++j) CHECK(point_period(f, V(t, "v2_" + std::to_string(j)), 10) == 4u);
    for (const auto& name : {"r", "v1_0", "v1_1"}) CHECK(order_of(t, V(t, name)).count >= 3);
    CHECK_THROWS_AS(odometer_tower(2, OdometerType({2})), PreconditionError);
}

TEST_CASE("random finite-order maps") {
    bool nontrivial = false, trivial = false;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto inst = random_finite_order_map(seed, seed + 1000);
        CHECK(inst.map.tree().vertex_count() <= 12);
        auto v = decide_pointwise_recurrent(inst.map);
        REQUIRE(v.pointwise_recurrent);
        CHECK(inst.automorphism_count % *v.identity_power == 0);
        CHECK(iterate(inst.map, *v.identity_power).is_identity());
        (*v.identity_power > 1 ? nontrivial : trivial) = true;
    }
    CHECK(nontrivial);
    CHECK(trivial);
}

TEST_CASE("automorphism counts on small trees") {
    // S3 with equal arms: |Aut| = 6. A path of two equal edges: 2.
    bool saw_six = false;
    for (std::uint64_t seed = 0; seed < 400 && !saw_six; ++seed) {
        auto inst = random_finite_order_map(seed, 1);
        const auto& t = inst.map.tree();
        if (t.vertex_count() != 4 || t.edge_count() != 3) continue;
        std::set<Rational> lengths;
        bool star = false;
        for (auto v : t.vertices()) star = star || t.degree(v) == 3;
        for (auto e : t.edges()) lengths.insert(t.edge(e).length);
        if (star && lengths.size() == 1) {
            CHECK(inst.automorphism_count == 6);
            saw_six = true;
        }
    }
    CHECK(saw_six);
}

TEST_CASE("random foldings") {
    std::set<WitnessReason> reasons;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        PLTreeMap f = random_folding(seed);
        auto v = decide_pointwise_recurrent(f);
        REQUIRE_FALSE(v.pointwise_recurrent);
        REQUIRE(v.witness);
        CHECK(verify_witness(f, *v.witness));
        reasons.insert(v.witness->reason);
    }
    CHECK(reasons.count(WitnessReason::non_injective) == 1);
    CHECK(reasons.size() >= 2);
}

TEST_CASE("fixtures are deterministic") {
    for (auto kind : {FixtureKind::star, FixtureKind::arconbad, FixtureKind::arconbad1, FixtureKind::interval,
                      FixtureKind::rotation, FixtureKind::tower, FixtureKind::shift, FixtureKind::tent,
                      FixtureKind::random_finite_order, FixtureKind::random_folding}) {
        FixtureSpec spec{kind, {}, 1, 17};
        PLTreeMap a = make_fixture(spec), b = make_fixture(spec);
        CHECK(a.tree() == b.tree());
        CHECK(a == b);
        CHECK(parse_fixture_kind(to_string(kind)) == kind);
    }
    CHECK_FALSE(parse_fixture_kind("warsaw"));
}
