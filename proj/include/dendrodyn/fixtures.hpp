#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dendrodyn/odometer.hpp"

namespace dendrodyn {

// Centre "o", stem "I" from o to "p" of length 1, arms "J2".."Jk" from o to
// "t2".."tk" of lengths 1/2..1/k.
std::shared_ptr<const MetricTree> star_dendrite(std::uint32_t k);

// On star_dendrite(k): the stem collapses to p, the outer half of every arm
// is fixed, and the inner half of arm J_j stretches over the stem and the
// inner half, o going to p. The fixed set is p together with the outer
// halves, at distance 1/(2k) from o.
PLTreeMap arconbad_map(std::uint32_t k);

// Star with arms J_2..J_{k+1} and the stem split at y_0 = o, y_1, ...,
// y_{k+1}, with y_j at distance 2^-j from p. I_0 = [y_0, y_1] goes linearly
// onto the stem (o to p, y_1 to o), each I_j (1 <= j <= k) runs out to the
// tip of J_{j+1} and back, [y_{k+1}, p] goes to o and the arms behave as in
// arconbad_map. Stem edges are "I0".."Ik" and "tail".
PLTreeMap arconbad1_map(std::uint32_t k);

// f^2 sampled on I_k, within distance 2^-k of p.
struct SpreadReport {
    Rational radius;
    Rational spread;  // largest distance between two sampled f^2 values
    std::pair<TreePoint, TreePoint> extremes;
};

SpreadReport arconbad1_spread(const PLTreeMap& f, std::uint32_t k, std::size_t samples = 32);

// Each piece joins the images of its ends and interior breakpoints agree
// with the evaluated map from both sides.
bool edgewise_continuous(const PLTreeMap& f);

// Centre "c", leaves "l0".."l{arms-1}", arm i sent isometrically onto arm i+1.
PLTreeMap rotation_star(std::uint32_t arms, const Rational& arm_length = 1);

// Root "r" with a fixed stem to "s", and for each level i = 1..depth the
// vertices "v<i>_<j>", j in Z_{m_{i-1}}, hung from v<i-1>_<j mod m_{i-2}>
// (from r at level 1). f adds one to every index.
PLTreeMap odometer_tower(std::size_t depth, const OdometerType& periods);

// On [0,1] (vertices "a", "b", edge "e"): x -> 1 - x, x -> (x + 1)/2 and the tent.
PLTreeMap interval_flip();
PLTreeMap shift_map();
PLTreeMap tent_map();

struct FiniteOrderInstance {
    PLTreeMap map;
    // Order of the isometry group of the tree; the order of `map` divides it.
    std::uint64_t automorphism_count = 1;
};

// A random tree with at most 12 vertices and a random isometry of it.
FiniteOrderInstance random_finite_order_map(std::uint64_t tree_seed, std::uint64_t order_seed);

// A random isometry broken either by folding one edge or by pulling one
// leaf onto the middle of its image edge.
PLTreeMap random_folding(std::uint64_t seed);

enum class FixtureKind {
    star,
    arconbad,
    arconbad1,
    interval,
    rotation,
    tower,
    shift,
    tent,
    random_finite_order,
    random_folding
};

const char* to_string(FixtureKind k);
std::optional<FixtureKind> parse_fixture_kind(std::string_view name);

struct FixtureSpec {
    FixtureKind kind = FixtureKind::interval;
    // k for star/arconbad/arconbad1, arms for rotation, periods for tower.
    std::vector<std::uint64_t> params;
    Rational length = 1;
    std::uint64_t seed = 0;
};

// Same spec, same map. star gives the identity on star_dendrite(k).
PLTreeMap make_fixture(const FixtureSpec& spec);

}  // namespace dendrodyn
