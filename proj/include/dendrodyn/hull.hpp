#pragma once

#include <span>

#include "dendrodyn/pl_map.hpp"

namespace dendrodyn {

// F = p_target o (f o p ...) o p_domain, stored as a self-map of the whole
// tree; its restriction to `domain` is the hull extension.
struct HullExtension {
    Subtree domain;
    Subtree target;
    PLTreeMap map;
};

// Y = ch(E), Z = ch(f(E)), F = p_Z o f on Y. F agrees with f on Y ∩ f^{-1}(Z)
// and is constant on each component of the rest of Y.
HullExtension extend_through_hull(const PLTreeMap& f, std::span<const TreePoint> points,
                                  std::size_t piece_cap = kDefaultPieceCap);

// F_n = p_{Z_n} o f o ... o p_{Z_1} o f on Y with Z_i = ch(f^i(E)).
HullExtension iterated_extension(const PLTreeMap& f, std::span<const TreePoint> points, std::uint64_t n,
                                 std::size_t piece_cap = kDefaultPieceCap);

struct PeriodicInHull {
    TreePoint point;
    // point is fixed by f^(n * multiplier); 1 unless the fallback ran.
    std::uint64_t multiplier = 1;
    bool fallback_used = false;
};

struct PeriodicSearchOptions {
    std::uint64_t max_multiplier = 64;
    std::size_t piece_cap = kDefaultPieceCap;
};

// A periodic point of f in Y = ch(E) whose f^n-orbit stays in Y, for E with
// ch(f^n(E)) ⊇ Y. Fixed points of g = p_Y o F_n are tried first; when every
// one of them sits where g is locally constant, g-periodic points of higher
// period are searched instead and `fallback_used` is set.
PeriodicInHull find_periodic_in_hull(const PLTreeMap& f, std::span<const TreePoint> points, std::uint64_t n,
                                     const PeriodicSearchOptions& options = {});

}  // namespace dendrodyn
