#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dendrodyn/subtree.hpp"

namespace dendrodyn {

inline constexpr std::size_t kDefaultPieceCap = 100'000;

struct Breakpoint {
    Rational t;
    TreePoint image;
    bool operator==(const Breakpoint&) const = default;
};

// A continuous self-map of a MetricTree that is piecewise linear in
// arclength. On each edge, breakpoints 0 = t_0 < ... < t_k = 1 carry images
// P_0..P_k, and [t_i, t_{i+1}] traverses arc(P_i, P_{i+1}) at constant speed.
//
// The stored form is canonical: adjacent pieces are merged whenever their
// union is still a constant-speed traversal of one arc, so two maps are
// equal as functions iff they compare equal.
class PLTreeMap {
  public:
    using TreePtr = std::shared_ptr<const MetricTree>;

    // Throws StructuralError on inconsistent data (bad parameters, images
    // off the tree, or a vertex image disagreeing with an edge end).
    PLTreeMap(TreePtr tree, std::vector<TreePoint> vertex_images, std::vector<std::vector<Breakpoint>> edge_pieces);

    static PLTreeMap identity(TreePtr tree);
    static PLTreeMap constant(TreePtr tree, const TreePoint& value);

    const MetricTree& tree() const { return *tree_; }
    const TreePtr& tree_ptr() const { return tree_; }

    const TreePoint& vertex_image(VertexId v) const { return vertex_images_.at(v.index); }
    const std::vector<TreePoint>& vertex_images() const { return vertex_images_; }
    const std::vector<Breakpoint>& breakpoints(EdgeId e) const { return pieces_.at(e.index); }
    const Arc& piece_arc(EdgeId e, std::size_t piece) const { return arcs_.at(e.index).at(piece); }
    std::size_t piece_count() const;

    TreePoint operator()(const TreePoint& x) const;
    TreePoint at(EdgeId e, const Rational& t) const;

    bool is_identity() const;
    bool shares_tree(const PLTreeMap& other) const;
    bool operator==(const PLTreeMap& other) const;

  private:
    TreePtr tree_;
    std::vector<TreePoint> vertex_images_;
    std::vector<std::vector<Breakpoint>> pieces_;
    std::vector<std::vector<Arc>> arcs_;
};

inline TreePoint evaluate(const PLTreeMap& f, const TreePoint& x) { return f(x); }

// n-fold application of f to x by repeated evaluation.
TreePoint evaluate_power(const PLTreeMap& f, const TreePoint& x, std::uint64_t n);

// g after f. Throws ResourceError when the canonical result exceeds the cap.
PLTreeMap compose(const PLTreeMap& g, const PLTreeMap& f, std::size_t piece_cap = kDefaultPieceCap);
PLTreeMap iterate(const PLTreeMap& f, std::uint64_t n, std::size_t piece_cap = kDefaultPieceCap);

Subtree image_of_arc(const PLTreeMap& f, const Arc& arc);
Subtree image(const PLTreeMap& f);

// Exact set f^{-1}(y).
Subtree preimage(const PLTreeMap& f, const TreePoint& y);

// Exact set {x : f(x) = x}, solved piece by piece.
Subtree fixed_points(const PLTreeMap& f);

struct InjectivityReport {
    bool injective = true;
    // Two distinct points with equal images when not injective.
    std::optional<std::pair<TreePoint, TreePoint>> witness;
};

InjectivityReport is_injective(const PLTreeMap& f);

// p_Y as a PL self-map of the whole tree.
PLTreeMap retraction_map(const PLTreeMap::TreePtr& tree, const Subtree& y);

}  // namespace dendrodyn
