#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dendrodyn/rational.hpp"

namespace dendrodyn {

struct VertexId {
    std::uint32_t index = 0;
    auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
    std::uint32_t index = 0;
    auto operator<=>(const EdgeId&) const = default;
};

// A finite tree whose edges carry exact positive rational lengths.
// Edge parameters t run over [0,1] from `first` to `second`.
class MetricTree {
  public:
    struct EdgeSpec {
        std::string name;
        std::string first;
        std::string second;
        Rational length;
    };

    struct Edge {
        std::string name;
        VertexId first;
        VertexId second;
        Rational length;
        bool operator==(const Edge&) const = default;
    };

    struct Step {
        EdgeId edge;
        VertexId from;
        VertexId to;
    };

    // Throws StructuralError unless the data describe a tree.
    MetricTree(std::vector<std::string> vertex_names, std::vector<EdgeSpec> edges);

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v.index); }
    const Edge& edge(EdgeId e) const { return edges_.at(e.index); }
    const std::string& edge_name(EdgeId e) const { return edge(e).name; }

    VertexId vertex_id(std::string_view name) const;
    EdgeId edge_id(std::string_view name) const;
    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;

    std::span<const EdgeId> incident(VertexId v) const { return incident_.at(v.index); }
    std::size_t degree(VertexId v) const { return incident(v).size(); }
    VertexId opposite(EdgeId e, VertexId v) const;

    // Parameter of an endpoint of `e`: 0 for first, 1 for second.
    Rational endpoint_param(EdgeId e, VertexId v) const;

    // Vertex path a -> b as a sequence of edge traversals.
    std::vector<Step> path(VertexId a, VertexId b) const;

    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edges() const;

    bool operator==(const MetricTree& other) const {
        return vertex_names_ == other.vertex_names_ && edges_ == other.edges_;
    }

  private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incident_;
    std::unordered_map<std::string, VertexId> vertex_lookup_;
    std::unordered_map<std::string, EdgeId> edge_lookup_;
    // BFS tree rooted at vertex 0, for path queries.
    std::vector<std::uint32_t> depth_;
    std::vector<std::optional<EdgeId>> parent_edge_;
};

// A point of a MetricTree in canonical form: either a vertex or an
// edge-interior position with 0 < t < 1.
class TreePoint {
  public:
    static TreePoint at_vertex(VertexId v) { return TreePoint(v); }
    // Normalizes t = 0 and t = 1 to the vertex form; rejects t outside [0,1].
    static TreePoint on_edge(const MetricTree& tree, EdgeId e, const Rational& t);

    bool is_vertex() const { return is_vertex_; }
    VertexId vertex() const;
    EdgeId edge() const;
    const Rational& t() const;

    // Parameter of this point on edge `e` if it lies on the closed edge.
    std::optional<Rational> param_on(const MetricTree& tree, EdgeId e) const;

    bool valid_in(const MetricTree& tree) const;

    bool operator==(const TreePoint& other) const;
    std::strong_ordering operator<=>(const TreePoint& other) const;

  private:
    explicit TreePoint(VertexId v) : is_vertex_(true), vertex_(v) {}
    TreePoint(EdgeId e, Rational t) : is_vertex_(false), edge_(e), t_(std::move(t)) {}

    bool is_vertex_ = true;
    VertexId vertex_{};
    EdgeId edge_{};
    Rational t_{};
};

std::string describe(const MetricTree& tree, const TreePoint& p);

// A direction of departure from a point: along `edge`, with the edge
// parameter increasing or decreasing.
struct Germ {
    EdgeId edge;
    bool increasing = true;
    auto operator<=>(const Germ&) const = default;
};

// All germs at p; their count is the order of p.
std::vector<Germ> germs_at(const MetricTree& tree, const TreePoint& p);

}  // namespace dendrodyn
