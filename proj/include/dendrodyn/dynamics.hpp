#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dendrodyn/pl_map.hpp"

namespace dendrodyn {

inline constexpr std::uint64_t kDefaultMaxPeriod = 10'000;
inline constexpr std::uint64_t kDefaultHorizon = 1'000;
inline constexpr std::uint64_t kIdentityPowerCap = 1'000'000;

// Least p in [1, max_period] with f^p(x) = x.
std::optional<std::uint64_t> point_period(const PLTreeMap& f, const TreePoint& x, std::uint64_t max_period);

// {x : f^n(x) = x}.
Subtree fixed_set(const PLTreeMap& f, std::uint64_t n, std::size_t piece_cap = kDefaultPieceCap);
// D_n, the union of fixed_set(f, i) for i <= n.
Subtree periodic_union(const PLTreeMap& f, std::uint64_t n, std::size_t piece_cap = kDefaultPieceCap);

struct PeriodicStructure {
    std::vector<Subtree> fixed;           // F_1 .. F_n
    std::vector<Subtree> unions;          // D_1 .. D_n
    std::vector<std::optional<std::uint64_t>> vertex_periods;
};

PeriodicStructure periodic_structure(const PLTreeMap& f, std::uint64_t n, std::uint64_t max_period,
                                     std::size_t piece_cap = kDefaultPieceCap);

enum class WitnessReason { non_injective, non_periodic_cutpoint, escaping_orbit };
const char* to_string(WitnessReason r);

// Evidence for a false verdict.
//
// non_injective: point != partner and f(point) = f(partner).
//
// Otherwise f is injective, h = f^power maps the arc [arc_start, arc_end]
// into itself fixing arc_start and preserving the order along it, and
// h(point) = image != point. An increasing self-embedding of an arc has no
// periodic points besides its fixed points, so `point` is not periodic.
struct RecurrenceWitness {
    WitnessReason reason = WitnessReason::non_injective;
    TreePoint point;
    std::optional<TreePoint> partner;
    std::uint64_t power = 1;
    TreePoint image;
    std::optional<TreePoint> arc_start;
    std::optional<TreePoint> arc_end;
};

struct RecurrenceVerdict {
    bool pointwise_recurrent = false;
    std::optional<RecurrenceWitness> witness;
    // Least N with f^N = id, present iff pointwise_recurrent.
    std::optional<std::uint64_t> identity_power;
};

struct RecurrenceOptions {
    std::uint64_t max_period = kDefaultMaxPeriod;
    std::uint64_t power_cap = kIdentityPowerCap;
    std::size_t piece_cap = kDefaultPieceCap;
};

// Exact decision of pointwise recurrence. Throws InconclusiveError when a
// branchpoint orbit does not close within max_period or the needed power
// exceeds power_cap, and ResourceError when iteration exceeds the piece cap.
RecurrenceVerdict decide_pointwise_recurrent(const PLTreeMap& f, const RecurrenceOptions& options = {});

// Re-checks a witness from first principles.
bool verify_witness(const PLTreeMap& f, const RecurrenceWitness& w);

struct ReturnResult {
    bool returned = false;
    std::optional<std::uint64_t> step;  // least m with (f^k)^m(x) back in the component
    std::uint64_t horizon = 0;          // a negative answer only covers this many steps
};

// Does some (f^k)^m(x), 1 <= m <= horizon, lie in the component of X \ {y}
// containing x? Requires x != y.
ReturnResult returns_to_components(const PLTreeMap& f, const TreePoint& x, const TreePoint& y, std::uint64_t k,
                                   std::uint64_t horizon = kDefaultHorizon);

// A_{f^n}(x): the component of X \ {x} containing f^n(x). Requires f^n(x) != x.
Branch forward_component(const PLTreeMap& f, std::uint64_t n, const TreePoint& x);

struct OmegaEstimate {
    std::vector<TreePoint> points;
    // True when the orbit was seen to repeat, so `points` is the limit cycle.
    bool exact = false;
};

OmegaEstimate omega_limit_estimate(const PLTreeMap& f, const TreePoint& x, std::uint64_t burn_in,
                                   std::uint64_t window);

struct CheckFailure {
    std::string check;
    std::string detail;
    std::vector<TreePoint> points;
};

struct PropertyReport {
    std::string name;
    bool applicable = true;
    bool passed = true;
    std::size_t checked = 0;
    std::vector<CheckFailure> failures;

    void fail(std::string check, std::string detail, std::vector<TreePoint> points);
};

// Vertices plus `per_edge` evenly spaced interior points on every edge.
std::vector<TreePoint> grid_samples(const MetricTree& tree, std::size_t per_edge);

struct CheckOptions {
    std::uint64_t max_period = 64;
    std::uint64_t horizon = 64;
    std::size_t piece_cap = kDefaultPieceCap;
};

// Surjectivity, full invariance of periodic vertex orbits (exact preimages),
// and sampled grand orbits lying on their limit cycle.
PropertyReport check_property_A(const PLTreeMap& f, const std::vector<TreePoint>& samples,
                                const CheckOptions& options = {});

// Every sampled point whose orbit lands on a cycle must lie on it. A
// violation y (last point before the cycle) comes with g = f^P, P the cycle
// period, and a separator z in (y, g(y)): the g-orbit of y never returns to
// the component of X \ {z} containing y.
PropertyReport check_no_preperiodic(const PLTreeMap& f, const std::vector<TreePoint>& samples,
                                    const CheckOptions& options = {});

// For x' fixed by f^n and sampled t: never [x', t] ⊂ [x', f^n(t)) with t != x'.
// Applicable when f is pointwise recurrent; evaluated regardless.
PropertyReport check_imposs(const PLTreeMap& f, std::uint64_t n, const std::vector<TreePoint>& samples,
                            const CheckOptions& options = {});

// When every f^i-periodic point (i <= max_period) is an endpoint, the
// f^n-orbit of each sampled x with f^n(x) != x stays in A_{f^n}(x) ∪ {x}.
PropertyReport check_escape(const PLTreeMap& f, std::uint64_t n, const std::vector<TreePoint>& samples,
                            const CheckOptions& options = {});

}  // namespace dendrodyn
