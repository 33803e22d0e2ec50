#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dendrodyn/dynamics.hpp"

namespace dendrodyn {

// Truncated type (m_0, ..., m_k): strictly increasing, each dividing the next.
class OdometerType {
  public:
    // Throws PreconditionError unless the list is a valid type.
    explicit OdometerType(std::vector<std::uint64_t> periods);

    const std::vector<std::uint64_t>& periods() const { return periods_; }
    std::size_t depth() const { return periods_.size(); }
    std::uint64_t operator[](std::size_t i) const { return periods_.at(i); }
    bool operator==(const OdometerType&) const = default;

  private:
    std::vector<std::uint64_t> periods_;
};

struct OdometerAddress {
    OdometerType type;
    std::vector<std::uint64_t> digits;
    bool operator==(const OdometerAddress&) const = default;
};

// Digit ranges and j_{i+1} ≡ j_i (mod m_i).
bool validate_address(const OdometerAddress& a);

// Adds one to every digit modulo its m_i. Throws InvariantError on an invalid address.
OdometerAddress tau(const OdometerAddress& a);

// All valid addresses of a type, in lexicographic order.
std::vector<OdometerAddress> valid_addresses(const OdometerType& type);

// One f-cycle of components of X \ D_n, with f(T^j) ⊆ T^{j+1 mod period}.
// sets[i] is T^{index[i]}, a branch at its attachment point sets[i].base.
// Detection lists every set in cycle order; a pruned copy may omit some.
struct CycleOfSets {
    std::uint64_t n = 0;  // the D_n these sets are components of
    std::uint64_t period = 0;
    std::vector<Branch> sets;
    std::vector<std::uint64_t> index;

    const TreePoint& attachment(std::size_t i) const { return sets.at(i).base; }
    void erase(std::size_t i);
};

// Nested cycles C_0 ⊇ C_1 ⊇ ... with strictly increasing periods. At every
// level sets[0] contains the root, so sets[j] holds f^j of the root.
struct NestedCycles {
    std::vector<CycleOfSets> levels;

    std::vector<std::uint64_t> periods() const;
    OdometerType type() const { return OdometerType(periods()); }
};

struct CycleDetectionOptions {
    // Largest n for which D_n is computed.
    std::uint64_t max_n = 64;
    std::size_t piece_cap = kDefaultPieceCap;
    // Point whose sets form the root; default is the least deepest component.
    std::optional<TreePoint> root;
};

// Requires f injective. Throws InvariantError when some D_n is disconnected
// or a component of X \ D_n maps into D_n.
NestedCycles detect_cycles_of_sets(const PLTreeMap& f, std::size_t depth, const CycleDetectionOptions& options = {});

// ψ(x) at the available depth. Throws DomainError when x lies in no set of some level.
OdometerAddress address_of(const MetricTree& tree, const NestedCycles& cycles, const TreePoint& x);

// ψ(f(x)) = τ(ψ(x)) for every sample lying in a deepest set.
PropertyReport verify_semiconjugacy(const PLTreeMap& f, const NestedCycles& cycles,
                                    const std::vector<TreePoint>& samples);

// Representative points of every deepest set, for semiconjugacy sweeps.
std::vector<TreePoint> deepest_samples(const MetricTree& tree, const NestedCycles& cycles);

enum class AddingMachineClass { weak, topological_weak, full };
const char* to_string(AddingMachineClass c);

struct AddingMachineFlags {
    bool open = false;                // (a) every set is open in its parent set
    bool nonempty_chains = false;     // (b) every set contains a deepest set
    bool injective = false;           // (c) distinct deepest sets have distinct addresses
    bool onto = false;                // (d) the deepest sets realize every valid address
    AddingMachineClass classification = AddingMachineClass::weak;
};

AddingMachineFlags classify_adding_machine(const MetricTree& tree, const NestedCycles& cycles);

}  // namespace dendrodyn
