#include "dendrodyn/odometer.hpp"

#include <algorithm>
#include <set>

#include "dendrodyn/errors.hpp"

namespace dendrodyn {

OdometerType::OdometerType(std::vector<std::uint64_t> periods) : periods_(std::move(periods)) {
    for (std::size_t i = 0; i < periods_.size(); ++i) {
        if (periods_[i] == 0) throw PreconditionError("odometer periods must be positive");
        if (i > 0 && (periods_[i] <= periods_[i - 1] || periods_[i] % periods_[i - 1] != 0)) {
            throw PreconditionError("odometer periods must increase strictly, each dividing the next");
        }
    }
}

bool validate_address(const OdometerAddress& a) {
    const auto& m = a.type.periods();
    if (a.digits.size() != m.size()) return false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (a.digits[i] >= m[i]) return false;
        if (i > 0 && a.digits[i] % m[i - 1] != a.digits[i - 1]) return false;
    }
    return true;
}

OdometerAddress tau(const OdometerAddress& a) {
    if (!validate_address(a)) throw InvariantError("tau applied to an invalid address");
    OdometerAddress out = a;
    for (std::size_t i = 0; i < out.digits.size(); ++i) out.digits[i] = (out.digits[i] + 1) % a.type[i];
    return out;
}

std::vector<OdometerAddress> valid_addresses(const OdometerType& type) {
    std::vector<OdometerAddress> out;
    if (type.depth() == 0) return {OdometerAddress{type, {}}};
    const std::uint64_t top = type.periods().back();
    for (std::uint64_t j = 0; j < top; ++j) {
        OdometerAddress a{type, {}};
        for (auto m : type.periods()) a.digits.push_back(j % m);
        out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.digits < y.digits; });
    return out;
}

std::vector<std::uint64_t> NestedCycles::periods() const {
    std::vector<std::uint64_t> out;
    for (const auto& c : levels) out.push_back(c.period);
    return out;
}

void CycleOfSets::erase(std::size_t i) {
    sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(i));
    index.erase(index.begin() + static_cast<std::ptrdiff_t>(i));
}

namespace {

struct Level {
    std::uint64_t n;
    std::vector<Branch> components;
    std::vector<std::size_t> next;
};

std::optional<std::size_t> find_set(const MetricTree& tree, const std::vector<Branch>& sets, const TreePoint& x) {
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i].contains(tree, x)) return i;
    return std::nullopt;
}

}  // namespace

NestedCycles detect_cycles_of_sets(const PLTreeMap& f, std::size_t depth, const CycleDetectionOptions& options) {
    const MetricTree& tree = f.tree();
    if (!is_injective(f).injective) throw PreconditionError("cycle detection needs an injective map");

    std::vector<Level> levels;
    const Subtree whole = Subtree::whole(tree);
    PLTreeMap power = f;
    Subtree d = Subtree::empty(tree);
    for (std::uint64_t n = 1; n <= options.max_n; ++n) {
        if (n > 1) power = compose(f, power, options.piece_cap);
        d.insert(tree, fixed_points(power));
        if (d == whole) break;
        if (!d.is_connected(tree)) throw InvariantError("D_" + std::to_string(n) + " is not connected");
        Level level{n, complement_components(tree, d), {}};
        for (const auto& c : level.components) {
            const TreePoint img = f(c.representative(tree));
            if (d.contains(img)) {
                throw InvariantError("a component of X \\ D_" + std::to_string(n) + " maps into D_" + std::to_string(n));
            }
            auto j = find_set(tree, level.components, img);
            if (!j) throw InvariantError("component image lies in no component");
            level.next.push_back(*j);
        }
        levels.push_back(std::move(level));
    }

    NestedCycles out;
    if (levels.empty()) return out;
    const TreePoint root = options.root ? *options.root : levels.back().components.front().representative(tree);
    for (const auto& level : levels) {
        auto start = find_set(tree, level.components, root);
        if (!start) break;
        CycleOfSets cycle{level.n, 0, {}, {}};
        std::size_t j = *start;
        do {
            cycle.index.push_back(cycle.sets.size());
            cycle.sets.push_back(level.components[j]);
            j = level.next[j];
        } while (j != *start && cycle.sets.size() <= level.components.size());
        if (j != *start) throw InvariantError("the root component is not periodic");
        cycle.period = cycle.sets.size();
        if (!out.levels.empty() && cycle.period == out.levels.back().period) {
            out.levels.back() = std::move(cycle);
        } else if (out.levels.empty() || cycle.period > out.levels.back().period) {
            out.levels.push_back(std::move(cycle));
        } else {
            throw InvariantError("cycle period decreased under refinement");
        }
    }
    if (out.levels.size() > depth) out.levels.resize(depth);
    return out;
}

OdometerAddress address_of(const MetricTree& tree, const NestedCycles& cycles, const TreePoint& x) {
    OdometerAddress a{cycles.type(), {}};
    for (std::size_t i = 0; i < cycles.levels.size(); ++i) {
        auto j = find_set(tree, cycles.levels[i].sets, x);
        if (!j) throw DomainError(describe(tree, x) + " lies in no set of level " + std::to_string(i));
        a.digits.push_back(cycles.levels[i].index.at(*j));
    }
    return a;
}

std::vector<TreePoint> deepest_samples(const MetricTree& tree, const NestedCycles& cycles) {
    std::vector<TreePoint> out;
    if (cycles.levels.empty()) return out;
    for (const auto& s : cycles.levels.back().sets) {
        for (const auto& p : s.closure(tree).representatives(tree))
            if (p != s.base) out.push_back(p);
    }
    return out;
}

PropertyReport verify_semiconjugacy(const PLTreeMap& f, const NestedCycles& cycles,
                                    const std::vector<TreePoint>& samples) {
    const MetricTree& tree = f.tree();
    PropertyReport report;
    report.name = "semiconjugacy";
    if (cycles.levels.empty()) {
        report.applicable = false;
        return report;
    }
    for (const auto& x : samples) {
        if (!find_set(tree, cycles.levels.back().sets, x)) continue;
        ++report.checked;
        try {
            const OdometerAddress a = address_of(tree, cycles, x);
            const OdometerAddress b = address_of(tree, cycles, f(x));
            if (b != tau(a)) report.fail("psi_f_equals_tau_psi", "ψ(f(x)) differs from τ(ψ(x))", {x, f(x)});
        } catch (const DomainError&) {
            report.fail("psi_f_equals_tau_psi", "f(x) left the sets", {x, f(x)});
        } catch (const InvariantError&) {
            report.fail("psi_f_equals_tau_psi", "ψ(x) is not a valid address", {x});
        }
    }
    return report;
}

const char* to_string(AddingMachineClass c) {
    switch (c) {
        case AddingMachineClass::weak: return "weak";
        case AddingMachineClass::topological_weak: return "topological_weak";
        case AddingMachineClass::full: return "full";
    }
    return "?";
}

AddingMachineFlags classify_adding_machine(const MetricTree& tree, const NestedCycles& cycles) {
    AddingMachineFlags flags;
    const auto& levels = cycles.levels;
    if (levels.empty()) return flags;

    flags.open = true;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (const auto& s : levels[i].sets) {
            if (s.contains(tree, s.base)) flags.open = false;
            if (i == 0) continue;
            auto parent = find_set(tree, levels[i - 1].sets, s.representative(tree));
            if (!parent) {
                flags.open = false;
                continue;
            }
            const Branch& p = levels[i - 1].sets[*parent];
            if (s.base != p.base && !p.contains(tree, s.base)) flags.open = false;
        }
    }

    const auto& deepest = levels.back().sets;
    flags.nonempty_chains = true;
    for (const auto& level : levels) {
        for (const auto& s : level.sets) {
            bool any = std::any_of(deepest.begin(), deepest.end(),
                                   [&](const Branch& d) { return s.contains(tree, d.representative(tree)); });
            if (!any) flags.nonempty_chains = false;
        }
    }

    std::set<std::vector<std::uint64_t>> addresses;
    bool all_valid = true;
    flags.injective = true;
    for (const auto& d : deepest) {
        try {
            OdometerAddress a = address_of(tree, cycles, d.representative(tree));
            all_valid = all_valid && validate_address(a);
            if (!addresses.insert(a.digits).second) flags.injective = false;
        } catch (const DomainError&) {
            flags.injective = false;
            all_valid = false;
        }
    }
    flags.onto = all_valid && addresses.size() == valid_addresses(cycles.type()).size();

    if (flags.open && flags.nonempty_chains && flags.injective && flags.onto) {
        flags.classification = AddingMachineClass::full;
    } else if (flags.open && flags.injective) {
        flags.classification = AddingMachineClass::topological_weak;
    }
    return flags;
}

}  // namespace dendrodyn
