// dendrodyn: command-line front end over the dendrodyn library.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dendrodyn/errors.hpp"
#include "dendrodyn/io.hpp"
#include "dendrodyn/tree_core.hpp"

using namespace dendrodyn;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kInconclusive = 2, kInputError = 3 };

struct RunConfig {
    std::string input;
    std::string output;
    std::uint64_t max_period = kDefaultMaxPeriod;
    std::uint64_t horizon = kDefaultHorizon;
    std::uint64_t depth = 4;
    std::size_t piece_cap = kDefaultPieceCap;
    std::string format = "text";
    std::string point;
    std::string kind;
    std::vector<std::uint64_t> params;
    std::string length = "1";
    std::optional<std::uint64_t> seed;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_point(const Json& j) {
    return j.is_object() && ((j.size() == 1 && j.contains("vertex")) || (j.size() == 2 && j.contains("edge") && j.contains("t")));
}

std::string scalar(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (is_point(j)) {
        return j.contains("vertex") ? j["vertex"].get<std::string>()
                                    : j["edge"].get<std::string>() + "@" + j["t"].get<std::string>();
    }
    return j.dump();
}

void render(std::ostream& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_primitive() || is_point(v) || (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) {
                                                        return x.is_primitive() || is_point(x);
                                                    }))) {
                out << pad << k << ": ";
                if (v.is_array()) {
                    out << "[";
                    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
                    out << "]\n";
                } else {
                    out << scalar(v) << "\n";
                }
            } else {
                out << pad << k << ":\n";
                render(out, v, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_primitive() || is_point(v)) {
                out << pad << "- " << scalar(v) << "\n";
            } else {
                out << pad << "-\n";
                render(out, v, indent + 2);
            }
        }
    } else {
        out << pad << scalar(j) << "\n";
    }
}

void emit(const RunConfig& cfg, const Json& report) {
    std::ostringstream ss;
    if (cfg.format == "json") {
        ss << report.dump(2) << "\n";
    } else {
        render(ss, report, 0);
    }
    if (cfg.output.empty()) {
        std::cout << ss.str();
    } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) throw ParseError("cannot write " + cfg.output);
        out << ss.str();
    }
}

CheckOptions check_options(const RunConfig& cfg) {
    CheckOptions o;
    o.max_period = std::min<std::uint64_t>(cfg.max_period, 64);
    o.horizon = std::min<std::uint64_t>(cfg.horizon, 256);
    o.piece_cap = cfg.piece_cap;
    return o;
}

RecurrenceOptions recurrence_options(const RunConfig& cfg) {
    RecurrenceOptions o;
    o.max_period = cfg.max_period;
    o.piece_cap = cfg.piece_cap;
    return o;
}

int run_recurrence(const RunConfig& cfg, const PLTreeMap& f) {
    const auto verdict = decide_pointwise_recurrent(f, recurrence_options(cfg));
    Json report;
    report["command"] = "recurrence";
    report["verdict"] = to_json(f.tree(), verdict);
    if (verdict.witness) report["witness_verified"] = verify_witness(f, *verdict.witness);
    emit(cfg, report);
    return verdict.pointwise_recurrent ? kTrue : kFalse;
}

int run_analyze(const RunConfig& cfg, const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    const auto ps = periodic_structure(f, cfg.depth, cfg.max_period, cfg.piece_cap);
    Json report;
    report["command"] = "analyze";
    report["injective"] = is_injective(f).injective;
    report["surjective"] = image(f) == Subtree::whole(tree);
    report["vertices"] = Json::array();
    for (VertexId v : tree.vertices()) {
        const auto order = order_of(tree, TreePoint::at_vertex(v));
        Json jv;
        jv["name"] = tree.vertex_name(v);
        jv["order"] = order.count;
        jv["class"] = to_string(order.kind);
        jv["image"] = point_to_json(tree, f.vertex_image(v));
        if (auto p = ps.vertex_periods[v.index]) jv["period"] = *p;
        else jv["period"] = "none within " + std::to_string(cfg.max_period);
        report["vertices"].push_back(std::move(jv));
    }
    report["fixed_sets"] = Json::array();
    for (std::size_t i = 0; i < ps.fixed.size(); ++i) {
        Json jn;
        jn["n"] = i + 1;
        jn["F_n"] = to_json(tree, ps.fixed[i]);
        jn["D_n"] = to_json(tree, ps.unions[i]);
        report["fixed_sets"].push_back(std::move(jn));
    }
    emit(cfg, report);
    return kTrue;
}

int run_odometer(const RunConfig& cfg, const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    CycleDetectionOptions opts;
    opts.piece_cap = cfg.piece_cap;
    opts.max_n = std::max<std::uint64_t>(64, cfg.depth);
    if (!cfg.point.empty()) opts.root = parse_point_spec(tree, cfg.point);
    const NestedCycles nc = detect_cycles_of_sets(f, cfg.depth, opts);
    Json report;
    report["command"] = "odometer";
    report["periods"] = nc.periods();
    report["levels"] = to_json(tree, nc);
    report["addresses"] = Json::array();
    if (!nc.levels.empty()) {
        for (const auto& s : nc.levels.back().sets) {
            Json ja;
            ja["set"] = point_to_json(tree, s.representative(tree));
            ja["address"] = address_of(tree, nc, s.representative(tree)).digits;
            report["addresses"].push_back(std::move(ja));
        }
    }
    const auto semi = verify_semiconjugacy(f, nc, deepest_samples(tree, nc));
    report["semiconjugacy"] = to_json(tree, semi);
    report["classification"] = to_json(classify_adding_machine(tree, nc));
    emit(cfg, report);
    return semi.passed ? kTrue : kFalse;
}

int run_classify(const RunConfig& cfg, const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    const TreePoint x = parse_point_spec(tree, cfg.point);
    const auto order = order_of(tree, x);
    Json report;
    report["command"] = "classify";
    report["point"] = point_to_json(tree, x);
    report["order"] = order.count;
    report["class"] = to_string(order.kind);
    report["image"] = point_to_json(tree, f(x));
    if (auto p = point_period(f, x, cfg.max_period)) report["period"] = *p;
    emit(cfg, report);
    return kTrue;
}

int run_verify(const RunConfig& cfg, const PLTreeMap& f) {
    const MetricTree& tree = f.tree();
    const auto samples = grid_samples(tree, 7);
    const CheckOptions opts = check_options(cfg);
    Json report;
    report["command"] = "verify";
    Json checks = Json::array();
    bool all = true;
    auto add = [&](const PropertyReport& r) {
        all = all && (!r.applicable || r.passed);
        checks.push_back(to_json(tree, r));
    };

    PropertyReport rec;
    rec.name = "recurrence_witness";
    std::optional<RecurrenceVerdict> verdict;
    try {
        verdict = decide_pointwise_recurrent(f, recurrence_options(cfg));
        ++rec.checked;
        if (verdict->witness && !verify_witness(f, *verdict->witness)) {
            rec.fail("witness", "witness does not re-verify", {verdict->witness->point});
        }
        if (verdict->identity_power && !iterate(f, *verdict->identity_power, cfg.piece_cap).is_identity()) {
            rec.fail("identity_power", "f^N is not the identity", {});
        }
    } catch (const InconclusiveError& e) {
        rec.applicable = false;
    }
    add(rec);

    PropertyReport conn;
    conn.name = "fixed_sets_connected";
    conn.applicable = verdict && verdict->pointwise_recurrent;
    if (conn.applicable) {
        const auto bound = std::min<std::uint64_t>(*verdict->identity_power, cfg.depth);
        const auto ps = periodic_structure(f, bound, 0, cfg.piece_cap);
        for (std::size_t i = 0; i < ps.fixed.size(); ++i) {
            ++conn.checked;
            if (!ps.fixed[i].is_connected(tree) || !ps.unions[i].is_connected(tree)) {
                conn.fail("connected", "F_" + std::to_string(i + 1) + " or D_" + std::to_string(i + 1) + " is disconnected", {});
            }
        }
    }
    add(conn);

    PropertyReport cut;
    cut.name = "cutpoints_fully_invariant";
    cut.applicable = conn.applicable;
    if (cut.applicable) {
        for (const auto& x : samples) {
            if (order_of(tree, x).count < 2) continue;
            ++cut.checked;
            if (order_of(tree, f(x)).count < 2) cut.fail("image", "a cutpoint maps to an endpoint", {x});
            for (const auto& y : preimage(f, x).representatives(tree))
                if (order_of(tree, y).count < 2) cut.fail("preimage", "an endpoint maps to a cutpoint", {y, x});
        }
    }
    add(cut);

    add(check_property_A(f, samples, opts));
    add(check_no_preperiodic(f, samples, opts));
    add(check_imposs(f, 1, samples, opts));
    add(check_escape(f, 1, samples, opts));
    report["checks"] = std::move(checks);
    report["passed"] = all;
    emit(cfg, report);
    return all ? kTrue : kFalse;
}

int run_fixture(RunConfig cfg) {
    auto kind = parse_fixture_kind(cfg.kind);
    if (!kind) throw ParseError("unknown fixture kind \"" + cfg.kind + "\"");
    FixtureSpec spec;
    spec.kind = *kind;
    spec.params = cfg.params;
    spec.length = parse_rational(cfg.length);
    if (cfg.seed) {
        spec.seed = *cfg.seed;
    } else if (const char* env = std::getenv("DENDRODYN_SEED")) {
        spec.seed = std::stoull(env);
    }
    const std::string text = write_map(make_fixture(spec));
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) throw ParseError("cannot write " + cfg.output);
        out << text;
    }
    return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact dynamics of piecewise-linear self-maps of finite metric trees"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("input", cfg.input, "tree+map file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", cfg.output, "write the report here");
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--max-period", cfg.max_period)->check(CLI::PositiveNumber);
        sub->add_option("--horizon", cfg.horizon)->check(CLI::PositiveNumber);
        sub->add_option("--depth", cfg.depth)->check(CLI::PositiveNumber);
        sub->add_option("--piece-cap", cfg.piece_cap)->check(CLI::PositiveNumber);
    };
    auto* analyze = app.add_subcommand("analyze", "periodic structure and point classes");
    auto* recurrence = app.add_subcommand("recurrence", "decide pointwise recurrence");
    auto* odometer = app.add_subcommand("odometer", "nested cycles of sets and addresses");
    auto* classify = app.add_subcommand("classify", "order and class of one point");
    auto* verify = app.add_subcommand("verify", "structural property checks");
    auto* fixture = app.add_subcommand("fixture", "emit a fixture file");
    for (auto* sub : {analyze, recurrence, odometer, classify, verify}) common(sub, true);
    classify->add_option("--point", cfg.point, "vertex name or edge@p/q")->required();
    odometer->add_option("--point", cfg.point, "root point (default: least deepest set)");
    fixture->add_option("kind", cfg.kind, "star|arconbad|arconbad1|interval|rotation|tower|shift|tent|"
                                          "random_finite_order|random_folding")
        ->required();
    fixture->add_option("params", cfg.params, "k, arm count or tower periods");
    fixture->add_option("--length", cfg.length, "arm length for rotation");
    fixture->add_option("--seed", cfg.seed, "seed for random kinds (else DENDRODYN_SEED)");
    fixture->add_option("-o,--output", cfg.output, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (fixture->parsed()) return run_fixture(cfg);
        const PLTreeMap f = read_map(read_file(cfg.input));
        if (recurrence->parsed()) return run_recurrence(cfg, f);
        if (analyze->parsed()) return run_analyze(cfg, f);
        if (odometer->parsed()) return run_odometer(cfg, f);
        if (classify->parsed()) return run_classify(cfg, f);
        return run_verify(cfg, f);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const StructuralError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition not met: " << e.what() << "\n";
        return kInputError;
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kInconclusive;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kFalse;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kInputError;
    }
}
