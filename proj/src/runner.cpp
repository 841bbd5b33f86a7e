#include "sdtk/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "sdtk/graph.hpp"
#include "sdtk/shadowing.hpp"
#include "sdtk/stats.hpp"
#include "sdtk/version.hpp"

namespace sdtk {

namespace {

using nlohmann::json;

// 12 significant digits keeps payloads byte-identical across runs while
// preserving far more precision than any estimator tolerance.
double round_sig(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return std::strtod(buffer, nullptr);
}

json num(double x) { return round_sig(x); }

json num_list(const std::vector<double>& values) {
    json out = json::array();
    for (double v : values) out.push_back(num(v));
    return out;
}

json label_list(const std::vector<int>& ids, const std::vector<std::string>& labels) {
    json out = json::array();
    for (int i : ids) out.push_back(labels.at(static_cast<size_t>(i)));
    return out;
}

const SymbolicSystem& need_sft(const ParsedSystem& system, const std::string& command) {
    if (system.kind != "sft") throw schema_error(command + " needs an \"sft\" system spec");
    return system.sft;
}

const FiniteMapSystem& need_finite(const ParsedSystem& system, const std::string& command) {
    if (system.kind != "finite_map") {
        throw schema_error(command + " needs a \"finite_map\" system spec");
    }
    return system.finite;
}

// Two periodic points on distinct cycles, for block-alternation commands:
// each symbol contributes the periodic point of its shortest return cycle.
std::pair<SymbolicPoint, SymbolicPoint> two_cycle_points(const SymbolicSystem& system) {
    const auto graph = symbolic_transition_graph(system);
    std::vector<SymbolicPoint> points;
    for (int s = 0; s < system.symbol_count(); ++s) {
        for (int k = 1; k <= system.symbol_count(); ++k) {
            if (auto cycle = path_of_length(graph, s, s, k)) {
                cycle->pop_back();
                auto p = SymbolicPoint::periodic(std::move(*cycle));
                if (std::find(points.begin(), points.end(), p) == points.end()) {
                    points.push_back(std::move(p));
                }
                break;
            }
        }
    }
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t j = 0; j < points.size(); ++j) {
            if (i != j && omega_bar_exact_symbolic(points[i]) != omega_bar_exact_symbolic(points[j])) {
                return {points[i], points[j]};
            }
        }
    }
    throw no_disjoint_cycles_error("system offers only one periodic orbit for alternation");
}

json cmd_decompose(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    TransitionGraph graph;
    if (parsed.kind == "sft") {
        graph = symbolic_transition_graph(parsed.sft);
    } else if (parsed.kind == "finite_map") {
        graph = delta_transition_graph(parsed.finite, 0.0);
    } else {
        throw schema_error("decompose needs an \"sft\" or \"finite_map\" system spec");
    }
    (void)spec;
    json out;
    const auto components = chain_components(graph);
    out["components"] = json::array();
    for (const auto& comp : components.components) {
        out["components"].push_back(label_list(comp, graph.labels));
    }
    out["non_recurrent"] = label_list(components.non_recurrent, graph.labels);
    out["chain_transitive"] = is_chain_transitive(graph);
    if (is_chain_transitive(graph)) {
        const auto decomposition = cyclic_decomposition(graph);
        out["m"] = decomposition.m;
        out["classes"] = json::array();
        for (const auto& cls : decomposition.classes) {
            out["classes"].push_back(label_list(cls, graph.labels));
        }
        const auto bound = uniform_chain_bound(graph, decomposition);
        out["uniform_bound"] = bound.bound;
        out["uniform_bound_checked_to"] = bound.checked_limit;
        out["uniform_bound_all_n"] = bound.certified_all_n;
        out["chain_mixing"] = is_chain_mixing(graph);
    }
    return out;
}

json cmd_entropy(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    json out;
    out["entropy"] = num(topological_entropy(need_sft(parsed, spec.command)));
    return out;
}

json cmd_shadow(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    const auto& system = need_sft(parsed, spec.command);
    const int length = spec.horizon > 0 ? spec.horizon : 32;
    const auto po = random_pseudo_orbit(system, 0, length, spec.m, spec.seed);
    const auto shadow = sft_shadow(system, po);
    const auto verify = verify_shadowing(system, po, shadow.shadow_point,
                                         std::ldexp(1.0, -spec.m + 1), 48);
    json out;
    out["length"] = length;
    out["delta"] = num(po.delta);
    out["epsilon_achieved"] = num(shadow.epsilon_achieved);
    out["epsilon_bound"] = num(std::ldexp(1.0, -spec.m + 1));
    out["verified"] = verify.within;
    out["same_class"] = shadow.same_class;
    out["shadow_point"] = shadow.shadow_point.to_string(system.alphabet);
    return out;
}

json cmd_dsp_check(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    const auto& system = need_sft(parsed, spec.command);
    const int length = spec.horizon > 0 ? spec.horizon : 64;
    const auto report = dsp_check(system, spec.m, 50, length, spec.seed);
    json out;
    out["m"] = report.m;
    out["trials_per_class"] = report.trials;
    out["uniform_across_classes"] = report.uniform;
    out["per_class"] = json::array();
    for (const auto& cls : report.per_class) {
        json entry;
        entry["class"] = cls.class_index;
        entry["worst_epsilon"] = num(cls.worst_epsilon);
        entry["all_in_class"] = cls.all_in_class;
        out["per_class"].push_back(entry);
    }
    return out;
}

json cmd_avg_shadow(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    const auto& system = need_sft(parsed, spec.command);
    const int horizon = spec.horizon > 0 ? spec.horizon : (1 << 14);
    const auto [a, b] = two_cycle_points(system);
    const auto sequence = block_alternation_sequence(a, b, 16, spec.ratio, horizon);
    AverageShadowSchedule schedule;
    schedule.block_ratio = spec.ratio;
    const auto trace = average_shadow_trace(system, sequence, 0.25, schedule, horizon);
    json out;
    out["horizon"] = horizon;
    out["block_ratio"] = spec.ratio;
    out["final_cesaro_error"] = num(trace.cesaro_errors.back());
    out["class_preserved"] = trace.start_class == trace.result_class;
    out["epsilon_schedule"] = num_list(trace.epsilons_used);
    out["delta_schedule"] = num_list(trace.deltas_used);
    out["block_boundaries"] = trace.block_boundaries;
    out["dwell_points"] =
        json::array({a.to_string(system.alphabet), b.to_string(system.alphabet)});
    return out;
}

json cmd_omega_bar(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    json out;
    if (parsed.kind == "finite_map") {
        const auto& system = parsed.finite;
        const int horizon =
            spec.horizon > 0 ? spec.horizon : std::max(100, 10 * system.point_count());
        const auto exact = omega_bar_exact_finite(system, 0);
        const auto states = orbit(system, 0, horizon);
        std::vector<int> candidates(static_cast<size_t>(system.point_count()));
        for (int v = 0; v < system.point_count(); ++v) candidates[static_cast<size_t>(v)] = v;
        const auto estimate = omega_bar_estimate(states, candidates, spec.theta,
                                                 spec.tail_fraction);
        out["exact"] = label_list(exact, system.points);
        out["estimated"] = label_list(estimate.reported, system.points);
        out["estimates"] = num_list(estimate.upper_estimates);
        out["agree"] = exact == estimate.reported;
        out["horizon"] = horizon;
    } else if (parsed.kind == "sft") {
        const auto& system = parsed.sft;
        const auto point = canonical_point_from(system, 0);
        json set = json::array();
        for (const auto& p : omega_bar_exact_symbolic(point)) {
            set.push_back(p.to_string(system.alphabet));
        }
        out["point"] = point.to_string(system.alphabet);
        out["exact"] = set;
    } else {
        throw schema_error("omega-bar needs an \"sft\" or \"finite_map\" system spec");
    }
    out["theta"] = num(spec.theta);
    return out;
}

json cmd_dc2_scan(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    const auto& system = need_sft(parsed, spec.command);
    const int horizon = spec.horizon > 0 ? spec.horizon : (1 << 14);
    const auto [a, b] = two_cycle_points(system);
    // The classic interleaved pair: one point dwells alternately near both
    // cycles, the other stays on the first one. The together-stretches must
    // dominate every tail prefix for the upper frequencies to clear 1 - slack,
    // which takes a steeper block growth than the other commands use.
    const int dc2_ratio = 32;
    const auto wander = block_alternation_sequence(a, b, 16, dc2_ratio, horizon);
    std::vector<SymbolicPoint> stay;
    stay.reserve(static_cast<size_t>(horizon));
    SymbolicPoint p = a;
    for (int i = 0; i < horizon; ++i) {
        stay.push_back(p);
        p = p.shifted();
    }
    const std::vector<double> grid{0.0625, 0.125, 0.25, 0.5, 1.0, 1.5};
    const auto df = distributional_functions(wander, stay, grid, spec.tail_fraction);
    json out;
    out["horizon"] = horizon;
    out["block_ratio"] = dc2_ratio;
    out["t_grid"] = num_list(df.t_grid);
    out["f"] = num_list(df.f_values);
    out["f_star"] = num_list(df.f_star_values);
    out["dc2"] = dc2_verdict(df, 0.5, 0.05);
    return out;
}

json cmd_irregular_scan(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    const auto& system = need_sft(parsed, spec.command);
    const int horizon = spec.horizon > 0 ? spec.horizon : (1 << 16);
    const int ratio = spec.ratio > 0 ? spec.ratio : 2;
    const auto witness = irregular_witness_sft(system, 0, ratio, horizon, spec.seed);
    json out;
    out["horizon"] = horizon;
    out["block_ratio"] = ratio;
    out["oscillation"] = num(witness.report.oscillation);
    out["irregular"] = witness.report.irregular;
    out["cycle_a"] = label_list(witness.cycle_a, system.alphabet.names());
    out["cycle_b"] = label_list(witness.cycle_b, system.alphabet.names());
    return out;
}

json cmd_scrambled_check(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    const auto& system = need_sft(parsed, spec.command);
    const int horizon = spec.horizon > 0 ? spec.horizon : 4096;
    std::vector<SymbolicPoint> family;
    for (int s = 0; s < system.symbol_count(); ++s) {
        const auto p = canonical_point_from(system, s);
        if (std::find(family.begin(), family.end(), p) == family.end()) family.push_back(p);
    }
    if (family.size() < 2) family.push_back(family.front().shifted());
    const auto witness = scrambled_family_check(system, family, horizon, spec.theta, 0.0);
    json out;
    out["family"] = json::array();
    for (const auto& p : family) out["family"].push_back(p.to_string(system.alphabet));
    out["verdict"] = witness.verdict;
    out["pairs"] = json::array();
    for (const auto& rec : witness.pairs) {
        json entry;
        entry["x"] = rec.x_index;
        entry["y"] = rec.y_index;
        entry["difference_nonempty"] = rec.difference_nonempty;
        entry["intersection_nonempty"] = rec.intersection_nonempty;
        entry["has_nonperiodic_element"] = rec.has_nonperiodic_element;
        out["pairs"].push_back(entry);
    }
    return out;
}

json cmd_measure_center(const ParsedSystem& parsed, const ExperimentSpec& spec) {
    const auto& system = need_finite(parsed, spec.command);
    json out;
    out["measure_center"] = label_list(measure_center_finite(system), system.points);
    return out;
}

}  // namespace

json run(const ExperimentSpec& spec) {
    const auto started = std::chrono::steady_clock::now();
    const auto parsed = parse_system_spec(spec.spec_text);

    json results;
    if (spec.command == "decompose") {
        results = cmd_decompose(parsed, spec);
    } else if (spec.command == "entropy") {
        results = cmd_entropy(parsed, spec);
    } else if (spec.command == "shadow") {
        results = cmd_shadow(parsed, spec);
    } else if (spec.command == "dsp-check") {
        results = cmd_dsp_check(parsed, spec);
    } else if (spec.command == "avg-shadow") {
        results = cmd_avg_shadow(parsed, spec);
    } else if (spec.command == "omega-bar") {
        results = cmd_omega_bar(parsed, spec);
    } else if (spec.command == "dc2-scan") {
        results = cmd_dc2_scan(parsed, spec);
    } else if (spec.command == "irregular-scan") {
        results = cmd_irregular_scan(parsed, spec);
    } else if (spec.command == "scrambled-check") {
        results = cmd_scrambled_check(parsed, spec);
    } else if (spec.command == "measure-center") {
        results = cmd_measure_center(parsed, spec);
    } else {
        throw schema_error("unknown command \"" + spec.command + "\"");
    }

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    json report;
    report["schema_version"] = kSchemaVersion;
    report["toolkit_version"] = kToolkitVersion;
    report["command"] = spec.command;
    report["seed"] = spec.seed;
    report["input_hash"] = input_hash(spec.spec_text);
    report["wall_clock_seconds"] = elapsed.count();
    report["results"] = results;
    return report;
}

}  // namespace sdtk
