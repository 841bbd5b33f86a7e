#include "sdtk/shadowing.hpp"

#include <algorithm>
#include <cmath>

#include "sdtk/rng.hpp"

namespace sdtk {

namespace {

constexpr int kDefectScanDepth = 60;
constexpr int kErrorScanDepth = 48;

// First-disagreement distance computed positionally, cheap for points with
// long preperiods.
double indexed_distance(const SymbolicPoint& x, std::int64_t offset, const SymbolicPoint& y,
                        int depth) {
    for (int t = 0; t < depth; ++t) {
        if (x.at(offset + t) != y.at(t)) return std::ldexp(1.0, -t);
    }
    return 0.0;
}

int class_of_point(const CyclicDecomposition& decomposition, const SymbolicPoint& p) {
    return decomposition.class_of.at(static_cast<size_t>(p.at(0)));
}

}  // namespace

PseudoOrbit make_pseudo_orbit(const SymbolicSystem& system, std::vector<SymbolicPoint> points,
                              double delta) {
    if (points.empty()) throw toolkit_error("pseudo orbit needs at least one point");
    for (const auto& p : points) {
        if (!p.admissible_in(system)) throw toolkit_error("pseudo orbit point not in the system");
    }
    PseudoOrbit po;
    po.points = std::move(points);
    po.delta = delta;
    po.defects.reserve(po.points.size() - 1);
    for (size_t i = 0; i + 1 < po.points.size(); ++i) {
        po.defects.push_back(
            sequence_metric(po.points[i].shifted(), po.points[i + 1], kDefectScanDepth).value);
    }
    const auto graph = symbolic_transition_graph(system);
    if (is_chain_transitive(graph)) {
        const auto decomposition = cyclic_decomposition(graph);
        po.class_trace.reserve(po.points.size());
        for (const auto& p : po.points) po.class_trace.push_back(class_of_point(decomposition, p));
    }
    return po;
}

namespace {

// Random admissible point whose symbols start with `prefix`: continue with
// seeded admissible choices and close into a cycle at the first revisit.
SymbolicPoint random_point_with_prefix(const SymbolicSystem& system, std::vector<int> prefix,
                                       RngStream& rng) {
    std::vector<int> symbols = std::move(prefix);
    std::vector<int> first_pos(static_cast<size_t>(system.symbol_count()), -1);
    for (size_t i = 0; i < symbols.size(); ++i) {
        first_pos[static_cast<size_t>(symbols[i])] = static_cast<int>(i);
    }
    int current = symbols.back();
    while (true) {
        const auto succ = system.successors(current);
        const int next = succ[static_cast<size_t>(rng.next_below(static_cast<int>(succ.size())))];
        const int seen_at = first_pos[static_cast<size_t>(next)];
        if (seen_at >= 0) {
            std::vector<int> pre(symbols.begin(), symbols.begin() + seen_at);
            std::vector<int> per(symbols.begin() + seen_at, symbols.end());
            return SymbolicPoint(std::move(pre), std::move(per));
        }
        first_pos[static_cast<size_t>(next)] = static_cast<int>(symbols.size());
        symbols.push_back(next);
        current = next;
    }
}

}  // namespace

PseudoOrbit random_pseudo_orbit(const SymbolicSystem& system, int start_class, int length, int m,
                                std::uint64_t seed) {
    if (m < 1) throw toolkit_error("random_pseudo_orbit needs m >= 1");
    if (length < 1) throw toolkit_error("random_pseudo_orbit needs length >= 1");
    const auto graph = symbolic_transition_graph(system);
    const bool transitive = is_chain_transitive(graph);

    std::vector<SymbolicPoint> points;
    points.reserve(static_cast<size_t>(length) + 1);
    {
        RngStream rng(splitmix64(seed) ^ 0x5134a1c5ULL);
        int first;
        if (transitive) {
            const auto decomposition = cyclic_decomposition(graph);
            const auto& cls = decomposition.classes.at(
                static_cast<size_t>(start_class % decomposition.m));
            first = cls[static_cast<size_t>(rng.next_below(static_cast<int>(cls.size())))];
        } else {
            first = rng.next_below(system.symbol_count());
        }
        points.push_back(random_point_with_prefix(system, {first}, rng));
    }
    for (int i = 0; i < length; ++i) {
        RngStream rng(seed + static_cast<std::uint64_t>(i) + 1);
        std::vector<int> prefix;
        prefix.reserve(static_cast<size_t>(m));
        const SymbolicPoint shifted = points.back().shifted();
        for (int t = 0; t < m; ++t) prefix.push_back(shifted.at(t));
        points.push_back(random_point_with_prefix(system, std::move(prefix), rng));
    }
    return make_pseudo_orbit(system, std::move(points), std::ldexp(1.0, -m));
}

namespace {

int delta_exponent(double delta) {
    for (int m = 1; m <= 60; ++m) {
        if (delta == std::ldexp(1.0, -m)) return m;
    }
    throw bad_delta_error("delta must be 2^(-m) with m >= 1");
}

}  // namespace

ShadowResult sft_shadow(const SymbolicSystem& system, const PseudoOrbit& po) {
    const int m = delta_exponent(po.delta);
    (void)m;
    for (double d : po.defects) {
        if (d > po.delta) throw toolkit_error("pseudo orbit defect exceeds its declared delta");
    }
    const int L = po.length();
    std::vector<int> pre;
    pre.reserve(static_cast<size_t>(L) + po.points.back().preperiod().size());
    for (int i = 0; i < L; ++i) pre.push_back(po.points[static_cast<size_t>(i)].at(0));
    const auto& last = po.points.back();
    pre.insert(pre.end(), last.preperiod().begin(), last.preperiod().end());
    SymbolicPoint shadow(std::move(pre), last.period());
    if (!shadow.admissible_in(system)) {
        throw toolkit_error("diagonal readout produced an inadmissible point");
    }

    ShadowResult result;
    result.shadow_point = shadow;
    result.horizon = L;
    double worst = 0.0;
    for (int i = 0; i <= L; ++i) {
        worst = std::max(
            worst, indexed_distance(shadow, i, po.points[static_cast<size_t>(i)], kErrorScanDepth));
    }
    result.epsilon_achieved = worst;
    const auto graph = symbolic_transition_graph(system);
    if (is_chain_transitive(graph)) {
        const auto decomposition = cyclic_decomposition(graph);
        result.same_class =
            class_of_point(decomposition, shadow) == class_of_point(decomposition, po.points[0]);
    }
    return result;
}

VerifyResult verify_shadowing(const SymbolicSystem& system, const PseudoOrbit& po,
                              const SymbolicPoint& candidate, double epsilon, int depth) {
    if (!candidate.admissible_in(system)) {
        throw toolkit_error("shadow candidate not in the system");
    }
    VerifyResult result;
    for (size_t i = 0; i < po.points.size(); ++i) {
        result.max_error =
            std::max(result.max_error, indexed_distance(candidate, static_cast<std::int64_t>(i),
                                                        po.points[i], depth));
    }
    result.within = result.max_error <= epsilon;
    return result;
}

DspReport dsp_check(const SymbolicSystem& system, int m_delta, int trials, int length,
                    std::uint64_t seed) {
    const auto graph = symbolic_transition_graph(system);
    if (!is_chain_transitive(graph)) {
        throw not_chain_transitive_error("dsp_check needs a chain transitive system");
    }
    const auto decomposition = cyclic_decomposition(graph);
    DspReport report;
    report.m = decomposition.m;
    report.trials = trials;
    for (int c = 0; c < decomposition.m; ++c) {
        DspClassReport cls;
        cls.class_index = c;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t trial_seed =
                splitmix64(seed + static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(trials) +
                           static_cast<std::uint64_t>(t));
            const auto po = random_pseudo_orbit(system, c, length, m_delta, trial_seed);
            const auto shadow = sft_shadow(system, po);
            cls.worst_epsilon = std::max(cls.worst_epsilon, shadow.epsilon_achieved);
            const bool in_class =
                shadow.same_class && class_of_point(decomposition, shadow.shadow_point) == c;
            cls.all_in_class = cls.all_in_class && in_class;
        }
        report.per_class.push_back(cls);
    }
    for (const auto& cls : report.per_class) {
        report.uniform =
            report.uniform && cls.all_in_class == report.per_class.front().all_in_class;
    }
    return report;
}

bool is_along_D(const SymbolicSystem& system, const PseudoOrbit& po) {
    const auto graph = symbolic_transition_graph(system);
    if (!is_chain_transitive(graph)) {
        throw not_chain_transitive_error("is_along_D needs a chain transitive system");
    }
    const auto decomposition = cyclic_decomposition(graph);
    for (size_t i = 0; i + 1 < po.points.size(); ++i) {
        const int here = class_of_point(decomposition, po.points[i]);
        const int next = class_of_point(decomposition, po.points[i + 1]);
        if (next != (here + 1) % decomposition.m) return false;
    }
    return true;
}

std::vector<double> average_defect_curve(const std::vector<SymbolicPoint>& points,
                                         const SymbolicSystem& system) {
    if (points.size() < 2) throw toolkit_error("average_defect_curve needs length >= 2");
    (void)system;
    std::vector<double> curve;
    curve.reserve(points.size() - 1);
    double sum = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        sum += sequence_metric(points[i].shifted(), points[i + 1], kDefectScanDepth).value;
        curve.push_back(sum / static_cast<double>(i + 1));
    }
    return curve;
}

DensityOneSelection density_one_subsequence(const std::vector<double>& values,
                                            const std::vector<double>& tolerance_schedule,
                                            int first_block, int block_ratio) {
    if (tolerance_schedule.empty()) throw toolkit_error("tolerance schedule must be nonempty");
    const int h = static_cast<int>(values.size());
    std::vector<double> suffix_sum(static_cast<size_t>(h) + 1, 0.0);
    for (int i = h - 1; i >= 0; --i) {
        suffix_sum[static_cast<size_t>(i)] =
            suffix_sum[static_cast<size_t>(i) + 1] + values[static_cast<size_t>(i)];
    }
    auto suffix_average = [&](int n) {
        return h > n ? suffix_sum[static_cast<size_t>(n)] / static_cast<double>(h - n) : 0.0;
    };

    DensityOneSelection out;
    // Level j governs [boundary_j, boundary_{j+1}) with tolerance tol_j; the
    // boundary advances once the remaining values average below tol_j^2, so
    // by Markov's inequality at most a tol_j fraction of the remainder is
    // rejected at that level.
    std::vector<int> starts{0};
    out.tolerances_used.push_back(tolerance_schedule[0]);
    int min_pos = first_block;
    for (size_t j = 1; j < tolerance_schedule.size(); ++j) {
        const double tol = tolerance_schedule[j];
        int b = std::max(starts.back() + 1, min_pos);
        while (b < h && suffix_average(b) > tol * tol) ++b;
        if (b >= h) break;
        starts.push_back(b);
        out.tolerances_used.push_back(tol);
        min_pos *= block_ratio;
    }
    out.level_boundaries = starts;

    int count = 0;
    size_t level = 0;
    out.prefix_density.reserve(static_cast<size_t>(h));
    for (int i = 0; i < h; ++i) {
        while (level + 1 < starts.size() && i >= starts[level + 1]) ++level;
        if (values[static_cast<size_t>(i)] <= out.tolerances_used[level]) {
            out.indices.push_back(i);
            ++count;
        }
        out.prefix_density.push_back(static_cast<double>(count) / static_cast<double>(i + 1));
    }
    return out;
}

std::vector<SymbolicPoint> block_alternation_sequence(const SymbolicPoint& a,
                                                      const SymbolicPoint& b, int first_block,
                                                      int ratio, int horizon) {
    if (first_block < 1 || ratio < 2 || horizon < 1) {
        throw toolkit_error("bad block schedule parameters");
    }
    std::vector<SymbolicPoint> out;
    out.reserve(static_cast<size_t>(horizon));
    std::int64_t block = first_block;
    bool use_a = true;
    while (static_cast<int>(out.size()) < horizon) {
        const SymbolicPoint& base = use_a ? a : b;
        SymbolicPoint p = base;
        for (std::int64_t t = 0; t < block && static_cast<int>(out.size()) < horizon; ++t) {
            out.push_back(p);
            p = p.shifted();
        }
        use_a = !use_a;
        block *= ratio;
    }
    return out;
}

AverageShadowTrace average_shadow_trace(const SymbolicSystem& system,
                                        const std::vector<SymbolicPoint>& spec_points,
                                        double epsilon, const AverageShadowSchedule& schedule,
                                        int horizon) {
    if (horizon < 2 || static_cast<int>(spec_points.size()) < horizon) {
        throw toolkit_error("average_shadow_trace needs horizon >= 2 within the supplied sequence");
    }
    if (epsilon <= 0.0) throw toolkit_error("epsilon must be positive");
    const auto graph = symbolic_transition_graph(system);
    if (!is_chain_transitive(graph)) {
        throw not_chain_transitive_error("average_shadow_trace needs a chain transitive system");
    }
    const auto decomposition = cyclic_decomposition(graph);

    std::vector<SymbolicPoint> points(spec_points.begin(), spec_points.begin() + horizon);
    auto po = make_pseudo_orbit(system, points, 1.0);
    if (!is_along_D(system, po)) {
        throw toolkit_error("input sequence does not advance along the cyclic decomposition");
    }

    AverageShadowTrace trace;
    for (int j = 0; j < schedule.max_levels; ++j) {
        trace.epsilons_used.push_back(schedule.epsilon_base * std::pow(schedule.decay, j));
        trace.deltas_used.push_back(schedule.delta_base * std::pow(schedule.decay, j));
    }
    // A step can only join a readout run when its endpoints agree at index 0,
    // which the metric guarantees for defects <= 1/2.
    std::vector<double> screen_tolerances = trace.deltas_used;
    for (double& t : screen_tolerances) t = std::min(t, 0.5);
    const auto selection = density_one_subsequence(po.defects, screen_tolerances,
                                                   schedule.first_block, schedule.block_ratio);
    trace.block_boundaries = selection.level_boundaries;

    // Anchored runs: maximal position intervals [p, q] whose internal steps
    // were all selected; on them the diagonal readout tracks the input.
    std::vector<char> step_ok(po.defects.size(), 0);
    for (int i : selection.indices) step_ok[static_cast<size_t>(i)] = 1;
    std::vector<std::pair<int, int>> runs;
    {
        int p = 0;
        for (int i = 0; i < static_cast<int>(po.defects.size()); ++i) {
            if (!step_ok[static_cast<size_t>(i)]) {
                runs.emplace_back(p, i);
                p = i + 1;
            }
        }
        runs.emplace_back(p, horizon - 1);
    }

    // Initial segment: copy enough of x_0 to land within epsilon of it.
    int hold = 0;
    if (epsilon < 1.0) hold = static_cast<int>(std::ceil(std::log2(1.0 / epsilon)));
    hold = std::min(hold, horizon - 1);

    std::vector<int> symbols;
    symbols.reserve(static_cast<size_t>(horizon));
    for (int i = 0; i <= hold; ++i) symbols.push_back(points[0].at(i));

    const int max_gap_growth = 4 * graph.vertex_count() * graph.vertex_count() + 64;
    int tail_anchor = -1;  // position from which the output follows a true input point

    for (auto [run_start, run_end] : runs) {
        if (run_end < static_cast<int>(symbols.size())) continue;  // inside the held prefix
        int p = std::max(run_start, static_cast<int>(symbols.size()));
        bool bridged = false;
        // Widen the gap into the run until a connecting path of the exact
        // length exists (gap 1 is the plain junction-edge check).
        while (!bridged && p <= run_end) {
            const int from = symbols.back();
            const int to = points[static_cast<size_t>(p)].at(0);
            const int gap = p - static_cast<int>(symbols.size()) + 1;
            if (gap > max_gap_growth) {
                throw schedule_exhausted_error("gap bridging exceeded the search budget");
            }
            if (auto path = path_of_length(graph, from, to, gap)) {
                for (size_t t = 1; t < path->size(); ++t) symbols.push_back((*path)[t]);
                bridged = true;
            } else {
                ++p;
            }
        }
        if (!bridged) continue;  // run swallowed whole; bridge to the next one
        for (int i = static_cast<int>(symbols.size()); i <= run_end; ++i) {
            symbols.push_back(points[static_cast<size_t>(i)].at(0));
        }
        tail_anchor = run_end;
    }
    if (static_cast<int>(symbols.size()) != horizon || tail_anchor != horizon - 1) {
        throw schedule_exhausted_error("could not anchor the tail at the final input point");
    }

    // The output follows points[tail_anchor] exactly from that position on.
    const auto& anchor = points[static_cast<size_t>(tail_anchor)];
    std::vector<int> pre(symbols.begin(), symbols.begin() + tail_anchor);
    pre.insert(pre.end(), anchor.preperiod().begin(), anchor.preperiod().end());
    SymbolicPoint result(std::move(pre), anchor.period());
    if (!result.admissible_in(system)) {
        throw toolkit_error("average shadow construction produced an inadmissible point");
    }

    trace.point = result;
    trace.start_class = class_of_point(decomposition, points[0]);
    trace.result_class = class_of_point(decomposition, result);
    if (indexed_distance(result, 0, points[0], kErrorScanDepth) >= epsilon) {
        throw toolkit_error("average shadow point escaped the epsilon ball around x_0");
    }
    double sum = 0.0;
    trace.cesaro_errors.reserve(static_cast<size_t>(horizon));
    for (int i = 0; i < horizon; ++i) {
        sum += indexed_distance(result, i, points[static_cast<size_t>(i)], kErrorScanDepth);
        trace.cesaro_errors.push_back(sum / static_cast<double>(i + 1));
    }
    return trace;
}

}  // namespace sdtk
