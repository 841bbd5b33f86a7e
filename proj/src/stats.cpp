#include "sdtk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "sdtk/graph.hpp"
#include "sdtk/rng.hpp"

namespace sdtk {

namespace {

constexpr int kScanDepth = 48;

int tail_window_start(int horizon, double tail_fraction) {
    const int start = static_cast<int>(std::ceil((1.0 - tail_fraction) * horizon));
    return std::max(1, std::min(start, horizon));
}

}  // namespace

DensityEstimate upper_lower_density(const std::vector<int>& indices, int horizon,
                                    double tail_fraction) {
    if (horizon < 2) throw toolkit_error("density estimate needs horizon >= 2");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw toolkit_error("tail_fraction must be in (0, 1]");
    }
    std::vector<char> member(static_cast<size_t>(horizon), 0);
    for (int i : indices) {
        if (i >= 0 && i < horizon) member[static_cast<size_t>(i)] = 1;
    }
    DensityEstimate out;
    out.horizon = horizon;
    out.tail_fraction = tail_fraction;
    out.prefix_densities.reserve(static_cast<size_t>(horizon));
    int count = 0;
    for (int n = 1; n <= horizon; ++n) {
        count += member[static_cast<size_t>(n - 1)];
        out.prefix_densities.push_back(static_cast<double>(count) / static_cast<double>(n));
    }
    const int start = tail_window_start(horizon, tail_fraction);
    out.upper = 0.0;
    out.lower = 1.0;
    for (int n = start; n <= horizon; ++n) {
        const double d = out.prefix_densities[static_cast<size_t>(n - 1)];
        out.upper = std::max(out.upper, d);
        out.lower = std::min(out.lower, d);
    }
    return out;
}

EmpiricalMeasure empirical_measure(const std::vector<int>& orbit_states) {
    if (orbit_states.empty()) throw toolkit_error("empirical measure needs horizon >= 1");
    std::map<int, int> counts;
    for (int s : orbit_states) ++counts[s];
    EmpiricalMeasure out;
    out.horizon = static_cast<int>(orbit_states.size());
    for (const auto& [state, count] : counts) {
        out.support.push_back(state);
        out.weights.push_back(static_cast<double>(count) / static_cast<double>(out.horizon));
    }
    return out;
}

namespace {

template <typename Match>
OmegaBarEstimate omega_bar_from_matcher(int horizon, int candidate_count, double theta,
                                        double epsilon, double tail_fraction, Match matches) {
    if (horizon < 100) throw toolkit_error("omega-bar estimate needs horizon >= 100");
    OmegaBarEstimate out;
    out.theta = theta;
    out.epsilon = epsilon;
    out.horizon = horizon;
    for (int c = 0; c < candidate_count; ++c) {
        std::vector<int> hits;
        for (int i = 0; i < horizon; ++i) {
            if (matches(i, c)) hits.push_back(i);
        }
        const auto density = upper_lower_density(hits, horizon, tail_fraction);
        out.upper_estimates.push_back(density.upper);
        if (density.upper > theta) out.reported.push_back(c);
    }
    return out;
}

}  // namespace

OmegaBarEstimate omega_bar_estimate(const std::vector<int>& orbit_states,
                                    const std::vector<int>& candidates, double theta,
                                    double tail_fraction) {
    return omega_bar_from_matcher(
        static_cast<int>(orbit_states.size()), static_cast<int>(candidates.size()), theta, 0.0,
        tail_fraction, [&](int i, int c) {
            return orbit_states[static_cast<size_t>(i)] == candidates[static_cast<size_t>(c)];
        });
}

OmegaBarEstimate omega_bar_estimate(const std::vector<SymbolicPoint>& sequence,
                                    const std::vector<SymbolicPoint>& candidates, double epsilon,
                                    double theta, double tail_fraction) {
    return omega_bar_from_matcher(
        static_cast<int>(sequence.size()), static_cast<int>(candidates.size()), theta, epsilon,
        tail_fraction, [&](int i, int c) {
            const auto& x = sequence[static_cast<size_t>(i)];
            const auto& y = candidates[static_cast<size_t>(c)];
            if (epsilon <= 0.0) return x == y;
            return truncated_distance(x, y, kScanDepth) < epsilon;
        });
}

std::vector<int> omega_bar_exact_finite(const FiniteMapSystem& system, int start) {
    std::vector<int> first_seen(static_cast<size_t>(system.point_count()), -1);
    int x = start;
    int step = 0;
    while (first_seen[static_cast<size_t>(x)] < 0) {
        first_seen[static_cast<size_t>(x)] = step++;
        x = system.apply(x);
    }
    // x now sits on the eventually entered cycle; walk it once.
    std::vector<int> cycle{x};
    for (int y = system.apply(x); y != x; y = system.apply(y)) cycle.push_back(y);
    std::sort(cycle.begin(), cycle.end());
    return cycle;
}

namespace {

FiniteMapSystem power_system(const FiniteMapSystem& system, int m) {
    FiniteMapSystem powered = system;
    for (int v = 0; v < system.point_count(); ++v) {
        int y = v;
        for (int i = 0; i < m; ++i) y = system.apply(y);
        powered.map_to[static_cast<size_t>(v)] = y;
    }
    return powered;
}

}  // namespace

bool omega_bar_power_identity_check(const FiniteMapSystem& system, int start, int m) {
    if (m < 1) throw toolkit_error("power identity check needs m >= 1");
    const auto under_f = omega_bar_exact_finite(system, start);
    const auto powered = power_system(system, m);

    std::set<int> pieces_union;
    int x = start;
    for (int i = 0; i < m; ++i) {
        const auto piece = omega_bar_exact_finite(powered, x);
        pieces_union.insert(piece.begin(), piece.end());

        // f^i should carry the f^m omega-bar set of start onto this piece.
        std::set<int> mapped;
        for (int v : omega_bar_exact_finite(powered, start)) {
            int y = v;
            for (int j = 0; j < i; ++j) y = system.apply(y);
            mapped.insert(y);
        }
        if (!std::equal(mapped.begin(), mapped.end(), piece.begin(), piece.end()) ||
            mapped.size() != piece.size()) {
            return false;
        }
        x = system.apply(x);
    }
    return std::vector<int>(pieces_union.begin(), pieces_union.end()) == under_f;
}

std::vector<SymbolicPoint> omega_bar_exact_symbolic(const SymbolicPoint& point) {
    const auto& period = point.period();
    const int p = static_cast<int>(period.size());
    std::vector<SymbolicPoint> out;
    for (int r = 0; r < p; ++r) {
        std::vector<int> rotated;
        rotated.reserve(period.size());
        for (int t = 0; t < p; ++t) rotated.push_back(period[static_cast<size_t>((r + t) % p)]);
        out.push_back(SymbolicPoint::periodic(std::move(rotated)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DistributionalFunctions distributional_functions(const std::vector<double>& step_distances,
                                                 const std::vector<double>& t_grid,
                                                 double tail_fraction) {
    const int horizon = static_cast<int>(step_distances.size());
    if (horizon < 2) throw toolkit_error("distributional functions need horizon >= 2");
    DistributionalFunctions out;
    out.t_grid = t_grid;
    out.horizon = horizon;
    const int start = tail_window_start(horizon, tail_fraction);
    for (double t : t_grid) {
        int count = 0;
        double lo = 1.0;
        double hi = 0.0;
        for (int n = 1; n <= horizon; ++n) {
            if (step_distances[static_cast<size_t>(n - 1)] < t) ++count;
            if (n >= start) {
                const double freq = static_cast<double>(count) / static_cast<double>(n);
                lo = std::min(lo, freq);
                hi = std::max(hi, freq);
            }
        }
        out.f_values.push_back(lo);
        out.f_star_values.push_back(hi);
    }
    return out;
}

DistributionalFunctions distributional_functions(const std::vector<SymbolicPoint>& orbit_x,
                                                 const std::vector<SymbolicPoint>& orbit_y,
                                                 const std::vector<double>& t_grid,
                                                 double tail_fraction) {
    if (orbit_x.size() != orbit_y.size()) {
        throw horizon_mismatch_error("orbit horizons differ");
    }
    std::vector<double> distances;
    distances.reserve(orbit_x.size());
    for (size_t i = 0; i < orbit_x.size(); ++i) {
        distances.push_back(truncated_distance(orbit_x[i], orbit_y[i], kScanDepth));
    }
    return distributional_functions(distances, t_grid, tail_fraction);
}

bool dc2_verdict(const DistributionalFunctions& df, double delta, double slack) {
    int at = -1;
    for (size_t i = 0; i < df.t_grid.size(); ++i) {
        if (std::abs(df.t_grid[i] - delta) <= 1e-12) at = static_cast<int>(i);
    }
    if (at < 0) throw toolkit_error("delta is not on the t grid");
    if (!(df.f_values[static_cast<size_t>(at)] < 1.0 - slack)) return false;
    for (size_t i = 0; i < df.t_grid.size(); ++i) {
        if (df.t_grid[i] <= 0.0) continue;
        if (!(df.f_star_values[i] > 1.0 - slack)) return false;
    }
    return true;
}

IrregularityReport birkhoff_irregularity(const std::vector<double>& observable_values,
                                         double epsilon, double tail_fraction) {
    const int horizon = static_cast<int>(observable_values.size());
    if (horizon < 100) throw toolkit_error("irregularity report needs horizon >= 100");
    IrregularityReport out;
    out.epsilon = epsilon;
    out.prefix_averages.reserve(static_cast<size_t>(horizon));
    double sum = 0.0;
    for (int n = 1; n <= horizon; ++n) {
        sum += observable_values[static_cast<size_t>(n - 1)];
        out.prefix_averages.push_back(sum / static_cast<double>(n));
    }
    const int start = tail_window_start(horizon, tail_fraction);
    double lo = out.prefix_averages[static_cast<size_t>(start - 1)];
    double hi = lo;
    for (int n = start; n <= horizon; ++n) {
        const double a = out.prefix_averages[static_cast<size_t>(n - 1)];
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    out.oscillation = hi - lo;
    out.irregular = out.oscillation > epsilon;
    return out;
}

namespace {

// Shortest cycle through v, rotated so the least vertex leads; empty if none.
std::vector<int> shortest_cycle_through(const TransitionGraph& graph, int v) {
    const int n = graph.vertex_count();
    std::vector<int> parent(static_cast<size_t>(n), -2);
    std::deque<int> queue;
    for (int w : graph.successors(v)) {
        if (w == v) return {v};
        if (parent[static_cast<size_t>(w)] == -2) {
            parent[static_cast<size_t>(w)] = -1;
            queue.push_back(w);
        }
    }
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int w : graph.successors(u)) {
            if (w == v) {
                std::vector<int> cycle;
                for (int c = u; c != -1; c = parent[static_cast<size_t>(c)]) cycle.push_back(c);
                cycle.push_back(v);
                std::reverse(cycle.begin(), cycle.end());
                const auto least =
                    std::min_element(cycle.begin(), cycle.end()) - cycle.begin();
                std::rotate(cycle.begin(), cycle.begin() + least, cycle.end());
                return cycle;
            }
            if (parent[static_cast<size_t>(w)] == -2) {
                parent[static_cast<size_t>(w)] = u;
                queue.push_back(w);
            }
        }
    }
    return {};
}

std::vector<int> shortest_path(const TransitionGraph& graph, int from, int to) {
    if (from == to) return {from};
    const int n = graph.vertex_count();
    std::vector<int> parent(static_cast<size_t>(n), -2);
    std::deque<int> queue{from};
    parent[static_cast<size_t>(from)] = -1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int w : graph.successors(u)) {
            if (parent[static_cast<size_t>(w)] != -2) continue;
            parent[static_cast<size_t>(w)] = u;
            if (w == to) {
                std::vector<int> path;
                for (int c = to; c != -1; c = parent[static_cast<size_t>(c)]) path.push_back(c);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    throw toolkit_error("no path in a supposedly strongly connected graph");
}

}  // namespace

IrregularWitness irregular_witness_sft(const SymbolicSystem& system, int class_index,
                                       int block_ratio, int horizon, std::uint64_t seed) {
    if (horizon < 100) throw toolkit_error("irregular witness needs horizon >= 100");
    const auto graph = symbolic_transition_graph(system);
    if (!is_chain_transitive(graph)) {
        throw not_chain_transitive_error("irregular witness needs a chain transitive system");
    }
    if (!(topological_entropy(system) > 1e-12)) {
        throw no_disjoint_cycles_error("system has zero entropy; only one cycle available");
    }

    // Two distinct cycles whose vertex sets differ; the observable is the
    // indicator of symbols unique to the second one.
    std::vector<std::vector<int>> cycles;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        auto c = shortest_cycle_through(graph, v);
        if (!c.empty() && std::find(cycles.begin(), cycles.end(), c) == cycles.end()) {
            cycles.push_back(std::move(c));
        }
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    std::vector<int> cycle_a, cycle_b;
    for (size_t i = 0; i < cycles.size() && cycle_b.empty(); ++i) {
        for (size_t j = 0; j < cycles.size() && cycle_b.empty(); ++j) {
            if (i == j) continue;
            std::set<int> sa(cycles[i].begin(), cycles[i].end());
            bool has_unique = false;
            for (int v : cycles[j]) has_unique = has_unique || sa.count(v) == 0;
            if (has_unique) {
                cycle_a = cycles[i];
                cycle_b = cycles[j];
            }
        }
    }
    if (cycle_b.empty()) {
        throw no_disjoint_cycles_error("fewer than two distinct cycles found");
    }
    std::set<int> set_a(cycle_a.begin(), cycle_a.end());
    auto phi = [&](int symbol) {
        return std::find(cycle_b.begin(), cycle_b.end(), symbol) != cycle_b.end() &&
                       set_a.count(symbol) == 0
                   ? 1.0
                   : 0.0;
    };

    const auto decomposition = cyclic_decomposition(graph);
    const auto& start_class =
        decomposition.classes.at(static_cast<size_t>(class_index % decomposition.m));
    const int start_vertex =
        start_class[static_cast<size_t>(seed % static_cast<std::uint64_t>(start_class.size()))];

    std::vector<int> symbols = shortest_path(graph, start_vertex, cycle_a.front());
    std::int64_t block = 16;
    bool on_a = true;
    std::vector<int> current_cycle = cycle_a;
    // Keep one block of slack so the final dwell, whose cycle becomes the
    // period, is never cut mid-schedule.
    while (static_cast<int>(symbols.size()) < horizon) {
        const auto& cyc = on_a ? cycle_a : cycle_b;
        const int len = static_cast<int>(cyc.size());
        const std::int64_t repeats = (block + len - 1) / len;
        for (std::int64_t r = 0; r < repeats; ++r) {
            symbols.insert(symbols.end(), cyc.begin(), cyc.end());
        }
        current_cycle = cyc;
        if (static_cast<int>(symbols.size()) >= horizon) break;
        const auto& next_cyc = on_a ? cycle_b : cycle_a;
        const auto bridge = shortest_path(graph, symbols.back(), next_cyc.front());
        symbols.insert(symbols.end(), bridge.begin() + 1, bridge.end());
        // The bridge ends at the next cycle's lead vertex; drop it so the
        // dwell loop re-adds it as the cycle start.
        symbols.pop_back();
        on_a = !on_a;
        block *= block_ratio;
    }

    // Close into the last dwelled cycle: align the phase at the cut.
    const int cut = static_cast<int>(symbols.size());
    int phase = 0;
    for (size_t k = 0; k < current_cycle.size(); ++k) {
        if (current_cycle[k] == symbols.back()) phase = static_cast<int>(k);
    }
    std::vector<int> period;
    const int len = static_cast<int>(current_cycle.size());
    for (int t = 1; t <= len; ++t) {
        period.push_back(current_cycle[static_cast<size_t>((phase + t) % len)]);
    }
    IrregularWitness out;
    out.point = SymbolicPoint(std::vector<int>(symbols.begin(), symbols.begin() + cut), period);
    if (!out.point.admissible_in(system)) {
        throw toolkit_error("irregular witness construction produced an inadmissible point");
    }
    out.cycle_a = cycle_a;
    out.cycle_b = cycle_b;
    out.observable.reserve(static_cast<size_t>(horizon));
    for (int i = 0; i < horizon; ++i) out.observable.push_back(phi(out.point.at(i)));
    // Window covering the last 3/4 of the horizon: wide enough to straddle a
    // dwell-block peak and the following decay even at block ratio 4.
    out.report = birkhoff_irregularity(out.observable, 0.25, 0.75);
    return out;
}

namespace {

// Simple cycles whose least vertex equals the DFS root, capped in count;
// enough to seed periodic-point candidates on small symbol graphs.
void simple_cycles_from(const TransitionGraph& graph, int root, int current,
                        std::vector<int>& path, std::vector<char>& on_path,
                        std::vector<std::vector<int>>& out, size_t cap) {
    for (int w : graph.successors(current)) {
        if (out.size() >= cap) return;
        if (w == root) out.push_back(path);
        if (w > root && !on_path[static_cast<size_t>(w)]) {
            on_path[static_cast<size_t>(w)] = 1;
            path.push_back(w);
            simple_cycles_from(graph, root, w, path, on_path, out, cap);
            path.pop_back();
            on_path[static_cast<size_t>(w)] = 0;
        }
    }
}

std::vector<std::vector<int>> all_simple_cycles(const TransitionGraph& graph, size_t cap) {
    std::vector<std::vector<int>> out;
    for (int v = 0; v < graph.vertex_count() && out.size() < cap; ++v) {
        std::vector<int> path{v};
        std::vector<char> on_path(static_cast<size_t>(graph.vertex_count()), 0);
        on_path[static_cast<size_t>(v)] = 1;
        simple_cycles_from(graph, v, v, path, on_path, out, cap);
    }
    return out;
}

}  // namespace

ScrambledWitness scrambled_family_check(const SymbolicSystem& system,
                                        const std::vector<SymbolicPoint>& family, int horizon,
                                        double theta, double epsilon, int period_bound) {
    if (family.size() < 2) throw toolkit_error("scrambled check needs a family of size >= 2");
    for (const auto& p : family) {
        if (!p.admissible_in(system)) throw toolkit_error("family point not in the system");
    }
    // Candidate pool: exact omega-bar sets of all family members, plus the
    // periodic points of the system's simple cycles (the family members may
    // only pass near those during long preperiods).
    std::vector<SymbolicPoint> candidates;
    for (const auto& p : family) {
        const auto omega = omega_bar_exact_symbolic(p);
        candidates.insert(candidates.end(), omega.begin(), omega.end());
    }
    if (system.symbol_count() <= 10) {
        for (const auto& cycle : all_simple_cycles(symbolic_transition_graph(system), 128)) {
            const auto omega = omega_bar_exact_symbolic(SymbolicPoint::periodic(cycle));
            candidates.insert(candidates.end(), omega.begin(), omega.end());
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::set<int>> estimates;
    for (const auto& p : family) {
        std::vector<SymbolicPoint> samples;
        samples.reserve(static_cast<size_t>(horizon));
        SymbolicPoint x = p;
        for (int i = 0; i < horizon; ++i) {
            samples.push_back(x);
            x = x.shifted();
        }
        const auto est = omega_bar_estimate(samples, candidates, epsilon, theta, 0.5);
        estimates.emplace_back(est.reported.begin(), est.reported.end());
    }

    ScrambledWitness out;
    out.theta = theta;
    out.epsilon = epsilon;
    out.period_bound = period_bound;
    out.verdict = true;
    for (size_t i = 0; i < family.size(); ++i) {
        for (size_t j = 0; j < family.size(); ++j) {
            if (i == j) continue;
            ScrambledPairRecord rec;
            rec.x_index = static_cast<int>(i);
            rec.y_index = static_cast<int>(j);
            for (int c : estimates[i]) {
                if (estimates[j].count(c) == 0) rec.difference_nonempty = true;
                if (estimates[j].count(c) != 0) rec.intersection_nonempty = true;
                const int p = candidates[static_cast<size_t>(c)].pure_period();
                if (p == 0 || p > period_bound) rec.has_nonperiodic_element = true;
            }
            out.verdict = out.verdict && rec.difference_nonempty && rec.intersection_nonempty &&
                          rec.has_nonperiodic_element;
            out.pairs.push_back(rec);
        }
    }
    return out;
}

std::vector<int> measure_center_finite(const FiniteMapSystem& system) {
    const int n = system.point_count();

    // Oracle 1: points on a cycle (f^k fixes them for some k <= n).
    std::vector<int> cyclic;
    for (int v = 0; v < n; ++v) {
        int y = v;
        for (int k = 1; k <= n; ++k) {
            y = system.apply(y);
            if (y == v) {
                cyclic.push_back(v);
                break;
            }
        }
    }

    // Oracle 2: self-recurrent points v in their own omega-bar set.
    std::vector<int> recurrent;
    for (int v = 0; v < n; ++v) {
        const auto omega = omega_bar_exact_finite(system, v);
        if (std::binary_search(omega.begin(), omega.end(), v)) recurrent.push_back(v);
    }

    // Oracle 3: invariant-measure supports, via in-degree pruning of the
    // functional graph (what survives is exactly the union of cycles).
    std::vector<char> alive(static_cast<size_t>(n), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> in_degree(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            if (alive[static_cast<size_t>(v)]) {
                ++in_degree[static_cast<size_t>(system.apply(v))];
            }
        }
        for (int v = 0; v < n; ++v) {
            if (alive[static_cast<size_t>(v)] && in_degree[static_cast<size_t>(v)] == 0) {
                alive[static_cast<size_t>(v)] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> supports;
    for (int v = 0; v < n; ++v) {
        if (alive[static_cast<size_t>(v)]) supports.push_back(v);
    }

    if (cyclic != recurrent || cyclic != supports) {
        throw toolkit_error("measure center oracles disagree");
    }
    return cyclic;
}

int uniform_recurrence_gap(const FiniteMapSystem& system) {
    const int n = system.point_count();
    int x = 0;
    std::set<int> visited{0};
    for (int k = 1; k < n; ++k) {
        x = system.apply(x);
        if (!visited.insert(x).second) {
            throw not_minimal_error("input is not a single cycle");
        }
    }
    if (system.apply(x) != 0) throw not_minimal_error("input is not a single cycle");
    return n;
}

}  // namespace sdtk
