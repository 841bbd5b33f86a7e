#include "sdtk/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace sdtk {

bool TransitionGraph::has_edge(int u, int v) const {
    const auto& succ = adjacency[static_cast<size_t>(u)];
    return std::binary_search(succ.begin(), succ.end(), v);
}

TransitionGraph delta_transition_graph(const FiniteMapSystem& system, double delta) {
    if (delta < 0.0) throw toolkit_error("delta must be nonnegative");
    TransitionGraph graph;
    graph.labels = system.points;
    graph.provenance = "delta";
    graph.delta = delta;
    const int n = system.point_count();
    graph.adjacency.assign(static_cast<size_t>(n), {});
    for (int x = 0; x < n; ++x) {
        const int fx = system.apply(x);
        for (int y = 0; y < n; ++y) {
            if (system.distance(fx, y) <= delta) {
                graph.adjacency[static_cast<size_t>(x)].push_back(y);
            }
        }
    }
    return graph;
}

TransitionGraph symbolic_transition_graph(const SymbolicSystem& system) {
    TransitionGraph graph;
    graph.labels = system.alphabet.names();
    graph.provenance = "symbolic";
    const int n = system.symbol_count();
    graph.adjacency.assign(static_cast<size_t>(n), {});
    for (int a = 0; a < n; ++a) graph.adjacency[static_cast<size_t>(a)] = system.successors(a);
    return graph;
}

namespace {

// Tarjan's algorithm; components come out in reverse topological order.
struct SccState {
    const TransitionGraph* graph = nullptr;
    std::vector<int> index, low, on_stack;
    std::vector<int> stack;
    int counter = 0;
    std::vector<std::vector<int>> components;

    void visit(int v) {
        index[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = counter++;
        stack.push_back(v);
        on_stack[static_cast<size_t>(v)] = 1;
        for (int w : graph->successors(v)) {
            if (index[static_cast<size_t>(w)] < 0) {
                visit(w);
                low[static_cast<size_t>(v)] =
                    std::min(low[static_cast<size_t>(v)], low[static_cast<size_t>(w)]);
            } else if (on_stack[static_cast<size_t>(w)]) {
                low[static_cast<size_t>(v)] =
                    std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
            }
        }
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
            std::vector<int> comp;
            while (true) {
                const int w = stack.back();
                stack.pop_back();
                on_stack[static_cast<size_t>(w)] = 0;
                comp.push_back(w);
                if (w == v) break;
            }
            std::sort(comp.begin(), comp.end());
            components.push_back(std::move(comp));
        }
    }
};

std::vector<std::vector<int>> strongly_connected_components(const TransitionGraph& graph) {
    SccState state;
    state.graph = &graph;
    const int n = graph.vertex_count();
    state.index.assign(static_cast<size_t>(n), -1);
    state.low.assign(static_cast<size_t>(n), 0);
    state.on_stack.assign(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (state.index[static_cast<size_t>(v)] < 0) state.visit(v);
    }
    return state.components;
}

bool component_is_recurrent(const std::vector<int>& comp, const TransitionGraph& graph) {
    if (comp.size() > 1) return true;
    return graph.has_edge(comp.front(), comp.front());
}

bool covers_all_and_connected(const TransitionGraph& graph) {
    const auto sccs = strongly_connected_components(graph);
    return sccs.size() == 1 &&
           static_cast<int>(sccs.front().size()) == graph.vertex_count();
}

}  // namespace

ChainComponentSet chain_components(const TransitionGraph& graph) {
    ChainComponentSet out;
    for (auto& comp : strongly_connected_components(graph)) {
        if (component_is_recurrent(comp, graph)) {
            out.components.push_back(std::move(comp));
        } else {
            out.non_recurrent.push_back(comp.front());
        }
    }
    std::sort(out.components.begin(), out.components.end());
    std::sort(out.non_recurrent.begin(), out.non_recurrent.end());
    return out;
}

bool is_chain_transitive(const TransitionGraph& graph) {
    if (graph.vertex_count() == 0) return false;
    bool has_edge = false;
    for (const auto& succ : graph.adjacency) has_edge = has_edge || !succ.empty();
    return has_edge && covers_all_and_connected(graph);
}

namespace {

// BFS levels from the least vertex of the component; -1 outside of it.
std::vector<int> bfs_levels(const std::vector<int>& component, const TransitionGraph& graph,
                            int root) {
    std::vector<char> in_component(static_cast<size_t>(graph.vertex_count()), 0);
    for (int v : component) in_component[static_cast<size_t>(v)] = 1;
    std::vector<int> level(static_cast<size_t>(graph.vertex_count()), -1);
    std::deque<int> queue{root};
    level[static_cast<size_t>(root)] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : graph.successors(u)) {
            if (!in_component[static_cast<size_t>(v)]) continue;
            if (level[static_cast<size_t>(v)] < 0) {
                level[static_cast<size_t>(v)] = level[static_cast<size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return level;
}

void require_strongly_connected(const std::vector<int>& component, const TransitionGraph& graph) {
    if (component.empty()) throw not_strongly_connected_error("empty component");
    std::vector<char> in_component(static_cast<size_t>(graph.vertex_count()), 0);
    for (int v : component) in_component[static_cast<size_t>(v)] = 1;
    // Forward reachability from the least vertex, then the same on the
    // transposed restriction.
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<char> seen(static_cast<size_t>(graph.vertex_count()), 0);
        std::deque<int> queue{component.front()};
        seen[static_cast<size_t>(component.front())] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int w : component) {
                const bool step = pass == 0 ? graph.has_edge(u, w) : graph.has_edge(w, u);
                if (step && !seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    queue.push_back(w);
                }
            }
        }
        for (int v : component) {
            if (!seen[static_cast<size_t>(v)]) {
                throw not_strongly_connected_error("vertex set is not strongly connected");
            }
        }
    }
    bool has_edge = false;
    for (int v : component) has_edge = has_edge || !graph.successors(v).empty();
    if (!has_edge) throw not_strongly_connected_error("component carries no cycle");
}

}  // namespace

int graph_period(const std::vector<int>& component, const TransitionGraph& graph) {
    require_strongly_connected(component, graph);
    const int root = *std::min_element(component.begin(), component.end());
    const auto level = bfs_levels(component, graph, root);
    std::vector<char> in_component(static_cast<size_t>(graph.vertex_count()), 0);
    for (int v : component) in_component[static_cast<size_t>(v)] = 1;
    int g = 0;
    for (int u : component) {
        for (int v : graph.successors(u)) {
            if (!in_component[static_cast<size_t>(v)]) continue;
            g = std::gcd(g, level[static_cast<size_t>(u)] + 1 - level[static_cast<size_t>(v)]);
        }
    }
    return g == 0 ? 1 : std::abs(g);
}

CyclicDecomposition cyclic_decomposition(const std::vector<int>& component,
                                         const TransitionGraph& graph) {
    CyclicDecomposition out;
    out.m = graph_period(component, graph);
    const int root = *std::min_element(component.begin(), component.end());
    const auto level = bfs_levels(component, graph, root);
    out.class_of.assign(static_cast<size_t>(graph.vertex_count()), -1);
    out.classes.assign(static_cast<size_t>(out.m), {});
    for (int v : component) {
        const int r = level[static_cast<size_t>(v)] % out.m;
        out.class_of[static_cast<size_t>(v)] = r;
        out.classes[static_cast<size_t>(r)].push_back(v);
    }
    for (auto& cls : out.classes) std::sort(cls.begin(), cls.end());
    return out;
}

CyclicDecomposition cyclic_decomposition(const TransitionGraph& graph) {
    std::vector<int> all(static_cast<size_t>(graph.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    return cyclic_decomposition(all, graph);
}

bool chain_equivalent(const TransitionGraph& graph, const CyclicDecomposition& decomposition,
                      int x, int y) {
    (void)graph;
    const int cx = decomposition.class_of.at(static_cast<size_t>(x));
    const int cy = decomposition.class_of.at(static_cast<size_t>(y));
    if (cx < 0 || cy < 0) {
        throw different_components_error("vertex outside the decomposed component");
    }
    return cx == cy;
}

bool chain_proximal(const TransitionGraph& graph, int x, int y) {
    if (x == y) return true;
    const int n = graph.vertex_count();
    std::vector<char> seen(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    std::deque<std::pair<int, int>> queue{{x, y}};
    seen[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)] = 1;
    while (!queue.empty()) {
        const auto [u, v] = queue.front();
        queue.pop_front();
        for (int u2 : graph.successors(u)) {
            for (int v2 : graph.successors(v)) {
                if (u2 == v2) return true;
                auto& mark =
                    seen[static_cast<size_t>(u2) * static_cast<size_t>(n) + static_cast<size_t>(v2)];
                if (!mark) {
                    mark = 1;
                    queue.emplace_back(u2, v2);
                }
            }
        }
    }
    return false;
}

bool is_chain_mixing(const TransitionGraph& graph) {
    if (!is_chain_transitive(graph)) return false;
    std::vector<int> all(static_cast<size_t>(graph.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    return graph_period(all, graph) == 1;
}

namespace {

// reach[k][u*n+v] = a path u -> v with exactly k edges exists.
std::vector<std::vector<char>> path_length_table(const TransitionGraph& graph, int max_len) {
    const int n = graph.vertex_count();
    std::vector<std::vector<char>> reach(
        static_cast<size_t>(max_len) + 1,
        std::vector<char>(static_cast<size_t>(n) * static_cast<size_t>(n), 0));
    for (int v = 0; v < n; ++v) {
        reach[0][static_cast<size_t>(v) * static_cast<size_t>(n) + static_cast<size_t>(v)] = 1;
    }
    for (int k = 1; k <= max_len; ++k) {
        for (int u = 0; u < n; ++u) {
            for (int w : graph.successors(u)) {
                for (int v = 0; v < n; ++v) {
                    if (reach[static_cast<size_t>(k - 1)]
                             [static_cast<size_t>(w) * static_cast<size_t>(n) +
                              static_cast<size_t>(v)]) {
                        reach[static_cast<size_t>(k)]
                             [static_cast<size_t>(u) * static_cast<size_t>(n) +
                              static_cast<size_t>(v)] = 1;
                    }
                }
            }
        }
    }
    return reach;
}

// Largest integer not representable as a nonnegative combination of the
// generators (gcd 1 assumed); 0 when every positive integer is representable.
int frobenius_bound(const std::vector<int>& generators) {
    int smallest = generators.front();
    int largest = generators.front();
    for (int g : generators) {
        smallest = std::min(smallest, g);
        largest = std::max(largest, g);
    }
    if (smallest == 1) return 0;
    const int limit = smallest * largest + 1;
    std::vector<char> representable(static_cast<size_t>(limit) + 1, 0);
    representable[0] = 1;
    for (int s = 1; s <= limit; ++s) {
        for (int g : generators) {
            if (g <= s && representable[static_cast<size_t>(s - g)]) {
                representable[static_cast<size_t>(s)] = 1;
                break;
            }
        }
    }
    int f = 0;
    for (int s = 1; s <= limit; ++s) {
        if (!representable[static_cast<size_t>(s)]) f = s;
    }
    return f;
}

}  // namespace

UniformChainBound uniform_chain_bound(const TransitionGraph& graph,
                                      const CyclicDecomposition& decomposition) {
    const int n = graph.vertex_count();
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    require_strongly_connected(all, graph);
    const int m = decomposition.m;

    // Cycle lengths attained up to n*n steps generate, after division by m,
    // a numerical semigroup with gcd 1; its Frobenius bound caps how far the
    // achievability table has to look.
    const int cycle_scan = std::max(n * n, m);
    auto reach = path_length_table(graph, cycle_scan);
    std::vector<int> generators;
    for (int k = 1; k <= cycle_scan; ++k) {
        bool closed = false;
        for (int v = 0; v < n && !closed; ++v) {
            closed = reach[static_cast<size_t>(k)][static_cast<size_t>(v) * static_cast<size_t>(n) +
                                                   static_cast<size_t>(v)] != 0;
        }
        if (closed) generators.push_back(k / m);
    }
    const int frob = frobenius_bound(generators);
    const int n_limit = 2 * n * n + frob + 1;  // path length limit is m * n_limit
    const int max_len = m * n_limit;
    if (max_len > cycle_scan) reach = path_length_table(graph, max_len);

    auto has_path = [&](int x, int y, int k) {
        return reach[static_cast<size_t>(k)][static_cast<size_t>(x) * static_cast<size_t>(n) +
                                             static_cast<size_t>(y)] != 0;
    };

    UniformChainBound result;
    result.checked_limit = n_limit;
    int bound = 1;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (decomposition.class_of[static_cast<size_t>(x)] !=
                decomposition.class_of[static_cast<size_t>(y)]) {
                continue;
            }
            int pair_bound = n_limit + 1;
            for (int start = n_limit; start >= 1; --start) {
                if (!has_path(x, y, m * start)) break;
                pair_bound = start;
            }
            if (pair_bound > n_limit) {
                throw toolkit_error("no path of the maximal checked length; bound search failed");
            }
            bound = std::max(bound, pair_bound);
        }
    }
    result.bound = bound;

    // Upgrade check: the achievability matrices follow a deterministic
    // recurrence, so once reach[k] == reach[k + m] at some k the sequence is
    // m-periodic from k on. Lengths past the table then repeat the checked
    // tail, extending the certificate to all n >= bound.
    bool periodic_tail = false;
    for (int k = 1; k + m <= max_len && !periodic_tail; ++k) {
        periodic_tail = reach[static_cast<size_t>(k)] == reach[static_cast<size_t>(k) + static_cast<size_t>(m)];
    }
    result.certified_all_n = periodic_tail;
    return result;
}

std::optional<std::vector<int>> path_of_length(const TransitionGraph& graph, int x, int y, int k) {
    if (k < 1) throw toolkit_error("path_of_length needs k >= 1");
    const int n = graph.vertex_count();
    // feasible[t][v]: y reachable from v in exactly k - t steps.
    std::vector<std::vector<char>> feasible(static_cast<size_t>(k) + 1,
                                            std::vector<char>(static_cast<size_t>(n), 0));
    feasible[static_cast<size_t>(k)][static_cast<size_t>(y)] = 1;
    for (int t = k - 1; t >= 0; --t) {
        for (int v = 0; v < n; ++v) {
            for (int w : graph.successors(v)) {
                if (feasible[static_cast<size_t>(t + 1)][static_cast<size_t>(w)]) {
                    feasible[static_cast<size_t>(t)][static_cast<size_t>(v)] = 1;
                    break;
                }
            }
        }
    }
    if (!feasible[0][static_cast<size_t>(x)]) return std::nullopt;
    std::vector<int> path{x};
    int current = x;
    for (int t = 0; t < k; ++t) {
        for (int w : graph.successors(current)) {
            if (feasible[static_cast<size_t>(t + 1)][static_cast<size_t>(w)]) {
                current = w;
                break;
            }
        }
        path.push_back(current);
    }
    return path;
}

}  // namespace sdtk
