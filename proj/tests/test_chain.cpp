#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "sdtk/graph.hpp"
#include "sdtk/rng.hpp"
#include "sdtk/systems.hpp"

using namespace sdtk;

namespace {

TransitionGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    TransitionGraph g;
    for (int i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
    g.adjacency.assign(static_cast<size_t>(n), {});
    for (auto [u, v] : edges) g.adjacency[static_cast<size_t>(u)].push_back(v);
    for (auto& succ : g.adjacency) std::sort(succ.begin(), succ.end());
    g.provenance = "symbolic";
    return g;
}

TransitionGraph two_cycle() { return graph_from_edges(2, {{0, 1}, {1, 0}}); }

TransitionGraph golden_graph() {
    return symbolic_transition_graph(
        sft_from_forbidden_words(Alphabet({"0", "1"}), {{1, 1}}));
}

// Random strongly connected graph: a permutation cycle plus extra edges.
TransitionGraph random_strongly_connected(int n, RngStream& rng) {
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<size_t>(i)],
                                              order[static_cast<size_t>(rng.next_below(i + 1))]);
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        edges.insert({order[static_cast<size_t>(i)], order[static_cast<size_t>((i + 1) % n)]});
    }
    const int extra = rng.next_below(2 * n + 1);
    for (int i = 0; i < extra; ++i) edges.insert({rng.next_below(n), rng.next_below(n)});
    return graph_from_edges(n, {edges.begin(), edges.end()});
}

// Boolean matrix powers: exists[k][u][v] true when a length-k path joins them.
std::vector<std::vector<std::vector<char>>> path_powers(const TransitionGraph& g, int max_len) {
    const int n = g.vertex_count();
    std::vector table(static_cast<size_t>(max_len) + 1,
                      std::vector(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0)));
    for (int v = 0; v < n; ++v) table[0][static_cast<size_t>(v)][static_cast<size_t>(v)] = 1;
    for (int k = 1; k <= max_len; ++k) {
        for (int u = 0; u < n; ++u) {
            for (int w : g.successors(u)) {
                for (int v = 0; v < n; ++v) {
                    if (table[static_cast<size_t>(k - 1)][static_cast<size_t>(w)]
                             [static_cast<size_t>(v)]) {
                        table[static_cast<size_t>(k)][static_cast<size_t>(u)]
                             [static_cast<size_t>(v)] = 1;
                    }
                }
            }
        }
    }
    return table;
}

// Simple-cycle lengths by DFS enumeration (oracle only).
void collect_cycle_lengths(const TransitionGraph& g, int start, int current,
                           std::vector<char>& on_path, int depth, std::set<int>& lengths) {
    for (int w : g.successors(current)) {
        if (w == start) lengths.insert(depth + 1);
        if (w > start && !on_path[static_cast<size_t>(w)]) {
            on_path[static_cast<size_t>(w)] = 1;
            collect_cycle_lengths(g, start, w, on_path, depth + 1, lengths);
            on_path[static_cast<size_t>(w)] = 0;
        }
    }
}

std::set<int> all_cycle_lengths(const TransitionGraph& g) {
    std::set<int> lengths;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<char> on_path(static_cast<size_t>(g.vertex_count()), 0);
        on_path[static_cast<size_t>(v)] = 1;
        collect_cycle_lengths(g, v, v, on_path, 0, lengths);
    }
    return lengths;
}

std::vector<int> all_vertices(const TransitionGraph& g) {
    std::vector<int> out(static_cast<size_t>(g.vertex_count()));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

}  // namespace

TEST_CASE("delta transition graph examples") {
    FiniteMapSystem chain;
    chain.points = {"0", "1", "2"};
    chain.map_to = {1, 2, 1};
    chain.metric = FiniteMapSystem::discrete_metric(3);
    chain.validate();
    const auto functional = delta_transition_graph(chain, 0.0);
    CHECK(functional.successors(0) == std::vector<int>{1});
    CHECK(functional.successors(1) == std::vector<int>{2});
    CHECK(functional.successors(2) == std::vector<int>{1});

    FiniteMapSystem line2;
    line2.points = {"a", "b"};
    line2.map_to = {0, 1};
    line2.metric = {{0.0, 1.0}, {1.0, 0.0}};
    line2.validate();
    const auto complete = delta_transition_graph(line2, 1.0);
    CHECK(complete.successors(0) == std::vector<int>{0, 1});
    CHECK(complete.successors(1) == std::vector<int>{0, 1});

    FiniteMapSystem line3;
    line3.points = {"a", "b", "c"};
    line3.map_to = {0, 1, 2};
    line3.metric = {{0.0, 0.4, 1.0}, {0.4, 0.0, 0.6}, {1.0, 0.6, 0.0}};
    line3.validate();
    const auto g = delta_transition_graph(line3, 0.5);
    CHECK(g.successors(0) == std::vector<int>{0, 1});
    CHECK(g.successors(1) == std::vector<int>{0, 1});
    CHECK(g.successors(2) == std::vector<int>{2});
}

TEST_CASE("symbolic transition graph examples") {
    const auto golden = golden_graph();
    CHECK(golden.successors(0) == std::vector<int>{0, 1});
    CHECK(golden.successors(1) == std::vector<int>{0});

    const auto flip = symbolic_transition_graph(
        sft_from_forbidden_words(Alphabet({"0", "1"}), {{0, 0}, {1, 1}}));
    CHECK(flip.successors(0) == std::vector<int>{1});
    CHECK(flip.successors(1) == std::vector<int>{0});

    const auto full = symbolic_transition_graph(sft_from_forbidden_words(Alphabet({"0", "1"}), {}));
    CHECK(full.successors(0) == std::vector<int>{0, 1});
    CHECK(full.successors(1) == std::vector<int>{0, 1});
}

TEST_CASE("chain components examples") {
    const auto a = chain_components(graph_from_edges(3, {{0, 1}, {1, 0}, {2, 2}}));
    CHECK(a.components == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(a.non_recurrent.empty());

    const auto b = chain_components(graph_from_edges(3, {{0, 1}, {1, 2}, {2, 2}}));
    CHECK(b.components == std::vector<std::vector<int>>{{2}});
    CHECK(b.non_recurrent == std::vector<int>{0, 1});
}

TEST_CASE("chain components match the transitive-closure oracle on random graphs") {
    RngStream rng(91);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + rng.next_below(7);
        TransitionGraph g;
        for (int i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
        g.adjacency.assign(static_cast<size_t>(n), {});
        std::set<std::pair<int, int>> edges;
        const int count = rng.next_below(n * n + 1);
        for (int i = 0; i < count; ++i) edges.insert({rng.next_below(n), rng.next_below(n)});
        for (auto [u, v] : edges) g.adjacency[static_cast<size_t>(u)].push_back(v);
        for (auto& succ : g.adjacency) std::sort(succ.begin(), succ.end());

        const auto powers = path_powers(g, n + 1);
        auto reaches = [&](int u, int v) {
            for (int k = 1; k <= n; ++k) {
                if (powers[static_cast<size_t>(k)][static_cast<size_t>(u)]
                          [static_cast<size_t>(v)]) {
                    return true;
                }
            }
            return false;
        };

        // Oracle: mutual reachability classes restricted to cyclic vertices.
        std::vector<std::vector<int>> expected;
        std::vector<int> transient;
        std::vector<char> assigned(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            if (assigned[static_cast<size_t>(v)]) continue;
            if (!reaches(v, v)) {
                transient.push_back(v);
                assigned[static_cast<size_t>(v)] = 1;
                continue;
            }
            std::vector<int> cls;
            for (int w = 0; w < n; ++w) {
                if (!assigned[static_cast<size_t>(w)] && reaches(w, w) &&
                    (w == v || (reaches(v, w) && reaches(w, v)))) {
                    cls.push_back(w);
                    assigned[static_cast<size_t>(w)] = 1;
                }
            }
            expected.push_back(cls);
        }
        std::sort(expected.begin(), expected.end());

        const auto got = chain_components(g);
        CHECK(got.components == expected);
        CHECK(got.non_recurrent == transient);
    }
}

TEST_CASE("chain transitivity examples") {
    CHECK(is_chain_transitive(two_cycle()));
    CHECK_FALSE(is_chain_transitive(graph_from_edges(2, {{0, 1}, {1, 1}})));
    CHECK(is_chain_transitive(golden_graph()));
    CHECK_FALSE(is_chain_transitive(graph_from_edges(1, {})));
    CHECK(is_chain_transitive(graph_from_edges(1, {{0, 0}})));
}

TEST_CASE("graph period examples") {
    CHECK(graph_period({0, 1}, two_cycle()) == 2);
    CHECK(graph_period({0, 1}, golden_graph()) == 1);
    CHECK(graph_period({0, 1, 2}, graph_from_edges(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}})) == 1);
    CHECK_THROWS_AS(graph_period({0, 1}, graph_from_edges(2, {{0, 1}, {1, 1}})),
                    not_strongly_connected_error);
}

TEST_CASE("cyclic decomposition examples") {
    const auto d2 = cyclic_decomposition(two_cycle());
    CHECK(d2.m == 2);
    CHECK(d2.classes == std::vector<std::vector<int>>{{0}, {1}});

    const auto four = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto d4 = cyclic_decomposition(four);
    CHECK(d4.m == 4);
    CHECK(d4.classes == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});

    const auto diamond = graph_from_edges(4, {{0, 1}, {0, 3}, {1, 2}, {3, 2}, {2, 0}});
    const auto d3 = cyclic_decomposition(diamond);
    CHECK(d3.m == 3);
    CHECK(d3.classes == std::vector<std::vector<int>>{{0}, {1, 3}, {2}});

    // All path lengths between fixed endpoints agree with the labels mod m.
    const auto powers = path_powers(diamond, 12);
    for (int u = 0; u < 4; ++u) {
        for (int v = 0; v < 4; ++v) {
            for (int k = 1; k <= 12; ++k) {
                if (powers[static_cast<size_t>(k)][static_cast<size_t>(u)]
                          [static_cast<size_t>(v)]) {
                    CHECK((d3.class_of[static_cast<size_t>(u)] + k) % 3 ==
                          d3.class_of[static_cast<size_t>(v)]);
                }
            }
        }
    }
}

TEST_CASE("partition lawfulness and m-divisibility on random graphs") {
    RngStream rng(4242);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + rng.next_below(7);
        const auto g = random_strongly_connected(n, rng);
        const auto d = cyclic_decomposition(g);

        // Classes partition the vertex set.
        std::vector<int> seen;
        for (const auto& cls : d.classes) seen.insert(seen.end(), cls.begin(), cls.end());
        std::sort(seen.begin(), seen.end());
        CHECK(seen == all_vertices(g));
        CHECK(d.class_of[0] == 0);  // least vertex anchors class 0

        // Every edge advances the class by exactly one.
        for (int u = 0; u < n; ++u) {
            for (int v : g.successors(u)) {
                CHECK((d.class_of[static_cast<size_t>(u)] + 1) % d.m ==
                      d.class_of[static_cast<size_t>(v)]);
            }
        }

        // m divides every enumerated cycle length and is their gcd.
        const auto lengths = all_cycle_lengths(g);
        int g_all = 0;
        for (int len : lengths) {
            CHECK(len % d.m == 0);
            g_all = std::gcd(g_all, len);
        }
        CHECK(g_all == d.m);
    }
}

TEST_CASE("chain equivalence examples and oracle") {
    const auto g = two_cycle();
    const auto d = cyclic_decomposition(g);
    CHECK(chain_equivalent(g, d, 0, 0));
    CHECK_FALSE(chain_equivalent(g, d, 0, 1));

    RngStream rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + rng.next_below(5);
        const auto graph = random_strongly_connected(n, rng);
        const auto decomposition = cyclic_decomposition(graph);
        const auto powers = path_powers(graph, 36);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                bool oracle = false;
                for (int k = decomposition.m; k <= 36; k += decomposition.m) {
                    oracle = oracle || powers[static_cast<size_t>(k)][static_cast<size_t>(x)]
                                             [static_cast<size_t>(y)] != 0;
                }
                CHECK(chain_equivalent(graph, decomposition, x, y) == oracle);
            }
        }
    }
}

TEST_CASE("chain equivalence is invariant under one map step") {
    RngStream rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + rng.next_below(5);
        const auto graph = random_strongly_connected(n, rng);
        const auto d = cyclic_decomposition(graph);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                if (!chain_equivalent(graph, d, x, y)) continue;
                for (int x2 : graph.successors(x)) {
                    for (int y2 : graph.successors(y)) {
                        CHECK(chain_equivalent(graph, d, x2, y2));
                    }
                }
            }
        }
    }
}

TEST_CASE("chain proximal pairs") {
    const auto g = two_cycle();
    CHECK(chain_proximal(g, 0, 0));
    CHECK(chain_proximal(g, 1, 1));
    CHECK_FALSE(chain_proximal(g, 0, 1));

    // On strongly connected graphs, proximal and equivalent coincide.
    RngStream rng(31337);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + rng.next_below(5);
        const auto graph = random_strongly_connected(n, rng);
        const auto d = cyclic_decomposition(graph);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                CHECK(chain_proximal(graph, x, y) == chain_equivalent(graph, d, x, y));
            }
        }
    }
}

TEST_CASE("chain mixing examples") {
    const auto full = symbolic_transition_graph(sft_from_forbidden_words(Alphabet({"0", "1"}), {}));
    CHECK(is_chain_mixing(full));
    CHECK_FALSE(is_chain_mixing(two_cycle()));
    CHECK(is_chain_mixing(golden_graph()));

    // Mixing iff transitive and all pairs equivalent.
    RngStream rng(909);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + rng.next_below(5);
        const auto graph = random_strongly_connected(n, rng);
        const auto d = cyclic_decomposition(graph);
        bool all_equivalent = true;
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                all_equivalent = all_equivalent && chain_equivalent(graph, d, x, y);
            }
        }
        CHECK(is_chain_mixing(graph) == (is_chain_transitive(graph) && all_equivalent));
    }
}

TEST_CASE("uniform chain bound examples") {
    {
        const auto g = two_cycle();
        const auto b = uniform_chain_bound(g, cyclic_decomposition(g));
        CHECK(b.bound == 1);
        CHECK(b.certified_all_n);
    }
    {
        const auto g = symbolic_transition_graph(sft_from_forbidden_words(Alphabet({"0", "1"}), {}));
        const auto b = uniform_chain_bound(g, cyclic_decomposition(g));
        CHECK(b.bound == 1);
        CHECK(b.certified_all_n);
    }
    {
        // Cycle lengths {2, 3} through vertex 0: for the pair (0, 0) length 1 is
        // missing and every length >= 2 is present; the all-pairs bound is 5
        // (2 -> 2 has no length-4 path, 0 -> 2 no length-3 path).
        const auto g = graph_from_edges(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
        const auto d = cyclic_decomposition(g);
        CHECK(d.m == 1);
        const auto b = uniform_chain_bound(g, d);
        CHECK(b.bound == 5);
        CHECK(b.certified_all_n);
        CHECK_FALSE(path_of_length(g, 0, 0, 1).has_value());
        for (int len = 2; len <= 12; ++len) CHECK(path_of_length(g, 0, 0, len).has_value());
        CHECK_FALSE(path_of_length(g, 2, 2, 4).has_value());
        CHECK_FALSE(path_of_length(g, 0, 2, 3).has_value());
    }
}

TEST_CASE("uniform bound witnesses exist across the certified range") {
    RngStream rng(2718);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + rng.next_below(5);
        const auto graph = random_strongly_connected(n, rng);
        const auto d = cyclic_decomposition(graph);
        const auto b = uniform_chain_bound(graph, d);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                if (!chain_equivalent(graph, d, x, y)) continue;
                for (int k = b.bound; k <= std::min(b.checked_limit, b.bound + 8); ++k) {
                    const auto path = path_of_length(graph, x, y, d.m * k);
                    REQUIRE(path.has_value());
                    CHECK(path->front() == x);
                    CHECK(path->back() == y);
                    CHECK(static_cast<int>(path->size()) == d.m * k + 1);
                    for (size_t i = 0; i + 1 < path->size(); ++i) {
                        CHECK(graph.has_edge((*path)[i], (*path)[i + 1]));
                    }
                }
            }
        }
    }
}

TEST_CASE("path_of_length examples") {
    const auto g = two_cycle();
    CHECK(path_of_length(g, 0, 0, 2) == std::vector<int>{0, 1, 0});
    CHECK_FALSE(path_of_length(g, 0, 0, 3).has_value());

    const auto golden = golden_graph();
    const auto p = path_of_length(golden, 1, 1, 5);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{1, 0, 0, 0, 0, 1});
}

TEST_CASE("image rotation of classes for functional cycle graphs") {
    // 6-cycle as a finite map at delta 0, restricted to itself.
    FiniteMapSystem cycle;
    for (int i = 0; i < 6; ++i) cycle.points.push_back(std::to_string(i));
    cycle.map_to = {1, 2, 3, 4, 5, 0};
    cycle.metric = FiniteMapSystem::discrete_metric(6);
    cycle.validate();
    const auto g = delta_transition_graph(cycle, 0.0);
    const auto d = cyclic_decomposition(g);
    CHECK(d.m == 6);
    for (int v = 0; v < 6; ++v) {
        CHECK(d.class_of[static_cast<size_t>(cycle.apply(v))] ==
              (d.class_of[static_cast<size_t>(v)] + 1) % d.m);
    }
}
