#ifndef SDTK_GRAPH_HPP_
#define SDTK_GRAPH_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sdtk/errors.hpp"
#include "sdtk/systems.hpp"

namespace sdtk {

/// Finite directed graph whose edges encode one chain step at some scale.
struct TransitionGraph {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> adjacency;  // sorted successor lists
    std::string provenance;                   // "symbolic" or "delta"
    double delta = 0.0;                       // meaningful for delta provenance

    int vertex_count() const { return static_cast<int>(labels.size()); }
    bool has_edge(int u, int v) const;
    const std::vector<int>& successors(int u) const {
        return adjacency[static_cast<size_t>(u)];
    }
};

/// Strongly connected pieces of the chain-recurrent set plus the leftover
/// transient vertices.
struct ChainComponentSet {
    std::vector<std::vector<int>> components;  // each sorted; list sorted by least vertex
    std::vector<int> non_recurrent;            // sorted
};

/// Partition of one strongly connected component into m cyclic classes, with
/// every edge advancing the class by exactly one.
struct CyclicDecomposition {
    int m = 1;
    std::vector<int> class_of;               // indexed by graph vertex, -1 outside component
    std::vector<std::vector<int>> classes;   // classes[r] sorted; class 0 holds the least vertex
};

/// Result of the uniform length bound search for one component: the least N
/// such that every equivalent ordered pair is joined by paths of length m*n
/// for every n in [N, checked_limit]. `certified_all_n` is set when a pumping
/// cycle upgrades the finite range to all n >= N.
struct UniformChainBound {
    int bound = 1;
    int checked_limit = 1;       // in units of n (path length = m*n)
    bool certified_all_n = false;
};

TransitionGraph delta_transition_graph(const FiniteMapSystem& system, double delta);
TransitionGraph symbolic_transition_graph(const SymbolicSystem& system);

ChainComponentSet chain_components(const TransitionGraph& graph);
bool is_chain_transitive(const TransitionGraph& graph);

/// gcd of the lengths of all cycles through the component, via BFS residues.
int graph_period(const std::vector<int>& component, const TransitionGraph& graph);

CyclicDecomposition cyclic_decomposition(const std::vector<int>& component,
                                         const TransitionGraph& graph);
CyclicDecomposition cyclic_decomposition(const TransitionGraph& graph);

bool chain_equivalent(const TransitionGraph& graph, const CyclicDecomposition& decomposition,
                      int x, int y);
bool chain_proximal(const TransitionGraph& graph, int x, int y);
bool is_chain_mixing(const TransitionGraph& graph);

UniformChainBound uniform_chain_bound(const TransitionGraph& graph,
                                      const CyclicDecomposition& decomposition);

/// Length-k path x -> ... -> y when one exists (k edges, k+1 vertices),
/// lexicographically least successors. Empty optional when absent.
std::optional<std::vector<int>> path_of_length(const TransitionGraph& graph, int x, int y, int k);

}  // namespace sdtk

#endif  // SDTK_GRAPH_HPP_
