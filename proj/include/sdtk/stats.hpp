#ifndef SDTK_STATS_HPP_
#define SDTK_STATS_HPP_

#include <cstdint>
#include <vector>

#include "sdtk/errors.hpp"
#include "sdtk/systems.hpp"

namespace sdtk {

/// Upper/lower density of an index set at finite horizon: max/min of the
/// prefix densities over the trailing tail_fraction of the horizon.
struct DensityEstimate {
    int horizon = 0;
    double tail_fraction = 0.5;
    std::vector<double> prefix_densities;
    double upper = 0.0;
    double lower = 0.0;
};

struct EmpiricalMeasure {
    std::vector<int> support;      // state ids with positive weight, sorted
    std::vector<double> weights;   // aligned with support, sums to 1
    int horizon = 0;
};

struct OmegaBarEstimate {
    std::vector<double> upper_estimates;  // per candidate
    std::vector<int> reported;            // candidate indices with estimate > theta
    double theta = 0.01;
    double epsilon = 0.0;
    int horizon = 0;
};

struct DistributionalFunctions {
    std::vector<double> t_grid;
    std::vector<double> f_values;       // lower frequencies (liminf estimates)
    std::vector<double> f_star_values;  // upper frequencies (limsup estimates)
    int horizon = 0;
};

struct IrregularityReport {
    std::vector<double> prefix_averages;
    double oscillation = 0.0;
    double epsilon = 0.0;
    bool irregular = false;
};

struct ScrambledPairRecord {
    int x_index = 0;
    int y_index = 0;
    bool difference_nonempty = false;
    bool intersection_nonempty = false;
    bool has_nonperiodic_element = false;  // some omega-bar element has period > bound
};

struct ScrambledWitness {
    std::vector<ScrambledPairRecord> pairs;  // ordered pairs, row-major
    bool verdict = false;
    double theta = 0.01;
    double epsilon = 0.0;
    int period_bound = 64;
};

struct IrregularWitness {
    SymbolicPoint point;
    std::vector<double> observable;  // phi(shift^i(point)) samples
    IrregularityReport report;
    std::vector<int> cycle_a;  // symbols of the two disjoint cycles used
    std::vector<int> cycle_b;  // phi = indicator of cycle_b membership
};

DensityEstimate upper_lower_density(const std::vector<int>& indices, int horizon,
                                    double tail_fraction);

EmpiricalMeasure empirical_measure(const std::vector<int>& orbit_states);

/// Candidates matched by exact state equality (finite systems).
OmegaBarEstimate omega_bar_estimate(const std::vector<int>& orbit_states,
                                    const std::vector<int>& candidates, double theta,
                                    double tail_fraction);

/// Candidates matched by sequence distance < epsilon at the scan depth.
OmegaBarEstimate omega_bar_estimate(const std::vector<SymbolicPoint>& sequence,
                                    const std::vector<SymbolicPoint>& candidates, double epsilon,
                                    double theta, double tail_fraction);

/// The cycle the orbit of `start` eventually enters, sorted.
std::vector<int> omega_bar_exact_finite(const FiniteMapSystem& system, int start);

/// Checks the omega-bar power identities: the union over i < m of the
/// omega-bar sets of f^i(x) under f^m equals the omega-bar set under f, and
/// f^i maps the f^m omega-bar set of x onto that of f^i(x).
bool omega_bar_power_identity_check(const FiniteMapSystem& system, int start, int m);

/// Exact omega-bar set of an eventually periodic symbolic point: all cyclic
/// shifts of its period word, sorted.
std::vector<SymbolicPoint> omega_bar_exact_symbolic(const SymbolicPoint& point);

DistributionalFunctions distributional_functions(const std::vector<double>& step_distances,
                                                 const std::vector<double>& t_grid,
                                                 double tail_fraction);
DistributionalFunctions distributional_functions(const std::vector<SymbolicPoint>& orbit_x,
                                                 const std::vector<SymbolicPoint>& orbit_y,
                                                 const std::vector<double>& t_grid,
                                                 double tail_fraction);

bool dc2_verdict(const DistributionalFunctions& df, double delta, double slack);

IrregularityReport birkhoff_irregularity(const std::vector<double>& observable_values,
                                         double epsilon, double tail_fraction);

/// Alternating-dwell witness for Birkhoff irregularity on a positive-entropy
/// chain transitive SFT: dwells on two disjoint cycles with geometrically
/// growing blocks, bridged by shortest admissible paths; the observable is
/// the indicator of the second cycle's symbols.
IrregularWitness irregular_witness_sft(const SymbolicSystem& system, int class_index,
                                       int block_ratio, int horizon, std::uint64_t seed);

ScrambledWitness scrambled_family_check(const SymbolicSystem& system,
                                        const std::vector<SymbolicPoint>& family, int horizon,
                                        double theta, double epsilon, int period_bound = 64);

/// Union of all cycles of the functional graph, cross-checked against the
/// set of self-recurrent points and against invariant-measure supports.
std::vector<int> measure_center_finite(const FiniteMapSystem& system);

/// Least window length so that every length-k window of the orbit visits
/// every point of the cycle; for a pure n-cycle this is n.
int uniform_recurrence_gap(const FiniteMapSystem& system);

}  // namespace sdtk

#endif  // SDTK_STATS_HPP_
