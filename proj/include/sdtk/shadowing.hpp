#ifndef SDTK_SHADOWING_HPP_
#define SDTK_SHADOWING_HPP_

#include <cstdint>
#include <vector>

#include "sdtk/errors.hpp"
#include "sdtk/graph.hpp"
#include "sdtk/systems.hpp"

namespace sdtk {

/// Finite pseudo-orbit x_0..x_L with recomputed per-step defects
/// d(shift(x_i), x_{i+1}) and, on chain transitive systems, the cyclic class
/// of each point's first symbol.
struct PseudoOrbit {
    std::vector<SymbolicPoint> points;
    double delta = 0.0;
    std::vector<double> defects;      // size points.size() - 1
    std::vector<int> class_trace;     // empty when the system is not chain transitive

    int length() const { return static_cast<int>(points.size()) - 1; }
};

struct ShadowResult {
    SymbolicPoint shadow_point;
    double epsilon_achieved = 0.0;
    int horizon = 0;
    bool same_class = true;
};

struct VerifyResult {
    bool within = false;
    double max_error = 0.0;
};

struct DspClassReport {
    int class_index = 0;
    double worst_epsilon = 0.0;
    bool all_in_class = true;
};

struct DspReport {
    int m = 1;
    int trials = 0;
    std::vector<DspClassReport> per_class;
    bool uniform = true;  // pass/fail verdict identical across classes
};

/// Index selection whose density tends to 1 whenever the Cesaro mean of the
/// input values tends to 0.
struct DensityOneSelection {
    std::vector<int> indices;             // sorted
    std::vector<double> prefix_density;   // per horizon prefix
    std::vector<int> level_boundaries;    // first index governed by tolerance level j
    std::vector<double> tolerances_used;
};

struct AverageShadowSchedule {
    // Tolerance levels delta_j = delta_base * decay^j screen the defect
    // sequence; accuracy levels epsilon_j = epsilon_base * decay^j are
    // recorded for the report. block_ratio spaces the level boundaries.
    double epsilon_base = 1.0;
    double delta_base = 0.25;
    double decay = 0.5;
    int block_ratio = 4;
    int first_block = 4;
    int max_levels = 30;
};

struct AverageShadowTrace {
    SymbolicPoint point;
    bool truncated = false;             // distances to the input capped at scan depth
    std::vector<double> cesaro_errors;  // (1/n) sum of d(shift^i(point), x_i), n = 1..horizon
    std::vector<double> epsilons_used;
    std::vector<double> deltas_used;
    std::vector<int> block_boundaries;
    int start_class = 0;
    int result_class = 0;
};

/// Seeded delta-pseudo-orbit with delta = 2^(-m): every step keeps the first
/// m symbols of the shifted predecessor and continues admissibly at random.
PseudoOrbit random_pseudo_orbit(const SymbolicSystem& system, int start_class, int length, int m,
                                std::uint64_t seed);

/// Wraps externally supplied points: recomputes defects and the class trace.
PseudoOrbit make_pseudo_orbit(const SymbolicSystem& system,
                              std::vector<SymbolicPoint> points, double delta);

/// Diagonal readout shadow for delta = 2^(-m) pseudo-orbits; the shadow
/// follows x_L exactly after the pseudo-orbit ends.
ShadowResult sft_shadow(const SymbolicSystem& system, const PseudoOrbit& po);

VerifyResult verify_shadowing(const SymbolicSystem& system, const PseudoOrbit& po,
                              const SymbolicPoint& candidate, double epsilon, int depth);

DspReport dsp_check(const SymbolicSystem& system, int m_delta, int trials, int length,
                    std::uint64_t seed);

/// True iff the cyclic class advances by exactly 1 mod m at every step.
bool is_along_D(const SymbolicSystem& system, const PseudoOrbit& po);

/// Prefix averages (1/n) sum_{i<n} d(shift(x_i), x_{i+1}) for n = 1..L.
std::vector<double> average_defect_curve(const std::vector<SymbolicPoint>& points,
                                         const SymbolicSystem& system);

DensityOneSelection density_one_subsequence(const std::vector<double>& values,
                                            const std::vector<double>& tolerance_schedule,
                                            int first_block = 4, int block_ratio = 4);

/// Constructive average shadowing: regularizes the input along a density-one
/// index set, bridges the gaps with genuine orbit segments found by
/// path_of_length, and reads off a single admissible point within epsilon of
/// x_0 whose Cesaro tracking error decays with the defect averages.
AverageShadowTrace average_shadow_trace(const SymbolicSystem& system,
                                        const std::vector<SymbolicPoint>& spec_points,
                                        double epsilon, const AverageShadowSchedule& schedule,
                                        int horizon);

/// Alternating dwell blocks on the orbits of two points, block k of length
/// first_block * ratio^k, truncated at the horizon. The workhorse input for
/// average-shadowing and irregularity experiments.
std::vector<SymbolicPoint> block_alternation_sequence(const SymbolicPoint& a,
                                                      const SymbolicPoint& b, int first_block,
                                                      int ratio, int horizon);

}  // namespace sdtk

#endif  // SDTK_SHADOWING_HPP_
