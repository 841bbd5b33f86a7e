#ifndef SDTK_SYSTEMS_HPP_
#define SDTK_SYSTEMS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sdtk/errors.hpp"

namespace sdtk {

/// Finite ordered alphabet. Symbol identities are strings; positions are the
/// indices used everywhere else in the toolkit.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& name(int i) const { return symbols_.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& names() const { return symbols_; }
    int index_of(const std::string& symbol) const;  // -1 when absent

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

  private:
    std::vector<std::string> symbols_;
};

/// One-step subshift of finite type: alphabet plus allowed-transition matrix.
/// Always pruned so every symbol has at least one outgoing and one incoming
/// allowed transition.
struct SymbolicSystem {
    Alphabet alphabet;
    std::vector<std::vector<char>> allowed;  // allowed[a][b] != 0 means a -> b permitted
    int memory_note = 1;                     // forbidden-word memory before recoding

    int symbol_count() const { return alphabet.size(); }
    bool is_allowed(int a, int b) const {
        return allowed[static_cast<size_t>(a)][static_cast<size_t>(b)] != 0;
    }
    std::vector<int> successors(int a) const;
    bool word_admissible(const std::vector<int>& word) const;
};

/// Eventually periodic one-sided symbol sequence, held in normalized form:
/// the period word is primitive and the preperiod is as short as possible.
/// Two points are equal iff their normalized representations coincide.
class SymbolicPoint {
  public:
    SymbolicPoint() = default;
    SymbolicPoint(std::vector<int> preperiod, std::vector<int> period);

    static SymbolicPoint periodic(std::vector<int> period) {
        return SymbolicPoint({}, std::move(period));
    }

    int at(std::int64_t i) const;
    const std::vector<int>& preperiod() const { return pre_; }
    const std::vector<int>& period() const { return period_; }

    SymbolicPoint shifted() const;
    SymbolicPoint shifted(std::int64_t n) const;
    bool admissible_in(const SymbolicSystem& system) const;
    /// Exact period when the point is purely periodic; 0 otherwise.
    int pure_period() const { return pre_.empty() ? static_cast<int>(period_.size()) : 0; }

    std::string to_string(const Alphabet& alphabet) const;

    bool operator==(const SymbolicPoint& other) const {
        return pre_ == other.pre_ && period_ == other.period_;
    }
    bool operator<(const SymbolicPoint& other) const {
        return pre_ != other.pre_ ? pre_ < other.pre_ : period_ < other.period_;
    }

  private:
    void normalize();

    std::vector<int> pre_;
    std::vector<int> period_;
};

/// Distance between two symbolic points under d(x,y) = 2^(-k), k the least
/// disagreement index. `truncated` flags agreement through the requested
/// depth with a disagreement further out.
struct SequenceDistance {
    double value = 0.0;
    bool truncated = false;
};

SequenceDistance sequence_metric(const SymbolicPoint& x, const SymbolicPoint& y, int depth);

/// Distance capped at the given depth: 2^(-k) for the first disagreement
/// k < depth, 0 when the points agree through depth-1. Cheaper than
/// sequence_metric for points with very long preperiods.
double truncated_distance(const SymbolicPoint& x, const SymbolicPoint& y, int depth);
SequenceDistance sequence_metric(const SymbolicSystem& system, const SymbolicPoint& x,
                                 const SymbolicPoint& y, int depth);

/// Builds the one-step recoding (higher-block presentation) of the subshift
/// over `alphabet` avoiding every word in `forbidden`. Words are lists of
/// symbol indices. If `block_words_out` is non-null it receives, per recoded
/// symbol, the original-alphabet word that symbol stands for.
SymbolicSystem sft_from_forbidden_words(const Alphabet& alphabet,
                                        const std::vector<std::vector<int>>& forbidden,
                                        std::vector<std::vector<int>>* block_words_out = nullptr);

/// Admissible words of the given length, enumerated from the allowed matrix.
std::vector<std::vector<int>> admissible_words(const SymbolicSystem& system, int length);

/// Natural log of the spectral radius of the allowed matrix.
double topological_entropy(const SymbolicSystem& system);

/// A deterministic admissible point through `start`: at every step the least
/// allowed successor, closed into a cycle at the first revisit.
SymbolicPoint canonical_point_from(const SymbolicSystem& system, int start);

std::vector<SymbolicPoint> orbit(const SymbolicSystem& system, const SymbolicPoint& start,
                                 int horizon);

/// Finite set of named points with a total map and an explicit metric table.
struct FiniteMapSystem {
    std::vector<std::string> points;
    std::vector<int> map_to;
    std::vector<std::vector<double>> metric;

    int point_count() const { return static_cast<int>(points.size()); }
    double distance(int a, int b) const {
        return metric[static_cast<size_t>(a)][static_cast<size_t>(b)];
    }
    int apply(int x) const { return map_to[static_cast<size_t>(x)]; }

    /// Throws bad_metric_error unless the table is a genuine metric.
    void validate() const;

    static std::vector<std::vector<double>> discrete_metric(int n);
};

std::vector<int> orbit(const FiniteMapSystem& system, int start, int horizon);

/// Continuous piecewise-linear self-map of [0,1].
struct IntervalMapSystem {
    std::vector<double> breakpoints;  // strictly increasing, first 0, last 1
    std::vector<double> values;       // same length, within [0,1]
    static constexpr double kStepTolerance = 1e-12;

    void validate() const;
    double apply(double x) const;
};

std::vector<double> orbit(const IntervalMapSystem& system, double start, int horizon);

}  // namespace sdtk

#endif  // SDTK_SYSTEMS_HPP_
