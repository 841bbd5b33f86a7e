#include "sdtk/systems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace sdtk {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw toolkit_error("alphabet must contain at least one symbol");
    }
    if (symbols_.size() > (1u << 16)) {
        throw toolkit_error("alphabet exceeds 2^16 symbols");
    }
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (!seen.insert(s).second) {
            throw toolkit_error("duplicate symbol in alphabet: " + s);
        }
    }
}

int Alphabet::index_of(const std::string& symbol) const {
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] == symbol) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> SymbolicSystem::successors(int a) const {
    std::vector<int> out;
    for (int b = 0; b < symbol_count(); ++b) {
        if (is_allowed(a, b)) out.push_back(b);
    }
    return out;
}

bool SymbolicSystem::word_admissible(const std::vector<int>& word) const {
    for (int s : word) {
        if (s < 0 || s >= symbol_count()) return false;
    }
    for (size_t i = 0; i + 1 < word.size(); ++i) {
        if (!is_allowed(word[i], word[i + 1])) return false;
    }
    return true;
}

SymbolicPoint::SymbolicPoint(std::vector<int> preperiod, std::vector<int> period)
    : pre_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) {
        throw toolkit_error("symbolic point needs a nonempty period word");
    }
    normalize();
}

void SymbolicPoint::normalize() {
    // Reduce the period word to its primitive root.
    const size_t n = period_.size();
    for (size_t d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        bool repeats = true;
        for (size_t i = d; i < n && repeats; ++i) {
            repeats = period_[i] == period_[i % d];
        }
        if (repeats) {
            period_.resize(d);
            break;
        }
    }
    // Absorb a periodic tail of the preperiod into the period.
    while (!pre_.empty() && pre_.back() == period_.back()) {
        period_.pop_back();
        period_.insert(period_.begin(), pre_.back());
        pre_.pop_back();
    }
}

int SymbolicPoint::at(std::int64_t i) const {
    const auto p = static_cast<std::int64_t>(pre_.size());
    if (i < p) return pre_[static_cast<size_t>(i)];
    return period_[static_cast<size_t>((i - p) % static_cast<std::int64_t>(period_.size()))];
}

SymbolicPoint SymbolicPoint::shifted() const {
    if (!pre_.empty()) {
        return SymbolicPoint(std::vector<int>(pre_.begin() + 1, pre_.end()), period_);
    }
    std::vector<int> rotated(period_.begin() + 1, period_.end());
    rotated.push_back(period_.front());
    return SymbolicPoint({}, rotated);
}

SymbolicPoint SymbolicPoint::shifted(std::int64_t n) const {
    SymbolicPoint p = *this;
    // Shift past the preperiod in one step, then rotate inside the period.
    if (n >= static_cast<std::int64_t>(pre_.size())) {
        const auto per = static_cast<std::int64_t>(period_.size());
        std::int64_t r = (n - static_cast<std::int64_t>(pre_.size())) % per;
        std::vector<int> rotated;
        rotated.reserve(period_.size());
        for (std::int64_t i = 0; i < per; ++i) {
            rotated.push_back(period_[static_cast<size_t>((i + r) % per)]);
        }
        return SymbolicPoint({}, rotated);
    }
    for (std::int64_t i = 0; i < n; ++i) p = p.shifted();
    return p;
}

bool SymbolicPoint::admissible_in(const SymbolicSystem& system) const {
    const int n = system.symbol_count();
    for (int s : pre_) {
        if (s < 0 || s >= n) return false;
    }
    for (int s : period_) {
        if (s < 0 || s >= n) return false;
    }
    for (size_t i = 0; i + 1 < pre_.size(); ++i) {
        if (!system.is_allowed(pre_[i], pre_[i + 1])) return false;
    }
    if (!pre_.empty() && !system.is_allowed(pre_.back(), period_.front())) return false;
    for (size_t i = 0; i < period_.size(); ++i) {
        if (!system.is_allowed(period_[i], period_[(i + 1) % period_.size()])) return false;
    }
    return true;
}

std::string SymbolicPoint::to_string(const Alphabet& alphabet) const {
    std::ostringstream out;
    for (int s : pre_) out << alphabet.name(s);
    out << "(";
    for (int s : period_) out << alphabet.name(s);
    out << ")*";
    return out.str();
}

namespace {

std::int64_t equality_scan_bound(const SymbolicPoint& x, const SymbolicPoint& y) {
    const auto px = static_cast<std::int64_t>(x.period().size());
    const auto py = static_cast<std::int64_t>(y.period().size());
    const std::int64_t pre =
        std::max<std::int64_t>(static_cast<std::int64_t>(x.preperiod().size()),
                               static_cast<std::int64_t>(y.preperiod().size()));
    const std::int64_t l = std::lcm(px, py);
    return pre + l;
}

}  // namespace

SequenceDistance sequence_metric(const SymbolicPoint& x, const SymbolicPoint& y, int depth) {
    if (depth < 1) throw toolkit_error("sequence_metric needs depth >= 1");
    const std::int64_t bound = equality_scan_bound(x, y);
    std::int64_t disagree = -1;
    for (std::int64_t i = 0; i < bound; ++i) {
        if (x.at(i) != y.at(i)) {
            disagree = i;
            break;
        }
    }
    if (disagree < 0) return {0.0, false};
    SequenceDistance d;
    d.value = std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(disagree, 4000)));
    d.truncated = disagree >= depth;
    return d;
}

double truncated_distance(const SymbolicPoint& x, const SymbolicPoint& y, int depth) {
    for (int i = 0; i < depth; ++i) {
        if (x.at(i) != y.at(i)) return std::ldexp(1.0, -i);
    }
    return 0.0;
}

SequenceDistance sequence_metric(const SymbolicSystem& system, const SymbolicPoint& x,
                                 const SymbolicPoint& y, int depth) {
    const int n = system.symbol_count();
    auto in_range = [n](const SymbolicPoint& p) {
        for (int s : p.preperiod()) {
            if (s < 0 || s >= n) return false;
        }
        for (int s : p.period()) {
            if (s < 0 || s >= n) return false;
        }
        return true;
    };
    if (!in_range(x) || !in_range(y)) {
        throw alphabet_mismatch_error("point uses symbols outside the system alphabet");
    }
    return sequence_metric(x, y, depth);
}

namespace {

bool contains_forbidden(const std::vector<int>& word,
                        const std::vector<std::vector<int>>& forbidden) {
    for (const auto& f : forbidden) {
        if (f.size() > word.size()) continue;
        for (size_t start = 0; start + f.size() <= word.size(); ++start) {
            if (std::equal(f.begin(), f.end(), word.begin() + static_cast<long>(start))) {
                return true;
            }
        }
    }
    return false;
}

std::string block_label(const Alphabet& alphabet, const std::vector<int>& block) {
    bool single = true;
    for (const auto& name : alphabet.names()) single = single && name.size() == 1;
    std::string label;
    for (size_t i = 0; i < block.size(); ++i) {
        if (i > 0 && !single) label += "|";
        label += alphabet.name(block[i]);
    }
    return label;
}

}  // namespace

SymbolicSystem sft_from_forbidden_words(const Alphabet& alphabet,
                                        const std::vector<std::vector<int>>& forbidden,
                                        std::vector<std::vector<int>>* block_words_out) {
    size_t max_len = 1;
    for (const auto& word : forbidden) {
        if (word.empty()) throw bad_word_error("forbidden words must be nonempty");
        for (int s : word) {
            if (s < 0 || s >= alphabet.size()) {
                throw bad_word_error("forbidden word uses a symbol outside the alphabet");
            }
        }
        max_len = std::max(max_len, word.size());
    }
    const int memory = std::max(1, static_cast<int>(max_len) - 1);

    // Vertices of the recoded one-step system: admissible words of length `memory`.
    std::vector<std::vector<int>> blocks;
    std::vector<int> word(static_cast<size_t>(memory), 0);
    const int n = alphabet.size();
    while (true) {
        if (!contains_forbidden(word, forbidden)) blocks.push_back(word);
        int pos = memory - 1;
        while (pos >= 0 && word[static_cast<size_t>(pos)] == n - 1) {
            word[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++word[static_cast<size_t>(pos)];
    }

    const int b = static_cast<int>(blocks.size());
    std::vector<std::vector<char>> edges(static_cast<size_t>(b),
                                         std::vector<char>(static_cast<size_t>(b), 0));
    for (int i = 0; i < b; ++i) {
        for (int j = 0; j < b; ++j) {
            bool overlap = true;
            for (int k = 0; k + 1 < memory && overlap; ++k) {
                overlap = blocks[static_cast<size_t>(i)][static_cast<size_t>(k + 1)] ==
                          blocks[static_cast<size_t>(j)][static_cast<size_t>(k)];
            }
            if (!overlap) continue;
            std::vector<int> joined = blocks[static_cast<size_t>(i)];
            joined.push_back(blocks[static_cast<size_t>(j)].back());
            if (!contains_forbidden(joined, forbidden)) {
                edges[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
            }
        }
    }

    // Prune to the maximal subgraph in which every vertex has an outgoing
    // and an incoming transition.
    std::vector<char> alive(static_cast<size_t>(b), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < b; ++i) {
            if (!alive[static_cast<size_t>(i)]) continue;
            bool has_out = false;
            bool has_in = false;
            for (int j = 0; j < b; ++j) {
                if (!alive[static_cast<size_t>(j)]) continue;
                has_out = has_out || edges[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0;
                has_in = has_in || edges[static_cast<size_t>(j)][static_cast<size_t>(i)] != 0;
            }
            if (!has_out || !has_in) {
                alive[static_cast<size_t>(i)] = 0;
                changed = true;
            }
        }
    }

    std::vector<int> kept;
    for (int i = 0; i < b; ++i) {
        if (alive[static_cast<size_t>(i)]) kept.push_back(i);
    }
    if (kept.empty()) {
        throw empty_subshift_error("forbidden words leave an empty shift space");
    }

    SymbolicSystem system;
    std::vector<std::string> labels;
    labels.reserve(kept.size());
    for (int i : kept) labels.push_back(block_label(alphabet, blocks[static_cast<size_t>(i)]));
    system.alphabet = Alphabet(labels);
    system.memory_note = memory;
    const int m = static_cast<int>(kept.size());
    system.allowed.assign(static_cast<size_t>(m), std::vector<char>(static_cast<size_t>(m), 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            system.allowed[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                edges[static_cast<size_t>(kept[static_cast<size_t>(i)])]
                     [static_cast<size_t>(kept[static_cast<size_t>(j)])];
        }
    }
    if (block_words_out != nullptr) {
        block_words_out->clear();
        for (int i : kept) block_words_out->push_back(blocks[static_cast<size_t>(i)]);
    }
    return system;
}

std::vector<std::vector<int>> admissible_words(const SymbolicSystem& system, int length) {
    std::vector<std::vector<int>> out;
    if (length < 1) return out;
    std::vector<int> word;
    auto extend = [&](auto&& self, int last) -> void {
        if (static_cast<int>(word.size()) == length) {
            out.push_back(word);
            return;
        }
        for (int next = 0; next < system.symbol_count(); ++next) {
            if (last >= 0 && !system.is_allowed(last, next)) continue;
            word.push_back(next);
            self(self, next);
            word.pop_back();
        }
    };
    extend(extend, -1);
    return out;
}

double topological_entropy(const SymbolicSystem& system) {
    // Power iteration on A + I: the shifted matrix is aperiodic, and its
    // spectral radius is 1 + rho(A) for a nonnegative A.
    const int n = system.symbol_count();
    std::vector<double> v(static_cast<size_t>(n), 1.0);
    double lambda = 0.0;
    const double rel_tol = 1e-12;
    for (int iter = 0; iter < 200000; ++iter) {
        std::vector<double> w(static_cast<size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = v[static_cast<size_t>(i)];
            for (int j = 0; j < n; ++j) {
                if (system.is_allowed(i, j)) acc += v[static_cast<size_t>(j)];
            }
            w[static_cast<size_t>(i)] = acc;
        }
        double norm = 0.0;
        for (double x : w) norm = std::max(norm, x);
        for (double& x : w) x /= norm;
        // Rayleigh-style estimate from the dominant coordinate growth.
        double next = norm;
        v.swap(w);
        if (iter > 8 && std::abs(next - lambda) <= rel_tol * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    const double rho = std::max(lambda - 1.0, 1e-300);
    double h = std::log(rho);
    if (std::abs(h) < 1e-9) h = std::abs(h);  // clamp -0 style noise at entropy zero
    return h;
}

SymbolicPoint canonical_point_from(const SymbolicSystem& system, int start) {
    std::vector<int> walk{start};
    std::vector<int> first_visit(static_cast<size_t>(system.symbol_count()), -1);
    first_visit[static_cast<size_t>(start)] = 0;
    int current = start;
    while (true) {
        const auto succ = system.successors(current);
        if (succ.empty()) throw toolkit_error("symbol has no successor; system not pruned");
        const int next = succ.front();
        if (first_visit[static_cast<size_t>(next)] >= 0) {
            const int cut = first_visit[static_cast<size_t>(next)];
            std::vector<int> pre(walk.begin(), walk.begin() + cut);
            std::vector<int> per(walk.begin() + cut, walk.end());
            return SymbolicPoint(std::move(pre), std::move(per));
        }
        first_visit[static_cast<size_t>(next)] = static_cast<int>(walk.size());
        walk.push_back(next);
        current = next;
    }
}

std::vector<SymbolicPoint> orbit(const SymbolicSystem& system, const SymbolicPoint& start,
                                 int horizon) {
    if (horizon < 1) throw toolkit_error("orbit horizon must be >= 1");
    if (!start.admissible_in(system)) throw toolkit_error("orbit start not in the system");
    std::vector<SymbolicPoint> out;
    out.reserve(static_cast<size_t>(horizon));
    SymbolicPoint p = start;
    for (int i = 0; i < horizon; ++i) {
        out.push_back(p);
        if (i + 1 < horizon) p = p.shifted();
    }
    return out;
}

void FiniteMapSystem::validate() const {
    const size_t n = points.size();
    if (n == 0) throw toolkit_error("finite map needs at least one point");
    if (map_to.size() != n) throw toolkit_error("map must be total");
    for (int target : map_to) {
        if (target < 0 || target >= static_cast<int>(n)) {
            throw toolkit_error("map target out of range");
        }
    }
    if (metric.size() != n) throw bad_metric_error("metric table has wrong shape");
    for (const auto& row : metric) {
        if (row.size() != n) throw bad_metric_error("metric table has wrong shape");
    }
    for (size_t i = 0; i < n; ++i) {
        if (metric[i][i] != 0.0) throw bad_metric_error("metric diagonal must be zero");
        for (size_t j = 0; j < n; ++j) {
            if (metric[i][j] < 0.0) throw bad_metric_error("metric must be nonnegative");
            if (i != j && metric[i][j] == 0.0) {
                throw bad_metric_error("distinct points at distance zero");
            }
            if (metric[i][j] != metric[j][i]) throw bad_metric_error("metric must be symmetric");
            for (size_t k = 0; k < n; ++k) {
                if (metric[i][k] > metric[i][j] + metric[j][k] + 1e-12) {
                    throw bad_metric_error("metric violates the triangle inequality");
                }
            }
        }
    }
}

std::vector<std::vector<double>> FiniteMapSystem::discrete_metric(int n) {
    std::vector<std::vector<double>> d(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 1.0));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
    return d;
}

std::vector<int> orbit(const FiniteMapSystem& system, int start, int horizon) {
    if (horizon < 1) throw toolkit_error("orbit horizon must be >= 1");
    if (start < 0 || start >= system.point_count()) {
        throw toolkit_error("orbit start not in the system");
    }
    std::vector<int> out;
    out.reserve(static_cast<size_t>(horizon));
    int x = start;
    for (int i = 0; i < horizon; ++i) {
        out.push_back(x);
        x = system.apply(x);
    }
    return out;
}

void IntervalMapSystem::validate() const {
    if (breakpoints.size() < 2 || breakpoints.size() != values.size()) {
        throw toolkit_error("interval map needs matching breakpoints and values");
    }
    if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
        throw toolkit_error("breakpoints must start at 0 and end at 1");
    }
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1])) {
            throw toolkit_error("breakpoints must be strictly increasing");
        }
    }
    for (double v : values) {
        if (v < 0.0 || v > 1.0) throw toolkit_error("interval map values must stay in [0,1]");
    }
}

double IntervalMapSystem::apply(double x) const {
    const double clamped = std::min(1.0, std::max(0.0, x));
    size_t hi = 1;
    while (hi + 1 < breakpoints.size() && breakpoints[hi] < clamped) ++hi;
    const double x0 = breakpoints[hi - 1];
    const double x1 = breakpoints[hi];
    const double t = (clamped - x0) / (x1 - x0);
    return values[hi - 1] + t * (values[hi] - values[hi - 1]);
}

std::vector<double> orbit(const IntervalMapSystem& system, double start, int horizon) {
    if (horizon < 1) throw toolkit_error("orbit horizon must be >= 1");
    if (start < 0.0 || start > 1.0) throw toolkit_error("orbit start not in [0,1]");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(horizon));
    double x = start;
    for (int i = 0; i < horizon; ++i) {
        out.push_back(x);
        x = system.apply(x);
    }
    return out;
}

}  // namespace sdtk
