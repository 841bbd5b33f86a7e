#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sdtk/rng.hpp"
#include "sdtk/shadowing.hpp"
#include "sdtk/stats.hpp"
#include "sdtk/systems.hpp"

using namespace sdtk;

namespace {

SymbolicSystem full_shift() { return sft_from_forbidden_words(Alphabet({"0", "1"}), {}); }

SymbolicSystem golden_mean() {
    return sft_from_forbidden_words(Alphabet({"0", "1"}), {{1, 1}});
}

SymbolicSystem two_point() {
    return sft_from_forbidden_words(Alphabet({"0", "1"}), {{0, 0}, {1, 1}});
}

FiniteMapSystem chain_012() {
    FiniteMapSystem sys;
    sys.points = {"0", "1", "2"};
    sys.map_to = {1, 2, 1};
    sys.metric = FiniteMapSystem::discrete_metric(3);
    sys.validate();
    return sys;
}

FiniteMapSystem cycle_system(int n) {
    FiniteMapSystem sys;
    for (int i = 0; i < n; ++i) sys.points.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i) sys.map_to.push_back((i + 1) % n);
    sys.metric = FiniteMapSystem::discrete_metric(n);
    sys.validate();
    return sys;
}

FiniteMapSystem random_functional(int n, RngStream& rng) {
    FiniteMapSystem sys;
    for (int i = 0; i < n; ++i) sys.points.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i) sys.map_to.push_back(rng.next_below(n));
    sys.metric = FiniteMapSystem::discrete_metric(n);
    sys.validate();
    return sys;
}

// Alternating-block 0/1 values: block j has length first * ratio^j.
std::vector<double> block_values(int first, int ratio, int horizon, double lo, double hi) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(horizon));
    std::int64_t block = first;
    bool high = true;
    while (static_cast<int>(out.size()) < horizon) {
        for (std::int64_t t = 0; t < block && static_cast<int>(out.size()) < horizon; ++t) {
            out.push_back(high ? hi : lo);
        }
        high = !high;
        block *= ratio;
    }
    return out;
}

}  // namespace

TEST_CASE("upper and lower density examples") {
    const int h1 = 10000;
    std::vector<int> evens;
    for (int i = 0; i < h1; i += 2) evens.push_back(i);
    const auto d1 = upper_lower_density(evens, h1, 0.5);
    CHECK(d1.upper == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(d1.lower == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(d1.lower <= d1.upper);

    const int h2 = 1 << 16;
    std::vector<int> powers;
    for (int k = 1; k < h2; k <<= 1) powers.push_back(k);
    const auto d2 = upper_lower_density(powers, h2, 0.5);
    CHECK(d2.upper <= 17.0 / 32768.0);

    const int h3 = 1 << 16;  // 4^8
    std::vector<int> blocks;
    for (long long base = 1; base < h3; base *= 4) {
        for (long long i = base; i < 2 * base && i < h3; ++i) {
            blocks.push_back(static_cast<int>(i));
        }
    }
    const auto d3 = upper_lower_density(blocks, h3, 0.5);
    CHECK(d3.upper == doctest::Approx(2.0 / 3.0).epsilon(0.02));
    CHECK(d3.lower == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("empirical measure examples") {
    const auto fixed = empirical_measure(std::vector<int>(50, 7));
    CHECK(fixed.support == std::vector<int>{7});
    CHECK(fixed.weights == std::vector<double>{1.0});

    std::vector<int> flip;
    for (int i = 0; i < 60; ++i) flip.push_back(i % 2);
    const auto two = empirical_measure(flip);
    CHECK(two.support == std::vector<int>{0, 1});
    CHECK(two.weights[0] == 0.5);
    CHECK(two.weights[1] == 0.5);

    const auto states = orbit(chain_012(), 0, 101);
    const auto m = empirical_measure(states);
    CHECK(m.support == std::vector<int>{0, 1, 2});
    CHECK(m.weights[0] == doctest::Approx(1.0 / 101.0));
    CHECK(m.weights[1] == doctest::Approx(50.0 / 101.0));
    CHECK(m.weights[2] == doctest::Approx(50.0 / 101.0));
    double total = 0.0;
    for (double w : m.weights) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("omega-bar estimates drop density-zero visits") {
    const auto states = orbit(chain_012(), 0, 1000);
    const auto est = omega_bar_estimate(states, {0, 1, 2}, 0.01, 0.5);
    CHECK(est.reported == std::vector<int>{1, 2});  // the transient state 0 is dropped

    const int h = 1 << 16;
    std::vector<int> spiky(static_cast<size_t>(h), 0);
    for (int k = 1; k < h; k <<= 1) spiky[static_cast<size_t>(k)] = 1;
    const auto est2 = omega_bar_estimate(spiky, {0, 1}, 0.01, 0.5);
    CHECK(est2.reported == std::vector<int>{0});
    CHECK(est2.upper_estimates[1] <= 17.0 / 32768.0);
}

TEST_CASE("omega-bar of a growing-block alternation covers both fixed points") {
    const auto zeros = SymbolicPoint::periodic({0});
    const auto ones = SymbolicPoint::periodic({1});
    const auto seq = block_alternation_sequence(zeros, ones, 16, 4, 1 << 14);
    const auto est = omega_bar_estimate(seq, {zeros, ones}, 0.0, 0.01, 0.5);
    CHECK(est.reported == std::vector<int>{0, 1});
}

TEST_CASE("exact omega-bar of finite maps") {
    CHECK(omega_bar_exact_finite(chain_012(), 0) == std::vector<int>{1, 2});
    CHECK(omega_bar_exact_finite(chain_012(), 1) == std::vector<int>{1, 2});

    FiniteMapSystem fixed;
    fixed.points = {"a"};
    fixed.map_to = {0};
    fixed.metric = FiniteMapSystem::discrete_metric(1);
    CHECK(omega_bar_exact_finite(fixed, 0) == std::vector<int>{0});
}

TEST_CASE("exact omega-bar agrees with the estimator on random functional graphs") {
    RngStream rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + rng.next_below(63);
        const auto sys = random_functional(n, rng);
        const int start = rng.next_below(n);
        const auto exact = omega_bar_exact_finite(sys, start);

        // At theta = 0.01 the horizon must dilute one-off transient visits
        // below the threshold across the whole tail window, so keep it well
        // above 100/theta regardless of n.
        const int horizon = std::max(1000, 10 * n);
        const auto states = orbit(sys, start, horizon);
        std::vector<int> candidates(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) candidates[static_cast<size_t>(i)] = i;
        const auto est = omega_bar_estimate(states, candidates, 0.01, 0.5);
        CHECK(est.reported == exact);

        // Nonempty, f-invariant, and tail invariant.
        CHECK_FALSE(exact.empty());
        std::set<int> image;
        for (int v : exact) image.insert(sys.apply(v));
        CHECK(std::vector<int>(image.begin(), image.end()) == exact);
        int y = start;
        for (int i = 0; i < 5; ++i) {
            y = sys.apply(y);
            CHECK(omega_bar_exact_finite(sys, y) == exact);
        }
    }
}

TEST_CASE("omega-bar power identities") {
    FiniteMapSystem fixed;
    fixed.points = {"a", "b"};
    fixed.map_to = {0, 0};
    fixed.metric = FiniteMapSystem::discrete_metric(2);
    for (int m = 1; m <= 5; ++m) CHECK(omega_bar_power_identity_check(fixed, 1, m));

    // A 6-cycle under squaring splits into two 3-cycles that reassemble.
    CHECK(omega_bar_power_identity_check(cycle_system(6), 0, 2));
    CHECK(omega_bar_power_identity_check(cycle_system(6), 0, 3));
    CHECK(omega_bar_power_identity_check(cycle_system(6), 0, 4));

    RngStream rng(1212);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + rng.next_below(31);
        const auto sys = random_functional(n, rng);
        const int start = rng.next_below(n);
        const int m = 1 + rng.next_below(4);
        CHECK(omega_bar_power_identity_check(sys, start, m));
    }
}

TEST_CASE("exact omega-bar of symbolic points is the rotation set of the period") {
    const auto point = SymbolicPoint({1, 1, 0}, {0, 1});
    const auto omega = omega_bar_exact_symbolic(point);
    REQUIRE(omega.size() == 2);
    CHECK(omega[0] == SymbolicPoint::periodic({0, 1}));
    CHECK(omega[1] == SymbolicPoint::periodic({1, 0}));

    const auto fixed = omega_bar_exact_symbolic(SymbolicPoint::periodic({1}));
    CHECK(fixed == std::vector<SymbolicPoint>{SymbolicPoint::periodic({1})});
}

TEST_CASE("distributional functions on identical and constant-distance orbits") {
    const auto sys = full_shift();
    const auto zeros = SymbolicPoint::periodic({0});
    const auto ones = SymbolicPoint::periodic({1});
    const std::vector<double> grid{0.0625, 0.25, 0.5, 1.0, 1.5};

    const auto same = distributional_functions(orbit(sys, zeros, 512), orbit(sys, zeros, 512),
                                               grid, 0.5);
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > 0.0) {
            CHECK(same.f_values[i] == 1.0);
            CHECK(same.f_star_values[i] == 1.0);
        }
    }
    CHECK_FALSE(dc2_verdict(same, 0.5, 0.05));

    const auto apart =
        distributional_functions(orbit(sys, zeros, 512), orbit(sys, ones, 512), grid, 0.5);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double expected = grid[i] > 1.0 ? 1.0 : 0.0;
        CHECK(apart.f_values[i] == expected);
        CHECK(apart.f_star_values[i] == expected);
    }
    CHECK_FALSE(dc2_verdict(apart, 0.5, 0.05));

    CHECK_THROWS_AS(
        distributional_functions(orbit(sys, zeros, 512), orbit(sys, ones, 256), grid, 0.5),
        horizon_mismatch_error);

    // F <= F_star and both nondecreasing in t.
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(apart.f_values[i] <= apart.f_star_values[i]);
        if (i > 0) {
            CHECK(apart.f_values[i] >= apart.f_values[i - 1]);
            CHECK(apart.f_star_values[i] >= apart.f_star_values[i - 1]);
        }
    }
}

TEST_CASE("dc2 verdict on an interleaved-block pair") {
    // Together/apart distance blocks growing by factor 32: the together
    // stretches push the upper frequencies above 0.95 while the window still
    // remembers the apart stretch.
    const int horizon = 1 << 14;
    std::vector<double> distances;
    distances.reserve(static_cast<size_t>(horizon));
    std::int64_t block = 16;
    bool together = true;
    while (static_cast<int>(distances.size()) < horizon) {
        for (std::int64_t t = 0; t < block && static_cast<int>(distances.size()) < horizon; ++t) {
            distances.push_back(together ? 0.0 : 1.0);
        }
        together = !together;
        block *= 32;
    }
    const std::vector<double> grid{0.0625, 0.125, 0.25, 0.5, 1.0, 1.5};
    const auto df = distributional_functions(distances, grid, 0.5);
    CHECK(dc2_verdict(df, 0.5, 0.05));
    CHECK_THROWS_AS(dc2_verdict(df, 0.3, 0.05), toolkit_error);  // delta off the grid
}

TEST_CASE("birkhoff irregularity basics") {
    const auto steady = birkhoff_irregularity(std::vector<double>(200, 0.7), 0.25, 0.5);
    CHECK(steady.oscillation <= 1e-12);
    CHECK_FALSE(steady.irregular);

    std::vector<double> alternating;
    for (int i = 0; i < 200; ++i) alternating.push_back(i % 2 == 0 ? 1.0 : 0.0);
    const auto periodic = birkhoff_irregularity(alternating, 0.25, 0.5);
    CHECK(periodic.prefix_averages.back() == doctest::Approx(0.5).epsilon(0.01));
    CHECK(periodic.oscillation <= 0.02);
    CHECK_FALSE(periodic.irregular);

    const auto doubling = birkhoff_irregularity(block_values(1, 2, 1 << 16, 0.0, 1.0), 0.25, 0.5);
    CHECK(doubling.oscillation >= 0.33);
    CHECK(doubling.irregular);
}

TEST_CASE("irregular witness on the full shift") {
    const auto witness = irregular_witness_sft(full_shift(), 0, 2, 1 << 16, 3);
    CHECK(witness.point.admissible_in(full_shift()));
    CHECK(witness.cycle_a == std::vector<int>{0});
    CHECK(witness.cycle_b == std::vector<int>{1});
    CHECK(witness.report.oscillation >= 1.0 / 3.0 - 0.05);
    CHECK(witness.report.irregular);
    for (size_t i = 0; i < witness.observable.size(); ++i) {
        CHECK(witness.observable[i] == (witness.point.at(static_cast<int>(i)) == 1 ? 1.0 : 0.0));
    }
}

TEST_CASE("irregular witness on the golden-mean shift") {
    const auto sys = golden_mean();
    const auto witness = irregular_witness_sft(sys, 0, 4, 1 << 16, 1);
    CHECK(witness.point.admissible_in(sys));
    CHECK(witness.report.irregular);  // epsilon 1/4 against a 1/3-ish split
}

TEST_CASE("systems without two distinct cycles yield no witness") {
    CHECK_THROWS_AS(irregular_witness_sft(two_point(), 0, 2, 1 << 10, 0),
                    no_disjoint_cycles_error);
}

TEST_CASE("scrambled family check fails on identical omega-bar sets") {
    const auto sys = full_shift();
    const auto a = SymbolicPoint::periodic({0, 1});
    const auto b = SymbolicPoint::periodic({1, 0});
    const auto w = scrambled_family_check(sys, {a, b}, 4096, 0.01, 0.0);
    CHECK_FALSE(w.verdict);
    for (const auto& rec : w.pairs) {
        CHECK_FALSE(rec.difference_nonempty);
        CHECK(rec.intersection_nonempty);
    }
}

TEST_CASE("scrambled family check on a growing-block pair sharing one fixed point") {
    const auto sys = full_shift();
    const int horizon = 4096;

    // Both points dwell on 0^inf in growing blocks; x interleaves (01)^inf
    // stretches, y interleaves 1^inf stretches. All omega-bar candidates are
    // periodic, so conditions (1) and (2) pass while (3) fails.
    auto build = [&](const SymbolicPoint& other) {
        std::vector<int> pre;
        std::int64_t block = 16;
        bool on_zero = true;
        std::int64_t offset = 0;
        while (static_cast<int>(pre.size()) < horizon) {
            for (std::int64_t t = 0; t < block && static_cast<int>(pre.size()) < horizon; ++t) {
                pre.push_back(on_zero ? 0 : other.at(offset + t));
            }
            if (!on_zero) offset += block;
            on_zero = !on_zero;
            block *= 4;
        }
        return SymbolicPoint(std::move(pre), {0});
    };
    const auto x = build(SymbolicPoint::periodic({0, 1}));
    const auto y = build(SymbolicPoint::periodic({1}));

    const auto w = scrambled_family_check(sys, {x, y}, horizon, 0.01, 1.0 / 64.0);
    REQUIRE(w.pairs.size() == 2);
    for (const auto& rec : w.pairs) {
        CHECK(rec.difference_nonempty);
        CHECK(rec.intersection_nonempty);
        CHECK_FALSE(rec.has_nonperiodic_element);
    }
    CHECK_FALSE(w.verdict);
}

TEST_CASE("omega-bar estimates transfer through the average shadow construction") {
    const auto sys = full_shift();
    const auto zeros = SymbolicPoint::periodic({0});
    const auto ones = SymbolicPoint::periodic({1});
    const int horizon = 1 << 14;
    const auto pts = block_alternation_sequence(zeros, ones, 16, 4, horizon);

    AverageShadowSchedule schedule;
    const auto trace = average_shadow_trace(sys, pts, 0.25, schedule, horizon);

    const std::vector<SymbolicPoint> candidates{zeros, ones};
    const auto input_est = omega_bar_estimate(pts, candidates, 1.0 / 64.0, 0.01, 0.5);
    const auto output_est =
        omega_bar_estimate(orbit(sys, trace.point, horizon), candidates, 1.0 / 64.0, 0.01, 0.5);
    CHECK(input_est.reported == output_est.reported);
    CHECK(output_est.reported == std::vector<int>{0, 1});
}

TEST_CASE("measure center of finite maps") {
    CHECK(measure_center_finite(chain_012()) == std::vector<int>{1, 2});

    FiniteMapSystem identity;
    identity.points = {"a", "b", "c"};
    identity.map_to = {0, 1, 2};
    identity.metric = FiniteMapSystem::discrete_metric(3);
    CHECK(measure_center_finite(identity) == std::vector<int>{0, 1, 2});

    RngStream rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + rng.next_below(63);
        const auto sys = random_functional(n, rng);
        const auto center = measure_center_finite(sys);  // three internal oracles must agree
        std::set<int> expected;
        for (int v = 0; v < n; ++v) {
            const auto omega = omega_bar_exact_finite(sys, v);
            expected.insert(omega.begin(), omega.end());
        }
        CHECK(center == std::vector<int>(expected.begin(), expected.end()));
    }
}

TEST_CASE("uniform recurrence gap") {
    CHECK(uniform_recurrence_gap(cycle_system(1)) == 1);
    CHECK(uniform_recurrence_gap(cycle_system(5)) == 5);
    CHECK_THROWS_AS(uniform_recurrence_gap(chain_012()), not_minimal_error);

    for (int n = 1; n <= 32; ++n) {
        const int k = uniform_recurrence_gap(cycle_system(n));
        CHECK(k == n);
        // Window-scan oracle: every length-k window of the orbit hits every
        // state, and no shorter window does for n > 1.
        const auto states = orbit(cycle_system(n), 0, 3 * n);
        auto window_covers = [&](int width) {
            for (size_t s = 0; s + static_cast<size_t>(width) <= states.size(); ++s) {
                std::set<int> seen(states.begin() + static_cast<long>(s),
                                   states.begin() + static_cast<long>(s) + width);
                if (static_cast<int>(seen.size()) < n) return false;
            }
            return true;
        };
        CHECK(window_covers(k));
        if (n > 1) CHECK_FALSE(window_covers(k - 1));
    }
}
