#ifndef SDTK_RNG_HPP_
#define SDTK_RNG_HPP_

#include <cstdint>

namespace sdtk {

// splitmix64: counter-based expansion, so trial k of seed s can be derived
// independently of trials before it.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Tiny deterministic stream built on repeated splitmix64 mixing.
struct RngStream {
    std::uint64_t state;

    explicit RngStream(std::uint64_t seed) : state(splitmix64(seed)) {}

    std::uint64_t next() {
        state = splitmix64(state);
        return state;
    }
    /// Uniform in [0, n); n >= 1.
    int next_below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

}  // namespace sdtk

#endif  // SDTK_RNG_HPP_
