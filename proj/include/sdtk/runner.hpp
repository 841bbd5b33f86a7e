#ifndef SDTK_RUNNER_HPP_
#define SDTK_RUNNER_HPP_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "sdtk/spec_io.hpp"

namespace sdtk {

struct ExperimentSpec {
    std::string command;
    std::string spec_text;     // raw JSON system spec
    std::uint64_t seed = 0;
    int horizon = 0;           // 0 means command default
    int m = 3;                 // dyadic delta exponent
    double theta = 0.01;
    double tail_fraction = 0.5;
    int ratio = 4;             // block growth ratio
};

/// Dispatches a command and returns the full report (command echo, version,
/// input hash, seed, wall clock, results payload). The results payload is
/// deterministic: doubles rounded to 12 significant digits, sets sorted.
nlohmann::json run(const ExperimentSpec& spec);

}  // namespace sdtk

#endif  // SDTK_RUNNER_HPP_
