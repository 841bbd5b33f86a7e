#ifndef SDTK_SPEC_IO_HPP_
#define SDTK_SPEC_IO_HPP_

#include <string>

#include "sdtk/errors.hpp"
#include "sdtk/systems.hpp"

namespace sdtk {

/// A parsed system spec; `kind` says which member is live.
struct ParsedSystem {
    std::string kind;  // "sft", "finite_map", or "interval_pl"
    SymbolicSystem sft;
    FiniteMapSystem finite;
    IntervalMapSystem interval;
};

/// Parses a JSON system spec. Throws schema_error with field context on
/// malformed input; construction errors (EmptySubshift, BadMetric) pass
/// through from the system constructors.
ParsedSystem parse_system_spec(const std::string& text);

/// Canonical JSON rendering of a parsed system; parse(print(s)) == s.
std::string print_system_spec(const ParsedSystem& system);

/// FNV-1a 64-bit hash of the raw spec text, as fixed-width hex.
std::string input_hash(const std::string& text);

}  // namespace sdtk

#endif  // SDTK_SPEC_IO_HPP_
