#include "sdtk/spec_io.hpp"

#include <cstdint>
#include <cstdio>

#include "json.hpp"

namespace sdtk {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw schema_error(std::string("invalid JSON: ") + e.what());
    }
}

const json& require(const json& spec, const char* field) {
    if (!spec.contains(field)) {
        throw schema_error(std::string("missing field \"") + field + "\"");
    }
    return spec.at(field);
}

std::vector<int> parse_word(const json& entry, const Alphabet& alphabet) {
    std::vector<int> word;
    if (entry.is_string()) {
        // Single-character symbol names let words be written as plain strings.
        for (char c : entry.get<std::string>()) {
            const int s = alphabet.index_of(std::string(1, c));
            if (s < 0) throw bad_word_error(std::string("unknown symbol '") + c + "' in word");
            word.push_back(s);
        }
    } else if (entry.is_array()) {
        for (const auto& item : entry) {
            if (!item.is_string()) throw schema_error("word entries must be symbol names");
            const int s = alphabet.index_of(item.get<std::string>());
            if (s < 0) throw bad_word_error("unknown symbol \"" + item.get<std::string>() + "\"");
            word.push_back(s);
        }
    } else {
        throw schema_error("forbidden words must be strings or symbol arrays");
    }
    return word;
}

ParsedSystem parse_sft(const json& spec) {
    ParsedSystem out;
    out.kind = "sft";
    std::vector<std::string> symbols;
    for (const auto& s : require(spec, "alphabet")) {
        if (!s.is_string()) throw schema_error("\"alphabet\" must list symbol names");
        symbols.push_back(s.get<std::string>());
    }
    Alphabet alphabet(std::move(symbols));
    std::vector<std::vector<int>> forbidden;
    if (spec.contains("forbidden")) {
        for (const auto& entry : spec.at("forbidden")) {
            forbidden.push_back(parse_word(entry, alphabet));
        }
    }
    out.sft = sft_from_forbidden_words(alphabet, forbidden);
    return out;
}

ParsedSystem parse_finite_map(const json& spec) {
    ParsedSystem out;
    out.kind = "finite_map";
    FiniteMapSystem& system = out.finite;
    for (const auto& p : require(spec, "points")) {
        if (!p.is_string()) throw schema_error("\"points\" must list point names");
        system.points.push_back(p.get<std::string>());
    }
    auto index_of = [&](const std::string& name) {
        for (size_t i = 0; i < system.points.size(); ++i) {
            if (system.points[i] == name) return static_cast<int>(i);
        }
        throw schema_error("unknown point \"" + name + "\" in \"map\"");
    };
    const auto& map = require(spec, "map");
    if (!map.is_object()) throw schema_error("\"map\" must be an object");
    system.map_to.assign(system.points.size(), -1);
    for (const auto& [from, to] : map.items()) {
        if (!to.is_string()) throw schema_error("\"map\" targets must be point names");
        system.map_to[static_cast<size_t>(index_of(from))] = index_of(to.get<std::string>());
    }
    for (int target : system.map_to) {
        if (target < 0) throw schema_error("\"map\" must be total");
    }
    const auto& metric = require(spec, "metric");
    if (metric.is_string() && metric.get<std::string>() == "discrete") {
        system.metric = FiniteMapSystem::discrete_metric(system.point_count());
    } else if (metric.is_array()) {
        for (const auto& row : metric) {
            std::vector<double> values;
            for (const auto& x : row) values.push_back(x.get<double>());
            system.metric.push_back(std::move(values));
        }
    } else {
        throw schema_error("\"metric\" must be \"discrete\" or a distance table");
    }
    system.validate();
    return out;
}

ParsedSystem parse_interval(const json& spec) {
    ParsedSystem out;
    out.kind = "interval_pl";
    for (const auto& x : require(spec, "breakpoints")) {
        out.interval.breakpoints.push_back(x.get<double>());
    }
    for (const auto& x : require(spec, "values")) out.interval.values.push_back(x.get<double>());
    out.interval.validate();
    return out;
}

}  // namespace

ParsedSystem parse_system_spec(const std::string& text) {
    const json spec = parse_json(text);
    if (!spec.is_object()) throw schema_error("system spec must be a JSON object");
    const auto kind = require(spec, "kind");
    if (!kind.is_string()) throw schema_error("\"kind\" must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "sft") return parse_sft(spec);
    if (k == "finite_map") return parse_finite_map(spec);
    if (k == "interval_pl") return parse_interval(spec);
    throw schema_error("unknown system kind \"" + k + "\"");
}

std::string print_system_spec(const ParsedSystem& system) {
    json out;
    out["kind"] = system.kind;
    if (system.kind == "sft") {
        // The parsed SFT is already one-step recoded, so print it back as
        // its recoded alphabet with the disallowed transitions forbidden.
        out["alphabet"] = system.sft.alphabet.names();
        json forbidden = json::array();
        for (int a = 0; a < system.sft.symbol_count(); ++a) {
            for (int b = 0; b < system.sft.symbol_count(); ++b) {
                if (!system.sft.is_allowed(a, b)) {
                    forbidden.push_back(json::array(
                        {system.sft.alphabet.name(a), system.sft.alphabet.name(b)}));
                }
            }
        }
        out["forbidden"] = forbidden;
    } else if (system.kind == "finite_map") {
        out["points"] = system.finite.points;
        json map = json::object();
        for (int v = 0; v < system.finite.point_count(); ++v) {
            map[system.finite.points[static_cast<size_t>(v)]] =
                system.finite.points[static_cast<size_t>(system.finite.apply(v))];
        }
        out["map"] = map;
        out["metric"] = system.finite.metric;
    } else {
        out["breakpoints"] = system.interval.breakpoints;
        out["values"] = system.interval.values;
    }
    return out.dump();
}

std::string input_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

}  // namespace sdtk
