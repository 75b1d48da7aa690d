#pragma once

#include <json.hpp>

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include "ncwick/state.hpp"

namespace ncwick {

// A loaded session description:
//   {"generators": ["a", "b"], "mode": "noncommutative",
//    "states": {"phi": {"mode": "table", "moments": {"a.b": "1/2", ...}},
//               "psi": {"mode": "symbolic"}}}
// Moment keys are dot-joined generator products, values rational strings
// (plain integers also accepted).
struct LoadedStates {
    GeneratorSet gens;
    Mode mode = Mode::noncommutative;
    std::optional<State> phi;
    std::optional<State> psi;
};

namespace state_io {

inline State parse_state_entry(const nlohmann::json& spec, StateTag tag, Mode mode,
                               const GeneratorSet& gens) {
    const std::string kind = spec.value("mode", "symbolic");
    if (kind == "symbolic") return State::symbolic(tag, mode);
    if (kind != "table")
        throw std::runtime_error("state mode must be 'symbolic' or 'table'");
    std::map<std::vector<GenIndex>, Rational> table;
    for (const auto& [key, value] : spec.at("moments").items()) {
        std::vector<GenIndex> k;
        std::size_t start = 0;
        while (start <= key.size()) {
            auto dot = key.find('.', start);
            std::string name = key.substr(start, dot == std::string::npos ? dot : dot - start);
            if (name.empty())
                throw std::runtime_error("empty generator in moment key " + key);
            k.push_back(gens.index_of(name));
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        std::optional<Rational> q;
        if (value.is_string()) q = parse_rational(value.get<std::string>());
        else if (value.is_number_integer()) q = Rational(value.get<long long>());
        if (!q) throw std::runtime_error("moment value for " + key + " is not a rational");
        table[k] = *q;
    }
    return State::table(tag, mode, std::move(table));
}

inline LoadedStates load_states(const nlohmann::json& doc) {
    LoadedStates out;
    if (doc.contains("mode")) {
        const std::string m = doc.at("mode").get<std::string>();
        if (m == "commutative") out.mode = Mode::commutative;
        else if (m == "noncommutative") out.mode = Mode::noncommutative;
        else throw std::runtime_error("mode must be 'commutative' or 'noncommutative'");
    }
    for (const auto& g : doc.at("generators")) out.gens.add(g.get<std::string>());
    const auto& states = doc.at("states");
    if (states.contains("phi"))
        out.phi = parse_state_entry(states.at("phi"), StateTag::phi, out.mode, out.gens);
    if (states.contains("psi"))
        out.psi = parse_state_entry(states.at("psi"), StateTag::psi, out.mode, out.gens);
    return out;
}

inline LoadedStates load_states_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file " + path);
    return load_states(nlohmann::json::parse(in));
}

}  // namespace state_io
}  // namespace ncwick
