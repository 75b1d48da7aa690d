#pragma once

#include <json.hpp>

#include <string>

#include "ncwick/element.hpp"
#include "ncwick/print.hpp"
#include "ncwick/rational.hpp"

namespace ncwick {

// JSON schema for elements: an object {"terms": [...]} whose records pair a
// bar-word (array of words, each an array of letter strings, factors joined
// by '.') with one coefficient monomial:
//   {"barword": [["a"], ["b", "c.d"]],
//    "coeff": {"monomial": [["phi", "a.b"]], "rat": "-1"}}
// A "t" field on the coeff carries the central-variable power when nonzero.
namespace json_io {

using nlohmann::json;

inline json barword_to_json(const BarWord& b, const GeneratorSet& gens) {
    json words = json::array();
    for (const auto& w : b.words) {
        json letters = json::array();
        for (const auto& l : w.letters) letters.push_back(print::letter_text(l, gens));
        words.push_back(std::move(letters));
    }
    return words;
}

inline json element_to_json(const Element& x, const GeneratorSet& gens) {
    json terms = json::array();
    for (const auto& t : print::flatten_terms(x)) {
        json coeff;
        json monomial = json::array();
        for (const auto& sym : t.monomial.symbols) {
            std::string key;
            for (std::size_t i = 0; i < sym.key.size(); ++i) {
                if (i) key += '.';
                key += gens.name(sym.key[i]);
            }
            monomial.push_back(json::array({sym.tag == StateTag::phi ? "phi" : "psi", key}));
        }
        coeff["monomial"] = std::move(monomial);
        coeff["rat"] = t.coeff.str();
        if (t.monomial.t_power > 0) coeff["t"] = t.monomial.t_power;
        terms.push_back(json{{"barword", barword_to_json(t.barword, gens)},
                             {"coeff", std::move(coeff)}});
    }
    return json{{"terms", std::move(terms)}};
}

inline Letter letter_from_text(const std::string& s, GeneratorSet& gens, bool strict) {
    std::vector<GenIndex> factors;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto dot = s.find('.', start);
        std::string name = s.substr(start, dot == std::string::npos ? dot : dot - start);
        if (name.empty()) throw std::invalid_argument("empty generator name in letter");
        factors.push_back(strict ? gens.index_of(name) : gens.add_or_get(name));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return Letter(std::move(factors));
}

inline Element element_from_json(const json& j, GeneratorSet& gens, bool strict = false) {
    Element x;
    for (const auto& term : j.at("terms")) {
        std::vector<Word> words;
        for (const auto& wj : term.at("barword")) {
            std::vector<Letter> letters;
            for (const auto& lj : wj)
                letters.push_back(letter_from_text(lj.get<std::string>(), gens, strict));
            words.push_back(Word(std::move(letters)));
        }
        const auto& cj = term.at("coeff");
        Monomial m;
        if (cj.contains("t")) m.t_power = cj.at("t").get<std::uint32_t>();
        for (const auto& sj : cj.at("monomial")) {
            MomentSymbol sym;
            sym.tag = sj.at(0).get<std::string>() == "psi" ? StateTag::psi : StateTag::phi;
            Letter key = letter_from_text(sj.at(1).get<std::string>(), gens, strict);
            sym.key = key.factors;
            m.symbols.push_back(std::move(sym));
        }
        std::sort(m.symbols.begin(), m.symbols.end());
        auto q = parse_rational(cj.at("rat").get<std::string>());
        if (!q) throw std::invalid_argument("bad rational in coeff");
        Scalar c;
        c.add_term(m, *q);
        x.add_term(BarWord(std::move(words)), c);
    }
    return x;
}

}  // namespace json_io
}  // namespace ncwick
