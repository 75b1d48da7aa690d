#pragma once

#include <sstream>
#include <string>

#include "ncwick/element.hpp"
#include "ncwick/scalar.hpp"

namespace ncwick {

enum class OutputFormat { text, latex, json };

namespace print {

inline std::string rational_text(const Rational& q) { return q.str(); }

inline std::string letter_text(const Letter& l, const GeneratorSet& gens) {
    std::string s;
    for (std::size_t i = 0; i < l.factors.size(); ++i) {
        if (i) s += '.';
        s += gens.name(l.factors[i]);
    }
    return s;
}

inline std::string word_text(const Word& w, const GeneratorSet& gens) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += ' ';
        s += letter_text(w.letters[i], gens);
    }
    return s;
}

inline std::string barword_text(const BarWord& b, const GeneratorSet& gens) {
    if (b.is_unit()) return "1";
    std::string s;
    for (std::size_t i = 0; i < b.words.size(); ++i) {
        if (i) s += " | ";
        s += word_text(b.words[i], gens);
    }
    return s;
}

inline std::string symbol_text(const MomentSymbol& m, const GeneratorSet& gens) {
    std::string s = m.tag == StateTag::phi ? "phi[" : "psi[";
    for (std::size_t i = 0; i < m.key.size(); ++i) {
        if (i) s += '.';
        s += gens.name(m.key[i]);
    }
    s += ']';
    return s;
}

inline std::string monomial_text(const Monomial& m, const GeneratorSet& gens) {
    std::string s;
    if (m.t_power == 1) s += "t";
    else if (m.t_power > 1) s += "t^" + std::to_string(m.t_power);
    for (const auto& sym : m.symbols) {
        if (!s.empty()) s += ' ';
        s += symbol_text(sym, gens);
    }
    return s;
}

// One fully distributed product: rational, symbol monomial and bar-word.
// "+"/"-" separators between terms keep the output parseable.
struct FlatTerm {
    Rational coeff;
    Monomial monomial;
    BarWord barword;
};

inline std::vector<FlatTerm> flatten_terms(const Element& x) {
    std::vector<FlatTerm> out;
    // highest degree first, the way the displays read
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
        for (const auto& [m, q] : it->second.terms()) out.push_back({q, m, it->first});
    return out;
}

inline std::string element_text(const Element& x, const GeneratorSet& gens) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : flatten_terms(x)) {
        Rational q = t.coeff;
        if (first) {
            if (q < 0) {
                s += "- ";
                q = -q;
            }
        } else {
            s += q < 0 ? " - " : " + ";
            if (q < 0) q = -q;
        }
        first = false;
        std::vector<std::string> parts;
        if (q != 1) parts.push_back(rational_text(q));
        if (std::string mono = monomial_text(t.monomial, gens); !mono.empty())
            parts.push_back(std::move(mono));
        parts.push_back(barword_text(t.barword, gens));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ' ';
            s += parts[i];
        }
    }
    return s;
}

inline std::string scalar_text(const Scalar& s, const GeneratorSet& gens) {
    return element_text(Element::term(BarWord{}, s), gens);
}

inline std::string tensor_pair_text(const TensorPair& tp, const GeneratorSet& gens) {
    if (tp.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [legs, c] : tp.terms()) {
        Element coeff_as_elem = Element::term(BarWord{}, c);
        for (const auto& t : flatten_terms(coeff_as_elem)) {
            Rational q = t.coeff;
            if (first) {
                if (q < 0) {
                    s += "- ";
                    q = -q;
                }
            } else {
                s += q < 0 ? " - " : " + ";
                if (q < 0) q = -q;
            }
            first = false;
            const std::string mono = monomial_text(t.monomial, gens);
            if (q != 1 || !mono.empty()) {
                if (q != 1) s += rational_text(q) + ' ';
                if (!mono.empty()) s += mono + ' ';
            }
            s += "(" + barword_text(legs.first, gens) + ") (x) (" +
                 barword_text(legs.second, gens) + ")";
        }
    }
    return s;
}

// ---- LaTeX -------------------------------------------------------------------

inline std::string letter_latex(const Letter& l, const GeneratorSet& gens) {
    std::string s;
    for (std::size_t i = 0; i < l.factors.size(); ++i) {
        if (i) s += " \\cdot ";
        s += gens.name(l.factors[i]);
    }
    return s;
}

inline std::string barword_latex(const BarWord& b, const GeneratorSet& gens) {
    if (b.is_unit()) return "\\mathbf{1}";
    std::string s;
    for (std::size_t i = 0; i < b.words.size(); ++i) {
        if (i) s += " \\,|\\, ";
        const auto& w = b.words[i];
        for (std::size_t j = 0; j < w.letters.size(); ++j) {
            if (j) s += "\\, ";
            if (w.letters[j].factors.size() > 1)
                s += "(" + letter_latex(w.letters[j], gens) + ")";
            else
                s += letter_latex(w.letters[j], gens);
        }
    }
    return s;
}

inline std::string monomial_latex(const Monomial& m, const GeneratorSet& gens) {
    std::string s;
    if (m.t_power == 1) s += "t";
    else if (m.t_power > 1) s += "t^{" + std::to_string(m.t_power) + "}";
    for (const auto& sym : m.symbols) {
        s += sym.tag == StateTag::phi ? "\\varphi(" : "\\psi(";
        for (std::size_t i = 0; i < sym.key.size(); ++i) {
            if (i) s += " \\cdot ";
            s += gens.name(sym.key[i]);
        }
        s += ")";
    }
    return s;
}

inline std::string element_latex(const Element& x, const GeneratorSet& gens) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : flatten_terms(x)) {
        Rational q = t.coeff;
        if (first) {
            if (q < 0) {
                s += "-";
                q = -q;
            }
        } else {
            s += q < 0 ? " - " : " + ";
            if (q < 0) q = -q;
        }
        first = false;
        std::string mono = monomial_latex(t.monomial, gens);
        if (q != 1 || mono.empty() || t.barword.is_unit()) {
            if (denominator_of(q) == 1) {
                if (q != 1 || (mono.empty() && t.barword.is_unit())) s += q.str();
            } else {
                s += "\\tfrac{" + numerator_of(q).str() + "}{" + denominator_of(q).str() + "}";
            }
        }
        s += mono;
        if (!t.barword.is_unit()) s += "\\," + barword_latex(t.barword, gens);
        else if (!mono.empty()) s += "\\,\\mathbf{1}";
    }
    return s;
}

}  // namespace print
}  // namespace ncwick
