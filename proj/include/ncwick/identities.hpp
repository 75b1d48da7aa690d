#pragma once

#include <functional>
#include <random>
#include <tuple>

#include "ncwick/coalgebra.hpp"
#include "ncwick/element.hpp"
#include "ncwick/functional.hpp"

namespace ncwick {

// Three-fold tensors, needed only to state coassociativity-shaped axioms.
using TripleKey = std::tuple<BarWord, BarWord, BarWord>;

struct TripleLess {
    bool operator()(const TripleKey& a, const TripleKey& b) const {
        if (auto c = TermOrder::cmp(std::get<0>(a), std::get<0>(b)); c != 0) return c < 0;
        if (auto c = TermOrder::cmp(std::get<1>(a), std::get<1>(b)); c != 0) return c < 0;
        return TermOrder::cmp(std::get<2>(a), std::get<2>(b)) < 0;
    }
};

using TensorTriple = std::map<TripleKey, Scalar, TripleLess>;

inline void triple_add(TensorTriple& t, const TripleKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

using Coproduct = std::function<TensorPair(const BarWord&)>;

// (cop (x) id) applied to a pair expansion.
inline TensorTriple expand_first(const TensorPair& tp, const Coproduct& cop) {
    TensorTriple r;
    for (const auto& [legs, c] : tp.terms()) {
        const TensorPair inner_cop = cop(legs.first);
        for (const auto& [inner, ci] : inner_cop.terms())
            triple_add(r, {inner.first, inner.second, legs.second}, c * ci);
    }
    return r;
}

// (id (x) cop) applied to a pair expansion.
inline TensorTriple expand_second(const TensorPair& tp, const Coproduct& cop) {
    TensorTriple r;
    for (const auto& [legs, c] : tp.terms()) {
        const TensorPair inner_cop = cop(legs.second);
        for (const auto& [inner, ci] : inner_cop.terms())
            triple_add(r, {legs.first, inner.first, inner.second}, c * ci);
    }
    return r;
}

// ---- deterministic test vocabularies ------------------------------------------

// All words with single-generator letters over the first `gens` generators,
// degrees 1..max_degree, in canonical order.
inline std::vector<Word> words_over(int gens, int max_degree) {
    std::vector<Word> out;
    std::vector<std::vector<GenIndex>> level{{}};
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<std::vector<GenIndex>> next;
        for (const auto& stem : level)
            for (GenIndex g = 0; g < static_cast<GenIndex>(gens); ++g) {
                auto seq = stem;
                seq.push_back(g);
                next.push_back(std::move(seq));
            }
        for (const auto& seq : next) out.push_back(word_of_gens(seq));
        level = std::move(next);
    }
    return out;
}

// The generic words a_1, a_1 a_2, ..., a_1...a_n with all letters distinct.
inline std::vector<Word> generic_words(int max_degree) {
    std::vector<Word> out;
    std::vector<GenIndex> seq;
    for (int d = 1; d <= max_degree; ++d) {
        seq.push_back(static_cast<GenIndex>(d - 1));
        out.push_back(word_of_gens(seq));
    }
    return out;
}

// A few words whose letters are themselves products in A.
inline std::vector<Word> composite_letter_words() {
    std::vector<Word> out;
    {
        Word w;
        w.letters.push_back(Letter(std::vector<GenIndex>{0, 1}));
        w.letters.push_back(Letter(2));
        out.push_back(w);
    }
    {
        Word w;
        w.letters.push_back(Letter(0));
        w.letters.push_back(Letter(std::vector<GenIndex>{1, 1}));
        out.push_back(w);
    }
    return out;
}

// Bar-words assembled from a word list: every single word plus all pairs and
// triples within the degree budget, unit included.
inline std::vector<BarWord> barwords_from(const std::vector<Word>& words, int max_total_degree) {
    std::vector<BarWord> out;
    out.push_back(BarWord{});
    for (const auto& w : words)
        if (static_cast<int>(w.degree()) <= max_total_degree) out.push_back(BarWord(w));
    for (const auto& w1 : words)
        for (const auto& w2 : words) {
            if (static_cast<int>(w1.degree() + w2.degree()) > max_total_degree) continue;
            out.push_back(BarWord(std::vector<Word>{w1, w2}));
        }
    for (const auto& w1 : words)
        for (const auto& w2 : words)
            for (const auto& w3 : words) {
                if (static_cast<int>(w1.degree() + w2.degree() + w3.degree()) > max_total_degree)
                    continue;
                out.push_back(BarWord(std::vector<Word>{w1, w2, w3}));
            }
    return out;
}

// An infinitesimal character with small random rational word values, on a
// fixed finite vocabulary. Queries past the table depth are degree
// underflow and rejected.
inline Functional random_infinitesimal(std::mt19937_64& rng, int gens, int max_degree) {
    auto table = std::make_shared<std::map<Word, Scalar, TermOrder>>();
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    for (const auto& w : words_over(gens, max_degree))
        (*table)[w] = Scalar(Rational(num(rng), den(rng)));
    return Functional::infinitesimal([table](const Word& w) {
        auto it = table->find(w);
        if (it == table->end())
            throw std::out_of_range("random table queried past its degree");
        return it->second;
    });
}

// Functional equality on a finite vocabulary, reporting the first mismatch.
struct FunctionalDiff {
    bool equal = true;
    BarWord where;
    Scalar lhs, rhs;
};

inline FunctionalDiff compare_functionals(const Functional& a, const Functional& b,
                                          const std::vector<BarWord>& on) {
    for (const auto& w : on) {
        Scalar va = a(w), vb = b(w);
        if (!(va == vb)) return {false, w, va, vb};
    }
    return {};
}

}  // namespace ncwick
