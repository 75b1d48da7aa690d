#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncwick {

// Whether products in the base algebra A commute. Commutative mode sorts
// factor sequences so that equal products share one normal form.
enum class Mode { noncommutative, commutative };

using GenIndex = std::uint32_t;

// Session-wide registry of generator names. Indices are dense 0..p-1.
class GeneratorSet {
public:
    GenIndex add(const std::string& name) {
        if (auto it = index_.find(name); it != index_.end())
            throw std::invalid_argument("duplicate generator: " + name);
        names_.push_back(name);
        const auto id = static_cast<GenIndex>(names_.size() - 1);
        index_.emplace(name, id);
        return id;
    }
    GenIndex add_or_get(const std::string& name) {
        if (auto it = index_.find(name); it != index_.end()) return it->second;
        names_.push_back(name);
        const auto id = static_cast<GenIndex>(names_.size() - 1);
        index_.emplace(name, id);
        return id;
    }
    const std::string& name(GenIndex i) const { return names_.at(i); }
    bool contains(const std::string& name) const { return index_.count(name) > 0; }
    GenIndex index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown generator: " + name);
        return it->second;
    }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::map<std::string, GenIndex> index_;
};

// A monomial of the base algebra A: a nonempty product of generators.
struct Letter {
    std::vector<GenIndex> factors;

    Letter() = default;
    explicit Letter(GenIndex g) : factors{g} {}
    explicit Letter(std::vector<GenIndex> f) : factors(std::move(f)) {
        if (factors.empty()) throw std::invalid_argument("empty letter");
    }

    auto operator<=>(const Letter&) const = default;
};

// Product in A of two letters; commutative mode keeps factors sorted.
inline Letter letter_mul(const Letter& a, const Letter& b, Mode mode) {
    Letter r;
    r.factors.reserve(a.factors.size() + b.factors.size());
    r.factors.insert(r.factors.end(), a.factors.begin(), a.factors.end());
    r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
    if (mode == Mode::commutative) std::sort(r.factors.begin(), r.factors.end());
    return r;
}

// A pure tensor in T(A); the empty word is the unit of the unitalization.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    bool empty() const { return letters.empty(); }
    std::size_t degree() const { return letters.size(); }
    auto operator<=>(const Word&) const = default;
};

inline Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

// Evaluation T(A) -> A: multiplies out a nonempty word inside A.
inline Letter evaluate_in_A(const Word& w, Mode mode) {
    if (w.empty()) throw std::invalid_argument("evaluate_in_A: empty word");
    Letter r = w.letters.front();
    for (std::size_t i = 1; i < w.letters.size(); ++i)
        r = letter_mul(r, w.letters[i], mode);
    return r;
}

// Concatenated factor sequence of all letters; the key a moment symbol uses.
inline std::vector<GenIndex> flatten(const Word& w, Mode mode) {
    std::vector<GenIndex> key;
    for (const auto& l : w.letters)
        key.insert(key.end(), l.factors.begin(), l.factors.end());
    if (mode == Mode::commutative) std::sort(key.begin(), key.end());
    return key;
}

// A generator w_1|...|w_n of the double tensor algebra; no component word
// is empty and the empty sequence is the unit.
struct BarWord {
    std::vector<Word> words;

    BarWord() = default;
    explicit BarWord(Word w) {
        if (!w.empty()) words.push_back(std::move(w));
    }
    explicit BarWord(std::vector<Word> ws) : words(std::move(ws)) {
        for (const auto& w : words)
            if (w.empty()) throw std::invalid_argument("empty component in bar-word");
    }

    bool is_unit() const { return words.empty(); }
    std::size_t components() const { return words.size(); }
    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& w : words) d += w.degree();
        return d;
    }
    auto operator<=>(const BarWord&) const = default;
};

inline BarWord bar_concat(const BarWord& a, const BarWord& b) {
    BarWord r = a;
    r.words.insert(r.words.end(), b.words.begin(), b.words.end());
    return r;
}

// Canonical term order: (total degree, bar count, component-wise lexicographic).
// Deterministic printing and degree truncation both lean on it.
struct TermOrder {
    static std::strong_ordering cmp(const Word& a, const Word& b) {
        if (a.degree() != b.degree())
            return a.degree() < b.degree() ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
        return a.letters <=> b.letters;
    }
    static std::strong_ordering cmp(const BarWord& a, const BarWord& b) {
        if (a.degree() != b.degree())
            return a.degree() < b.degree() ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
        if (a.components() != b.components())
            return a.components() < b.components() ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
        for (std::size_t i = 0; i < a.components(); ++i)
            if (auto c = cmp(a.words[i], b.words[i]); c != 0) return c;
        return std::strong_ordering::equal;
    }
    bool operator()(const Word& a, const Word& b) const { return cmp(a, b) < 0; }
    bool operator()(const BarWord& a, const BarWord& b) const { return cmp(a, b) < 0; }
    bool operator()(const std::pair<BarWord, BarWord>& a,
                    const std::pair<BarWord, BarWord>& b) const {
        if (auto c = cmp(a.first, b.first); c != 0) return c < 0;
        return cmp(a.second, b.second) < 0;
    }
    bool operator()(const std::vector<Word>& a, const std::vector<Word>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (auto c = cmp(a[i], b[i]); c != 0) return c < 0;
        return false;
    }
};

// Convenience builders used all over the tests.
inline Word word_of_gens(std::initializer_list<GenIndex> gs) {
    std::vector<Letter> ls;
    for (auto g : gs) ls.emplace_back(g);
    return Word(std::move(ls));
}

inline Word word_of_gens(const std::vector<GenIndex>& gs) {
    std::vector<Letter> ls;
    ls.reserve(gs.size());
    for (auto g : gs) ls.emplace_back(g);
    return Word(std::move(ls));
}

}  // namespace ncwick
