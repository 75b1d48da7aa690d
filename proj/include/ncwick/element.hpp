#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncwick/algebra.hpp"
#include "ncwick/scalar.hpp"

namespace ncwick {

// Finite linear combination of bar-words over Scalar. Bar-free elements of
// the tensor algebra are the special case where every term has at most one
// component. The term map is always in canonical form: no zero scalars.
class Element {
public:
    using TermMap = std::map<BarWord, Scalar, TermOrder>;

    Element() = default;
    /*implicit*/ Element(const BarWord& b) { terms_[b] = Scalar::one(); }
    /*implicit*/ Element(const Word& w) { terms_[BarWord(w)] = Scalar::one(); }

    static Element zero() { return Element(); }
    static Element unit() { return Element(BarWord{}); }
    static Element term(BarWord b, Scalar c) {
        Element r;
        r.add_term(std::move(b), std::move(c));
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const& { return terms_; }
    TermMap terms() && { return std::move(terms_); }
    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& [b, c] : terms_) d = std::max(d, b.degree());
        return d;
    }
    bool is_bar_free() const {
        for (const auto& [b, c] : terms_)
            if (b.components() > 1) return false;
        return true;
    }

    Scalar coefficient(const BarWord& b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Scalar::zero() : it->second;
    }

    Element& operator+=(const Element& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(const Element& a) {
        Element r;
        for (const auto& [b, c] : a.terms_) r.terms_[b] = -c;
        return r;
    }
    friend Element operator*(const Scalar& s, const Element& a) {
        Element r;
        for (const auto& [b, c] : a.terms_) r.add_term(b, s * c);
        return r;
    }
    friend Element operator*(const Rational& q, const Element& a) {
        return Scalar(q) * a;
    }

    bool operator==(const Element& o) const { return terms_ == o.terms_; }

    void add_term(const BarWord& b, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(b, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    TermMap terms_;
};

// The word behind a bar-free bar-word; the unit maps to the empty word.
inline Word as_word(const BarWord& b) {
    if (b.is_unit()) return Word{};
    if (b.components() != 1) throw std::invalid_argument("expected a bar-free element");
    return b.words.front();
}

// Product of the double tensor algebra, bilinear in both arguments.
inline Element bar_product(const Element& a, const Element& b) {
    Element r;
    for (const auto& [ba, ca] : a.terms())
        for (const auto& [bb, cb] : b.terms()) r.add_term(bar_concat(ba, bb), ca * cb);
    return r;
}

// Concatenation product of the tensor algebra; operands must be bar-free.
inline Element concat_product(const Element& a, const Element& b) {
    Element r;
    for (const auto& [ba, ca] : a.terms())
        for (const auto& [bb, cb] : b.terms()) {
            if (ba.components() > 1 || bb.components() > 1)
                throw std::invalid_argument("concat_product: operand has bar terms");
            Word wa = ba.is_unit() ? Word{} : ba.words[0];
            Word wb = bb.is_unit() ? Word{} : bb.words[0];
            r.add_term(BarWord(concat(wa, wb)), ca * cb);
        }
    return r;
}

// Element of T(T(A)) (x) T(T(A)); the codomain of every coproduct.
class TensorPair {
public:
    using Key = std::pair<BarWord, BarWord>;
    using TermMap = std::map<Key, Scalar, TermOrder>;

    TensorPair() = default;
    static TensorPair term(BarWord l, BarWord r, Scalar c = Scalar::one()) {
        TensorPair t;
        t.add_term({std::move(l), std::move(r)}, std::move(c));
        return t;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const& { return terms_; }
    TermMap terms() && { return std::move(terms_); }

    Scalar coefficient(const BarWord& l, const BarWord& r) const {
        auto it = terms_.find({l, r});
        return it == terms_.end() ? Scalar::zero() : it->second;
    }

    TensorPair& operator+=(const TensorPair& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    TensorPair& operator-=(const TensorPair& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend TensorPair operator+(TensorPair a, const TensorPair& b) { return a += b; }
    friend TensorPair operator-(TensorPair a, const TensorPair& b) { return a -= b; }
    friend TensorPair operator*(const Scalar& s, const TensorPair& a) {
        TensorPair r;
        for (const auto& [k, c] : a.terms_) r.add_term(k, s * c);
        return r;
    }

    // Componentwise product in the tensor square of the double tensor algebra.
    friend TensorPair operator*(const TensorPair& a, const TensorPair& b) {
        TensorPair r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term({bar_concat(ka.first, kb.first), bar_concat(ka.second, kb.second)},
                           ca * cb);
        return r;
    }

    TensorPair swapped() const {
        TensorPair r;
        for (const auto& [k, c] : terms_) r.add_term({k.second, k.first}, c);
        return r;
    }

    bool operator==(const TensorPair& o) const { return terms_ == o.terms_; }

    void add_term(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    TermMap terms_;
};

// j-fold tensors of words; only the iterated unshuffle coproduct needs these.
class WordTensor {
public:
    using Key = std::vector<Word>;
    using TermMap = std::map<Key, Scalar, TermOrder>;

    WordTensor() = default;
    static WordTensor term(Key k, Scalar c = Scalar::one()) {
        WordTensor t;
        t.add_term(std::move(k), std::move(c));
        return t;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const& { return terms_; }
    TermMap terms() && { return std::move(terms_); }

    bool operator==(const WordTensor& o) const { return terms_ == o.terms_; }

    void add_term(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    TermMap terms_;
};

}  // namespace ncwick
