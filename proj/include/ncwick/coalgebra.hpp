#pragma once

#include <mutex>
#include <stdexcept>
#include <vector>

#include "ncwick/element.hpp"
#include "ncwick/fault.hpp"
#include "ncwick/partitions.hpp"

namespace ncwick {

namespace detail {

inline Word word_at_positions(const Word& w, unsigned mask) {
    std::vector<Letter> ls;
    for (std::size_t i = 0; i < w.degree(); ++i)
        if (mask & (1u << i)) ls.push_back(w.letters[i]);
    return Word(std::move(ls));
}

// Connected components of the positions NOT in mask, in increasing order,
// as a bar-word of the corresponding subwords.
inline BarWord complement_components(const Word& w, unsigned mask) {
    std::vector<Word> comps;
    std::vector<Letter> run;
    for (std::size_t i = 0; i < w.degree(); ++i) {
        if (mask & (1u << i)) {
            if (!run.empty()) comps.emplace_back(std::move(run)), run.clear();
        } else {
            run.push_back(w.letters[i]);
        }
    }
    if (!run.empty()) comps.emplace_back(std::move(run));
    return BarWord(std::move(comps));
}

template <typename K, typename V, typename F>
const V& memoized(const K& key, std::map<K, V, TermOrder>& cache, std::mutex& m, F&& compute) {
    {
        std::lock_guard<std::mutex> lock(m);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    V value = compute(key);
    std::lock_guard<std::mutex> lock(m);
    return cache.emplace(key, std::move(value)).first->second;
}

}  // namespace detail

// Unshuffle coproduct: letters are primitive, both legs stay bar-free.
inline const TensorPair& delta_shuffle(const Word& w) {
    static std::map<Word, TensorPair, TermOrder> cache;
    static std::mutex m;
    return detail::memoized(w, cache, m, [](const Word& u) {
        const auto n = u.degree();
        if (n > 20) throw std::invalid_argument("word too long for subset expansion");
        TensorPair r;
        for (unsigned mask = 0; mask < (1u << n); ++mask)
            r.add_term({BarWord(detail::word_at_positions(u, mask)),
                        BarWord(detail::word_at_positions(u, ~mask))},
                       Scalar::one());
        return r;
    });
}

// Multiplicative extension of the unshuffle coproduct to bar-words.
inline TensorPair delta_shuffle(const BarWord& b) {
    TensorPair r = TensorPair::term(BarWord{}, BarWord{});
    for (const auto& w : b.words) r = r * delta_shuffle(w);
    return r;
}

// Iterated reduced unshuffle coproduct: ordered set partitions into j blocks.
inline WordTensor delta_shuffle_iterated(int j, const Word& w) {
    if (j < 1) throw std::invalid_argument("iterated coproduct needs j >= 1");
    if (w.empty()) throw std::invalid_argument("iterated coproduct of the unit");
    WordTensor r;
    if (j == 1) {
        r.add_term({w}, Scalar::one());
        return r;
    }
    const int n = static_cast<int>(w.degree());
    for (const auto& p : enumerate_set_partitions(n)) {
        if (static_cast<int>(p.size()) != j) continue;
        std::vector<int> order(p.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end());
        do {
            std::vector<Word> legs;
            legs.reserve(p.size());
            for (int bi : order) legs.push_back(subword(w, p.blocks[bi]));
            r.add_term(legs, Scalar::one());
        } while (std::next_permutation(order.begin(), order.end()));
    }
    return r;
}

// Extraction coproduct on words: subset on the left, bar product of the
// connected components of the complement on the right.
inline const TensorPair& delta(const Word& w) {
    static std::map<Word, TensorPair, TermOrder> cache;
    static std::mutex m;
    return detail::memoized(w, cache, m, [](const Word& u) {
        const auto n = u.degree();
        if (n > 20) throw std::invalid_argument("word too long for subset expansion");
        TensorPair r;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (fault::active("delta-drop-term") && n >= 2 && mask == 1u) continue;
            r.add_term({BarWord(detail::word_at_positions(u, mask)),
                        detail::complement_components(u, mask)},
                       Scalar::one());
        }
        return r;
    });
}

// Multiplicative extension to the double tensor algebra.
inline TensorPair delta(const BarWord& b) {
    TensorPair r = TensorPair::term(BarWord{}, BarWord{});
    for (const auto& w : b.words) r = r * delta(w);
    return r;
}

// Left half-coproduct: the first position stays on the left leg.
inline TensorPair delta_prec_plus(const Word& w) {
    if (w.empty()) throw std::invalid_argument("half-coproduct of the unit is undefined");
    const auto n = w.degree();
    TensorPair r;
    for (unsigned mask = 1; mask < (1u << n); mask += 2)  // bit 0 always set
        r.add_term({BarWord(detail::word_at_positions(w, mask)),
                    detail::complement_components(w, mask)},
                   Scalar::one());
    return r;
}

// Right half-coproduct: the first position goes to the right leg.
inline TensorPair delta_succ_plus(const Word& w) {
    if (w.empty()) throw std::invalid_argument("half-coproduct of the unit is undefined");
    const auto n = w.degree();
    TensorPair r;
    for (unsigned mask = 0; mask < (1u << n); mask += 2)  // bit 0 never set
        r.add_term({BarWord(detail::word_at_positions(w, mask)),
                    detail::complement_components(w, mask)},
                   Scalar::one());
    return r;
}

// Reduced half-coproducts (no w (x) 1 resp. 1 (x) w term).
inline TensorPair delta_prec(const Word& w) {
    TensorPair r = delta_prec_plus(w);
    r.add_term({BarWord(w), BarWord{}}, Scalar(-1));
    return r;
}

inline TensorPair delta_succ(const Word& w) {
    TensorPair r = delta_succ_plus(w);
    r.add_term({BarWord{}, BarWord(w)}, Scalar(-1));
    return r;
}

// Half-coproducts on bar-words: the first component is halved, the rest
// contribute full coproducts.
inline TensorPair delta_prec_plus(const BarWord& b) {
    if (b.is_unit()) throw std::invalid_argument("half-coproduct of the unit is undefined");
    TensorPair r = delta_prec_plus(b.words.front());
    for (std::size_t i = 1; i < b.words.size(); ++i) r = r * delta(b.words[i]);
    return r;
}

inline TensorPair delta_succ_plus(const BarWord& b) {
    if (b.is_unit()) throw std::invalid_argument("half-coproduct of the unit is undefined");
    TensorPair r = delta_succ_plus(b.words.front());
    for (std::size_t i = 1; i < b.words.size(); ++i) r = r * delta(b.words[i]);
    return r;
}

inline TensorPair delta_prec(const BarWord& b) {
    TensorPair r = delta_prec_plus(b);
    r.add_term({b, BarWord{}}, Scalar(-1));
    return r;
}

inline TensorPair delta_succ(const BarWord& b) {
    TensorPair r = delta_succ_plus(b);
    r.add_term({BarWord{}, b}, Scalar(-1));
    return r;
}

// Reduced coproduct on the augmentation ideal.
inline TensorPair delta_reduced(const BarWord& b) {
    if (b.is_unit()) throw std::invalid_argument("reduced coproduct of the unit");
    TensorPair r = delta(b);
    r.add_term({b, BarWord{}}, Scalar(-1));
    r.add_term({BarWord{}, b}, Scalar(-1));
    return r;
}

// Linearization of the extraction coproduct: contiguous middle factor on
// the right, the outer factors concatenated on the left.
inline TensorPair delta_hat(const Word& w) {
    if (w.empty()) throw std::invalid_argument("delta_hat of the unit");
    const auto n = w.degree();
    TensorPair r;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            std::vector<Letter> outer(w.letters.begin(), w.letters.begin() + i);
            outer.insert(outer.end(), w.letters.begin() + j, w.letters.end());
            std::vector<Letter> mid(w.letters.begin() + i, w.letters.begin() + j);
            r.add_term({BarWord(Word(std::move(outer))), BarWord(Word(std::move(mid)))},
                       Scalar::one());
        }
    return r;
}

// Antipode of the unshuffle Hopf algebra on a word: signed sum over set
// partitions with all block orderings.
inline const Element& antipode_shuffle(const Word& w) {
    static std::map<Word, Element, TermOrder> cache;
    static std::mutex m;
    return detail::memoized(w, cache, m, [](const Word& u) {
        Element r;
        if (u.empty()) return Element::unit();
        const int n = static_cast<int>(u.degree());
        for (const auto& p : enumerate_set_partitions(n)) {
            const int k = static_cast<int>(p.size());
            const Scalar sign((k % 2) ? Rational(-1) : Rational(1));
            std::vector<int> order(k);
            for (int i = 0; i < k; ++i) order[i] = i;
            do {
                std::vector<Word> comps;
                comps.reserve(k);
                for (int bi : order) comps.push_back(subword(u, p.blocks[bi]));
                r.add_term(BarWord(std::move(comps)), sign);
            } while (std::next_permutation(order.begin(), order.end()));
        }
        return r;
    });
}

// Anti-automorphism extension to bar-words.
inline Element antipode_shuffle(const BarWord& b) {
    Element r = Element::unit();
    for (const auto& w : b.words) r = bar_product(antipode_shuffle(w), r);
    return r;
}

inline Scalar counit(const BarWord& b) {
    return b.is_unit() ? Scalar::one() : Scalar::zero();
}

}  // namespace ncwick
