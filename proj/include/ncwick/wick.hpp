#pragma once

#include <stdexcept>
#include <vector>

#include "ncwick/coalgebra.hpp"
#include "ncwick/endomorphism.hpp"
#include "ncwick/fault.hpp"
#include "ncwick/functional.hpp"
#include "ncwick/partitions.hpp"

namespace ncwick {

// ---- the four Wick maps ------------------------------------------------------

// Tensor Wick map (id (x) phi^{-1}) applied to the unshuffle coproduct;
// phi is inverted for the shuffle convolution.
inline Endo wick_tensor(const WordFunctional& phi) {
    auto phi_inv = shuffle_inverse(phi);
    return Endo::from_fn([phi_inv](const Word& w) {
        Element r;
        for (const auto& [legs, c] : delta_shuffle(w).terms())
            r.add_term(legs.first, c * phi_inv(as_word(legs.second)));
        return r;
    });
}

inline Endo wick_tensor_inverse(const WordFunctional& phi) {
    return Endo::from_fn([phi](const Word& w) {
        Element r;
        for (const auto& [legs, c] : delta_shuffle(w).terms())
            r.add_term(legs.first, c * phi(as_word(legs.second)));
        return r;
    });
}

// Free Wick map W = (id (x) Phi^{-1}) Delta = id . Phi^{-1}.
inline Endo wick_free(const Functional& PhiInv) {
    return act(Endo::identity(), PhiInv);
}
inline Endo wick_free_of(const Functional& Phi) {
    return wick_free(conv_inverse(Phi));
}

// Compositional inverse W^{o-1} = (id (x) Phi) Delta.
inline Endo wick_free_inverse(const Functional& Phi) {
    return act(Endo::identity(), Phi);
}

// Signed interval-partition expansion of W over free cumulants: the
// independent route to the same polynomials.
//   W(a_1...a_n) = sum_S a_S sum_{pi in Int([n]\S), pi u S in NC([n])}
//                  (-1)^{|pi|} prod_B kappa(a_B)
inline Element wick_free_from_free_cumulants(const Functional& kappa, const Word& w) {
    const int n = static_cast<int>(w.degree());
    if (n > 20) throw std::invalid_argument("word too long");
    Element r;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s_pos, rest;
        for (int i = 0; i < n; ++i)
            ((mask >> i) & 1u ? s_pos : rest).push_back(i);
        const int m = static_cast<int>(rest.size());
        Scalar coeff;
        for (const auto& p : enumerate_interval(m)) {
            SetPartition mapped;
            for (const auto& b : p.blocks) {
                std::vector<int> blk;
                for (int i : b) blk.push_back(rest[i]);
                mapped.blocks.push_back(std::move(blk));
            }
            // blocks are runs of successive integers, so they never bridge a
            // gap left by S
            if (!is_interval(mapped)) continue;
            if (!s_pos.empty()) {
                SetPartition with_s = mapped;
                with_s.blocks.push_back(s_pos);
                if (!is_noncrossing(with_s)) continue;
            }
            Scalar prod((p.size() % 2) ? Rational(-1) : Rational(1));
            for (const auto& b : mapped.blocks) prod *= kappa(subword(w, b));
            coeff += prod;
        }
        r.add_term(BarWord(subword(w, s_pos)), coeff);
    }
    return r;
}

// Boolean Wick map W' = id - id > beta, in its explicit form
//   W'(a_1...a_n) = a_1...a_n - sum_j beta(a_1...a_j) a_{j+1}...a_n.
inline Endo wick_boolean(const Functional& beta) {
    return Endo::from_fn([beta](const Word& w) {
        Element r(w);
        const auto n = w.degree();
        for (std::size_t j = 1; j <= n; ++j) {
            if (fault::active("boolean-wick-drop") && j == 1 && n >= 2) continue;
            Word head(std::vector<Letter>(w.letters.begin(), w.letters.begin() + j));
            Word tail(std::vector<Letter>(w.letters.begin() + j, w.letters.end()));
            r.add_term(BarWord(tail), -beta(head));
        }
        return r;
    });
}
inline Endo wick_boolean_of(const Functional& Phi) {
    return wick_boolean(L_succ(Phi));
}

// Conditionally free Wick map W^c = e + (W - e) < (Phi * Psi^{-1}).
inline Endo wick_cfree(const Functional& Phi, const Functional& Psi) {
    Endo W = wick_free_of(Phi);
    Functional coeff = convolve(Phi, conv_inverse(Psi));
    return Endo::unit_counit() + act_prec(W - Endo::unit_counit(), coeff);
}

// Conditionally free cumulants R^{phi,psi} = Psi > beta^phi < Psi^{-1}.
inline Functional cfree_cumulants(const Functional& Phi, const Functional& Psi) {
    auto beta_phi = L_succ(Phi);
    auto body = half_prec(half_succ(Psi, beta_phi), conv_inverse(Psi));
    return Functional::infinitesimal([body](const Word& w) { return body(BarWord(w)); });
}

// ---- the formal derivation ---------------------------------------------------

// d_a(w) = sum over occurrences of the letter a of the word split at that
// occurrence, the two sides joined by a bar.
inline Element derivation(GenIndex a, const Word& w) {
    const Letter target(a);
    Element r;
    for (std::size_t j = 0; j < w.degree(); ++j) {
        if (w.letters[j] != target) continue;
        Word left(std::vector<Letter>(w.letters.begin(), w.letters.begin() + j));
        Word right(std::vector<Letter>(w.letters.begin() + j + 1, w.letters.end()));
        std::vector<Word> comps;
        if (!left.empty()) comps.push_back(std::move(left));
        if (!right.empty()) comps.push_back(std::move(right));
        r.add_term(BarWord(std::move(comps)), Scalar::one());
    }
    return r;
}

// Leibniz extension to the double tensor algebra.
inline Element derivation(GenIndex a, const Element& x) {
    Element r;
    for (const auto& [b, c] : x.terms()) {
        for (std::size_t i = 0; i < b.components(); ++i) {
            BarWord prefix(std::vector<Word>(b.words.begin(), b.words.begin() + i));
            BarWord suffix(std::vector<Word>(b.words.begin() + i + 1, b.words.end()));
            Element mid = derivation(a, b.words[i]);
            r += c * bar_product(Element(prefix), bar_product(mid, Element(suffix)));
        }
    }
    return r;
}

// ---- Wick products -----------------------------------------------------------

// x o y = F(F^{-1}(x) F^{-1}(y)) for an invertible unital map F on the
// tensor algebra; associativity is inherited from concatenation.
inline Element wick_product(const Endo& F, const Element& x, const Element& y) {
    Endo Finv = comp_inverse(F);
    return apply_linear(F, concat_product(apply_linear(Finv, x), apply_linear(Finv, y)));
}

// Closed form of the free Wick product on words: like the reconstruction
// formula on the concatenation, except the complement components never
// bridge the boundary between the two factors.
inline Element free_wick_product_closed_form(const Endo& W, const Functional& Phi,
                                             const Word& w, const Word& w2) {
    const Word joined = concat(w, w2);
    const int n = static_cast<int>(w.degree());
    const int total = static_cast<int>(joined.degree());
    if (total > 20) throw std::invalid_argument("word too long");
    Element r;
    for (unsigned mask = 0; mask < (1u << total); ++mask) {
        std::vector<int> s_pos;
        Scalar coeff = Scalar::one();
        std::vector<int> run;
        auto flush = [&] {
            if (!run.empty()) {
                coeff *= Phi(BarWord(subword(joined, run)));
                run.clear();
            }
        };
        for (int i = 0; i < total; ++i) {
            if (i == n) flush();  // the factor boundary always separates
            if ((mask >> i) & 1u) {
                s_pos.push_back(i);
                flush();
            } else {
                run.push_back(i);
            }
        }
        flush();
        r += coeff * W(subword(joined, s_pos));
    }
    return r;
}

// ---- classical univariate bridge ---------------------------------------------

// Rows 0..n of Wick polynomial coefficients (ascending powers of x) from
// the change-of-basis relation x^n = sum_j binom(n,j) W_j(x) m_{n-j}.
inline std::vector<std::vector<Rational>> classical_wick_basis(
    const std::vector<Rational>& moments, int n) {
    auto moment = [&moments](int k) -> Rational {
        if (k == 0) return 1;
        if (k > static_cast<int>(moments.size()))
            throw std::invalid_argument("moment table too short");
        return moments[static_cast<std::size_t>(k) - 1];
    };
    std::vector<std::vector<Rational>> rows;
    for (int m = 0; m <= n; ++m) {
        std::vector<Rational> row(static_cast<std::size_t>(m) + 1, Rational(0));
        row[static_cast<std::size_t>(m)] = 1;  // x^m
        for (int j = 0; j < m; ++j) {
            Rational c = Rational(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j))) *
                         moment(m - j);
            for (int k = 0; k <= j; ++k) row[static_cast<std::size_t>(k)] -= c * rows[j][static_cast<std::size_t>(k)];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<Rational> classical_wick(const std::vector<Rational>& moments, int n) {
    return classical_wick_basis(moments, n).back();
}

}  // namespace ncwick
