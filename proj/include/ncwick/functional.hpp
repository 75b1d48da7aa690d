#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "ncwick/coalgebra.hpp"
#include "ncwick/element.hpp"
#include "ncwick/fault.hpp"
#include "ncwick/state.hpp"

namespace ncwick {

// Characters are multiplicative for the bar product with value 1 on the
// unit; infinitesimal characters vanish on the unit and on every bar-word
// with two or more components. Values on bar-words are derived from word
// values for these two kinds, never stored.
enum class FunctionalKind { character, infinitesimal, general };

class Functional {
public:
    Functional() : Functional(counit()) {}

    FunctionalKind kind() const { return impl_->kind; }
    bool is_character() const { return kind() == FunctionalKind::character; }
    bool is_infinitesimal() const { return kind() == FunctionalKind::infinitesimal; }

    Scalar operator()(const BarWord& b) const {
        switch (impl_->kind) {
            case FunctionalKind::character: {
                Scalar r = Scalar::one();
                for (const auto& w : b.words) r *= word_value(w);
                return r;
            }
            case FunctionalKind::infinitesimal:
                if (b.components() != 1) return Scalar::zero();
                return word_value(b.words.front());
            case FunctionalKind::general:
                return memoized_eval(b);
        }
        return Scalar::zero();
    }
    Scalar operator()(const Word& w) const { return (*this)(BarWord(w)); }

    static Functional counit() {
        return Functional(FunctionalKind::character,
                          [](const Word&) { return Scalar::zero(); }, nullptr, nullptr);
    }
    static Functional character(std::function<Scalar(const Word&)> word_fn) {
        return Functional(FunctionalKind::character, std::move(word_fn), nullptr, nullptr);
    }
    static Functional infinitesimal(std::function<Scalar(const Word&)> word_fn) {
        return Functional(FunctionalKind::infinitesimal, std::move(word_fn), nullptr, nullptr);
    }
    static Functional general(std::function<Scalar(const BarWord&)> bar_fn) {
        return Functional(FunctionalKind::general, nullptr, nullptr, std::move(bar_fn));
    }
    // Word values may consult the functional under construction; degree
    // recursions (convolution inverse, half-shuffle exponentials) use this.
    static Functional character_recursive(
        std::function<Scalar(const Functional&, const Word&)> rec_fn) {
        return Functional(FunctionalKind::character, nullptr, std::move(rec_fn), nullptr);
    }

private:
    struct Impl {
        FunctionalKind kind = FunctionalKind::general;
        std::function<Scalar(const Word&)> word_fn;
        std::function<Scalar(const Functional&, const Word&)> rec_fn;
        std::function<Scalar(const BarWord&)> bar_fn;
        mutable std::map<BarWord, Scalar, TermOrder> memo;
        mutable std::mutex mutex;
    };

    Functional(FunctionalKind kind, std::function<Scalar(const Word&)> word_fn,
               std::function<Scalar(const Functional&, const Word&)> rec_fn,
               std::function<Scalar(const BarWord&)> bar_fn)
        : impl_(std::make_shared<Impl>()) {
        impl_->kind = kind;
        impl_->word_fn = std::move(word_fn);
        impl_->rec_fn = std::move(rec_fn);
        impl_->bar_fn = std::move(bar_fn);
    }
    explicit Functional(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

    Scalar word_value(const Word& w) const {
        if (w.empty()) return impl_->kind == FunctionalKind::character ? Scalar::one()
                                                                       : Scalar::zero();
        const BarWord key(w);
        {
            std::lock_guard<std::mutex> lock(impl_->mutex);
            if (auto it = impl_->memo.find(key); it != impl_->memo.end()) return it->second;
        }
        Scalar v = impl_->rec_fn ? impl_->rec_fn(Functional(impl_), w) : impl_->word_fn(w);
        std::lock_guard<std::mutex> lock(impl_->mutex);
        return impl_->memo.emplace(key, std::move(v)).first->second;
    }

    Scalar memoized_eval(const BarWord& b) const {
        {
            std::lock_guard<std::mutex> lock(impl_->mutex);
            if (auto it = impl_->memo.find(b); it != impl_->memo.end()) return it->second;
        }
        Scalar v = impl_->bar_fn(b);
        std::lock_guard<std::mutex> lock(impl_->mutex);
        return impl_->memo.emplace(b, std::move(v)).first->second;
    }

    std::shared_ptr<Impl> impl_;
};

// ---- linear structure ------------------------------------------------------

namespace detail {
inline FunctionalKind linear_kind(const Functional& a, const Functional& b) {
    if (a.is_infinitesimal() && b.is_infinitesimal()) return FunctionalKind::infinitesimal;
    return FunctionalKind::general;
}
}  // namespace detail

inline Functional operator+(const Functional& a, const Functional& b) {
    auto fn = [a, b](const BarWord& w) { return a(w) + b(w); };
    if (detail::linear_kind(a, b) == FunctionalKind::infinitesimal)
        return Functional::infinitesimal([a, b](const Word& w) { return a(w) + b(w); });
    return Functional::general(fn);
}

inline Functional operator-(const Functional& a, const Functional& b) {
    if (detail::linear_kind(a, b) == FunctionalKind::infinitesimal)
        return Functional::infinitesimal([a, b](const Word& w) { return a(w) - b(w); });
    return Functional::general([a, b](const BarWord& w) { return a(w) - b(w); });
}

inline Functional operator-(const Functional& a) {
    if (a.is_infinitesimal())
        return Functional::infinitesimal([a](const Word& w) { return -a(w); });
    return Functional::general([a](const BarWord& w) { return -a(w); });
}

// Scaling by a central scalar preserves infinitesimality.
inline Functional scale(const Scalar& s, const Functional& a) {
    if (a.is_infinitesimal())
        return Functional::infinitesimal([s, a](const Word& w) { return s * a(w); });
    return Functional::general([s, a](const BarWord& w) { return s * a(w); });
}

// ---- convolution products via the extraction coproduct ---------------------

// (mu (x) nu) Delta on any bar-word, no structure assumed on the result.
inline Functional convolve_raw(const Functional& mu, const Functional& nu) {
    return Functional::general([mu, nu](const BarWord& b) {
        Scalar r;
        const TensorPair cop = delta(b);
        for (const auto& [legs, c] : cop.terms())
            r += c * (mu(legs.first) * nu(legs.second));
        return r;
    });
}

// mu * nu := (mu (x) nu) Delta. Characters are closed under convolution, so
// the result of a character pair derives bar-word values multiplicatively.
inline Functional convolve(const Functional& mu, const Functional& nu) {
    Functional raw = convolve_raw(mu, nu);
    if (mu.is_character() && nu.is_character())
        return Functional::character([raw](const Word& w) { return raw(BarWord(w)); });
    return raw;
}

// mu < nu := (mu (x) nu) Delta_<^+ . Undefined on the unit unless one
// operand vanishes there.
inline Functional half_prec(const Functional& mu, const Functional& nu) {
    return Functional::general([mu, nu](const BarWord& b) -> Scalar {
        if (b.is_unit()) {
            if (!mu(BarWord{}).is_zero() && !nu(BarWord{}).is_zero())
                throw std::domain_error("1 < 1 is undefined");
            return Scalar::zero();
        }
        Scalar r;
        const TensorPair cop = delta_prec_plus(b);
        for (const auto& [legs, c] : cop.terms())
            r += c * (mu(legs.first) * nu(legs.second));
        return r;
    });
}

// mu > nu := (mu (x) nu) Delta_>^+ .
inline Functional half_succ(const Functional& mu, const Functional& nu) {
    return Functional::general([mu, nu](const BarWord& b) -> Scalar {
        if (b.is_unit()) {
            if (!mu(BarWord{}).is_zero() && !nu(BarWord{}).is_zero())
                throw std::domain_error("1 > 1 is undefined");
            return Scalar::zero();
        }
        Scalar r;
        const TensorPair cop = delta_succ_plus(b);
        for (const auto& [legs, c] : cop.terms())
            r += c * (mu(legs.first) * nu(legs.second));
        return r;
    });
}

// Triangular solve of Phi^{-1} * Phi = counit, degree by degree. The
// inverse of a character is again a character.
inline Functional conv_inverse(const Functional& Phi) {
    if (!Phi.is_character())
        throw std::invalid_argument("conv_inverse needs a character");
    return Functional::character_recursive([Phi](const Functional& self, const Word& w) {
        Scalar r;
        const BarWord whole(w);
        const TensorPair cop = delta(whole);
        for (const auto& [legs, c] : cop.terms()) {
            if (legs.first == whole) continue;  // the unknown value itself
            r += c * (self(legs.first) * Phi(legs.second));
        }
        return -r;
    });
}

// ---- exponentials and logarithms --------------------------------------------

namespace detail {

// Lazily grown convolution powers base^{*1}, base^{*2}, ...
struct ConvPowers {
    explicit ConvPowers(Functional base) : powers{std::move(base)} {}
    const Functional& power(std::size_t j) {
        std::lock_guard<std::mutex> lock(mutex);
        while (powers.size() < j) powers.push_back(convolve(powers.back(), powers.front()));
        return powers[j - 1];
    }
    std::vector<Functional> powers;
    std::mutex mutex;
};

}  // namespace detail

// exp^*(lambda) = counit + sum_j lambda^{*j}/j!, exact by graded nilpotency:
// the j-th power vanishes on degrees below j.
inline Functional exp_star(const Functional& lambda) {
    if (!lambda.is_infinitesimal())
        throw std::invalid_argument("exp_star needs an infinitesimal character");
    auto powers = std::make_shared<detail::ConvPowers>(lambda);
    return Functional::character([powers](const Word& w) {
        Scalar r;
        const BarWord b(w);
        for (std::size_t j = 1; j <= w.degree(); ++j)
            r += Rational(Integer(1), factorial(static_cast<unsigned>(j))) *
                 powers->power(j)(b);
        return r;
    });
}

// Same series without assuming the result is a character; used to verify
// group-likeness of exp_star.
inline Functional exp_star_series(const Functional& lambda) {
    if (!lambda.is_infinitesimal())
        throw std::invalid_argument("exp_star_series needs an infinitesimal character");
    auto powers = std::make_shared<detail::ConvPowers>(lambda);
    return Functional::general([powers](const BarWord& b) {
        Scalar r = counit(b);
        for (std::size_t j = 1; j <= b.degree(); ++j)
            r += Rational(Integer(1), factorial(static_cast<unsigned>(j))) *
                 powers->power(j)(b);
        return r;
    });
}

// log^*(Phi) = sum_k (-1)^{k-1}/k (Phi - counit)^{*k}; infinitesimal, and
// the monotone cumulant map of the session state.
inline Functional log_star(const Functional& Phi) {
    if (!Phi.is_character()) throw std::invalid_argument("log_star needs a character");
    auto powers = std::make_shared<detail::ConvPowers>(Phi - Functional::counit());
    return Functional::infinitesimal([powers](const Word& w) {
        Scalar r;
        const BarWord b(w);
        for (std::size_t k = 1; k <= w.degree(); ++k) {
            Rational coeff(Integer(k % 2 ? 1 : -1), Integer(k));
            r += coeff * powers->power(k)(b);
        }
        return r;
    });
}

inline Functional exp_star_t(const Functional& lambda, const Rational& t) {
    return exp_star(scale(Scalar(t), lambda));
}

// exp^*(t rho) over the polynomial ring in the central variable t.
inline Functional exp_star_t_formal(const Functional& lambda) {
    return exp_star(scale(Scalar::t(), lambda));
}

// ---- half-shuffle exponentials and logarithms -------------------------------

// Unique solution of Phi = counit + kappa < Phi; encodes the free
// moment-cumulant relation.
inline Functional E_prec(const Functional& kappa) {
    if (!kappa.is_infinitesimal())
        throw std::invalid_argument("E_prec needs an infinitesimal character");
    return Functional::character_recursive([kappa](const Functional& self, const Word& w) {
        Scalar r;
        const TensorPair cop = delta_prec_plus(BarWord(w));
        for (const auto& [legs, c] : cop.terms())
            r += c * (kappa(legs.first) * self(legs.second));
        return r;
    });
}

// Unique solution of Phi = counit + Phi > beta; encodes the boolean
// moment-cumulant relation.
inline Functional E_succ(const Functional& beta) {
    if (!beta.is_infinitesimal())
        throw std::invalid_argument("E_succ needs an infinitesimal character");
    return Functional::character_recursive([beta](const Functional& self, const Word& w) {
        Scalar r;
        const TensorPair cop = delta_succ_plus(BarWord(w));
        for (const auto& [legs, c] : cop.terms())
            r += c * (self(legs.first) * beta(legs.second));
        return r;
    });
}

// kappa = (Phi - counit) < Phi^{-1}: the free cumulants of Phi.
inline Functional L_prec(const Functional& Phi, const Functional& PhiInv) {
    auto body = half_prec(Phi - Functional::counit(), PhiInv);
    return Functional::infinitesimal([body](const Word& w) { return body(BarWord(w)); });
}
inline Functional L_prec(const Functional& Phi) { return L_prec(Phi, conv_inverse(Phi)); }

// beta = Phi^{-1} > (Phi - counit): the boolean cumulants of Phi.
inline Functional L_succ(const Functional& Phi, const Functional& PhiInv) {
    auto body = half_succ(PhiInv, Phi - Functional::counit());
    return Functional::infinitesimal([body](const Word& w) {
        Scalar v = body(BarWord(w));
        if (fault::active("boolean-cumulant-sign") && w.degree() >= 2) return -v;
        return v;
    });
}
inline Functional L_succ(const Functional& Phi) { return L_succ(Phi, conv_inverse(Phi)); }

// Theta_Phi(alpha) = Phi^{-1} > alpha < Phi; sends free to boolean cumulants.
inline Functional theta_adjoint(const Functional& Phi, const Functional& alpha,
                                const Functional& PhiInv) {
    if (!alpha.is_infinitesimal())
        throw std::invalid_argument("theta_adjoint needs an infinitesimal character");
    auto body = half_prec(half_succ(PhiInv, alpha), Phi);
    return Functional::infinitesimal([body](const Word& w) { return body(BarWord(w)); });
}
inline Functional theta_adjoint(const Functional& Phi, const Functional& alpha) {
    return theta_adjoint(Phi, alpha, conv_inverse(Phi));
}

// ---- functionals on the tensor algebra (no bars) ----------------------------

// Linear maps on T(A) with its unshuffle Hopf structure; phi itself lives
// here, as does the tensor cumulant map c = log-shuffle of phi.
class WordFunctional {
public:
    WordFunctional() : WordFunctional(counit()) {}

    Scalar operator()(const Word& w) const {
        {
            std::lock_guard<std::mutex> lock(impl_->mutex);
            if (auto it = impl_->memo.find(w); it != impl_->memo.end()) return it->second;
        }
        Scalar v = impl_->rec_fn ? impl_->rec_fn(WordFunctional(impl_), w) : impl_->fn(w);
        std::lock_guard<std::mutex> lock(impl_->mutex);
        return impl_->memo.emplace(w, std::move(v)).first->second;
    }

    static WordFunctional counit() {
        return from_fn([](const Word& w) { return w.empty() ? Scalar::one() : Scalar::zero(); });
    }
    static WordFunctional from_fn(std::function<Scalar(const Word&)> fn) {
        WordFunctional f(std::make_shared<Impl>());
        f.impl_->fn = std::move(fn);
        return f;
    }
    static WordFunctional from_recursive(
        std::function<Scalar(const WordFunctional&, const Word&)> rec_fn) {
        WordFunctional f(std::make_shared<Impl>());
        f.impl_->rec_fn = std::move(rec_fn);
        return f;
    }

private:
    struct Impl {
        std::function<Scalar(const Word&)> fn;
        std::function<Scalar(const WordFunctional&, const Word&)> rec_fn;
        mutable std::map<Word, Scalar, TermOrder> memo;
        mutable std::mutex mutex;
    };
    explicit WordFunctional(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

inline WordFunctional operator+(const WordFunctional& a, const WordFunctional& b) {
    return WordFunctional::from_fn([a, b](const Word& w) { return a(w) + b(w); });
}
inline WordFunctional operator-(const WordFunctional& a, const WordFunctional& b) {
    return WordFunctional::from_fn([a, b](const Word& w) { return a(w) - b(w); });
}
inline WordFunctional scale(const Scalar& s, const WordFunctional& a) {
    return WordFunctional::from_fn([s, a](const Word& w) { return s * a(w); });
}

// mu shuffle-convolved with nu: (mu (x) nu) Delta-shuffle. Commutative.
inline WordFunctional shuffle_convolve(const WordFunctional& mu, const WordFunctional& nu) {
    return WordFunctional::from_fn([mu, nu](const Word& w) {
        Scalar r;
        for (const auto& [legs, c] : delta_shuffle(w).terms()) {
            const Word& l = legs.first.is_unit() ? Word{} : legs.first.words.front();
            const Word& rr = legs.second.is_unit() ? Word{} : legs.second.words.front();
            r += c * (mu(l) * nu(rr));
        }
        return r;
    });
}

// Inverse for the shuffle convolution, triangular in the degree.
inline WordFunctional shuffle_inverse(const WordFunctional& mu) {
    if (mu(Word{}) != Scalar::one())
        throw std::invalid_argument("shuffle_inverse needs a unital functional");
    return WordFunctional::from_recursive([mu](const WordFunctional& self, const Word& w) {
        if (w.empty()) return Scalar::one();
        Scalar r;
        for (const auto& [legs, c] : delta_shuffle(w).terms()) {
            const Word& l = legs.first.is_unit() ? Word{} : legs.first.words.front();
            if (l == w) continue;
            const Word& rr = legs.second.is_unit() ? Word{} : legs.second.words.front();
            r += c * (self(l) * mu(rr));
        }
        return -r;
    });
}

namespace detail {

struct ShufflePowers {
    explicit ShufflePowers(WordFunctional base) : powers{std::move(base)} {}
    const WordFunctional& power(std::size_t j) {
        std::lock_guard<std::mutex> lock(mutex);
        while (powers.size() < j)
            powers.push_back(shuffle_convolve(powers.back(), powers.front()));
        return powers[j - 1];
    }
    std::vector<WordFunctional> powers;
    std::mutex mutex;
};

}  // namespace detail

// exp and log for the shuffle convolution; the tensor moment-cumulant pair.
inline WordFunctional exp_shuffle(const WordFunctional& c) {
    if (!c(Word{}).is_zero())
        throw std::invalid_argument("exp_shuffle needs a reduced functional");
    auto powers = std::make_shared<detail::ShufflePowers>(c);
    return WordFunctional::from_fn([powers](const Word& w) {
        if (w.empty()) return Scalar::one();
        Scalar r;
        for (std::size_t j = 1; j <= w.degree(); ++j)
            r += Rational(Integer(1), factorial(static_cast<unsigned>(j))) *
                 powers->power(j)(w);
        return r;
    });
}

inline WordFunctional log_shuffle(const WordFunctional& phi) {
    if (phi(Word{}) != Scalar::one())
        throw std::invalid_argument("log_shuffle needs a unital functional");
    auto powers = std::make_shared<detail::ShufflePowers>(phi - WordFunctional::counit());
    return WordFunctional::from_fn([powers](const Word& w) {
        if (w.empty()) return Scalar::zero();
        Scalar r;
        for (std::size_t k = 1; k <= w.degree(); ++k) {
            Rational coeff(Integer(k % 2 ? 1 : -1), Integer(k));
            r += coeff * powers->power(k)(w);
        }
        return r;
    });
}

// ---- state extensions --------------------------------------------------------

// The moment functional phi on T(A): phi(a_1...a_n) = varphi(a_1 . ... . a_n).
inline WordFunctional word_moment_functional(const State& s) {
    return WordFunctional::from_fn([s](const Word& w) { return s.value(w); });
}

// The unique character extension Phi of phi to the double tensor algebra.
inline Functional extend_state(const State& s) {
    return Functional::character([s](const Word& w) { return s.value(w); });
}

}  // namespace ncwick
