#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

#include "ncwick/algebra.hpp"
#include "ncwick/rational.hpp"

namespace ncwick {

enum class StateTag { phi, psi };

// One symbolic moment phi(g_1 ._A ... ._A g_k) keyed by the flattened
// generator sequence, so phi(a_1 a_2) and phi(a_1 ._A a_2) coincide.
struct MomentSymbol {
    StateTag tag = StateTag::phi;
    std::vector<GenIndex> key;

    auto operator<=>(const MomentSymbol&) const = default;
};

// A commutative monomial t^k * prod of moment symbols. The central
// variable t only appears in the monotone t-calculus.
struct Monomial {
    std::uint32_t t_power = 0;
    std::vector<MomentSymbol> symbols;  // kept sorted

    auto operator<=>(const Monomial&) const = default;
};

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.t_power = a.t_power + b.t_power;
    r.symbols.resize(a.symbols.size() + b.symbols.size());
    std::merge(a.symbols.begin(), a.symbols.end(), b.symbols.begin(), b.symbols.end(),
               r.symbols.begin());
    return r;
}

// Exact element of Q[t][moment symbols]. Zero coefficients are never stored.
class Scalar {
public:
    using TermMap = std::map<Monomial, Rational>;

    Scalar() = default;
    /*implicit*/ Scalar(const Rational& q) {
        if (q != 0) terms_[Monomial{}] = q;
    }
    /*implicit*/ Scalar(int n) : Scalar(Rational(n)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(Rational(1)); }
    static Scalar symbol(MomentSymbol s) {
        Scalar r;
        r.terms_[Monomial{0, {std::move(s)}}] = 1;
        return r;
    }
    static Scalar t(std::uint32_t power = 1) {
        Scalar r;
        if (power == 0) return one();
        r.terms_[Monomial{power, {}}] = 1;
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const& { return terms_; }
    TermMap terms() && { return std::move(terms_); }

    // Constant term, and whether the scalar is that constant alone.
    Rational constant_part() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
    }

    Scalar& operator+=(const Scalar& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator-(const Scalar& a) {
        Scalar r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_mul(ma, mb), ca * cb);
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    friend Scalar operator*(const Rational& q, const Scalar& a) {
        Scalar r;
        if (q == 0) return r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = q * c;
        return r;
    }

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }

    // t |-> value, exactly.
    Scalar substitute_t(const Rational& value) const {
        Scalar r;
        for (const auto& [m, c] : terms_) {
            Rational scaled = c;
            for (std::uint32_t k = 0; k < m.t_power; ++k) scaled *= value;
            Monomial flat{0, m.symbols};
            r.add_term(flat, scaled);
        }
        return r;
    }

    // d/dt, integral from 0 in t; both exact on polynomials.
    Scalar derivative_t() const {
        Scalar r;
        for (const auto& [m, c] : terms_) {
            if (m.t_power == 0) continue;
            Monomial d{m.t_power - 1, m.symbols};
            r.add_term(d, c * m.t_power);
        }
        return r;
    }
    Scalar integrate_t() const {
        Scalar r;
        for (const auto& [m, c] : terms_) {
            Monomial d{m.t_power + 1, m.symbols};
            r.add_term(d, c / Rational(m.t_power + 1));
        }
        return r;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    TermMap terms_;
};

inline MomentSymbol moment_symbol(StateTag tag, const Word& w, Mode mode) {
    if (w.empty()) throw std::invalid_argument("moment symbol of the empty word");
    return MomentSymbol{tag, flatten(w, mode)};
}

}  // namespace ncwick
