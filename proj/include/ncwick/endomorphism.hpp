#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "ncwick/coalgebra.hpp"
#include "ncwick/element.hpp"
#include "ncwick/functional.hpp"

namespace ncwick {

// A linear endomorphism of the tensor algebra, tabulated on the word basis.
// Images may contain bar terms (the formal derivations produce them).
class Endo {
public:
    Endo() : Endo(identity()) {}

    Element operator()(const Word& w) const {
        {
            std::lock_guard<std::mutex> lock(impl_->mutex);
            if (auto it = impl_->memo.find(w); it != impl_->memo.end()) return it->second;
        }
        Element v = impl_->fn(w);
        std::lock_guard<std::mutex> lock(impl_->mutex);
        return impl_->memo.emplace(w, std::move(v)).first->second;
    }

    static Endo identity() {
        return from_fn([](const Word& w) { return Element(w); });
    }
    // e = unit after counit: kills every nonempty word, fixes the unit.
    static Endo unit_counit() {
        return from_fn([](const Word& w) {
            return w.empty() ? Element::unit() : Element::zero();
        });
    }
    static Endo from_fn(std::function<Element(const Word&)> fn) {
        Endo e(std::make_shared<Impl>());
        e.impl_->fn = std::move(fn);
        return e;
    }

private:
    struct Impl {
        std::function<Element(const Word&)> fn;
        mutable std::map<Word, Element, TermOrder> memo;
        mutable std::mutex mutex;
    };
    explicit Endo(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

// Linear extension to bar-free elements.
inline Element apply_linear(const Endo& L, const Element& x) {
    Element r;
    for (const auto& [b, c] : x.terms()) r += c * L(as_word(b));
    return r;
}

// Multiplicative extension to the double tensor algebra; only meaningful
// when L is an algebra morphism (the Wick maps are).
inline Element apply_mult(const Endo& L, const BarWord& b) {
    Element r = Element::unit();
    for (const auto& w : b.words) r = bar_product(r, L(w));
    return r;
}
inline Element apply_mult(const Endo& L, const Element& x) {
    Element r;
    for (const auto& [b, c] : x.terms()) r += c * apply_mult(L, b);
    return r;
}

inline Endo operator+(const Endo& a, const Endo& b) {
    return Endo::from_fn([a, b](const Word& w) { return a(w) + b(w); });
}
inline Endo operator-(const Endo& a, const Endo& b) {
    return Endo::from_fn([a, b](const Word& w) { return a(w) - b(w); });
}
inline Endo scale(const Scalar& s, const Endo& a) {
    return Endo::from_fn([s, a](const Word& w) { return s * a(w); });
}

// L.Psi := (L (x) Psi) Delta — the right action of the character group on
// endomorphisms of the tensor algebra.
inline Endo act(const Endo& L, const Functional& Psi) {
    return Endo::from_fn([L, Psi](const Word& w) {
        Element r;
        const TensorPair cop = delta(BarWord(w));
        for (const auto& [legs, c] : cop.terms())
            r += (c * Psi(legs.second)) * L(as_word(legs.first));
        return r;
    });
}

// L^Psi := (L (x) Psi) applied to the left half-coproduct; acts on
// endomorphisms of the augmentation ideal, extended by zero on the unit.
inline Endo act_prec(const Endo& L, const Functional& Psi) {
    return Endo::from_fn([L, Psi](const Word& w) {
        if (w.empty()) return Element::zero();
        Element r;
        const TensorPair cop = delta_prec_plus(BarWord(w));
        for (const auto& [legs, c] : cop.terms())
            r += (c * Psi(legs.second)) * L(as_word(legs.first));
        return r;
    });
}

// Mirror image with the right half-coproduct.
inline Endo act_succ(const Endo& L, const Functional& Psi) {
    return Endo::from_fn([L, Psi](const Word& w) {
        if (w.empty()) return Element::zero();
        Element r;
        const TensorPair cop = delta_succ_plus(BarWord(w));
        for (const auto& [legs, c] : cop.terms())
            r += (c * Psi(legs.second)) * L(as_word(legs.first));
        return r;
    });
}

inline Endo compose(const Endo& outer, const Endo& inner) {
    return Endo::from_fn([outer, inner](const Word& w) {
        return apply_linear(outer, inner(w));
    });
}

// Compositional inverse of a map of the form id + (degree-lowering), by the
// terminating Neumann series.
inline Endo comp_inverse(const Endo& F) {
    return Endo::from_fn([F](const Word& w) {
        auto remainder = [&F](const Element& x) {
            Element r;
            for (const auto& [b, c] : x.terms()) {
                const Word u = as_word(b);
                Element img = F(u) - Element(u);
                for (const auto& [bi, ci] : img.terms())
                    if (bi.degree() >= u.degree())
                        throw std::logic_error("comp_inverse: map is not unitriangular");
                r += c * img;
            }
            return r;
        };
        Element result(w);
        Element term(w);
        while (!term.is_zero()) {
            term = -remainder(term);
            result += term;
        }
        return result;
    });
}

}  // namespace ncwick
