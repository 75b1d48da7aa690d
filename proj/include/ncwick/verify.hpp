#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncwick/identities.hpp"
#include "ncwick/json_io.hpp"
#include "ncwick/parse.hpp"
#include "ncwick/print.hpp"
#include "ncwick/wick.hpp"

namespace ncwick::verify {

struct Options {
    int max_degree = 6;
    std::uint64_t seed = 7;
    int shuffle_triples = 50;
    int bch_pairs = 20;
};

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = true;
    long inputs = 0;
    std::string detail;  // first counterexample, empty when passing
};

namespace detail {

inline GeneratorSet& standard_gens() {
    static GeneratorSet gens = [] {
        GeneratorSet g;
        for (int i = 1; i <= 8; ++i) g.add("a" + std::to_string(i));
        return g;
    }();
    return gens;
}

class Reporter {
public:
    explicit Reporter(std::string suite) : suite_(std::move(suite)) {}

    void equal(const std::string& name, const Element& lhs, const Element& rhs,
               const std::string& at) {
        auto& c = slot(name);
        ++c.inputs;
        if (c.pass && !(lhs == rhs)) {
            c.pass = false;
            c.detail = "counterexample at " + at + ": lhs = " +
                       print::element_text(lhs, standard_gens()) + ", rhs = " +
                       print::element_text(rhs, standard_gens());
        }
    }
    void equal(const std::string& name, const Scalar& lhs, const Scalar& rhs,
               const std::string& at) {
        auto& c = slot(name);
        ++c.inputs;
        if (c.pass && !(lhs == rhs)) {
            c.pass = false;
            c.detail = "counterexample at " + at + ": lhs = " +
                       print::scalar_text(lhs, standard_gens()) + ", rhs = " +
                       print::scalar_text(rhs, standard_gens());
        }
    }
    void is_true(const std::string& name, bool ok, const std::string& at) {
        auto& c = slot(name);
        ++c.inputs;
        if (c.pass && !ok) {
            c.pass = false;
            c.detail = "failed at " + at;
        }
    }

    std::vector<CheckResult> take() { return std::move(results_); }

    std::string word_text(const Word& w) const {
        return print::word_text(w, standard_gens());
    }
    std::string barword_text(const BarWord& b) const {
        return print::barword_text(b, standard_gens());
    }

private:
    CheckResult& slot(const std::string& name) {
        for (auto& r : results_)
            if (r.name == name) return r;
        results_.push_back(CheckResult{suite_, name, true, 0, {}});
        return results_.back();
    }
    std::string suite_;
    std::vector<CheckResult> results_;
};

inline std::vector<Word> suite_words(int max_degree, int binary_cap = 5) {
    std::vector<Word> words = generic_words(max_degree);
    for (const auto& w : words_over(2, std::min(max_degree, binary_cap))) words.push_back(w);
    if (max_degree >= 3)
        for (const auto& w : composite_letter_words()) words.push_back(w);
    return words;
}

inline State semicircular_state() {
    std::map<std::vector<GenIndex>, Rational> t;
    const long catalan[] = {1, 1, 2, 5, 14};
    for (int n = 1; n <= 8; ++n)
        t[std::vector<GenIndex>(static_cast<std::size_t>(n), 0)] =
            (n % 2 == 0) ? Rational(catalan[n / 2]) : Rational(0);
    return State::table(StateTag::phi, Mode::noncommutative, std::move(t));
}

inline State gaussian_state() {
    std::map<std::vector<GenIndex>, Rational> t;
    const long m[] = {0, 1, 0, 3, 0, 15, 0, 105};
    for (int n = 1; n <= 8; ++n)
        t[std::vector<GenIndex>(static_cast<std::size_t>(n), 0)] = Rational(m[n - 1]);
    return State::table(StateTag::phi, Mode::commutative, std::move(t));
}

// ---- the two oracles that live on the verification side ---------------------

// W_T(a_1...a_n) = sum_S a_S sum_{pi in P([n]\S)} (-1)^{|pi|} |pi|! prod phi(a_B)
inline Element tensor_wick_partition_sum(const WordFunctional& phi, const Word& w) {
    const int n = static_cast<int>(w.degree());
    Element r;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s_pos, rest;
        for (int i = 0; i < n; ++i) ((mask >> i) & 1u ? s_pos : rest).push_back(i);
        Scalar coeff;
        for (const auto& p : enumerate_set_partitions(static_cast<int>(rest.size()))) {
            const unsigned k = static_cast<unsigned>(p.size());
            Scalar prod(Rational((k % 2) ? -1 : 1) * Rational(factorial(k)));
            for (const auto& b : p.blocks) {
                std::vector<int> abs;
                for (int i : b) abs.push_back(rest[i]);
                prod *= phi(subword(w, abs));
            }
            coeff += prod;
        }
        r.add_term(BarWord(subword(w, s_pos)), coeff);
    }
    return r;
}

// phi^{-1} = eps + sum_j (-1)^j phi^{(x)j} applied to the reduced iterated
// unshuffle coproduct
inline Scalar shuffle_inverse_neumann(const WordFunctional& phi, const Word& w) {
    if (w.empty()) return Scalar::one();
    Scalar r;
    for (int j = 1; j <= static_cast<int>(w.degree()); ++j) {
        Scalar sum;
        const WordTensor iterated = delta_shuffle_iterated(j, w);
        for (const auto& [legs, c] : iterated.terms()) {
            Scalar prod = c;
            for (const auto& leg : legs) prod *= phi(leg);
            sum += prod;
        }
        r += Rational(j % 2 ? -1 : 1) * sum;
    }
    return r;
}

}  // namespace detail

// ---- suites -----------------------------------------------------------------

inline std::vector<CheckResult> suite_core(const Options& opts) {
    detail::Reporter rep("core-normal-forms");
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> nterms(0, 3), coeff(-4, 4), nsym(0, 2), gen(0, 2),
        den(1, 3);
    auto random_scalar = [&] {
        Scalar s;
        const int k = nterms(rng);
        for (int i = 0; i < k; ++i) {
            Monomial m;
            const int syms = nsym(rng);
            for (int j = 0; j < syms; ++j)
                m.symbols.push_back(
                    MomentSymbol{StateTag::phi, {static_cast<GenIndex>(gen(rng))}});
            std::sort(m.symbols.begin(), m.symbols.end());
            s.add_term(m, Rational(coeff(rng), den(rng)));
        }
        return s;
    };
    for (int i = 0; i < 100; ++i) {
        Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
        rep.equal("scalar ring: commutativity", a * b, b * a, "trial " + std::to_string(i));
        rep.equal("scalar ring: associativity", (a * b) * c, a * (b * c),
                  "trial " + std::to_string(i));
        rep.equal("scalar ring: distributivity", a * (b + c), a * b + a * c,
                  "trial " + std::to_string(i));
        rep.is_true("scalar ring: no stored zeros", (a - a).terms().empty(),
                    "trial " + std::to_string(i));
    }
    for (Mode mode : {Mode::noncommutative, Mode::commutative}) {
        for (const auto& w : detail::suite_words(std::min(opts.max_degree, 4), 3)) {
            if (w.empty()) continue;
            Word evaluated;
            evaluated.letters.push_back(evaluate_in_A(w, mode));
            rep.is_true("moment symbol collision",
                        moment_symbol(StateTag::phi, w, mode) ==
                            moment_symbol(StateTag::phi, evaluated, mode),
                        rep.word_text(w));
        }
    }
    // normal form: rebuilding from shuffled terms is stable
    std::vector<std::pair<BarWord, Scalar>> terms;
    for (const auto& w : words_over(2, 3)) terms.push_back({BarWord(w), random_scalar()});
    Element reference;
    for (const auto& [b, s] : terms) reference.add_term(b, s);
    for (int t = 0; t < 10; ++t) {
        std::shuffle(terms.begin(), terms.end(), rng);
        Element again;
        for (const auto& [b, s] : terms) again.add_term(b, s);
        rep.equal("normal form is insertion-order independent", again, reference,
                  "shuffle " + std::to_string(t));
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_coalgebra(const Options& opts) {
    detail::Reporter rep("coalgebra-axioms");
    const int N = opts.max_degree;
    auto words = detail::suite_words(N);
    auto bars = barwords_from(words_over(2, std::min(N, 4)), std::min(N, 5));

    Coproduct cop = [](const BarWord& b) { return delta(b); };
    for (const auto& b : bars)
        rep.is_true("coassociativity of the extraction coproduct",
                    expand_first(delta(b), cop) == expand_second(delta(b), cop),
                    rep.barword_text(b));

    Coproduct prec = [](const BarWord& b) { return delta_prec(b); };
    Coproduct succ = [](const BarWord& b) { return delta_succ(b); };
    Coproduct reduced = [](const BarWord& b) { return delta_reduced(b); };
    for (const auto& w : words) {
        const BarWord b(w);
        TensorPair dp = delta_prec(b);
        TensorPair ds = delta_succ(b);
        rep.is_true("half-unshuffle axiom 1",
                    expand_first(dp, prec) == expand_second(dp, reduced), rep.word_text(w));
        rep.is_true("half-unshuffle axiom 2",
                    expand_first(dp, succ) == expand_second(ds, prec), rep.word_text(w));
        rep.is_true("half-unshuffle axiom 3",
                    expand_first(ds, reduced) == expand_second(ds, succ), rep.word_text(w));
        rep.is_true("splitting of the coproduct",
                    delta_prec_plus(w) + delta_succ_plus(w) == delta(w), rep.word_text(w));
        rep.is_true("cocommutativity of the unshuffle coproduct",
                    delta_shuffle(w).swapped() == delta_shuffle(w), rep.word_text(w));
        for (const auto& [legs, c] : delta(w).terms())
            rep.is_true("grading", legs.first.degree() + legs.second.degree() == w.degree(),
                        rep.word_text(w));
    }
    for (const auto& wa : words_over(2, 3))
        for (const auto& wb : words_over(2, 3)) {
            if (static_cast<int>(wa.degree() + wb.degree()) > N) continue;
            BarWord ab = bar_concat(BarWord(wa), BarWord(wb));
            rep.is_true("compatibility of the left half-coproduct",
                        delta_prec_plus(ab) == delta_prec_plus(BarWord(wa)) * delta(BarWord(wb)),
                        rep.barword_text(ab));
            rep.is_true("compatibility of the right half-coproduct",
                        delta_succ_plus(ab) == delta_succ_plus(BarWord(wa)) * delta(BarWord(wb)),
                        rep.barword_text(ab));
        }

    // antipode of the unshuffle Hopf algebra
    for (const auto& b : barwords_from(words_over(2, 3), std::min(N, 4))) {
        Element left, right;
        const TensorPair cop_b = delta_shuffle(b);
        for (const auto& [legs, c] : cop_b.terms()) {
            left += c * bar_product(antipode_shuffle(legs.first), Element(legs.second));
            right += c * bar_product(Element(legs.first), antipode_shuffle(legs.second));
        }
        Element expected = counit(b) * Element::unit();
        rep.equal("antipode is a two-sided convolution inverse", left, expected,
                  rep.barword_text(b));
        rep.equal("antipode is a two-sided convolution inverse", right, expected,
                  rep.barword_text(b));
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_shuffle_axioms(const Options& opts) {
    detail::Reporter rep("shuffle-axioms");
    std::mt19937_64 rng(opts.seed);
    const int D = std::min(opts.max_degree, 5);
    std::vector<BarWord> vocab;
    for (const auto& w : words_over(2, D)) vocab.push_back(BarWord(w));
    for (const auto& b : barwords_from(words_over(2, 2), std::min(D, 4)))
        if (!b.is_unit()) vocab.push_back(b);

    for (int trial = 0; trial < opts.shuffle_triples; ++trial) {
        Functional x = random_infinitesimal(rng, 2, D);
        Functional y = random_infinitesimal(rng, 2, D);
        Functional z = random_infinitesimal(rng, 2, D);
        Functional xy = convolve(x, y), yz = convolve(y, z);
        Functional l1 = half_prec(half_prec(x, y), z), r1 = half_prec(x, yz);
        Functional l2 = half_prec(half_succ(x, y), z), r2 = half_succ(x, half_prec(y, z));
        Functional l3 = half_succ(x, half_succ(y, z)), r3 = half_succ(xy, z);
        Functional sum = half_prec(x, y) + half_succ(x, y);
        for (const auto& b : vocab) {
            const std::string at = "triple " + std::to_string(trial) + ", " +
                                   rep.barword_text(b);
            rep.equal("(a<b)<c = a<(b*c)", l1(b), r1(b), at);
            rep.equal("(a>b)<c = a>(b<c)", l2(b), r2(b), at);
            rep.equal("a>(b>c) = (a*b)>c", l3(b), r3(b), at);
            rep.equal("a<b + a>b = a*b", sum(b), xy(b), at);
        }
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_exponentials(const Options& opts) {
    detail::Reporter rep("exponentials");
    const int N = opts.max_degree;
    Functional Phi = extend_state(State::symbolic(StateTag::phi, Mode::noncommutative));
    Functional PhiInv = conv_inverse(Phi);
    Functional kappa = L_prec(Phi, PhiInv);
    Functional beta = L_succ(Phi, PhiInv);
    Functional rho = log_star(Phi);
    Functional eps = Functional::counit();

    std::vector<BarWord> vocab;
    for (const auto& w : detail::suite_words(N)) vocab.push_back(BarWord(w));
    for (const auto& b : barwords_from(words_over(2, 2), std::min(N, 4))) vocab.push_back(b);

    Functional E1 = exp_star(rho), E2 = E_prec(kappa), E3 = E_succ(beta);
    Functional I1 = exp_star(-rho), I2 = E_succ(-kappa), I3 = E_prec(-beta);
    Functional fix1 = eps - half_succ(PhiInv, kappa);
    Functional fix2 = eps - half_prec(beta, PhiInv);
    Functional theta = theta_adjoint(Phi, kappa, PhiInv);
    for (const auto& b : vocab) {
        const std::string at = rep.barword_text(b);
        rep.equal("Phi = exp*(rho)", E1(b), Phi(b), at);
        rep.equal("Phi = E_prec(kappa)", E2(b), Phi(b), at);
        rep.equal("Phi = E_succ(beta)", E3(b), Phi(b), at);
        rep.equal("Phi^{-1} = exp*(-rho)", I1(b), PhiInv(b), at);
        rep.equal("Phi^{-1} = E_succ(-kappa)", I2(b), PhiInv(b), at);
        rep.equal("Phi^{-1} = E_prec(-beta)", I3(b), PhiInv(b), at);
        rep.equal("Phi^{-1} = eps - Phi^{-1} > kappa", fix1(b), PhiInv(b), at);
        rep.equal("Phi^{-1} = eps - beta < Phi^{-1}", fix2(b), PhiInv(b), at);
        rep.equal("beta = Theta_Phi(kappa)", theta(b), beta(b), at);
    }

    // kind closure: characters convolve to characters, cumulant formulas are
    // infinitesimal without the kind shortcut
    Functional conv_raw = convolve_raw(Phi, PhiInv);
    Functional conv_chr = convolve(Phi, PhiInv);
    Functional kappa_body = half_prec(Phi - eps, PhiInv);
    Functional beta_body = half_succ(PhiInv, Phi - eps);
    std::mt19937_64 rng(opts.seed);
    Functional lam = random_infinitesimal(rng, 2, std::min(N, 5));
    Functional series = exp_star_series(lam);
    Functional expl = exp_star(lam);
    Functional logl = log_star(expl);
    for (const auto& b : barwords_from(words_over(2, 2), std::min(N, 4))) {
        const std::string at = rep.barword_text(b);
        rep.equal("character convolution is multiplicative", conv_raw(b), conv_chr(b), at);
        rep.equal("exp* of an infinitesimal is group-like", series(b), expl(b), at);
        if (b.components() >= 2 || b.is_unit()) {
            rep.is_true("L_prec output is infinitesimal", kappa_body(b).is_zero(), at);
            rep.is_true("L_succ output is infinitesimal", beta_body(b).is_zero(), at);
        }
    }
    for (const auto& w : words_over(2, std::min(N, 5)))
        rep.equal("log* inverts exp*", logl(w), lam(w), rep.word_text(w));
    return rep.take();
}

inline std::vector<CheckResult> suite_bch(const Options& opts) {
    detail::Reporter rep("bch");
    std::mt19937_64 rng(opts.seed + 1);
    const int D = std::min(opts.max_degree, 5);
    std::vector<BarWord> vocab;
    for (const auto& w : words_over(2, D)) vocab.push_back(BarWord(w));
    for (int trial = 0; trial < opts.bch_pairs; ++trial) {
        Functional alpha1 = random_infinitesimal(rng, 2, D);
        Functional alpha2 = random_infinitesimal(rng, 2, D);
        Functional E2 = E_succ(alpha2);
        Functional prod = convolve(E_succ(alpha1), E2);
        Functional lhs = L_succ(prod, conv_inverse(prod));
        Functional rhs = alpha2 + theta_adjoint(E2, alpha1, conv_inverse(E2));
        for (const auto& b : vocab)
            rep.equal("half-shuffle BCH", lhs(b), rhs(b),
                      "pair " + std::to_string(trial) + ", " + rep.barword_text(b));
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_partitions(const Options&) {
    detail::Reporter rep("partition-counts");
    const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int n = 0; n <= 8; ++n) {
        rep.is_true("set partition count is Bell(n)",
                    enumerate_set_partitions(n).size() == static_cast<std::size_t>(bell[n]),
                    "n = " + std::to_string(n));
        rep.is_true("non-crossing count is Catalan(n)",
                    enumerate_noncrossing(n).size() == static_cast<std::size_t>(catalan[n]),
                    "n = " + std::to_string(n));
        rep.is_true("interval count is 2^{n-1}",
                    enumerate_interval(n).size() ==
                        static_cast<std::size_t>(n == 0 ? 1 : 1L << (n - 1)),
                    "n = " + std::to_string(n));
    }
    for (int n = 1; n <= 6; ++n)
        for (const auto& p : enumerate_noncrossing(n))
            rep.is_true("intervals are the non-crossing partitions with no inner block",
                        is_interval(p) == inner_outer(p).second.empty(),
                        "n = " + std::to_string(n));
    return rep.take();
}

inline std::vector<CheckResult> suite_moment_cumulant(const Options& opts) {
    detail::Reporter rep("moment-cumulant");
    const int N = opts.max_degree;
    State phi_state = State::symbolic(StateTag::phi, Mode::noncommutative);
    WordFunctional phi = word_moment_functional(phi_state);
    Functional Phi = extend_state(phi_state);
    Functional PhiInv = conv_inverse(Phi);
    Functional kappa = L_prec(Phi, PhiInv);
    Functional beta = L_succ(Phi, PhiInv);
    Functional rho = log_star(Phi);
    WordFunctional c = log_shuffle(phi);

    auto words = detail::suite_words(N);
    for (const auto& w : words) {
        if (w.empty()) continue;
        const std::string at = rep.word_text(w);
        rep.equal("set partitions recover moments from tensor cumulants",
                  moments_from_cumulants(CumulantFamily::set,
                                         [&c](const Word& u) { return c(u); }, w),
                  phi(w), at);
        rep.equal("non-crossing partitions recover moments from free cumulants",
                  moments_from_cumulants(CumulantFamily::free,
                                         [&kappa](const Word& u) { return kappa(u); }, w),
                  Phi(w), at);
        rep.equal("interval partitions recover moments from boolean cumulants",
                  moments_from_cumulants(CumulantFamily::boolean,
                                         [&beta](const Word& u) { return beta(u); }, w),
                  Phi(w), at);
        rep.equal("tree factorials recover moments from monotone cumulants",
                  moments_from_cumulants(CumulantFamily::monotone,
                                         [&rho](const Word& u) { return rho(u); }, w),
                  Phi(w), at);
        rep.equal("the boolean triangular recursion matches the shuffle logarithm",
                  boolean_cumulant_from_moments([&phi](const Word& u) { return phi(u); }, w),
                  beta(w), at);
    }

    // two-state case
    State psi_state = State::symbolic(StateTag::psi, Mode::noncommutative);
    Functional Psi = extend_state(psi_state);
    Functional PsiInv = conv_inverse(Psi);
    Functional R = cfree_cumulants(Phi, Psi);
    Functional kappa_psi = L_prec(Psi, PsiInv);
    for (const auto& w : detail::suite_words(std::min(N, 5), 4)) {
        if (w.empty()) continue;
        rep.equal("inner-outer sums recover moments from c-free cumulants",
                  moments_from_cfree([&R](const Word& u) { return R(u); },
                                     [&kappa_psi](const Word& u) { return kappa_psi(u); }, w),
                  Phi(w), rep.word_text(w));
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_wick_maps(const Options& opts) {
    detail::Reporter rep("wick-maps");
    const int N = std::min(opts.max_degree, 5);
    State phi_state = State::symbolic(StateTag::phi, Mode::noncommutative);
    State psi_state = State::symbolic(StateTag::psi, Mode::noncommutative);
    WordFunctional phi = word_moment_functional(phi_state);
    Functional Phi = extend_state(phi_state);
    Functional Psi = extend_state(psi_state);
    Functional PhiInv = conv_inverse(Phi);
    Functional PsiInv = conv_inverse(Psi);
    Functional kappa = L_prec(Phi, PhiInv);
    Functional beta = L_succ(Phi, PhiInv);

    Endo WT = wick_tensor(phi);
    Endo W = wick_free(PhiInv);
    Endo Wp = wick_boolean(beta);
    Endo Wc = wick_cfree(Phi, Psi);
    Endo id = Endo::identity();
    Endo e = Endo::unit_counit();

    auto ph = [](std::initializer_list<GenIndex> gs) {
        return Scalar::symbol(moment_symbol(StateTag::phi, word_of_gens(gs),
                                            Mode::noncommutative));
    };
    const Word a1 = word_of_gens({0}), a2 = word_of_gens({1}), a1a2 = word_of_gens({0, 1});

    // paper displays at low degree
    rep.equal("tensor Wick at degree one", WT(a1), Element(a1) - ph({0}) * Element::unit(),
              "a1");
    rep.equal("tensor Wick at degree two", WT(a1a2),
              Element(a1a2) - ph({0}) * Element(a2) - ph({1}) * Element(a1) +
                  (Scalar(2) * (ph({0}) * ph({1})) - ph({0, 1})) * Element::unit(),
              "a1 a2");
    rep.equal("free Wick at degree one", W(a1), Element(a1) - ph({0}) * Element::unit(),
              "a1");
    rep.equal("free Wick at degree two", W(a1a2),
              Element(a1a2) - ph({1}) * Element(a1) - ph({0}) * Element(a2) -
                  (ph({0, 1}) - Scalar(2) * (ph({0}) * ph({1}))) * Element::unit(),
              "a1 a2");
    rep.equal("free Wick at degree three keeps the split-complement term",
              W(word_of_gens({0, 1, 2})).coefficient(BarWord(a2)), ph({0}) * ph({2}),
              "a1 a2 a3");

    auto words = detail::suite_words(N);
    for (const auto& w : words) {
        const std::string at = rep.word_text(w);

        // centredness of all four maps
        Scalar c1, c2, c3, c4;
        for (const auto& [b, s] : WT(w).terms()) c1 += s * phi(as_word(b));
        for (const auto& [b, s] : W(w).terms()) c2 += s * Phi(b);
        for (const auto& [b, s] : Wp(w).terms()) c3 += s * Phi(b);
        for (const auto& [b, s] : Wc(w).terms()) c4 += s * Phi(b);
        const Scalar expect = w.empty() ? Scalar::one() : Scalar::zero();
        rep.equal("tensor Wick map is centred", c1, expect, at);
        rep.equal("free Wick map is centred", c2, expect, at);
        rep.equal("boolean Wick map is centred", c3, expect, at);
        rep.equal("c-free Wick map is centred", c4, expect, at);

        // reconstruction of the identity
        Element rebuilt;
        const TensorPair cop = delta(BarWord(w));
        for (const auto& [legs, s] : cop.terms())
            rebuilt += (s * Phi(legs.second)) * W(as_word(legs.first));
        rep.equal("(W (x) Phi) Delta = id", rebuilt, Element(w), at);

        Element rebuilt_t;
        for (const auto& [legs, s] : delta_shuffle(w).terms())
            rebuilt_t += (s * phi(as_word(legs.second))) * WT(as_word(legs.first));
        rep.equal("(W_T (x) phi) Delta-shuffle = id", rebuilt_t, Element(w), at);

        // oracle routes
        rep.equal("tensor Wick map matches the signed partition sum", WT(w),
                  detail::tensor_wick_partition_sum(phi, w), at);
        rep.equal("free Wick map matches the signed interval sum over free cumulants",
                  W(w), wick_free_from_free_cumulants(kappa, w), at);

        // recursions
        rep.equal("free Wick recursion", W(w),
                  (e + act_prec(id - e, PhiInv) - act_succ(W, kappa))(w), at);
        rep.equal("free Wick map in boolean-cumulant form", W(w),
                  (e + act_prec(id - e - act_succ(id, beta), PhiInv))(w), at);
        rep.equal("boolean Wick map from its defining formula", Wp(w),
                  (id - act_succ(id, beta))(w), at);
        rep.equal("boolean from free rewriting rule", Wp(w), (e + act_prec(W - e, Phi))(w),
                  at);

        if (!w.empty()) {
            // polynomial form of the recursion; the infinitesimal always
            // takes the prefix
            Word tail(std::vector<Letter>(w.letters.begin() + 1, w.letters.end()));
            Element poly = concat_product(
                Element(Word{std::vector<Letter>{w.letters.front()}}), W(tail));
            for (std::size_t j = 1; j <= w.degree(); ++j) {
                Word head(std::vector<Letter>(w.letters.begin(), w.letters.begin() + j));
                Word rest(std::vector<Letter>(w.letters.begin() + j, w.letters.end()));
                poly -= kappa(head) * W(rest);
            }
            rep.equal("free Wick recursion, polynomial form", W(w), poly, at);

            // corrected inversion: the j = n summand is Phi(w) 1
            Element inv = Wp(w);
            for (std::size_t j = 1; j <= w.degree(); ++j) {
                Word head(std::vector<Letter>(w.letters.begin(), w.letters.begin() + j));
                Word tail(std::vector<Letter>(w.letters.begin() + j, w.letters.end()));
                inv += Phi(head) * Wp(tail);
            }
            rep.equal("boolean Wick inversion", inv, Element(w), at);

            Element total = Wp(w);
            Endo term = Wp;
            for (std::size_t i = 1; i <= w.degree(); ++i) {
                term = act_succ(term, beta);
                total += term(w);
            }
            rep.equal("boolean telescoping rebuilds the word", total, Element(w), at);
            rep.is_true("boolean telescoping terminates", act_succ(term, beta)(w).is_zero(),
                        at);
        }
    }

    // neumann-series oracle for the shuffle inverse
    WordFunctional phi_inv = shuffle_inverse(phi);
    for (const auto& w : detail::suite_words(std::min(N, 5), 4))
        rep.equal("shuffle inverse matches its Neumann series", phi_inv(w),
                  detail::shuffle_inverse_neumann(phi, w), rep.word_text(w));

    // multiplicativity on bar products
    for (const auto& wa : words_over(2, 3))
        for (const auto& wb : words_over(2, 3)) {
            if (static_cast<int>(wa.degree() + wb.degree()) > std::min(opts.max_degree, 6))
                continue;
            BarWord pair = bar_concat(BarWord(wa), BarWord(wb));
            rep.equal("free Wick map is multiplicative", apply_mult(W, pair),
                      bar_product(W(wa), W(wb)), rep.barword_text(pair));
        }

    // two-state specializations and factorization
    const int M = std::min(opts.max_degree, 4);
    auto short_words = detail::suite_words(M, 3);
    Endo Wc_phi = wick_cfree(Phi, Phi);
    Endo Wc_eps = wick_cfree(Phi, Functional::counit());
    Functional R = cfree_cumulants(Phi, Psi);
    Functional Rphi = cfree_cumulants(Phi, Phi);
    Functional Reps = cfree_cumulants(Phi, Functional::counit());
    Functional kappa_psi = L_prec(Psi, PsiInv);
    Endo W_psi = wick_free(PsiInv);
    Endo factored = act(W_psi, E_prec(kappa_psi - R));
    for (const auto& w : short_words) {
        const std::string at = rep.word_text(w);
        rep.equal("c-free Wick with psi = phi is the free Wick map", Wc_phi(w), W(w), at);
        rep.equal("c-free Wick with psi = eps is the boolean Wick map", Wc_eps(w), Wp(w),
                  at);
        rep.equal("free Wick factors through the psi Wick map", W(w), factored(w), at);
        rep.equal("c-free cumulants with psi = phi are the free cumulants", Rphi(w),
                  kappa(w), at);
        rep.equal("c-free cumulants with psi = eps are the boolean cumulants", Reps(w),
                  beta(w), at);
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_derivations(const Options& opts) {
    detail::Reporter rep("derivations");
    Functional Phi = extend_state(State::symbolic(StateTag::phi, Mode::noncommutative));
    Functional PhiInv = conv_inverse(Phi);
    Endo W = wick_free(PhiInv);

    const GenIndex a = 0, b = 1, c = 2;
    const Word wbc = word_of_gens({b, c});
    rep.equal("derivation deletes a leading or trailing letter",
              derivation(a, concat(word_of_gens({a}), wbc)), Element(wbc), "a1 a2 a3");
    rep.equal("derivation deletes a leading or trailing letter",
              derivation(a, concat(wbc, word_of_gens({a}))), Element(wbc), "a2 a3 a1");
    rep.equal("an interior occurrence splits into a bar product",
              derivation(a, word_of_gens({b, a, c})),
              Element(BarWord(std::vector<Word>{word_of_gens({b}), word_of_gens({c})})),
              "a2 a1 a3");
    rep.equal("repeated occurrences add up",
              derivation(a, word_of_gens({a, b, a})),
              Element(word_of_gens({a, b})) + Element(word_of_gens({b, a})), "a1 a2 a1");

    for (const auto& w : detail::suite_words(std::min(opts.max_degree, 5)))
        for (GenIndex g = 0; g < 3; ++g)
            rep.equal("derivations intertwine with the free Wick map",
                      derivation(g, W(w)), apply_mult(W, derivation(g, w)),
                      rep.word_text(w) + ", d_a" + std::to_string(g + 1));

    const Word w4 = word_of_gens({0, 1, 2, 3});
    for (std::size_t i = 0; i < 4; ++i) {
        Word before(std::vector<Letter>(w4.letters.begin(), w4.letters.begin() + i));
        Word after(std::vector<Letter>(w4.letters.begin() + i + 1, w4.letters.end()));
        rep.equal("the derivation of a Wick polynomial splits it",
                  derivation(static_cast<GenIndex>(i), W(w4)),
                  bar_product(W(before), W(after)), "a1 a2 a3 a4");
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_group_actions(const Options& opts) {
    detail::Reporter rep("group-actions");
    const int N = std::min(opts.max_degree, 4);
    Functional Phi = extend_state(State::symbolic(StateTag::phi, Mode::noncommutative));
    Functional Psi = extend_state(State::symbolic(StateTag::psi, Mode::noncommutative));
    Functional PhiInv = conv_inverse(Phi);
    Functional PsiInv = conv_inverse(Psi);
    Endo id = Endo::identity();
    Endo e = Endo::unit_counit();
    Endo W = wick_free(PhiInv);
    Endo Wp = wick_boolean(L_succ(Phi, PhiInv));
    Endo Wc = wick_cfree(Phi, Psi);

    Endo act1 = act(act(id, Phi), Psi), act2 = act(id, convolve(Phi, Psi));
    Endo actp1 = act_prec(act_prec(W, Phi), PsiInv);
    Endo actp2 = act_prec(W, convolve(Phi, PsiInv));
    Endo trivial = act(id, Functional::counit());
    Endo W_from_orbit = act(id, PhiInv);
    Endo Wp_from_orbit = e + act_prec(act(id, PhiInv) - e, Phi);
    Endo Wc_from_orbit = e + act_prec(act_prec(act(id, PhiInv) - e, Phi), PsiInv);
    Endo orbit_inverse = comp_inverse(act(id, Psi));
    Endo orbit_inverse_direct = act(id, PsiInv);

    for (const auto& w : detail::suite_words(N, 3)) {
        const std::string at = rep.word_text(w);
        rep.equal("the counit acts trivially", trivial(w), id(w), at);
        rep.equal("(L.Psi1).Psi2 = L.(Psi1*Psi2)", act1(w), act2(w), at);
        rep.equal("(L^Psi1)^Psi2 = L^(Psi1*Psi2)", actp1(w), actp2(w), at);
        rep.equal("the free Wick map lies on the identity orbit", W_from_orbit(w), W(w), at);
        rep.equal("the boolean Wick map via the combined action", Wp_from_orbit(w), Wp(w),
                  at);
        rep.equal("the c-free Wick map closes the action diagram", Wc_from_orbit(w), Wc(w),
                  at);
        rep.equal("(id.Psi)^{-1} = id.Psi^{-1}", orbit_inverse(w), orbit_inverse_direct(w),
                  at);
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_wick_products(const Options& opts) {
    detail::Reporter rep("wick-products");
    const int N = std::min(opts.max_degree, 4);
    Functional Phi = extend_state(State::symbolic(StateTag::phi, Mode::noncommutative));
    Functional Psi = extend_state(State::symbolic(StateTag::psi, Mode::noncommutative));
    Functional PhiInv = conv_inverse(Phi);
    Endo W = wick_free(PhiInv);
    Endo Wp = wick_boolean(L_succ(Phi, PhiInv));
    Endo Wc = wick_cfree(Phi, Psi);

    const Word a1 = word_of_gens({0}), a2 = word_of_gens({1}), a1a2 = word_of_gens({0, 1});
    auto ph = [](std::initializer_list<GenIndex> gs) {
        return Scalar::symbol(moment_symbol(StateTag::phi, word_of_gens(gs),
                                            Mode::noncommutative));
    };
    rep.equal("Wick images multiply to the Wick image of the product",
              wick_product(W, W(a1), W(a2)), W(a1a2), "a1, a2");
    rep.equal("the free Wick product of two letters",
              wick_product(W, Element(a1), Element(a2)),
              W(a1a2) + ph({1}) * W(a1) + ph({0}) * W(a2) +
                  (ph({0}) * ph({1})) * Element::unit(),
              "a1, a2");

    // closed form vs the conjugation route
    std::vector<Word> smalls = {a1, a2, a1a2, word_of_gens({1, 2}), word_of_gens({0, 1, 2})};
    for (const auto& u : smalls)
        for (const auto& v : smalls) {
            if (static_cast<int>(u.degree() + v.degree()) > N + 1) continue;
            rep.equal("closed form of the free Wick product",
                      free_wick_product_closed_form(W, Phi, u, v),
                      wick_product(W, Element(u), Element(v)),
                      rep.word_text(u) + " . " + rep.word_text(v));
        }

    // morphism property W(a^n) = W(a)^{. n} and associativity for all three
    const char* names[] = {"free", "boolean", "c-free"};
    const Endo maps[] = {W, Wp, Wc};
    for (int m = 0; m < 3; ++m) {
        Element power = maps[m](a1);
        for (int n = 2; n <= N; ++n) {
            power = wick_product(maps[m], power, maps[m](a1));
            std::vector<GenIndex> gs(static_cast<std::size_t>(n), 0);
            rep.equal(std::string(names[m]) + " Wick map is an algebra morphism", power,
                      maps[m](word_of_gens(gs)), "a1^" + std::to_string(n));
        }
    }
    std::mt19937_64 rng(opts.seed + 2);
    std::uniform_int_distribution<int> coeff(-2, 2), len(0, 2), gen(0, 1);
    auto random_element = [&] {
        Element x;
        for (int t = 0; t < 2; ++t) {
            std::vector<GenIndex> gs;
            const int l = len(rng);
            for (int i = 0; i < l; ++i) gs.push_back(static_cast<GenIndex>(gen(rng)));
            x += Scalar(coeff(rng)) * Element(word_of_gens(gs));
        }
        return x;
    };
    for (int trial = 0; trial < 8; ++trial) {
        Element x = random_element(), y = random_element(), z = random_element();
        for (int m = 0; m < 3; ++m)
            rep.equal(std::string(names[m]) + " Wick product is associative",
                      wick_product(maps[m], wick_product(maps[m], x, y), z),
                      wick_product(maps[m], x, wick_product(maps[m], y, z)),
                      "triple " + std::to_string(trial));
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_monotone_t(const Options& opts) {
    detail::Reporter rep("monotone-t");
    const int N = opts.max_degree;
    const Rational samples[] = {Rational(0), Rational(1), Rational(2), Rational(1, 2)};

    // two rho tables: symbolic univariate and the semicircular state's log*
    State uni = State::symbolic(StateTag::phi, Mode::noncommutative);
    Functional rho_sym = log_star(extend_state(uni));
    Functional rho_semi = log_star(extend_state(detail::semicircular_state()));
    const char* names[] = {"symbolic", "semicircular"};
    const Functional rhos[] = {rho_sym, rho_semi};

    for (int which = 0; which < 2; ++which) {
        const Functional& rho = rhos[which];
        auto r = [&rho](int q) {
            return rho(word_of_gens(std::vector<GenIndex>(static_cast<std::size_t>(q), 0)));
        };
        for (int n = 1; n <= N; ++n) {
            const Word an = word_of_gens(std::vector<GenIndex>(static_cast<std::size_t>(n), 0));
            Scalar closed = monotone_mt(r, n);
            for (const auto& t : samples) {
                Scalar via_exp = exp_star_t(rho, t)(an);
                rep.equal("closed monotone moment formula matches exp*(t rho)",
                          closed.substitute_t(t), via_exp,
                          std::string(names[which]) + ", n = " + std::to_string(n) +
                              ", t = " + t.str());
            }
            Scalar rhs;
            for (int p = 1; p <= n; ++p)
                rhs += Rational(p) * r(n - p + 1) * monotone_mt(r, p - 1).integrate_t();
            rep.equal("integral equation for the monotone moments", closed, rhs,
                      std::string(names[which]) + ", n = " + std::to_string(n));
            rep.equal("t = 1 gives the univariate monotone moment-cumulant relation",
                      closed.substitute_t(1),
                      moments_from_cumulants(
                          CumulantFamily::monotone,
                          [&rho](const Word& u) { return rho(u); }, an),
                      std::string(names[which]) + ", n = " + std::to_string(n));
        }
    }

    // the shuffle differential equation over the polynomial ring in t
    std::mt19937_64 rng(opts.seed + 3);
    Functional lam = random_infinitesimal(rng, 2, std::min(N, 4));
    Functional formal = exp_star_t_formal(lam);
    Functional rhs = convolve(formal, lam);
    for (const auto& w : words_over(2, std::min(N, 4)))
        rep.equal("d/dt exp*(t rho) = exp*(t rho) * rho", formal(w).derivative_t(), rhs(w),
                  rep.word_text(w));
    return rep.take();
}

inline std::vector<CheckResult> suite_classical_bridge(const Options& opts) {
    detail::Reporter rep("classical-bridge");
    const int N = std::min(opts.max_degree, 6);

    // commutative mode, standard Gaussian table: the evaluated tensor Wick
    // polynomials are the Hermite polynomials
    State gauss = detail::gaussian_state();
    WordFunctional phi = word_moment_functional(gauss);
    Endo WT = wick_tensor(phi);
    std::vector<Rational> moments = {0, 1, 0, 3, 0, 15, 0, 105};
    for (int n = 1; n <= N; ++n) {
        Element image = WT(word_of_gens(std::vector<GenIndex>(static_cast<std::size_t>(n), 0)));
        std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1, Rational(0));
        bool constant_ok = true;
        for (const auto& [b, c] : image.terms()) {
            if (!c.is_constant()) {
                constant_ok = false;
                break;
            }
            const Word w = as_word(b);
            std::size_t power =
                w.empty() ? 0 : evaluate_in_A(w, Mode::commutative).factors.size();
            coeffs[power] += c.constant_part();
        }
        rep.is_true("evaluated coefficients are rational", constant_ok,
                    "n = " + std::to_string(n));
        rep.is_true("evaluation reproduces the classical Wick coefficients",
                    coeffs == classical_wick(moments, n), "n = " + std::to_string(n));
    }
    rep.is_true("Hermite degree three",
                classical_wick(moments, 3) ==
                    std::vector<Rational>{0, -3, 0, 1},
                "W_3 = x^3 - 3x");
    rep.is_true("Hermite degree four",
                classical_wick(moments, 4) ==
                    std::vector<Rational>{3, 0, -6, 0, 1},
                "W_4 = x^4 - 6x^2 + 3");

    std::vector<Rational> generic = {Rational(1, 2), Rational(3), Rational(-1), Rational(2)};
    auto rows = classical_wick_basis(generic, 2);
    rep.is_true("first Wick polynomial centres the variable",
                rows[1] == std::vector<Rational>{Rational(-1, 2), 1}, "W_1 = x - m1");
    rep.is_true("second Wick polynomial",
                rows[2] == std::vector<Rational>{Rational(-5, 2), -1, 1},
                "W_2 = x^2 - 2 m1 x + 2 m1^2 - m2");

    // semicircular free cumulants: kappa_2 = 1, all others vanish
    Functional kappa_semi = L_prec(extend_state(detail::semicircular_state()));
    for (int n = 1; n <= 8; ++n) {
        Scalar v = kappa_semi(word_of_gens(std::vector<GenIndex>(static_cast<std::size_t>(n), 0)));
        rep.equal("semicircular free cumulants", v,
                  n == 2 ? Scalar::one() : Scalar::zero(), "n = " + std::to_string(n));
    }
    return rep.take();
}

inline std::vector<CheckResult> suite_cli_roundtrip(const Options& opts) {
    detail::Reporter rep("cli-roundtrip");
    GeneratorSet gens;
    for (int i = 1; i <= 6; ++i) gens.add("a" + std::to_string(i));

    Functional Phi = extend_state(State::symbolic(StateTag::phi, Mode::noncommutative));
    Functional PhiInv = conv_inverse(Phi);
    Endo W = wick_free(PhiInv);
    Endo Wp = wick_boolean(L_succ(Phi, PhiInv));

    std::vector<Element> emitted;
    for (const auto& w : detail::suite_words(std::min(opts.max_degree, 4), 3)) {
        emitted.push_back(W(w));
        emitted.push_back(Wp(w));
    }
    emitted.push_back(Element::unit());
    emitted.push_back(Element::zero() - Scalar(Rational(2, 3)) * Element(word_of_gens({0})));

    for (const auto& x : emitted) {
        if (x.is_zero()) continue;  // "0" is not a term of the grammar
        std::string text = print::element_text(x, gens);
        GeneratorSet reparse_gens = gens;
        Element back = parse_expression(text, reparse_gens, true);
        rep.equal("text round-trip", back, x, text);
        rep.is_true("text determinism", print::element_text(x, gens) == text, text);

        auto j = json_io::element_to_json(x, gens);
        GeneratorSet jgens = gens;
        rep.equal("json round-trip", json_io::element_from_json(j, jgens, true), x, text);
        rep.is_true("json determinism", json_io::element_to_json(x, gens) == j, text);
    }

    // grammar anchor cases
    GeneratorSet g2;
    Element ab = parse_expression("a b", g2);
    rep.is_true("two letters parse to a two-letter word",
                ab == Element(word_of_gens({0, 1})), "a b");
    Element dotted = parse_expression("a.b c", g2);
    Word expected;
    expected.letters.push_back(Letter(std::vector<GenIndex>{0, 1}));
    expected.letters.push_back(Letter(2));
    rep.is_true("a dotted pair parses to one letter", dotted == Element(expected), "a.b c");
    Element mixed = parse_expression("2/3 a | b + 1", g2);
    Element expect_mixed =
        Element::term(BarWord(std::vector<Word>{word_of_gens({0}), word_of_gens({1})}),
                      Scalar(Rational(2, 3))) +
        Element::unit();
    rep.is_true("coefficients, bars and the unit parse", mixed == expect_mixed,
                "2/3 a | b + 1");
    return rep.take();
}

// ---- registry ----------------------------------------------------------------

using SuiteFn = std::vector<CheckResult> (*)(const Options&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"core-normal-forms", &suite_core},
        {"coalgebra-axioms", &suite_coalgebra},
        {"shuffle-axioms", &suite_shuffle_axioms},
        {"exponentials", &suite_exponentials},
        {"bch", &suite_bch},
        {"partition-counts", &suite_partitions},
        {"moment-cumulant", &suite_moment_cumulant},
        {"wick-maps", &suite_wick_maps},
        {"derivations", &suite_derivations},
        {"group-actions", &suite_group_actions},
        {"wick-products", &suite_wick_products},
        {"monotone-t", &suite_monotone_t},
        {"classical-bridge", &suite_classical_bridge},
        {"cli-roundtrip", &suite_cli_roundtrip},
    };
    return table;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const Options& opts) {
    for (const auto& [n, fn] : suites())
        if (n == name) return fn(opts);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace ncwick::verify
