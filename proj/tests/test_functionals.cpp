#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncwick/functional.hpp"
#include "ncwick/identities.hpp"
#include "ncwick/partitions.hpp"

using namespace ncwick;

namespace {

const Word a1 = word_of_gens({0});
const Word a2 = word_of_gens({1});
const Word a3 = word_of_gens({2});
const Word a1a2 = word_of_gens({0, 1});
const Word a1a2a3 = word_of_gens({0, 1, 2});

BarWord bw(std::initializer_list<Word> ws) { return BarWord(std::vector<Word>(ws)); }

Scalar phi_sym(const Word& w) {
    return Scalar::symbol(moment_symbol(StateTag::phi, w, Mode::noncommutative));
}

State symbolic_phi() { return State::symbolic(StateTag::phi, Mode::noncommutative); }

State semicircular() {
    // phi(a^n) = Catalan(n/2) for even n, 0 for odd n, through degree 8
    std::map<std::vector<GenIndex>, Rational> t;
    const long catalan[] = {1, 1, 2, 5, 14};
    for (int n = 1; n <= 8; ++n) {
        std::vector<GenIndex> key(static_cast<std::size_t>(n), 0);
        t[key] = (n % 2 == 0) ? Rational(catalan[n / 2]) : Rational(0);
    }
    return State::table(StateTag::phi, Mode::noncommutative, std::move(t));
}

}  // namespace

TEST_CASE("state extension to a character") {
    Functional Phi = extend_state(symbolic_phi());
    CHECK(Phi.is_character());
    CHECK(Phi(BarWord{}) == Scalar::one());
    CHECK(Phi(a1a2) == phi_sym(a1a2));
    CHECK(Phi(bw({a1, a2})) == phi_sym(a1) * phi_sym(a2));

    Functional Semi = extend_state(semicircular());
    CHECK(Semi(word_of_gens({0, 0, 0, 0})) == Scalar(2));
    CHECK(Semi(word_of_gens({0, 0, 0})) == Scalar(0));

    // querying a table past its depth is an error
    CHECK_THROWS_AS(Semi(word_of_gens({0, 0, 0, 0, 0, 0, 0, 0, 0})), MissingMomentError);
}

TEST_CASE("convolution basics") {
    Functional Phi = extend_state(symbolic_phi());
    Functional eps = Functional::counit();

    auto vocab = barwords_from(words_over(2, 3), 4);
    CHECK(compare_functionals(convolve(eps, Phi), Phi, vocab).equal);
    CHECK(compare_functionals(convolve(Phi, eps), Phi, vocab).equal);

    Functional PhiInv = conv_inverse(Phi);
    CHECK(convolve(Phi, PhiInv)(a1a2).is_zero());
    CHECK(convolve(PhiInv, Phi)(a1a2).is_zero());

    // delta(a1) = a1 (x) 1 + 1 (x) a1
    CHECK(convolve(Phi, Phi)(a1) == Scalar(2) * phi_sym(a1));
}

TEST_CASE("convolution inverse values") {
    Functional Phi = extend_state(symbolic_phi());
    Functional PhiInv = conv_inverse(Phi);
    CHECK(PhiInv(a1) == -phi_sym(a1));
    CHECK(PhiInv(a1a2) == Scalar(2) * (phi_sym(a1) * phi_sym(a2)) - phi_sym(a1a2));
    CHECK(PhiInv(bw({a1, a2})) == phi_sym(a1) * phi_sym(a2));
    CHECK(PhiInv.is_character());

    CHECK_THROWS_AS(conv_inverse(Functional::infinitesimal([](const Word&) {
                        return Scalar::one();
                    })),
                    std::invalid_argument);
}

TEST_CASE("characters convolve to characters") {
    Functional Phi = extend_state(symbolic_phi());
    Functional PhiInv = conv_inverse(Phi);
    Functional prod = convolve_raw(Phi, convolve(Phi, PhiInv));
    // raw values on bar products match the multiplicative extension
    for (const auto& b : barwords_from(words_over(2, 2), 4)) {
        Scalar expected = Scalar::one();
        for (const auto& w : b.words) expected *= convolve(Phi, convolve(Phi, PhiInv))(w);
        CHECK(prod(b) == expected);
    }
}

TEST_CASE("half-shuffle unit rules") {
    Functional Phi = extend_state(symbolic_phi());
    Functional kappa = L_prec(Phi);

    CHECK(half_prec(kappa, Phi)(a1) == kappa(a1));
    CHECK(half_succ(Phi, kappa)(a1) == kappa(a1));

    // eps < phi = 0 and phi > eps = 0 for reduced phi; the mixed unit rules
    Functional eps = Functional::counit();
    CHECK(half_prec(eps, kappa)(a1).is_zero());
    CHECK(half_succ(kappa, eps)(a1).is_zero());
    CHECK(half_prec(kappa, eps)(a1) == kappa(a1));
    CHECK(half_succ(eps, kappa)(a1) == kappa(a1));

    // 1 < 1 and 1 > 1 are undefined
    CHECK_THROWS_AS(half_prec(Phi, Phi)(BarWord{}), std::domain_error);
    CHECK_THROWS_AS(half_succ(Phi, Phi)(BarWord{}), std::domain_error);
    // ... but vanish once either side is reduced
    CHECK(half_prec(kappa, Phi)(BarWord{}).is_zero());
}

TEST_CASE("shuffle axioms on seeded random infinitesimal triples") {
    std::mt19937_64 rng(7);
    auto vocab = barwords_from(words_over(2, 3), 4);
    for (int trial = 0; trial < 10; ++trial) {
        Functional x = random_infinitesimal(rng, 2, 4);
        Functional y = random_infinitesimal(rng, 2, 4);
        Functional z = random_infinitesimal(rng, 2, 4);
        Functional star_yz = convolve(y, z);
        Functional star_xy = convolve(x, y);
        CHECK(compare_functionals(half_prec(half_prec(x, y), z), half_prec(x, star_yz), vocab)
                  .equal);
        CHECK(compare_functionals(half_prec(half_succ(x, y), z),
                                  half_succ(x, half_prec(y, z)), vocab)
                  .equal);
        CHECK(compare_functionals(half_succ(x, half_succ(y, z)), half_succ(star_xy, z), vocab)
                  .equal);
        // the two half-shuffles add up to the convolution
        CHECK(compare_functionals(half_prec(x, y) + half_succ(x, y), star_xy, vocab).equal);
    }
}

TEST_CASE("convolution exponential and logarithm") {
    std::mt19937_64 rng(11);
    Functional lam = random_infinitesimal(rng, 2, 5);
    Functional expl = exp_star(lam);
    CHECK(expl.is_character());
    CHECK(expl(a1) == lam(a1));
    CHECK(expl(a1a2) == lam(a1a2) + Rational(1, 2) * convolve(lam, lam)(a1a2));

    Functional back = log_star(expl);
    auto vocab = barwords_from(words_over(2, 5), 5);
    CHECK(compare_functionals(back, lam, vocab).equal);

    // group-likeness: the bare series is multiplicative on bar products
    Functional series = exp_star_series(lam);
    for (const auto& b : barwords_from(words_over(2, 2), 4)) {
        Scalar expected = Scalar::one();
        for (const auto& w : b.words) expected *= expl(w);
        CHECK(series(b) == expected);
    }

    CHECK_THROWS_AS(exp_star(extend_state(symbolic_phi())), std::invalid_argument);
    CHECK_THROWS_AS(log_star(lam), std::invalid_argument);
}

TEST_CASE("exp_star with a parameter") {
    std::mt19937_64 rng(13);
    Functional lam = random_infinitesimal(rng, 2, 4);
    auto vocab = barwords_from(words_over(2, 4), 4);
    CHECK(compare_functionals(exp_star_t(lam, 0), Functional::counit(), vocab).equal);
    CHECK(compare_functionals(exp_star_t(lam, 1), exp_star(lam), vocab).equal);

    // d/dt exp*(t rho) = exp*(t rho) * rho as exact polynomials in t
    Functional formal = exp_star_t_formal(lam);
    Functional rhs = convolve(formal, lam);
    for (const auto& w : words_over(2, 4)) {
        CHECK(formal(w).derivative_t() == rhs(w));
    }
}

TEST_CASE("half-shuffle exponentials") {
    Functional Phi = extend_state(symbolic_phi());
    Functional PhiInv = conv_inverse(Phi);
    Functional kappa = L_prec(Phi, PhiInv);
    Functional beta = L_succ(Phi, PhiInv);

    SECTION("degree one: all cumulants agree") {
        CHECK(kappa(a1) == phi_sym(a1));
        CHECK(beta(a1) == phi_sym(a1));
        CHECK(log_star(Phi)(a1) == phi_sym(a1));
    }

    SECTION("degree two: free and boolean cumulants agree") {
        Scalar expected = phi_sym(a1a2) - phi_sym(a1) * phi_sym(a2);
        CHECK(kappa(a1a2) == expected);
        CHECK(beta(a1a2) == expected);
    }

    SECTION("E_prec values are the non-crossing cumulant sums") {
        Functional E = E_prec(kappa);
        CHECK(E(a1) == kappa(a1));
        Scalar expected = kappa(a1a2a3) + kappa(a1a2) * kappa(a3) +
                          kappa(word_of_gens({0, 2})) * kappa(a2) +
                          kappa(word_of_gens({1, 2})) * kappa(a1) +
                          kappa(a1) * kappa(a2) * kappa(a3);
        CHECK(E(a1a2a3) == expected);
    }

    SECTION("E_succ values are the interval cumulant sums") {
        Functional E = E_succ(beta);
        CHECK(E(a1a2) == beta(a1a2) + beta(a1) * beta(a2));
    }

    SECTION("E and L are mutually inverse on the symbolic state") {
        auto vocab = barwords_from(words_over(2, 4), 4);
        CHECK(compare_functionals(E_prec(kappa), Phi, vocab).equal);
        CHECK(compare_functionals(E_succ(beta), Phi, vocab).equal);
        CHECK(compare_functionals(exp_star(log_star(Phi)), Phi, vocab).equal);
    }

    SECTION("fixed point equations hold on bar-words too") {
        Functional E = E_prec(kappa);
        Functional rhs = half_prec(kappa, E);
        for (const auto& b : barwords_from(words_over(2, 3), 4)) {
            if (b.is_unit()) continue;
            CHECK(E(b) == rhs(b));
        }
    }
}

TEST_CASE("infinitesimal outputs vanish on bar products") {
    Functional Phi = extend_state(symbolic_phi());
    Functional PhiInv = conv_inverse(Phi);
    // the defining formulas evaluated generically, without the kind shortcut
    Functional kappa_body = half_prec(Phi - Functional::counit(), PhiInv);
    Functional beta_body = half_succ(PhiInv, Phi - Functional::counit());
    for (const auto& b : barwords_from(words_over(2, 2), 4)) {
        if (b.components() < 2) continue;
        CHECK(kappa_body(b).is_zero());
        CHECK(beta_body(b).is_zero());
    }
    CHECK(kappa_body(BarWord{}).is_zero());
    CHECK(beta_body(BarWord{}).is_zero());
}

TEST_CASE("inverse identities and fixed points for the inverse") {
    Functional Phi = extend_state(symbolic_phi());
    Functional PhiInv = conv_inverse(Phi);
    Functional kappa = L_prec(Phi, PhiInv);
    Functional beta = L_succ(Phi, PhiInv);
    Functional rho = log_star(Phi);
    auto vocab = barwords_from(words_over(2, 4), 4);

    CHECK(compare_functionals(PhiInv, exp_star(-rho), vocab).equal);
    CHECK(compare_functionals(PhiInv, E_succ(-kappa), vocab).equal);
    CHECK(compare_functionals(PhiInv, E_prec(-beta), vocab).equal);

    Functional eps = Functional::counit();
    CHECK(compare_functionals(PhiInv, eps - half_succ(PhiInv, kappa), vocab).equal);
    CHECK(compare_functionals(PhiInv, eps - half_prec(beta, PhiInv), vocab).equal);
}

TEST_CASE("adjoint action") {
    Functional Phi = extend_state(symbolic_phi());
    Functional PhiInv = conv_inverse(Phi);
    Functional kappa = L_prec(Phi, PhiInv);
    Functional beta = L_succ(Phi, PhiInv);

    std::mt19937_64 rng(17);
    Functional alpha = random_infinitesimal(rng, 2, 4);

    CHECK(theta_adjoint(Phi, alpha, PhiInv)(a1) == alpha(a1));

    auto vocab = barwords_from(words_over(2, 4), 4);
    CHECK(compare_functionals(theta_adjoint(Phi, kappa, PhiInv), beta, vocab).equal);
    CHECK(compare_functionals(theta_adjoint(Functional::counit(), alpha), alpha, vocab).equal);

    // bracketing is immaterial: (PhiInv > kappa) < Phi = PhiInv > (kappa < Phi)
    Functional left = half_prec(half_succ(PhiInv, kappa), Phi);
    Functional right = half_succ(PhiInv, half_prec(kappa, Phi));
    CHECK(compare_functionals(left, right, vocab).equal);
}

TEST_CASE("right half-shuffle Baker-Campbell-Hausdorff formula") {
    std::mt19937_64 rng(23);
    auto vocab = barwords_from(words_over(2, 4), 4);
    for (int trial = 0; trial < 5; ++trial) {
        Functional alpha1 = random_infinitesimal(rng, 2, 4);
        Functional alpha2 = random_infinitesimal(rng, 2, 4);
        Functional E2 = E_succ(alpha2);
        Functional E2Inv = conv_inverse(E2);
        Functional prod = convolve(E_succ(alpha1), E2);
        Functional lhs = L_succ(prod, conv_inverse(prod));
        Functional rhs = alpha2 + theta_adjoint(E2, alpha1, E2Inv);
        CHECK(compare_functionals(lhs, rhs, vocab).equal);
    }
}

TEST_CASE("tensor cumulants via the shuffle logarithm") {
    WordFunctional phi = word_moment_functional(symbolic_phi());
    WordFunctional c = log_shuffle(phi);

    CHECK(c(a1) == phi_sym(a1));
    CHECK(phi(a1a2) == c(a1a2) + c(a1) * c(a2));

    // P(3) has five blocks patterns
    auto cum = [&c](const Word& w) { return c(w); };
    CHECK(moments_from_cumulants(CumulantFamily::set, cum, a1a2a3) == phi(a1a2a3));

    // exp and log invert each other
    WordFunctional back = exp_shuffle(c);
    for (const auto& w : words_over(2, 5)) CHECK(back(w) == phi(w));

    // shuffle convolution is commutative
    WordFunctional square = shuffle_convolve(phi, phi);
    CHECK(square(a1) == Scalar(2) * phi_sym(a1));
    WordFunctional square2 = shuffle_convolve(phi, phi);
    for (const auto& w : words_over(2, 4))
        CHECK(shuffle_convolve(phi, c)(w) == shuffle_convolve(c, phi)(w));

    // shuffle inverse
    WordFunctional inv = shuffle_inverse(phi);
    for (const auto& w : words_over(2, 5)) {
        Scalar conv;
        const TensorPair cop = delta_shuffle(w);
        for (const auto& [legs, cc] : cop.terms())
            conv += cc * (inv(as_word(legs.first)) * phi(as_word(legs.second)));
        CHECK(conv.is_zero());
    }
    CHECK_THROWS_AS(shuffle_inverse(c), std::invalid_argument);
    CHECK_THROWS_AS(exp_shuffle(phi), std::invalid_argument);
    CHECK_THROWS_AS(log_shuffle(c), std::invalid_argument);
}
