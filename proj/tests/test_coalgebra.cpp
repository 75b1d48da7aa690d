#include <catch2/catch_amalgamated.hpp>

#include "ncwick/coalgebra.hpp"
#include "ncwick/identities.hpp"

using namespace ncwick;

namespace {

const Word a1 = word_of_gens({0});
const Word a2 = word_of_gens({1});
const Word a1a2 = word_of_gens({0, 1});
const Word a1a2a3 = word_of_gens({0, 1, 2});

BarWord bw(std::initializer_list<Word> ws) { return BarWord(std::vector<Word>(ws)); }

}  // namespace

TEST_CASE("unshuffle coproduct on letters and short words") {
    TensorPair expected = TensorPair::term(BarWord(a1), BarWord{}) +
                          TensorPair::term(BarWord{}, BarWord(a1));
    CHECK(delta_shuffle(a1) == expected);

    // all four subsets of two positions
    TensorPair d2 = delta_shuffle(a1a2);
    CHECK(d2.terms().size() == 4);
    CHECK(d2.coefficient(BarWord(a1a2), BarWord{}) == Scalar(1));
    CHECK(d2.coefficient(BarWord{}, BarWord(a1a2)) == Scalar(1));
    CHECK(d2.coefficient(BarWord(a1), BarWord(a2)) == Scalar(1));
    CHECK(d2.coefficient(BarWord(a2), BarWord(a1)) == Scalar(1));

    // the complement of {2} stays one bar-free word a1 a3
    TensorPair d3 = delta_shuffle(a1a2a3);
    CHECK(d3.coefficient(BarWord(a2), BarWord(word_of_gens({0, 2}))) == Scalar(1));

    CHECK(delta_shuffle(Word{}) == TensorPair::term(BarWord{}, BarWord{}));
}

TEST_CASE("iterated reduced unshuffle coproduct") {
    WordTensor one = delta_shuffle_iterated(1, a1a2);
    CHECK(one == WordTensor::term({a1a2}));

    WordTensor two = delta_shuffle_iterated(2, a1a2);
    CHECK(two.terms().size() == 2);
    CHECK(two.terms().count({a1, a2}) == 1);
    CHECK(two.terms().count({a2, a1}) == 1);

    CHECK(delta_shuffle_iterated(3, a1a2).is_zero());
    CHECK_THROWS_AS(delta_shuffle_iterated(0, a1a2), std::invalid_argument);
}

TEST_CASE("extraction coproduct splits complements into components") {
    CHECK(delta(a1) == TensorPair::term(BarWord(a1), BarWord{}) +
                           TensorPair::term(BarWord{}, BarWord(a1)));

    // S = {2}: complement {1,3} falls into two components
    TensorPair d3 = delta(a1a2a3);
    CHECK(d3.coefficient(BarWord(a2), bw({a1, word_of_gens({2})})) == Scalar(1));
    // ... unlike the unshuffle coproduct, which keeps a1 a3 joined
    CHECK(d3.coefficient(BarWord(a2), BarWord(word_of_gens({0, 2}))).is_zero());

    // at degree 2 the two coproducts agree
    CHECK(delta(a1a2) == delta_shuffle(a1a2));
}

TEST_CASE("coproduct of bar-words is multiplicative") {
    TensorPair d = delta(bw({a1, a2}));
    CHECK(d.terms().size() == 4);
    CHECK(d.coefficient(bw({a1, a2}), BarWord{}) == Scalar(1));
    CHECK(d.coefficient(BarWord{}, bw({a1, a2})) == Scalar(1));
    CHECK(d.coefficient(BarWord(a1), BarWord(a2)) == Scalar(1));
    CHECK(d.coefficient(BarWord(a2), BarWord(a1)) == Scalar(1));

    CHECK(delta(BarWord{}) == TensorPair::term(BarWord{}, BarWord{}));
}

TEST_CASE("half-coproducts split the coproduct") {
    CHECK(delta_prec_plus(a1) == TensorPair::term(BarWord(a1), BarWord{}));
    CHECK(delta_succ_plus(a1) == TensorPair::term(BarWord{}, BarWord(a1)));

    TensorPair prec = delta_prec_plus(a1a2);
    CHECK(prec == TensorPair::term(BarWord(a1a2), BarWord{}) +
                      TensorPair::term(BarWord(a1), BarWord(a2)));
    TensorPair succ = delta_succ_plus(a1a2);
    CHECK(succ == TensorPair::term(BarWord{}, BarWord(a1a2)) +
                      TensorPair::term(BarWord(a2), BarWord(a1)));

    CHECK_THROWS_AS(delta_prec_plus(Word{}), std::invalid_argument);
    CHECK_THROWS_AS(delta_succ_plus(BarWord{}), std::invalid_argument);

    for (const auto& w : words_over(2, 5)) {
        TensorPair sum = delta_prec_plus(w) + delta_succ_plus(w);
        CHECK(sum == delta(w));
    }
}

TEST_CASE("linearized coproduct counts middle factors") {
    const Word aa = word_of_gens({0, 0});
    TensorPair expected = Scalar(2) * TensorPair::term(BarWord(a1), BarWord(a1)) +
                          TensorPair::term(BarWord{}, BarWord(aa));
    CHECK(delta_hat(aa) == expected);

    // delta_hat(a^n) = sum_p p a^{p-1} (x) a^{n-p+1} at n = 3
    const Word aaa = word_of_gens({0, 0, 0});
    TensorPair d = delta_hat(aaa);
    CHECK(d.coefficient(BarWord{}, BarWord(aaa)) == Scalar(1));
    CHECK(d.coefficient(BarWord(a1), BarWord(aa)) == Scalar(2));
    CHECK(d.coefficient(BarWord(aa), BarWord(a1)) == Scalar(3));
    CHECK(d.terms().size() == 3);

    CHECK(delta_hat(a1) == TensorPair::term(BarWord{}, BarWord(a1)));
}

TEST_CASE("shuffle antipode on words") {
    CHECK(antipode_shuffle(a1) == Scalar(-1) * Element(a1));

    Element s2 = antipode_shuffle(a1a2);
    Element expected =
        Scalar(-1) * Element(a1a2) + Element(bw({a1, a2})) + Element(bw({a2, a1}));
    CHECK(s2 == expected);
}

TEST_CASE("antipode is the convolution inverse of the identity") {
    // m(S (x) id) Delta-shuffle = unit . counit on low degrees
    auto convolution_check = [](const BarWord& b) {
        Element left, right;
        const TensorPair cop = delta_shuffle(b);
        for (const auto& [legs, c] : cop.terms()) {
            left += c * bar_product(antipode_shuffle(legs.first), Element(legs.second));
            right += c * bar_product(Element(legs.first), antipode_shuffle(legs.second));
        }
        Element expected = counit(b) * Element::unit();
        CHECK(left == expected);
        CHECK(right == expected);
    };
    for (const auto& w : words_over(2, 4)) convolution_check(BarWord(w));
    convolution_check(BarWord{});
    convolution_check(bw({a1a2, a2}));
    for (const auto& w : composite_letter_words()) convolution_check(BarWord(w));
}

TEST_CASE("coassociativity of the extraction coproduct") {
    Coproduct cop = [](const BarWord& b) { return delta(b); };
    auto check = [&](const BarWord& b) {
        CHECK(expand_first(delta(b), cop) == expand_second(delta(b), cop));
    };
    for (const auto& w : words_over(2, 5)) check(BarWord(w));
    check(bw({a1a2, a2}));
    check(bw({a1, a2, a1a2}));
    for (const auto& w : composite_letter_words()) check(BarWord(w));
}

TEST_CASE("unshuffle coalgebra axioms") {
    Coproduct prec = [](const BarWord& b) { return delta_prec(b); };
    Coproduct succ = [](const BarWord& b) { return delta_succ(b); };
    Coproduct reduced = [](const BarWord& b) { return delta_reduced(b); };

    auto check = [&](const BarWord& b) {
        TensorPair dp = delta_prec(b);
        TensorPair ds = delta_succ(b);
        CHECK(expand_first(dp, prec) == expand_second(dp, reduced));   // uca1
        CHECK(expand_first(dp, succ) == expand_second(ds, prec));     // uca2
        CHECK(expand_first(ds, reduced) == expand_second(ds, succ));  // uca3
    };
    for (const auto& w : words_over(2, 5)) check(BarWord(w));
    check(bw({a1a2, a2}));
    check(bw({a1, a1a2}));
}

TEST_CASE("compatibility of half-coproducts with the bar product") {
    auto words = words_over(2, 3);
    for (const auto& wa : words)
        for (const auto& wb : words) {
            if (wa.degree() + wb.degree() > 5) continue;
            BarWord ab = bar_concat(BarWord(wa), BarWord(wb));
            CHECK(delta_prec_plus(ab) == delta_prec_plus(BarWord(wa)) * delta(BarWord(wb)));
            CHECK(delta_succ_plus(ab) == delta_succ_plus(BarWord(wa)) * delta(BarWord(wb)));
        }
}

TEST_CASE("unshuffle coproduct is cocommutative, extraction coproduct is not") {
    for (const auto& w : words_over(2, 5)) {
        TensorPair d = delta_shuffle(w);
        CHECK(d.swapped() == d);
    }
    CHECK(delta(a1a2a3).swapped() != delta(a1a2a3));
}

TEST_CASE("coproduct legs respect the grading") {
    for (const auto& w : words_over(3, 4)) {
        for (const auto& [legs, c] : delta(w).terms())
            CHECK(legs.first.degree() + legs.second.degree() == w.degree());
        for (const auto& [legs, c] : delta_shuffle(w).terms())
            CHECK(legs.first.degree() + legs.second.degree() == w.degree());
        const TensorPair hat = delta_hat(w);
        for (const auto& [legs, c] : hat.terms())
            CHECK(legs.first.degree() + legs.second.degree() == w.degree());
        for (const auto& [b, c] : antipode_shuffle(w).terms()) CHECK(b.degree() == w.degree());
    }
}
