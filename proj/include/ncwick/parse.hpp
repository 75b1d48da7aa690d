#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncwick/element.hpp"
#include "ncwick/rational.hpp"
#include "ncwick/scalar.hpp"

namespace ncwick {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

// Expression grammar:
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := [rational] scalarfactor* [barword]     (at least one present)
//   scalarfactor := ('phi'|'psi') '[' key ']' | 't' ['^' integer]
//   key     := name ('.' name)*
//   barword := word ('|' word)* | '1'
//   word    := letter+                                 (whitespace separated)
//   letter  := name ('.' name)*
// Generator names are ordinary identifiers; 'phi', 'psi' and 't' are
// reserved for scalar factors.
class ExpressionParser {
public:
    // strict: unknown generator names are errors. Otherwise they are
    // registered on first use, in order of appearance.
    ExpressionParser(GeneratorSet& gens, bool strict) : gens_(gens), strict_(strict) {}

    Element parse(const std::string& src) {
        src_ = src;
        pos_ = 0;
        Element result;
        skip_ws();
        if (at_end()) throw ParseError("empty expression", 0);
        bool negate = consume('-');
        if (negate) skip_ws();
        result += parse_term(negate);
        skip_ws();
        while (!at_end()) {
            bool minus = false;
            if (consume('+')) minus = false;
            else if (consume('-')) minus = true;
            else throw ParseError("expected '+' or '-'", pos_);
            skip_ws();
            result += parse_term(minus);
            skip_ws();
        }
        return result;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return at_end() ? '\0' : src_[pos_]; }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool ident_start(char c) const {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    bool ident_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string read_name() {
        if (!ident_start(peek())) throw ParseError("expected a name", pos_);
        std::size_t start = pos_;
        while (!at_end() && ident_char(src_[pos_])) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    Rational read_rational() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Integer num(src_.substr(start, pos_ - start));
        if (consume('/')) {
            std::size_t dstart = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (dstart == pos_) throw ParseError("expected a denominator", pos_);
            Integer den(src_.substr(dstart, pos_ - dstart));
            if (den == 0) throw ParseError("zero denominator", dstart);
            return Rational(num, den);
        }
        return Rational(num);
    }

    GenIndex generator(const std::string& name, std::size_t at) {
        if (name == "phi" || name == "psi" || name == "t")
            throw ParseError("'" + name + "' is reserved", at);
        if (strict_ && !gens_.contains(name))
            throw ParseError("unknown generator '" + name + "'", at);
        return gens_.add_or_get(name);
    }

    std::vector<GenIndex> read_key() {
        std::vector<GenIndex> key;
        std::size_t at = pos_;
        key.push_back(generator(read_name(), at));
        while (consume('.')) {
            at = pos_;
            key.push_back(generator(read_name(), at));
        }
        return key;
    }

    // One additive term: optional rational, scalar factors, optional bar-word.
    Element parse_term(bool negate) {
        Scalar coeff = Scalar::one();
        bool saw_anything = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            // a numeral is a coefficient unless it is a bare '1' ending the term
            std::size_t save = pos_;
            Rational q = read_rational();
            if (q == 1 && pos_ == save + 1 && term_boundary()) {
                // plain unit term
                Element r = Element::term(BarWord{}, negate ? Scalar(-1) : Scalar(1));
                return r;
            }
            coeff = Scalar(q) * coeff;
            saw_anything = true;
            skip_ws();
        }
        // scalar factors
        while (!at_end() && ident_start(peek())) {
            std::size_t save = pos_;
            std::string name = read_name();
            if (name == "phi" || name == "psi") {
                if (!consume('[')) throw ParseError("expected '[' after '" + name + "'", pos_);
                MomentSymbol sym;
                sym.tag = name == "phi" ? StateTag::phi : StateTag::psi;
                sym.key = read_key();
                if (!consume(']')) throw ParseError("expected ']'", pos_);
                coeff *= Scalar::symbol(sym);
                saw_anything = true;
                skip_ws();
            } else if (name == "t") {
                std::uint32_t power = 1;
                if (consume('^')) {
                    if (!std::isdigit(static_cast<unsigned char>(peek())))
                        throw ParseError("expected an exponent", pos_);
                    Rational q = read_rational();
                    power = numerator_of(q).convert_to<std::uint32_t>();
                }
                coeff *= Scalar::t(power);
                saw_anything = true;
                skip_ws();
            } else {
                pos_ = save;  // a generator: start of the bar-word
                break;
            }
        }
        // bar-word
        if (!at_end() && (ident_start(peek()) || peek() == '1')) {
            BarWord b = parse_barword();
            saw_anything = true;
            return Element::term(b, negate ? -coeff : coeff);
        }
        if (!saw_anything) throw ParseError("expected a term", pos_);
        return Element::term(BarWord{}, negate ? -coeff : coeff);
    }

    bool term_boundary() {
        std::size_t save = pos_;
        skip_ws();
        bool boundary = at_end() || peek() == '+' || peek() == '-';
        pos_ = save;
        return boundary;
    }

    BarWord parse_barword() {
        if (peek() == '1') {
            ++pos_;
            skip_ws();
            if (!at_end() && peek() == '|')
                throw ParseError("the unit cannot be a bar component", pos_);
            return BarWord{};
        }
        std::vector<Word> words;
        words.push_back(parse_word());
        skip_ws();
        while (consume('|')) {
            skip_ws();
            if (peek() == '1')
                throw ParseError("the unit cannot be a bar component", pos_);
            words.push_back(parse_word());
            skip_ws();
        }
        return BarWord(std::move(words));
    }

    Word parse_word() {
        std::vector<Letter> letters;
        letters.push_back(parse_letter());
        while (true) {
            std::size_t save = pos_;
            skip_ws();
            if (!at_end() && ident_start(peek())) {
                // another letter unless it opens a scalar factor (it cannot,
                // scalar factors precede the bar-word)
                letters.push_back(parse_letter());
            } else {
                pos_ = save;
                break;
            }
        }
        return Word(std::move(letters));
    }

    Letter parse_letter() {
        std::size_t at = pos_;
        std::vector<GenIndex> factors;
        factors.push_back(generator(read_name(), at));
        while (consume('.')) {
            at = pos_;
            factors.push_back(generator(read_name(), at));
        }
        return Letter(std::move(factors));
    }

    GeneratorSet& gens_;
    bool strict_;
    std::string src_;
    std::size_t pos_ = 0;
};

inline Element parse_expression(const std::string& src, GeneratorSet& gens,
                                bool strict = false) {
    return ExpressionParser(gens, strict).parse(src);
}

}  // namespace ncwick
