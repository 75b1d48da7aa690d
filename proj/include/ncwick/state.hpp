#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ncwick/algebra.hpp"
#include "ncwick/scalar.hpp"

namespace ncwick {

struct MissingMomentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A unital linear map A -> K given either symbolically (values are moment
// symbols) or by a finite table on flattened generator products.
class State {
public:
    static State symbolic(StateTag tag, Mode mode) {
        State s;
        s.tag_ = tag;
        s.mode_ = mode;
        s.symbolic_ = true;
        return s;
    }
    static State table(StateTag tag, Mode mode,
                       std::map<std::vector<GenIndex>, Rational> values) {
        State s;
        s.tag_ = tag;
        s.mode_ = mode;
        s.symbolic_ = false;
        for (auto& [key, v] : values) {
            auto k = key;
            if (mode == Mode::commutative) std::sort(k.begin(), k.end());
            s.table_[k] = v;
        }
        return s;
    }

    StateTag tag() const { return tag_; }
    Mode mode() const { return mode_; }
    bool is_symbolic() const { return symbolic_; }

    // phi(a_1 ._A ... ._A a_k) for the flattened product of a word; 1 on the
    // empty word.
    Scalar value(const Word& w) const {
        if (w.empty()) return Scalar::one();
        if (symbolic_) return Scalar::symbol(moment_symbol(tag_, w, mode_));
        auto key = flatten(w, mode_);
        auto it = table_.find(key);
        if (it == table_.end()) {
            std::ostringstream os;
            os << "moment table has no entry for key ";
            for (std::size_t i = 0; i < key.size(); ++i) os << (i ? "." : "") << 'g' << key[i];
            throw MissingMomentError(os.str());
        }
        return Scalar(it->second);
    }

private:
    StateTag tag_ = StateTag::phi;
    Mode mode_ = Mode::noncommutative;
    bool symbolic_ = true;
    std::map<std::vector<GenIndex>, Rational> table_;
};

}  // namespace ncwick
