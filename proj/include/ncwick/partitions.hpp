#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "ncwick/algebra.hpp"
#include "ncwick/fault.hpp"
#include "ncwick/scalar.hpp"

namespace ncwick {

// Blocks are sorted integer sets over {0,...,n-1}, listed by minimum element.
struct SetPartition {
    std::vector<std::vector<int>> blocks;

    std::size_t size() const { return blocks.size(); }
    auto operator<=>(const SetPartition&) const = default;
};

// No a < c < b < d with a,b in one block and c,d in another.
inline bool is_noncrossing(const SetPartition& p) {
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        for (std::size_t j = 0; j < p.blocks.size(); ++j) {
            if (i == j) continue;
            const auto& bi = p.blocks[i];
            const auto& bj = p.blocks[j];
            for (std::size_t u = 0; u + 1 < bi.size(); ++u) {
                // any element of bj strictly inside (bi[u], bi[u+1]) forces
                // all of bj inside, otherwise the pair crosses
                bool some_inside = false, some_outside = false;
                for (int x : bj) {
                    if (x > bi[u] && x < bi[u + 1]) some_inside = true;
                    else if (x < bi[u] || x > bi[u + 1]) some_outside = true;
                }
                if (some_inside && some_outside) return false;
            }
        }
    return true;
}

inline bool is_interval(const SetPartition& p) {
    for (const auto& b : p.blocks)
        for (std::size_t u = 0; u + 1 < b.size(); ++u)
            if (b[u + 1] != b[u] + 1) return false;
    return true;
}

namespace detail {

// All set partitions of {0..n-1} in restricted-growth-string order.
inline std::vector<SetPartition> enumerate_set_partitions_uncached(int n) {
    std::vector<SetPartition> out;
    if (n < 0) throw std::invalid_argument("negative n");
    if (n == 0) {
        out.push_back(SetPartition{});
        return out;
    }
    std::vector<int> rgs(n, 0);
    while (true) {
        int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
        SetPartition p;
        p.blocks.assign(k, {});
        for (int i = 0; i < n; ++i) p.blocks[rgs[i]].push_back(i);
        out.push_back(std::move(p));
        // next restricted growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
            if (rgs[i] < cap) break;
        }
        if (i == 0) break;
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
    }
    return out;
}

template <typename F>
const std::vector<SetPartition>& cached_enumeration(int n, std::map<int, std::vector<SetPartition>>& cache,
                                                    std::mutex& m, F&& make) {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make(n)).first;
    return it->second;
}

}  // namespace detail

inline const std::vector<SetPartition>& enumerate_set_partitions(int n) {
    static std::map<int, std::vector<SetPartition>> cache;
    static std::mutex m;
    return detail::cached_enumeration(n, cache, m, detail::enumerate_set_partitions_uncached);
}

inline const std::vector<SetPartition>& enumerate_noncrossing(int n) {
    static std::map<int, std::vector<SetPartition>> cache;
    static std::mutex m;
    return detail::cached_enumeration(n, cache, m, [](int k) {
        std::vector<SetPartition> out;
        for (const auto& p : detail::enumerate_set_partitions_uncached(k))
            if (is_noncrossing(p)) out.push_back(p);
        return out;
    });
}

inline const std::vector<SetPartition>& enumerate_interval(int n) {
    static std::map<int, std::vector<SetPartition>> cache;
    static std::mutex m;
    return detail::cached_enumeration(n, cache, m, [](int k) {
        std::vector<SetPartition> out;
        for (const auto& p : detail::enumerate_set_partitions_uncached(k))
            if (is_interval(p)) out.push_back(p);
        return out;
    });
}

// Rooted forest recording which block of a non-crossing partition sits
// immediately inside which. parent[i] = -1 for outer blocks.
struct NestingForest {
    std::vector<int> parent;
};

inline NestingForest nesting_forest(const SetPartition& p) {
    if (!is_noncrossing(p)) throw std::invalid_argument("nesting forest of a crossing partition");
    const int k = static_cast<int>(p.blocks.size());
    NestingForest f;
    f.parent.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        int best = -1;
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            // j's span strictly encloses i's span
            if (p.blocks[j].front() < p.blocks[i].front() &&
                p.blocks[i].back() < p.blocks[j].back()) {
                if (best == -1 || p.blocks[j].front() > p.blocks[best].front()) best = j;
            }
        }
        f.parent[i] = best;
    }
    return f;
}

// Product over blocks of the number of blocks in the subtree below each.
inline Integer tree_factorial(const SetPartition& p) {
    const auto f = nesting_forest(p);
    const int k = static_cast<int>(p.blocks.size());
    std::vector<int> subtree(k, 1);
    // children have strictly larger minima than their parent, so a single
    // sweep in decreasing-min order accumulates sizes bottom-up
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return p.blocks[a].front() > p.blocks[b].front();
    });
    for (int i : order)
        if (f.parent[i] >= 0) subtree[f.parent[i]] += subtree[i];
    Integer r = 1;
    for (int i = 0; i < k; ++i) r *= subtree[i];
    if (fault::active("tree-factorial-shift") && k > 1) r += 1;
    return r;
}

// Splits the blocks of a non-crossing partition into outer (not nested
// inside any other block) and inner ones.
inline std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> inner_outer(
    const SetPartition& p) {
    const auto f = nesting_forest(p);
    std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> r;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        if (f.parent[i] < 0) r.first.push_back(p.blocks[i]);
        else r.second.push_back(p.blocks[i]);
    }
    return r;
}

inline Word subword(const Word& w, const std::vector<int>& positions) {
    std::vector<Letter> ls;
    ls.reserve(positions.size());
    for (int i : positions) ls.push_back(w.letters.at(static_cast<std::size_t>(i)));
    return Word(std::move(ls));
}

enum class CumulantFamily { set, free, boolean, monotone };

using WordFn = std::function<Scalar(const Word&)>;

// Partition-lattice moment formulas: the independent oracle every shuffle
// identity is checked against.
inline Scalar moments_from_cumulants(CumulantFamily family, const WordFn& cumulant,
                                     const Word& w) {
    const int n = static_cast<int>(w.degree());
    const std::vector<SetPartition>* parts = nullptr;
    switch (family) {
        case CumulantFamily::set: parts = &enumerate_set_partitions(n); break;
        case CumulantFamily::free:
        case CumulantFamily::monotone: parts = &enumerate_noncrossing(n); break;
        case CumulantFamily::boolean: parts = &enumerate_interval(n); break;
    }
    Scalar total;
    for (const auto& p : *parts) {
        Scalar prod = Scalar::one();
        for (const auto& b : p.blocks) prod *= cumulant(subword(w, b));
        if (family == CumulantFamily::monotone)
            prod = Rational(Integer(1), tree_factorial(p)) * prod;
        total += prod;
    }
    return total;
}

// Conditionally free moment formula: outer blocks carry the two-state
// cumulant, inner blocks the psi free cumulant.
inline Scalar moments_from_cfree(const WordFn& r_cfree, const WordFn& kappa_psi, const Word& w) {
    const int n = static_cast<int>(w.degree());
    Scalar total;
    for (const auto& p : enumerate_noncrossing(n)) {
        auto [outer, inner] = inner_outer(p);
        Scalar prod = Scalar::one();
        for (const auto& b : outer) prod *= r_cfree(subword(w, b));
        for (const auto& b : inner) prod *= kappa_psi(subword(w, b));
        total += prod;
    }
    return total;
}

// Triangular solve of phi(a_1...a_n) = sum_j b(a_1...a_j) phi(a_{j+1}...a_n),
// with phi(empty) = 1.
inline Scalar boolean_cumulant_from_moments(const WordFn& phi, const Word& w) {
    const int n = static_cast<int>(w.degree());
    if (n == 0) throw std::invalid_argument("boolean cumulant of the empty word");
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::vector<Scalar> b(n + 1);  // b[j] = boolean cumulant of the length-j prefix
    for (int m = 1; m <= n; ++m) {
        std::vector<int> prefix(all.begin(), all.begin() + m);
        Scalar rhs = phi(subword(w, prefix));
        for (int j = 1; j < m; ++j) {
            std::vector<int> head(all.begin(), all.begin() + j);
            std::vector<int> tail(all.begin() + j, all.begin() + m);
            rhs -= b[j] * phi(subword(w, tail));
        }
        b[m] = rhs;
    }
    return b[n];
}

// Univariate monotone moment polynomial
//   m_n(t) = sum_s sum_{1=i_0<...<i_s=n+1} t^s/s! prod_j i_{j-1} r_{i_j - i_{j-1}},
// with r_q the monotone cumulant of a^q.
inline Scalar monotone_mt(const std::function<Scalar(int)>& r, int n) {
    if (n < 0) throw std::invalid_argument("negative n");
    if (n == 0) return Scalar::one();
    Scalar total;
    // index sequences 1 = i_0 < i_1 < ... < i_s = n+1
    std::vector<int> seq{1};
    std::function<void(int)> rec = [&](int last) {
        if (last == n + 1) {
            const int s = static_cast<int>(seq.size()) - 1;
            Scalar prod = Rational(Integer(1), factorial(static_cast<unsigned>(s))) *
                          Scalar::t(static_cast<std::uint32_t>(s));
            for (int j = 1; j <= s; ++j)
                prod *= Rational(seq[j - 1]) * r(seq[j] - seq[j - 1]);
            total += prod;
            return;
        }
        for (int next = last + 1; next <= n + 1; ++next) {
            seq.push_back(next);
            rec(next);
            seq.pop_back();
        }
    };
    rec(1);
    return total;
}

}  // namespace ncwick
