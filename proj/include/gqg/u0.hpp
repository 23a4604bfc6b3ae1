#pragma once

#include "lattice.hpp"

#include <functional>
#include <map>
#include <optional>
#include <utility>

namespace gqg {

// Element of the group algebra U0 = K[K_lambda L_mu : lambda, mu in Z^n],
// a Laurent polynomial in the 2n group-like generators.
class U0Elem {
public:
    using Key = std::pair<Weight, Weight>; // (lambda, mu) for K_lambda L_mu
    FieldSpec field;
    int rank = 0;
    std::map<Key, Scalar> terms;

    U0Elem() = default;
    U0Elem(const FieldSpec& f, int r) : field(f), rank(r) {}

    static U0Elem zero(const FieldSpec& f, int r) { return U0Elem(f, r); }
    static U0Elem monomial(const FieldSpec& f, int r, const Weight& la, const Weight& mu,
                           const Scalar& c) {
        U0Elem e(f, r);
        if (!c.is_zero()) e.terms.emplace(Key{la, mu}, c);
        return e;
    }
    static U0Elem one_elem(const FieldSpec& f, int r) {
        return monomial(f, r, weight_zero(r), weight_zero(r), Scalar::one(f));
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Weight& la, const Weight& mu, const Scalar& c) {
        if (c.is_zero()) return;
        Key k{la, mu};
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(std::move(k), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    U0Elem& operator+=(const U0Elem& o) {
        for (const auto& [k, c] : o.terms) add_term(k.first, k.second, c);
        return *this;
    }
    U0Elem& operator-=(const U0Elem& o) {
        for (const auto& [k, c] : o.terms) add_term(k.first, k.second, -c);
        return *this;
    }
    friend U0Elem operator+(U0Elem a, const U0Elem& b) { a += b; return a; }
    friend U0Elem operator-(U0Elem a, const U0Elem& b) { a -= b; return a; }
    U0Elem operator-() const {
        U0Elem r = *this;
        for (auto& [k, c] : r.terms) c = -c;
        return r;
    }
    friend U0Elem operator*(const U0Elem& a, const U0Elem& b) {
        U0Elem r(a.field, a.rank);
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    U0Elem& operator*=(const U0Elem& o) { *this = *this * o; return *this; }
    friend U0Elem operator*(const Scalar& s, U0Elem a) {
        if (s.is_zero()) return U0Elem(a.field, a.rank);
        for (auto& [k, c] : a.terms) c = c * s;
        return a;
    }
    bool operator==(const U0Elem& o) const { return rank == o.rank && terms == o.terms; }
    bool operator!=(const U0Elem& o) const { return !(*this == o); }

    U0Elem pow_nonneg(long e) const {
        U0Elem acc = one_elem(field, rank);
        U0Elem base = *this;
        while (e > 0) {
            if (e & 1l) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    Scalar apply(const Character& c) const {
        Scalar r = Scalar::zero(field);
        for (const auto& [k, coeff] : terms) r += coeff * c.eval(k.first, k.second);
        return r;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, c] : terms) {
            if (!first) s += " + ";
            first = false;
            s += "(" + c.str() + ")*K" + weight_str(k.first) + "L" + weight_str(k.second);
        }
        return s;
    }
};

namespace detail {

// graded-lex order on concatenated exponents (total degree first)
inline bool grlex_less(const U0Elem::Key& a, const U0Elem::Key& b) {
    long da = height(a.first) + height(a.second);
    long db = height(b.first) + height(b.second);
    if (da != db) return da < db;
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
}

inline U0Elem::Key leading_key(const U0Elem& f) {
    auto it = f.terms.begin();
    U0Elem::Key best = it->first;
    for (++it; it != f.terms.end(); ++it)
        if (grlex_less(best, it->first)) best = it->first;
    return best;
}

} // namespace detail

// Exact division in the Laurent ring: returns f/g if g divides f, else nullopt.
inline std::optional<U0Elem> u0_div(const U0Elem& f, const U0Elem& g) {
    if (g.is_zero()) return std::nullopt;
    U0Elem rem = f;
    U0Elem quot(f.field, f.rank);
    const U0Elem::Key glead = detail::leading_key(g);
    const Scalar& gc = g.terms.at(glead);
    while (!rem.is_zero()) {
        U0Elem::Key rlead = detail::leading_key(rem);
        Weight dk = rlead.first - glead.first;
        Weight dl = rlead.second - glead.second;
        Scalar c = rem.terms.at(rlead) / gc;
        quot.add_term(dk, dl, c);
        U0Elem sub = U0Elem::monomial(f.field, f.rank, dk, dl, c) * g;
        rem -= sub;
        // progress check: the leading key must strictly drop
        if (!rem.is_zero() && !detail::grlex_less(detail::leading_key(rem), rlead))
            return std::nullopt;
    }
    return quot;
}

// Determinant over the commutative ring U0 by Laplace expansion with memo
// on column subsets (matrices here stay small).
inline U0Elem u0_det(const std::vector<std::vector<U0Elem>>& m, const FieldSpec& f, int rank) {
    std::size_t n = m.size();
    if (n == 0) return U0Elem::one_elem(f, rank);
    std::map<unsigned long, U0Elem> memo; // bitmask of active columns, row = popcount-derived
    // recursive lambda over rows top-down
    std::function<U0Elem(std::size_t, unsigned long)> rec =
        [&](std::size_t row, unsigned long cols) -> U0Elem {
        if (row == n) return U0Elem::one_elem(f, rank);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        U0Elem acc(f, rank);
        int pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            unsigned long bit = 1ul << j;
            if (!(cols & bit)) continue;
            if (!m[row][j].is_zero()) {
                U0Elem sub = rec(row + 1, cols & ~bit);
                U0Elem term = m[row][j] * sub;
                if (pos % 2 == 1) term = -term;
                acc += term;
            }
            ++pos;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return rec(0, (n >= 64 ? ~0ul : (1ul << n) - 1ul));
}

// Adjugate (transpose of cofactors): adj * M = det(M) * I.
inline std::vector<std::vector<U0Elem>> u0_adjugate(const std::vector<std::vector<U0Elem>>& m,
                                                    const FieldSpec& f, int rank) {
    std::size_t n = m.size();
    std::vector<std::vector<U0Elem>> adj(n, std::vector<U0Elem>(n, U0Elem(f, rank)));
    if (n == 0) return adj;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<U0Elem>> minor;
            minor.reserve(n - 1);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<U0Elem> row;
                row.reserve(n - 1);
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    row.push_back(m[r][c]);
                }
                minor.push_back(std::move(row));
            }
            U0Elem d = u0_det(minor, f, rank);
            if ((i + j) % 2 == 1) d = -d;
            adj[j][i] = std::move(d);
        }
    }
    return adj;
}

} // namespace gqg
