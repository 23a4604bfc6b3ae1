#pragma once

#include "rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace gqg {

// Dense univariate polynomial over Q; c[i] is the coefficient of x^i.
class Poly {
public:
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(const Rat& r) {
        if (r != 0) c.push_back(r);
    }
    static Poly monomial(std::size_t k, const Rat& coeff = Rat(1)) {
        Poly p;
        if (coeff != 0) {
            p.c.assign(k + 1, Rat(0));
            p.c[k] = coeff;
        }
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    // deg of the zero polynomial is -1
    long deg() const { return static_cast<long>(c.size()) - 1; }
    const Rat& lead() const { return c.back(); }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
        for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
        for (std::size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (b.c[j] != 0) r.c[i + j] += a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    Poly& scale(const Rat& s) {
        if (s == 0) { c.clear(); return *this; }
        for (auto& x : c) x *= s;
        return *this;
    }

    // Euclidean division: a = q*b + r with deg r < deg b.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
        q = Poly();
        r = a;
        long db = b.deg();
        if (r.deg() >= db) q.c.assign(r.deg() - db + 1, Rat(0));
        while (!r.is_zero() && r.deg() >= db) {
            long k = r.deg() - db;
            Rat f = r.lead() / b.lead();
            q.c[k] += f;
            for (long i = 0; i <= db; ++i)
                r.c[k + i] -= f * b.c[i];
            r.trim();
        }
        q.trim();
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero() && a.lead() != 1) {
            Rat inv = Rat(1) / a.lead();
            a.scale(inv);
        }
        return a;
    }

    // extended Euclid: returns g (monic) with u*a + v*b = g
    static Poly ext_gcd(const Poly& a, const Poly& b, Poly& u, Poly& v) {
        Poly r0 = a, r1 = b;
        Poly u0(Rat(1)), u1, v0, v1(Rat(1));
        while (!r1.is_zero()) {
            Poly q, r;
            divmod(r0, r1, q, r);
            Poly u2 = u0 - q * u1;
            Poly v2 = v0 - q * v1;
            r0 = std::move(r1); r1 = std::move(r);
            u0 = std::move(u1); u1 = std::move(u2);
            v0 = std::move(v1); v1 = std::move(v2);
        }
        if (!r0.is_zero() && r0.lead() != 1) {
            Rat inv = Rat(1) / r0.lead();
            r0.scale(inv);
            u0.scale(inv);
            v0.scale(inv);
        }
        u = std::move(u0);
        v = std::move(v0);
        return r0;
    }

    Poly pow_nonneg(unsigned long n) const {
        Poly acc(Rat(1)), base = *this;
        while (n) {
            if (n & 1ul) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }
};

// N-th cyclotomic polynomial via x^N - 1 = prod_{d | N} Phi_d.
inline const Poly& cyclotomic_poly(unsigned n) {
    static std::map<unsigned, Poly> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly num = Poly::monomial(n) - Poly(Rat(1)); // x^n - 1
    Poly den(Rat(1));
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) den *= cyclotomic_poly(d);
    Poly q, r;
    Poly::divmod(num, den, q, r);
    if (!r.is_zero()) throw std::logic_error("cyclotomic_poly: non-exact division");
    return memo.emplace(n, std::move(q)).first->second;
}

} // namespace gqg
