#pragma once

#include "scalar.hpp"

#include <optional>
#include <vector>

namespace gqg {

// (n)_x = 1 + x + ... + x^{n-1}
inline Scalar qnum(long n, const Scalar& x) {
    Scalar s = Scalar::zero(x.field());
    Scalar p = Scalar::one(x.field());
    for (long r = 0; r < n; ++r) {
        s += p;
        p *= x;
    }
    return s;
}

// (n)_x! = (1)_x (2)_x ... (n)_x
inline Scalar qfact(long n, const Scalar& x) {
    Scalar f = Scalar::one(x.field());
    for (long r = 1; r <= n; ++r) f *= qnum(r, x);
    return f;
}

// Gauss binomial via the Pascal-type recursion
//   C(n,m) = C(n-1,m) + x^{n-m} C(n-1,m-1),
// which stays total at roots of unity.
inline Scalar qbinom(long n, long m, const Scalar& x) {
    if (m < 0 || m > n || n < 0) return Scalar::zero(x.field());
    std::vector<Scalar> row(static_cast<std::size_t>(m) + 1, Scalar::zero(x.field()));
    row[0] = Scalar::one(x.field());
    for (long i = 1; i <= n; ++i) {
        long top = std::min(i, m);
        for (long j = top; j >= 1; --j)
            row[j] = row[j] + x.pow(i - j) * row[j - 1];
    }
    return row[m];
}

// companion recursion C(n,m) = x^m C(n-1,m) + C(n-1,m-1); used as an oracle
inline Scalar qbinom_alt(long n, long m, const Scalar& x) {
    if (m < 0 || m > n || n < 0) return Scalar::zero(x.field());
    std::vector<Scalar> row(static_cast<std::size_t>(m) + 1, Scalar::zero(x.field()));
    row[0] = Scalar::one(x.field());
    for (long i = 1; i <= n; ++i) {
        long top = std::min(i, m);
        for (long j = top; j >= 1; --j)
            row[j] = x.pow(j) * row[j] + row[j - 1];
    }
    return row[m];
}

// (n; x, y) = 1 - x^{n-1} y
inline Scalar qpair(long n, const Scalar& x, const Scalar& y) {
    return Scalar::one(x.field()) - x.pow(n - 1) * y;
}

// (n; x, y)! = prod_{m=1..n} (m; x, y)
inline Scalar qshift_fact(long n, const Scalar& x, const Scalar& y) {
    Scalar f = Scalar::one(x.field());
    for (long m = 1; m <= n; ++m) f *= qpair(m, x, y);
    return f;
}

// kappa(x) = min{ r >= 2 : (r)_x! = 0 }, or 0 if no such r.
// Equals the multiplicative order of x when that is finite and >= 2.
inline long kappa(const Scalar& x) {
    auto ord = x.mul_order();
    if (!ord || *ord < 2) return 0;
    return static_cast<long>(*ord);
}

// direct-definition oracle for kappa, scanning factorials up to cap
inline long kappa_by_factorials(const Scalar& x, long cap) {
    Scalar f = Scalar::one(x.field());
    for (long r = 1; r <= cap; ++r) {
        f *= qnum(r, x);
        if (r >= 2 && f.is_zero()) return r;
    }
    return 0;
}

// kappa'(x): kappa(x) if >= 2, otherwise "infinity" (nullopt)
inline std::optional<long> kappa_prime(const Scalar& x) {
    long k = kappa(x);
    if (k >= 2) return k;
    return std::nullopt;
}

// smallest exponent t in [lo, hi] with base^t == value, scanning upward
inline std::optional<long> disc_log(const Scalar& base, const Scalar& value, long lo, long hi) {
    for (long t = lo; t <= hi; ++t)
        if (base.pow(t) == value) return t;
    return std::nullopt;
}

} // namespace gqg
