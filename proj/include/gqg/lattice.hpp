#pragma once

#include "errors.hpp"
#include "qsymbols.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gqg {

// An element of the weight lattice Z^n in simple-root coordinates.
using Weight = std::vector<long>;

inline Weight weight_zero(int rank) { return Weight(static_cast<std::size_t>(rank), 0); }

inline Weight unit_weight(int rank, int i) {
    Weight w = weight_zero(rank);
    w[static_cast<std::size_t>(i)] = 1;
    return w;
}

inline Weight operator+(const Weight& a, const Weight& b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
inline Weight operator-(const Weight& a, const Weight& b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}
inline Weight operator-(const Weight& a) {
    Weight r = a;
    for (auto& x : r) x = -x;
    return r;
}
inline Weight operator*(long c, const Weight& a) {
    Weight r = a;
    for (auto& x : r) x *= c;
    return r;
}
inline bool is_zero_weight(const Weight& a) {
    return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}
inline long height(const Weight& a) {
    long h = 0;
    for (long x : a) h += x;
    return h;
}
inline bool all_nonneg(const Weight& a) {
    return std::all_of(a.begin(), a.end(), [](long x) { return x >= 0; });
}
inline bool all_nonpos(const Weight& a) {
    return std::all_of(a.begin(), a.end(), [](long x) { return x <= 0; });
}
inline std::string weight_str(const Weight& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

// Bicharacter on Z^n x Z^n determined by the matrix q_ij on simple roots.
struct Bicharacter {
    FieldSpec field;
    int rank = 0;
    std::vector<std::vector<Scalar>> q;

    const Scalar& qij(int i, int j) const {
        return q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    Scalar eval(const Weight& a, const Weight& b) const {
        Scalar r = Scalar::one(field);
        for (int i = 0; i < rank; ++i) {
            if (a[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < rank; ++j) {
                long e = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
                if (e != 0) r *= qij(i, j).pow(e);
            }
        }
        return r;
    }

    Bicharacter opposite() const {
        Bicharacter o{field, rank, q};
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                o.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = qij(j, i);
        return o;
    }

    // rho_hat(beta) = prod_j q_jj^{beta_j}
    Scalar rho_hat(const Weight& beta) const {
        Scalar r = Scalar::one(field);
        for (int j = 0; j < rank; ++j)
            if (beta[static_cast<std::size_t>(j)] != 0)
                r *= qij(j, j).pow(beta[static_cast<std::size_t>(j)]);
        return r;
    }

    Scalar root_q(const Weight& beta) const { return eval(beta, beta); }

    std::string key() const {
        std::string s = field.str() + ";" + std::to_string(rank) + ";";
        for (const auto& row : q)
            for (const auto& e : row) s += e.str() + "|";
        return s;
    }

    bool operator==(const Bicharacter& o) const {
        return field == o.field && rank == o.rank && q == o.q;
    }
};

// Z-module homomorphism Z^n -> K^x, given by its values on simple roots.
struct EtaHom {
    FieldSpec field;
    std::vector<Scalar> vals;

    static EtaHom trivial(const FieldSpec& f, int rank) {
        return EtaHom{f, std::vector<Scalar>(static_cast<std::size_t>(rank), Scalar::one(f))};
    }
    Scalar eval(const Weight& w) const {
        Scalar r = Scalar::one(field);
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (w[i] != 0) r *= vals[i].pow(w[i]);
        return r;
    }
    bool is_trivial() const {
        return std::all_of(vals.begin(), vals.end(), [](const Scalar& v) { return v.is_one(); });
    }
};

// eta(beta) * chi(beta, mu) / chi(lambda, beta)
inline Scalar eta_shift(const EtaHom& eta, const Bicharacter& chi, const Weight& lambda,
                        const Weight& mu, const Weight& beta) {
    return eta.eval(beta) * chi.eval(beta, mu) / chi.eval(lambda, beta);
}

// Character of the group-like part: K_{a_i} -> kvals[i], L_{a_i} -> lvals[i].
struct Character {
    FieldSpec field;
    std::vector<Scalar> kvals, lvals;

    Scalar eval(const Weight& lambda, const Weight& mu) const {
        Scalar r = Scalar::one(field);
        for (std::size_t i = 0; i < kvals.size(); ++i) {
            if (lambda[i] != 0) r *= kvals[i].pow(lambda[i]);
            if (mu[i] != 0) r *= lvals[i].pow(mu[i]);
        }
        return r;
    }
};

} // namespace gqg
