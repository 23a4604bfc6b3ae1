#pragma once

#include "errors.hpp"
#include "polynomial.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <string>

namespace gqg {

struct FieldSpec {
    enum class Kind { Cyclotomic, RationalFunction };
    Kind kind = Kind::RationalFunction;
    unsigned n = 0; // root-of-unity order (Cyclotomic only)

    static FieldSpec cyclotomic(unsigned order) {
        if (order == 0) throw ParseError("cyclotomic order must be positive");
        return FieldSpec{Kind::Cyclotomic, order};
    }
    static FieldSpec rational_function() { return FieldSpec{Kind::RationalFunction, 0}; }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && n == o.n; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const {
        if (kind == Kind::Cyclotomic) return "cyclotomic(" + std::to_string(n) + ")";
        return "rational_function";
    }
};

// Exact scalar: an element of Q(zeta_N) (residue mod the N-th cyclotomic
// polynomial) or of Q(t) (reduced fraction, monic denominator).
class Scalar {
    FieldSpec f_;
    Poly num_, den_;

    void reduce_cyclo() {
        const Poly& phi = cyclotomic_poly(f_.n);
        if (num_.deg() >= phi.deg()) {
            Poly q, r;
            Poly::divmod(num_, phi, q, r);
            num_ = std::move(r);
        }
    }
    void normalize_ratfun() {
        if (num_.is_zero()) {
            den_ = Poly(Rat(1));
            return;
        }
        if (den_.is_zero()) throw std::domain_error("Scalar: zero denominator");
        Poly g = Poly::gcd(num_, den_);
        if (g.deg() > 0) {
            Poly q, r;
            Poly::divmod(num_, g, q, r);
            num_ = std::move(q);
            Poly::divmod(den_, g, q, r);
            den_ = std::move(q);
        }
        Rat lead = den_.lead();
        if (lead != 1) {
            Rat inv = Rat(1) / lead;
            num_.scale(inv);
            den_.scale(inv);
        }
    }
    void check_same(const Scalar& o) const {
        if (f_ != o.f_)
            throw BackendMismatch("mixed scalar backends: " + f_.str() + " vs " + o.f_.str());
    }

    Scalar(FieldSpec f, Poly num, Poly den) : f_(f), num_(std::move(num)), den_(std::move(den)) {
        if (f_.kind == FieldSpec::Kind::Cyclotomic) {
            den_ = Poly();
            reduce_cyclo();
        } else {
            normalize_ratfun();
        }
    }

public:
    Scalar() : f_(FieldSpec::rational_function()), den_(Rat(1)) {}

    static Scalar zero(const FieldSpec& f) { return Scalar(f, Poly(), Poly(Rat(1))); }
    static Scalar one(const FieldSpec& f) { return Scalar(f, Poly(Rat(1)), Poly(Rat(1))); }
    static Scalar from_rat(const FieldSpec& f, const Rat& r) {
        return Scalar(f, Poly(r), Poly(Rat(1)));
    }
    static Scalar from_int(const FieldSpec& f, long v) { return from_rat(f, Rat(v)); }
    // the distinguished generator: z (= primitive N-th root) or t
    static Scalar gen(const FieldSpec& f) {
        return Scalar(f, Poly::monomial(1), Poly(Rat(1)));
    }
    static Scalar gen_pow(const FieldSpec& f, long k) { return gen(f).pow(k); }

    const FieldSpec& field() const { return f_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return *this == one(f_); }

    bool operator==(const Scalar& o) const {
        check_same(o);
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // strict weak order for use as map keys (same backend assumed)
    bool operator<(const Scalar& o) const {
        check_same(o);
        auto cmp = [](const Poly& a, const Poly& b) {
            if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.c.size(); ++i)
                if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
            return 0;
        };
        int c = cmp(num_, o.num_);
        if (c != 0) return c < 0;
        return cmp(den_, o.den_) < 0;
    }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Scalar& operator+=(const Scalar& o) {
        check_same(o);
        if (f_.kind == FieldSpec::Kind::Cyclotomic) {
            num_ += o.num_;
            reduce_cyclo();
        } else {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ = den_ * o.den_;
            normalize_ratfun();
        }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar& operator*=(const Scalar& o) {
        check_same(o);
        if (f_.kind == FieldSpec::Kind::Cyclotomic) {
            num_ = num_ * o.num_;
            reduce_cyclo();
        } else {
            num_ = num_ * o.num_;
            den_ = den_ * o.den_;
            normalize_ratfun();
        }
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
    friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
    friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }

    Scalar inv() const {
        if (is_zero()) throw std::domain_error("Scalar::inv: division by zero");
        if (f_.kind == FieldSpec::Kind::Cyclotomic) {
            Poly u, v;
            Poly g = Poly::ext_gcd(num_, cyclotomic_poly(f_.n), u, v);
            if (g.deg() != 0)
                throw InternalInconsistency("cyclotomic inverse: non-constant gcd");
            u.scale(Rat(1) / g.c[0]);
            return Scalar(f_, std::move(u), Poly(Rat(1)));
        }
        return Scalar(f_, den_, num_);
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }
    friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

    Scalar pow(long e) const {
        if (e == 0) return one(f_);
        Scalar base = (e < 0) ? inv() : *this;
        unsigned long k = (e < 0) ? 0ul - static_cast<unsigned long>(e)
                                  : static_cast<unsigned long>(e);
        Scalar acc = one(f_);
        while (k) {
            if (k & 1ul) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    // multiplicative order; nullopt means infinite
    std::optional<unsigned long> mul_order() const {
        if (is_zero()) return std::nullopt;
        if (f_.kind == FieldSpec::Kind::RationalFunction) {
            if (num_.deg() == 0 && den_.deg() == 0) {
                Rat c = num_.c[0] / den_.c[0];
                if (c == 1) return 1;
                if (c == -1) return 2;
            }
            return std::nullopt;
        }
        // all roots of unity in Q(zeta_N) have order dividing lcm(2, N)
        unsigned long l = f_.n % 2 == 0 ? f_.n : 2ul * f_.n;
        if (pow(static_cast<long>(l)) != one(f_)) return std::nullopt;
        for (unsigned long d = 1; d <= l; ++d)
            if (l % d == 0 && pow(static_cast<long>(d)) == one(f_)) return d;
        return std::nullopt; // unreachable
    }

    std::string str() const {
        auto poly_str = [&](const Poly& p) {
            if (p.is_zero()) return std::string("0");
            const char var = (f_.kind == FieldSpec::Kind::Cyclotomic) ? 'z' : 't';
            std::ostringstream os;
            bool first = true;
            for (long i = p.deg(); i >= 0; --i) {
                const Rat& a = p.c[i];
                if (a == 0) continue;
                Rat mag = a < 0 ? Rat(-a) : a;
                if (first) {
                    if (a < 0) os << "-";
                    first = false;
                } else {
                    os << (a < 0 ? " - " : " + ");
                }
                if (i == 0) {
                    os << mag.str();
                } else {
                    if (mag != 1) os << mag.str() << "*";
                    os << var;
                    if (i > 1) os << "^" << i;
                }
            }
            return os.str();
        };
        if (f_.kind == FieldSpec::Kind::Cyclotomic) return poly_str(num_);
        if (den_ == Poly(Rat(1))) return poly_str(num_);
        return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
    }
};

// Literal grammar: optional '-', then "0" | "1" | V | V^k with integer k,
// where V is 'z' (Cyclotomic) or 't' (RationalFunction). Nothing else.
inline Scalar parse_scalar(const FieldSpec& f, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty scalar literal");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-') { neg = true; i = 1; }
    if (i >= s.size()) throw ParseError("bad scalar literal: '" + text + "'");
    Scalar v = Scalar::zero(f);
    if (s.substr(i) == "0") {
        v = Scalar::zero(f);
        if (neg) v = -v;
        return v;
    }
    if (s.substr(i) == "1") {
        v = Scalar::one(f);
        return neg ? -v : v;
    }
    char var = s[i];
    if (var != 'z' && var != 't')
        throw ParseError("bad scalar literal: '" + text + "'");
    if (var == 'z' && f.kind != FieldSpec::Kind::Cyclotomic)
        throw ParseError("'z' literal requires a cyclotomic field: '" + text + "'");
    if (var == 't' && f.kind != FieldSpec::Kind::RationalFunction)
        throw ParseError("'t' literal requires the rational-function field: '" + text + "'");
    ++i;
    long e = 1;
    if (i < s.size()) {
        if (s[i] != '^') throw ParseError("bad scalar literal: '" + text + "'");
        ++i;
        if (i >= s.size()) throw ParseError("bad scalar literal: '" + text + "'");
        bool eneg = false;
        if (s[i] == '-') { eneg = true; ++i; }
        if (i >= s.size()) throw ParseError("bad scalar literal: '" + text + "'");
        long val = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("bad scalar literal: '" + text + "'");
            val = val * 10 + (s[i] - '0');
            if (val > 1000000) throw ParseError("scalar exponent out of range: '" + text + "'");
        }
        e = eneg ? -val : val;
    }
    v = Scalar::gen_pow(f, e);
    return neg ? -v : v;
}

} // namespace gqg
