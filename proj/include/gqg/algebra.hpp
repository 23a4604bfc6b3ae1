#pragma once

#include "groupoid.hpp"
#include "qsymbols.hpp"
#include "u0.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace gqg {

using Word = std::vector<int>; // letter k stands for the k-th simple generator

inline Weight word_degree(int rank, const Word& w) {
    Weight d = weight_zero(rank);
    for (int k : w) d[static_cast<std::size_t>(k)] += 1;
    return d;
}

inline std::string word_str(const Word& w) {
    std::string s = "[";
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(w[k]);
    }
    return s + "]";
}

using ScalarMat = std::vector<std::vector<Scalar>>;

// invert a square matrix by Gauss-Jordan elimination; the matrix must be
// nonsingular (callers pick bases so that it is)
inline ScalarMat scalar_mat_inverse(ScalarMat a, const FieldSpec& f) {
    std::size_t n = a.size();
    ScalarMat inv(n, std::vector<Scalar>(n, Scalar::zero(f)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar::one(f);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw InternalInconsistency("singular matrix passed to inversion");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Scalar d = a[col][col].inv();
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Scalar m = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= m * a[col][j];
                inv[r][j] -= m * inv[col][j];
            }
        }
    }
    return inv;
}

// reduced row echelon form in place; returns the pivot column of each row
inline std::vector<std::size_t> scalar_mat_rref(ScalarMat& a, const FieldSpec& f) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    std::size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Scalar d = a[r][c].inv();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar m = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= m * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    (void)f;
    return pivots;
}

// basis of the right kernel {x : a x = 0}; deterministic (free variables in
// ascending column order, each set to 1 with pivot columns back-substituted)
inline ScalarMat scalar_mat_nullspace(ScalarMat a, std::size_t cols, const FieldSpec& f) {
    auto pivots = scalar_mat_rref(a, f);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    ScalarMat basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols, Scalar::zero(f));
        v[free] = Scalar::one(f);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] < free) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// one triangular monomial F_w K_kw L_lw E_v
struct TriKey {
    Word fword;
    Weight kw;
    Weight lw;
    Word eword;

    bool operator<(const TriKey& o) const {
        if (fword != o.fword) return fword < o.fword;
        if (kw != o.kw) return kw < o.kw;
        if (lw != o.lw) return lw < o.lw;
        return eword < o.eword;
    }
    bool operator==(const TriKey& o) const {
        return fword == o.fword && kw == o.kw && lw == o.lw && eword == o.eword;
    }
};

class AlgebraCtx; // fwd

// element in the triangular normal form; the F- and E-words of stored terms
// are always members of the per-degree word bases of the owning context
class AlgebraElem {
public:
    AlgebraElem() : field_(FieldSpec::rational_function()), rank_(0) {}
    AlgebraElem(FieldSpec f, int rank) : field_(std::move(f)), rank_(rank) {}

    const FieldSpec& field() const { return field_; }
    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<TriKey, Scalar>& terms() const { return terms_; }

    void add_term(const TriKey& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AlgebraElem& operator+=(const AlgebraElem& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    AlgebraElem& operator-=(const AlgebraElem& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b) { return a += b; }
    friend AlgebraElem operator-(AlgebraElem a, const AlgebraElem& b) { return a -= b; }
    AlgebraElem operator-() const {
        AlgebraElem r(field_, rank_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    friend AlgebraElem operator*(const Scalar& s, const AlgebraElem& a) {
        AlgebraElem r(a.field_, a.rank_);
        if (s.is_zero()) return r;
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, s * c);
        return r;
    }
    bool operator==(const AlgebraElem& o) const {
        check(o);
        return terms_ == o.terms_;
    }
    bool operator!=(const AlgebraElem& o) const { return !(*this == o); }

    // U0 part of the triangular decomposition (both words empty)
    U0Elem toral_part() const {
        U0Elem r = U0Elem::zero(field_, rank_);
        for (const auto& [k, c] : terms_)
            if (k.fword.empty() && k.eword.empty()) r.add_term(k.kw, k.lw, c);
        return r;
    }

    // terms whose E-part is trivial (the counit kills the rest)
    AlgebraElem lower_part() const {
        AlgebraElem r(field_, rank_);
        for (const auto& [k, c] : terms_)
            if (k.eword.empty()) r.terms_.emplace(k, c);
        return r;
    }

    Scalar counit() const {
        Scalar s = Scalar::zero(field_);
        for (const auto& [k, c] : terms_)
            if (k.fword.empty() && k.eword.empty()) s += c;
        return s;
    }

    std::map<Weight, AlgebraElem> degree_components() const {
        std::map<Weight, AlgebraElem> out;
        for (const auto& [k, c] : terms_) {
            Weight d = word_degree(rank_, k.eword) - word_degree(rank_, k.fword);
            auto it = out.find(d);
            if (it == out.end()) {
                AlgebraElem piece(field_, rank_);
                piece.terms_.emplace(k, c);
                out.emplace(d, std::move(piece));
            } else {
                it->second.terms_.emplace(k, c);
            }
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            if (!k.fword.empty()) s += " F" + word_str(k.fword);
            if (!is_zero_weight(k.kw)) s += " K" + weight_str(k.kw);
            if (!is_zero_weight(k.lw)) s += " L" + weight_str(k.lw);
            if (!k.eword.empty()) s += " E" + word_str(k.eword);
        }
        return s;
    }

private:
    void check(const AlgebraElem& o) const {
        if (field_ != o.field_ || rank_ != o.rank_)
            throw BackendMismatch("algebra elements live over different contexts");
    }
    FieldSpec field_;
    int rank_;
    std::map<TriKey, Scalar> terms_;

    friend class AlgebraCtx;
};

// computation context for one bicharacter: word bases per degree, the
// bilinear pairing between the two halves, and straightening caches
class AlgebraCtx {
public:
    Bicharacter chi;
    long cartan_cap = 64;

    explicit AlgebraCtx(Bicharacter c) : chi(std::move(c)), roots_(nullptr) {}

    const FieldSpec& field() const { return chi.field; }
    int rank() const { return chi.rank; }

    const RootSystemData& roots(const GroupoidCaps& caps = {}) {
        if (!roots_) roots_ = std::make_unique<RootSystemData>(enumerate_roots(chi, caps));
        return *roots_;
    }

    // ---- pairing ------------------------------------------------------

    // <E-word, F-word>: strips the leftmost F-letter
    const Scalar& pairing(const Word& e, const Word& f) {
        auto key = std::make_pair(e, f);
        auto it = pair_cache_.find(key);
        if (it != pair_cache_.end()) return it->second;
        Scalar val = Scalar::zero(field());
        if (e.empty() && f.empty()) {
            val = Scalar::one(field());
        } else if (!e.empty() && !f.empty()) {
            int j = f.front();
            Word frest(f.begin() + 1, f.end());
            Weight prefix = weight_zero(rank());
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == j) {
                    Word erest = e;
                    erest.erase(erest.begin() + static_cast<long>(k));
                    val += chi.eval(prefix, unit_weight(rank(), j)) * pairing(erest, frest);
                }
                prefix[static_cast<std::size_t>(e[k])] += 1;
            }
        }
        return pair_cache_.emplace(std::move(key), std::move(val)).first->second;
    }

    // independent recursion stripping the rightmost E-letter (cross-check)
    Scalar pairing_alt(const Word& e, const Word& f) const {
        if (e.empty() || f.empty())
            return (e.empty() && f.empty()) ? Scalar::one(field()) : Scalar::zero(field());
        int i = e.back();
        Word erest(e.begin(), e.end() - 1);
        Scalar val = Scalar::zero(field());
        Weight suffix = weight_zero(rank());
        for (std::size_t k = f.size(); k-- > 0;) {
            if (f[k] == i) {
                Word frest = f;
                frest.erase(frest.begin() + static_cast<long>(k));
                val += chi.eval(suffix, unit_weight(rank(), i)) * pairing_alt(erest, frest);
            }
            suffix[static_cast<std::size_t>(f[k])] += 1;
        }
        return val;
    }

    // ---- degree bases -------------------------------------------------

    struct DegreeBasis {
        std::vector<Word> ewords;
        std::vector<Word> fwords;
        ScalarMat gram;     // gram[x][y] = <ewords[x], fwords[y]>
        ScalarMat gram_inv; // inverse of gram
        std::size_t dim() const { return ewords.size(); }
    };

    const DegreeBasis& basis(const Weight& beta) {
        auto it = basis_cache_.find(beta);
        if (it != basis_cache_.end()) return it->second;
        return basis_cache_.emplace(beta, build_basis(beta)).first->second;
    }

    // coordinates of an arbitrary E-word in the chosen E-basis of its degree
    const std::vector<Scalar>& reduce_eword(const Word& w) {
        auto it = ered_cache_.find(w);
        if (it != ered_cache_.end()) return it->second;
        const DegreeBasis& b = basis(word_degree(rank(), w));
        std::vector<Scalar> c(b.dim(), Scalar::zero(field()));
        for (std::size_t y = 0; y < b.dim(); ++y) {
            const Scalar& p = pairing(w, b.fwords[y]);
            if (p.is_zero()) continue;
            for (std::size_t x = 0; x < b.dim(); ++x) c[x] += b.gram_inv[y][x] * p;
        }
        return ered_cache_.emplace(w, std::move(c)).first->second;
    }

    // coordinates of an arbitrary F-word in the chosen F-basis of its degree
    const std::vector<Scalar>& reduce_fword(const Word& w) {
        auto it = fred_cache_.find(w);
        if (it != fred_cache_.end()) return it->second;
        const DegreeBasis& b = basis(word_degree(rank(), w));
        std::vector<Scalar> d(b.dim(), Scalar::zero(field()));
        for (std::size_t x = 0; x < b.dim(); ++x) {
            const Scalar& p = pairing(b.ewords[x], w);
            if (p.is_zero()) continue;
            for (std::size_t y = 0; y < b.dim(); ++y) d[y] += b.gram_inv[y][x] * p;
        }
        return fred_cache_.emplace(w, std::move(d)).first->second;
    }

    // ---- straightening ------------------------------------------------

    struct RawTerm {
        Word fword;
        Weight kw;
        Weight lw;
        Word eword;
        Scalar coeff;
    };

    // rewrite E_e * F_f as a combination of F K L E monomials (words unreduced)
    const std::vector<RawTerm>& straighten(const Word& e, const Word& f) {
        auto key = std::make_pair(e, f);
        auto it = str_cache_.find(key);
        if (it != str_cache_.end()) return it->second;
        std::vector<RawTerm> out;
        if (e.empty() || f.empty()) {
            out.push_back({f, weight_zero(rank()), weight_zero(rank()), e, Scalar::one(field())});
            return str_cache_.emplace(std::move(key), std::move(out)).first->second;
        }
        int i = e.back();
        Word ep(e.begin(), e.end() - 1);
        Weight ai = unit_weight(rank(), i);
        // E_ep (F_f E_i): pass-through part
        for (const RawTerm& t : straighten(ep, f)) {
            RawTerm nt = t;
            nt.eword.push_back(i);
            out.push_back(std::move(nt));
        }
        // commutator parts at each matching letter of f
        Weight tail = weight_zero(rank());
        for (std::size_t k = f.size(); k-- > 0;) {
            if (f[k] == i) {
                Word fk = f;
                fk.erase(fk.begin() + static_cast<long>(k));
                Scalar cK = -(chi.eval(ai, tail).inv());
                Scalar cL = chi.eval(tail, ai);
                for (const RawTerm& t : straighten(ep, fk)) {
                    Weight de = word_degree(rank(), t.eword);
                    RawTerm k_branch = t;
                    k_branch.kw = k_branch.kw + ai;
                    k_branch.coeff = t.coeff * cK * chi.eval(ai, de).inv();
                    out.push_back(std::move(k_branch));
                    RawTerm l_branch = t;
                    l_branch.lw = l_branch.lw + ai;
                    l_branch.coeff = t.coeff * cL * chi.eval(de, ai);
                    out.push_back(std::move(l_branch));
                }
            }
            tail[static_cast<std::size_t>(f[k])] += 1;
        }
        return str_cache_.emplace(std::move(key), std::move(out)).first->second;
    }

private:
    DegreeBasis build_basis(const Weight& beta) {
        DegreeBasis b;
        if (!all_nonneg(beta))
            throw InternalInconsistency("degree basis requested at a mixed-sign weight " +
                                        weight_str(beta));
        GroupoidCaps caps;
        caps.cartan = cartan_cap;
        std::size_t predicted = root_multisets(roots(caps), beta).size();
        if (is_zero_weight(beta)) {
            b.ewords.push_back({});
            b.fwords.push_back({});
            b.gram = {{Scalar::one(field())}};
            b.gram_inv = {{Scalar::one(field())}};
            return b;
        }
        if (predicted == 0) return b;
        std::vector<Word> cands = words_of_content(beta);
        std::size_t n = cands.size();
        ScalarMat full(n, std::vector<Scalar>(n, Scalar::zero(field())));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) full[x][y] = pairing(cands[x], cands[y]);
        // full-pivot elimination to find row/column sets carrying the rank
        ScalarMat work = full;
        std::vector<std::size_t> rows, cols;
        std::vector<bool> rused(n, false), cused(n, false);
        for (;;) {
            std::size_t pr = n, pc = n;
            for (std::size_t r = 0; r < n && pr == n; ++r) {
                if (rused[r]) continue;
                for (std::size_t c = 0; c < n; ++c) {
                    if (cused[c] || work[r][c].is_zero()) continue;
                    pr = r;
                    pc = c;
                    break;
                }
            }
            if (pr == n) break;
            rows.push_back(pr);
            cols.push_back(pc);
            rused[pr] = true;
            cused[pc] = true;
            Scalar inv = work[pr][pc].inv();
            for (std::size_t r = 0; r < n; ++r) {
                if (rused[r] || work[r][pc].is_zero()) continue;
                Scalar m = work[r][pc] * inv;
                for (std::size_t c = 0; c < n; ++c) {
                    if (cused[c]) continue;
                    work[r][c] -= m * work[pr][c];
                }
            }
        }
        if (rows.size() != predicted)
            throw RankMismatch("pairing rank " + std::to_string(rows.size()) + " at degree " +
                               weight_str(beta) + " does not match the " +
                               std::to_string(predicted) + " admissible root multisets");
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        for (std::size_t x : rows) b.ewords.push_back(cands[x]);
        for (std::size_t y : cols) b.fwords.push_back(cands[y]);
        b.gram.assign(rows.size(), std::vector<Scalar>(cols.size(), Scalar::zero(field())));
        for (std::size_t x = 0; x < rows.size(); ++x)
            for (std::size_t y = 0; y < cols.size(); ++y) b.gram[x][y] = full[rows[x]][cols[y]];
        b.gram_inv = scalar_mat_inverse(b.gram, field());
        return b;
    }

    std::vector<Word> words_of_content(const Weight& beta) const {
        std::vector<Word> out;
        Word cur;
        Weight left = beta;
        words_rec(left, cur, out);
        return out;
    }
    void words_rec(Weight& left, Word& cur, std::vector<Word>& out) const {
        bool done = true;
        for (std::size_t i = 0; i < left.size(); ++i) {
            if (left[i] > 0) {
                done = false;
                left[i] -= 1;
                cur.push_back(static_cast<int>(i));
                words_rec(left, cur, out);
                cur.pop_back();
                left[i] += 1;
            }
        }
        if (done) out.push_back(cur);
    }

    std::unique_ptr<RootSystemData> roots_;
    std::map<std::pair<Word, Word>, Scalar> pair_cache_;
    std::map<Weight, DegreeBasis> basis_cache_;
    std::map<Word, std::vector<Scalar>> ered_cache_;
    std::map<Word, std::vector<Scalar>> fred_cache_;
    std::map<std::pair<Word, Word>, std::vector<RawTerm>> str_cache_;
};

// ---- constructors ------------------------------------------------------

inline AlgebraElem elem_zero(AlgebraCtx& ctx) { return AlgebraElem(ctx.field(), ctx.rank()); }

inline AlgebraElem elem_one(AlgebraCtx& ctx) {
    AlgebraElem r(ctx.field(), ctx.rank());
    r.add_term({{}, weight_zero(ctx.rank()), weight_zero(ctx.rank()), {}},
               Scalar::one(ctx.field()));
    return r;
}

inline AlgebraElem gen_KL(AlgebraCtx& ctx, const Weight& lam, const Weight& mu) {
    AlgebraElem r(ctx.field(), ctx.rank());
    r.add_term({{}, lam, mu, {}}, Scalar::one(ctx.field()));
    return r;
}

inline AlgebraElem gen_E(AlgebraCtx& ctx, int i) {
    AlgebraElem r(ctx.field(), ctx.rank());
    r.add_term({{}, weight_zero(ctx.rank()), weight_zero(ctx.rank()), Word{i}},
               Scalar::one(ctx.field()));
    return r;
}

inline AlgebraElem gen_F(AlgebraCtx& ctx, int i) {
    AlgebraElem r(ctx.field(), ctx.rank());
    r.add_term({Word{i}, weight_zero(ctx.rank()), weight_zero(ctx.rank()), {}},
               Scalar::one(ctx.field()));
    return r;
}

inline AlgebraElem from_u0(AlgebraCtx& ctx, const U0Elem& z) {
    AlgebraElem r(ctx.field(), ctx.rank());
    for (const auto& [k, c] : z.terms) r.add_term({{}, k.first, k.second, {}}, c);
    return r;
}

// ---- multiplication ------------------------------------------------------

inline AlgebraElem mul(AlgebraCtx& ctx, const AlgebraElem& a, const AlgebraElem& b) {
    AlgebraElem out(ctx.field(), ctx.rank());
    if (a.field() != ctx.field() || b.field() != ctx.field())
        throw BackendMismatch("multiplication across different scalar backends");
    for (const auto& [ka, ca] : a.terms()) {
        Weight dega_e = word_degree(ctx.rank(), ka.eword);
        for (const auto& [kb, cb] : b.terms()) {
            Weight degb_f = word_degree(ctx.rank(), kb.fword);
            // move K_{ka.kw} L_{ka.lw} left of F_{kb.fword} ... after straightening
            for (const auto& t : ctx.straighten(ka.eword, kb.fword)) {
                Scalar c = ca * cb * t.coeff;
                Weight deg_tf = word_degree(ctx.rank(), t.fword);
                Weight deg_te = word_degree(ctx.rank(), t.eword);
                // K/L of the left factor across the new F-part
                c *= ctx.chi.eval(ka.kw, deg_tf).inv() * ctx.chi.eval(deg_tf, ka.lw);
                // E-part of the straightened middle across K/L of the right factor
                c *= ctx.chi.eval(kb.kw, deg_te).inv() * ctx.chi.eval(deg_te, kb.lw);
                if (c.is_zero()) continue;
                Word fraw = ka.fword;
                fraw.insert(fraw.end(), t.fword.begin(), t.fword.end());
                Word eraw = t.eword;
                eraw.insert(eraw.end(), kb.eword.begin(), kb.eword.end());
                Weight kw = ka.kw + t.kw + kb.kw;
                Weight lw = ka.lw + t.lw + kb.lw;
                const auto& fb = ctx.basis(word_degree(ctx.rank(), fraw));
                const auto& eb = ctx.basis(word_degree(ctx.rank(), eraw));
                const std::vector<Scalar>& fc = ctx.reduce_fword(fraw);
                const std::vector<Scalar>& ec = ctx.reduce_eword(eraw);
                for (std::size_t y = 0; y < fc.size(); ++y) {
                    if (fc[y].is_zero()) continue;
                    for (std::size_t x = 0; x < ec.size(); ++x) {
                        if (ec[x].is_zero()) continue;
                        out.add_term({fb.fwords[y], kw, lw, eb.ewords[x]}, c * fc[y] * ec[x]);
                    }
                }
            }
        }
    }
    return out;
}

inline AlgebraElem mul(AlgebraCtx& ctx, const std::vector<AlgebraElem>& factors) {
    AlgebraElem r = elem_one(ctx);
    for (const auto& f : factors) r = mul(ctx, r, f);
    return r;
}

inline AlgebraElem elem_pow(AlgebraCtx& ctx, const AlgebraElem& a, long n) {
    AlgebraElem r = elem_one(ctx);
    for (long k = 0; k < n; ++k) r = mul(ctx, r, a);
    return r;
}

inline AlgebraElem commutator(AlgebraCtx& ctx, const AlgebraElem& a, const AlgebraElem& b) {
    return mul(ctx, a, b) - mul(ctx, b, a);
}

// ---- (anti)homomorphisms given by generator images -----------------------

struct GenImages {
    // all images live in the destination context
    std::vector<AlgebraElem> e_img;
    std::vector<AlgebraElem> f_img;
    std::function<AlgebraElem(const Weight&, const Weight&)> kl_img;
    bool anti = false;
};

inline AlgebraElem apply_hom(AlgebraCtx& dst, const AlgebraElem& src, const GenImages& img) {
    AlgebraElem out = elem_zero(dst);
    for (const auto& [k, c] : src.terms()) {
        std::vector<AlgebraElem> factors;
        for (int i : k.fword) factors.push_back(img.f_img[static_cast<std::size_t>(i)]);
        factors.push_back(img.kl_img(k.kw, k.lw));
        for (int i : k.eword) factors.push_back(img.e_img[static_cast<std::size_t>(i)]);
        if (img.anti) std::reverse(factors.begin(), factors.end());
        out += c * mul(dst, factors);
    }
    return out;
}

// algebra automorphism exchanging the triangular halves
inline AlgebraElem omega_apply(AlgebraCtx& ctx, const AlgebraElem& a) {
    GenImages img;
    for (int i = 0; i < ctx.rank(); ++i) {
        Weight ai = unit_weight(ctx.rank(), i);
        img.e_img.push_back(mul(ctx, gen_F(ctx, i), gen_KL(ctx, weight_zero(ctx.rank()), -ai)));
        img.f_img.push_back(mul(ctx, gen_KL(ctx, -ai, weight_zero(ctx.rank())), gen_E(ctx, i)));
    }
    img.kl_img = [&ctx](const Weight& kw, const Weight& lw) { return gen_KL(ctx, -kw, -lw); };
    return apply_hom(ctx, a, img);
}

// algebra isomorphism from the transposed-bicharacter algebra
inline AlgebraElem xi_apply(AlgebraCtx& dst, const AlgebraElem& src) {
    GenImages img;
    for (int i = 0; i < dst.rank(); ++i) {
        img.e_img.push_back(gen_F(dst, i));
        img.f_img.push_back(gen_E(dst, i));
    }
    img.kl_img = [&dst](const Weight& kw, const Weight& lw) { return gen_KL(dst, lw, kw); };
    return apply_hom(dst, src, img);
}

inline AlgebraElem antipode(AlgebraCtx& ctx, const AlgebraElem& a) {
    GenImages img;
    img.anti = true;
    for (int i = 0; i < ctx.rank(); ++i) {
        Weight ai = unit_weight(ctx.rank(), i);
        img.e_img.push_back(-mul(ctx, gen_KL(ctx, -ai, weight_zero(ctx.rank())), gen_E(ctx, i)));
        img.f_img.push_back(-mul(ctx, gen_F(ctx, i), gen_KL(ctx, weight_zero(ctx.rank()), -ai)));
    }
    img.kl_img = [&ctx](const Weight& kw, const Weight& lw) { return gen_KL(ctx, -kw, -lw); };
    return apply_hom(ctx, a, img);
}

// ---- reflection operators -------------------------------------------------

// operator attached to the i-th reflection, mapping the algebra of the
// reflected bicharacter onto the algebra of `dst` (lattice degrees get
// relabeled by s_i on the way)
inline AlgebraElem reflection_op(AlgebraCtx& dst, int i, const AlgebraElem& src) {
    int rank = dst.rank();
    Weight ai = unit_weight(rank, i);
    GenImages img;
    for (int j = 0; j < rank; ++j) {
        if (j == i) {
            img.e_img.push_back(mul(dst, gen_F(dst, i), gen_KL(dst, weight_zero(rank), -ai)));
            img.f_img.push_back(mul(dst, gen_KL(dst, -ai, weight_zero(rank)), gen_E(dst, i)));
            continue;
        }
        long n = cartan_entry(dst.chi, i, j, dst.cartan_cap);
        const Scalar& qii = dst.chi.qij(i, i);
        Scalar qij = dst.chi.qij(i, j);
        Scalar qji = dst.chi.qij(j, i);
        AlgebraElem esum = elem_zero(dst);
        AlgebraElem fsum = elem_zero(dst);
        for (long k = 0; k <= n; ++k) {
            Scalar base = qii.pow(k * (k - 1) / 2) * qbinom(n, k, qii);
            AlgebraElem emid = mul(dst, {elem_pow(dst, gen_E(dst, i), n - k), gen_E(dst, j),
                                         elem_pow(dst, gen_E(dst, i), k)});
            AlgebraElem fmid = mul(dst, {elem_pow(dst, gen_F(dst, i), n - k), gen_F(dst, j),
                                         elem_pow(dst, gen_F(dst, i), k)});
            esum += (base * ((-qij).pow(k))) * emid;
            fsum += (base * ((-qji).pow(k))) * fmid;
        }
        Scalar norm = (qfact(n, qii) * qshift_fact(n, qii, qij * qji)).inv();
        img.e_img.push_back(esum);
        img.f_img.push_back(norm * fsum);
    }
    img.kl_img = [&dst, i](const Weight& kw, const Weight& lw) {
        return gen_KL(dst, reflect_weight(dst.chi, i, kw, dst.cartan_cap),
                      reflect_weight(dst.chi, i, lw, dst.cartan_cap));
    };
    return apply_hom(dst, src, img);
}

// context store keyed by bicharacter, so reflection chains reuse contexts
class CtxStore {
public:
    AlgebraCtx& get(const Bicharacter& chi) {
        auto it = store_.find(chi.key());
        if (it == store_.end())
            it = store_.emplace(chi.key(), std::make_unique<AlgebraCtx>(chi)).first;
        return *it->second;
    }

private:
    std::map<std::string, std::unique_ptr<AlgebraCtx>> store_;
};

// root vectors along the longest-word walk: the t-th vector has degree
// equal to the t-th positive root
struct RootVectors {
    std::vector<AlgebraElem> e_vec; // in the starting context
    std::vector<AlgebraElem> f_vec;
};

inline RootVectors lusztig_root_vectors(CtxStore& store, AlgebraCtx& ctx,
                                        const GroupoidCaps& caps = {}) {
    const RootSystemData& rd = ctx.roots(caps);
    RootVectors out;
    for (std::size_t t = 0; t < rd.roots.size(); ++t) {
        AlgebraCtx& src = store.get(rd.chain[t]);
        AlgebraElem ev = gen_E(src, rd.word[t]);
        AlgebraElem fv = gen_F(src, rd.word[t]);
        for (std::size_t s = t; s-- > 0;) {
            AlgebraCtx& target = store.get(rd.chain[s]);
            ev = reflection_op(target, rd.word[s], ev);
            fv = reflection_op(target, rd.word[s], fv);
        }
        for (const auto& [k, c] : ev.terms())
            if (!k.fword.empty() || !is_zero_weight(k.kw) || !is_zero_weight(k.lw) ||
                word_degree(ctx.rank(), k.eword) != rd.roots[t])
                throw InternalInconsistency("root vector " + std::to_string(t) +
                                            " is not homogeneous of its root degree");
        for (const auto& [k, c] : fv.terms())
            if (!k.eword.empty() || !is_zero_weight(k.kw) || !is_zero_weight(k.lw) ||
                word_degree(ctx.rank(), k.fword) != rd.roots[t])
                throw InternalInconsistency("co-root vector " + std::to_string(t) +
                                            " is not homogeneous of its root degree");
        out.e_vec.push_back(std::move(ev));
        out.f_vec.push_back(std::move(fv));
    }
    return out;
}

// ---- skew-centrality -------------------------------------------------------

inline bool is_skew_central(AlgebraCtx& ctx, const AlgebraElem& v, const EtaHom& eta) {
    for (int i = 0; i < ctx.rank(); ++i) {
        Weight ai = unit_weight(ctx.rank(), i);
        AlgebraElem e = gen_E(ctx, i), f = gen_F(ctx, i);
        if (mul(ctx, v, e) != eta.eval(ai) * mul(ctx, e, v)) return false;
        if (mul(ctx, v, f) != eta.eval(-ai) * mul(ctx, f, v)) return false;
        AlgebraElem k = gen_KL(ctx, ai, weight_zero(ctx.rank()));
        AlgebraElem l = gen_KL(ctx, weight_zero(ctx.rank()), ai);
        if (mul(ctx, v, k) != mul(ctx, k, v)) return false;
        if (mul(ctx, v, l) != mul(ctx, l, v)) return false;
    }
    return true;
}

} // namespace gqg
