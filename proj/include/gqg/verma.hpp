#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "algebra.hpp"

namespace gqg {

namespace detail {

// determinant of a square scalar matrix (plain Gaussian elimination)
inline Scalar scalar_mat_det(ScalarMat a, const FieldSpec& f) {
    std::size_t n = a.size();
    Scalar det = Scalar::one(f);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        for (std::size_t r = c; r < n; ++r)
            if (!a[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p == n) return Scalar::zero(f);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        Scalar inv = a[c][c].inv();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero()) continue;
            Scalar m = a[r][c] * inv;
            for (std::size_t k = c; k < n; ++k) a[r][k] -= m * a[c][k];
        }
    }
    return det;
}

inline std::size_t scalar_mat_rank(ScalarMat a, const FieldSpec& f) {
    return scalar_mat_rref(a, f).size();
}

// deterministic generator for exact sample values: gen^e * (small rational)
struct SampleRng {
    std::uint64_t state;

    explicit SampleRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Scalar value(const FieldSpec& f) {
        static const long nums[] = {1, 2, 3, 5, 7};
        Scalar v = Scalar::gen_pow(f, range(-2, 2)) * Scalar::from_rat(f, Rat(nums[range(0, 4)]));
        if (range(0, 1)) v = v.inv();
        return v;
    }
};

} // namespace detail

// vector in the module freely generated over the lowering half by a highest
// vector; coordinates over the per-degree F-word bases of the owning context
struct VermaVector {
    Character hw;
    std::map<Word, Scalar> terms;

    bool is_zero() const { return terms.empty(); }

    void add(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool operator==(const VermaVector& o) const { return terms == o.terms; }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [w, c] : terms) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            if (!w.empty()) s += " F" + word_str(w);
            s += " v";
        }
        return s;
    }
};

inline VermaVector verma_vacuum(AlgebraCtx& ctx, const Character& hw) {
    VermaVector v{hw, {}};
    v.add({}, Scalar::one(ctx.field()));
    return v;
}

// action of an algebra element: normal-order against each F-word, evaluate
// the toral part through the highest weight, kill terms with a raising tail
inline VermaVector verma_act(AlgebraCtx& ctx, const AlgebraElem& u, const VermaVector& v) {
    AlgebraElem carrier(ctx.field(), ctx.rank());
    for (const auto& [w, c] : v.terms)
        carrier.add_term({w, weight_zero(ctx.rank()), weight_zero(ctx.rank()), {}}, c);
    AlgebraElem prod = mul(ctx, u, carrier);
    VermaVector out{v.hw, {}};
    for (const auto& [k, c] : prod.terms()) {
        if (!k.eword.empty()) continue;
        out.add(k.fword, c * v.hw.eval(k.kw, k.lw));
    }
    return out;
}

// dimension of the span of a family of module vectors (rank of the
// coordinate matrix over all F-words that occur)
inline std::size_t verma_span_dim(const FieldSpec& f, const std::vector<VermaVector>& vecs) {
    std::map<Word, std::size_t> cols;
    for (const auto& v : vecs)
        for (const auto& [w, c] : v.terms) cols.emplace(w, 0);
    std::size_t nc = 0;
    for (auto& [w, idx] : cols) idx = nc++;
    ScalarMat a(vecs.size(), std::vector<Scalar>(nc, Scalar::zero(f)));
    for (std::size_t r = 0; r < vecs.size(); ++r)
        for (const auto& [w, c] : vecs[r].terms) a[r][cols[w]] = c;
    return detail::scalar_mat_rank(std::move(a), f);
}

// pairing-transfer matrix of a degree: entries are the toral parts of the
// products (E-basis word) * (F-basis word), kept symbolic over the torus
struct ShapovalovMatrix {
    Weight beta;
    std::vector<Word> xwords;
    std::vector<Word> ywords;
    std::vector<std::vector<U0Elem>> entries;
    ScalarMat gram;

    std::size_t dim() const { return xwords.size(); }

    ScalarMat eval(const Character& hw) const {
        ScalarMat a(dim(), std::vector<Scalar>(dim(), Scalar::zero(hw.field)));
        for (std::size_t x = 0; x < dim(); ++x)
            for (std::size_t y = 0; y < dim(); ++y)
                for (const auto& [k, c] : entries[x][y].terms)
                    a[x][y] += c * hw.eval(k.first, k.second);
        return a;
    }
};

inline ShapovalovMatrix shapovalov_matrix(AlgebraCtx& ctx, const Weight& beta) {
    const AlgebraCtx::DegreeBasis& b = ctx.basis(beta);
    ShapovalovMatrix s;
    s.beta = beta;
    s.xwords = b.ewords;
    s.ywords = b.fwords;
    s.gram = b.gram;
    s.entries.assign(b.dim(), std::vector<U0Elem>(b.dim(), U0Elem::zero(ctx.field(), ctx.rank())));
    for (std::size_t x = 0; x < b.dim(); ++x) {
        AlgebraElem ex(ctx.field(), ctx.rank());
        ex.add_term({{}, weight_zero(ctx.rank()), weight_zero(ctx.rank()), b.ewords[x]},
                    Scalar::one(ctx.field()));
        for (std::size_t y = 0; y < b.dim(); ++y) {
            AlgebraElem fy(ctx.field(), ctx.rank());
            fy.add_term({b.fwords[y], weight_zero(ctx.rank()), weight_zero(ctx.rank()), {}},
                        Scalar::one(ctx.field()));
            U0Elem sh = mul(ctx, ex, fy).toral_part();
            for (const auto& [k, c] : sh.terms)
                if (!all_nonneg(k.first) || !all_nonneg(k.second) || k.first + k.second != beta)
                    throw InternalInconsistency("transfer entry leaves the expected torus grades at " +
                                                weight_str(beta));
            s.entries[x][y] = std::move(sh);
        }
    }
    return s;
}

struct ShapoFactor {
    Weight root;
    long t = 0;
    long mult = 0; // number of admissible multisets using the root at least t times
};

struct ShapoReport {
    Weight beta;
    std::size_t dim = 0;
    Scalar gram_det;
    U0Elem det;
    U0Elem product;
    std::vector<ShapoFactor> factors;
};

// symbolic determinant of the transfer matrix against the closed product
// over positive roots; exact equality is mandatory
inline ShapoReport shapovalov_det_verify(AlgebraCtx& ctx, const Weight& beta) {
    const RootSystemData& rd = ctx.roots();
    for (std::size_t a = 0; a < rd.roots.size(); ++a)
        if (rd.root_qs[a].is_one())
            throw HypothesisViolated("self-pairing value 1 at root " + weight_str(rd.roots[a]) +
                                     "; the determinant factorization needs it to differ from 1");
    ShapovalovMatrix s = shapovalov_matrix(ctx, beta);
    ShapoReport rep;
    rep.beta = beta;
    rep.dim = s.dim();
    rep.gram_det = detail::scalar_mat_det(s.gram, ctx.field());
    rep.det = u0_det(s.entries, ctx.field(), ctx.rank());
    U0Elem prod = rep.gram_det * U0Elem::one_elem(ctx.field(), ctx.rank());
    for (std::size_t a = 0; a < rd.roots.size(); ++a) {
        const Weight& al = rd.roots[a];
        Scalar rho = ctx.chi.rho_hat(al);
        const Scalar& qa = rd.root_qs[a];
        for (long t = 1;; ++t) {
            long r = multiset_count_at_least(rd, beta, a, t);
            if (r == 0) break;
            U0Elem factor = (-(rho * qa.pow(-t))) * U0Elem::monomial(ctx.field(), ctx.rank(), al,
                                                                     weight_zero(ctx.rank()),
                                                                     Scalar::one(ctx.field())) +
                            U0Elem::monomial(ctx.field(), ctx.rank(), weight_zero(ctx.rank()), al,
                                             Scalar::one(ctx.field()));
            prod *= factor.pow_nonneg(r);
            rep.factors.push_back({al, t, r});
        }
    }
    rep.product = std::move(prod);
    if (rep.det != rep.product)
        throw VerificationFailed("transfer determinant mismatch at " + weight_str(beta) +
                                 ": determinant = " + rep.det.str() +
                                 ", closed product = " + rep.product.str());
    return rep;
}

// radical slice at a degree: kernel of the evaluated transfer matrix
inline std::vector<VermaVector> verma_radical(AlgebraCtx& ctx, const Character& hw,
                                              const Weight& beta) {
    ShapovalovMatrix s = shapovalov_matrix(ctx, beta);
    ScalarMat null = scalar_mat_nullspace(s.eval(hw), s.dim(), ctx.field());
    std::vector<VermaVector> out;
    for (const auto& vec : null) {
        VermaVector v{hw, {}};
        for (std::size_t y = 0; y < s.dim(); ++y) v.add(s.ywords[y], vec[y]);
        out.push_back(std::move(v));
    }
    return out;
}

// dimension of the simple quotient's slice at a degree
inline std::size_t simple_quotient_dim(AlgebraCtx& ctx, const Character& hw, const Weight& beta) {
    ShapovalovMatrix s = shapovalov_matrix(ctx, beta);
    return detail::scalar_mat_rank(s.eval(hw), ctx.field());
}

namespace detail {

// orders of the self-pairing values along the root chain; every root must
// have a finite order at least 2 for the highest-vector constructions
inline std::vector<long> root_orders_strict(AlgebraCtx& ctx) {
    const RootSystemData& rd = ctx.roots();
    std::vector<long> kap;
    for (std::size_t s = 0; s < rd.roots.size(); ++s) {
        long k = kappa(rd.root_qs[s]);
        if (k < 2)
            throw HypothesisViolated("root " + weight_str(rd.roots[s]) +
                                     " has self-pairing order " + std::to_string(k) +
                                     "; the construction needs a finite order of at least 2 at every root");
        kap.push_back(k);
    }
    return kap;
}

inline Scalar hyperplane_value(AlgebraCtx& ctx, const Character& hw, const Weight& root,
                               const Scalar& rootq, long t) {
    return ctx.chi.rho_hat(root) * hw.eval(root, weight_zero(ctx.rank())) -
           rootq.pow(t) * hw.eval(weight_zero(ctx.rank()), root);
}

} // namespace detail

// highest-vector member of the radical built by walking the root chain:
// raise along the first m-1 chain roots, lower through the target root t
// times, then lower back along the chain
inline VermaVector singular_vector(CtxStore& store, AlgebraCtx& ctx, long m, long t,
                                   const Character& hw) {
    const RootSystemData& rd = ctx.roots();
    std::vector<long> kap = detail::root_orders_strict(ctx);
    long theta = rd.theta();
    if (m < 1 || m > theta)
        throw HypothesisViolated("chain position " + std::to_string(m) + " outside [1," +
                                 std::to_string(theta) + "]");
    if (t < 1 || t > kap[static_cast<std::size_t>(m - 1)] - 1)
        throw HypothesisViolated("lowering exponent " + std::to_string(t) + " outside [1," +
                                 std::to_string(kap[static_cast<std::size_t>(m - 1)] - 1) + "]");
    Scalar main = detail::hyperplane_value(ctx, hw, rd.roots[static_cast<std::size_t>(m - 1)],
                                           rd.root_qs[static_cast<std::size_t>(m - 1)], t);
    if (!main.is_zero())
        throw HypothesisViolated("hyperplane condition fails at chain position " + std::to_string(m) +
                                 ", exponent " + std::to_string(t) + ": value " + main.str());
    for (long mp = 1; mp < m; ++mp)
        for (long tp = 1; tp <= kap[static_cast<std::size_t>(mp - 1)] - 1; ++tp) {
            Scalar v = detail::hyperplane_value(ctx, hw, rd.roots[static_cast<std::size_t>(mp - 1)],
                                                rd.root_qs[static_cast<std::size_t>(mp - 1)], tp);
            if (v.is_zero())
                throw HypothesisViolated("earlier chain position " + std::to_string(mp) +
                                         " already sits on the hyperplane for exponent " +
                                         std::to_string(tp));
        }
    RootVectors rv = lusztig_root_vectors(store, ctx);
    std::vector<AlgebraElem> factors;
    for (long s = 1; s < m; ++s)
        factors.push_back(elem_pow(ctx, rv.e_vec[static_cast<std::size_t>(s - 1)],
                                   kap[static_cast<std::size_t>(s - 1)] - 1));
    factors.push_back(elem_pow(ctx, rv.f_vec[static_cast<std::size_t>(m - 1)], t));
    for (long s = m - 1; s >= 1; --s)
        factors.push_back(elem_pow(ctx, rv.f_vec[static_cast<std::size_t>(s - 1)],
                                   kap[static_cast<std::size_t>(s - 1)] - 1));
    VermaVector v = verma_act(ctx, mul(ctx, factors), verma_vacuum(ctx, hw));
    if (v.is_zero())
        throw InternalInconsistency("chain-built highest vector vanished at position " +
                                    std::to_string(m) + ", exponent " + std::to_string(t));
    Weight want = t * rd.roots[static_cast<std::size_t>(m - 1)];
    for (const auto& [w, c] : v.terms)
        if (word_degree(ctx.rank(), w) != want)
            throw InternalInconsistency("chain-built vector is not homogeneous of degree " +
                                        weight_str(want));
    for (int j = 0; j < ctx.rank(); ++j)
        if (!verma_act(ctx, gen_E(ctx, j), v).is_zero())
            throw InternalInconsistency("chain-built vector is not killed by raising generator " +
                                        std::to_string(j));
    return v;
}

// monomial family spanning the submodule generated by a chain-built highest
// vector; exponent boxes follow the per-root orders
inline std::vector<VermaVector> singular_submodule_family(CtxStore& store, AlgebraCtx& ctx, long m,
                                                          long t, const VermaVector& v) {
    const RootSystemData& rd = ctx.roots();
    std::vector<long> kap = detail::root_orders_strict(ctx);
    long theta = rd.theta();
    RootVectors rv = lusztig_root_vectors(store, ctx);
    std::vector<long> lim; // iteration bounds: p for the target root, r_x elsewhere
    for (long x = 1; x <= theta; ++x)
        lim.push_back(x == m ? kap[static_cast<std::size_t>(m - 1)] - t
                             : kap[static_cast<std::size_t>(x - 1)]);
    std::vector<long> idx(static_cast<std::size_t>(theta), 0);
    std::vector<VermaVector> out;
    for (;;) {
        std::vector<AlgebraElem> factors;
        for (long x = m - 1; x >= 1; --x)
            factors.push_back(elem_pow(ctx, rv.e_vec[static_cast<std::size_t>(x - 1)],
                                       idx[static_cast<std::size_t>(x - 1)]));
        for (long x = theta; x >= m + 1; --x)
            factors.push_back(elem_pow(ctx, rv.f_vec[static_cast<std::size_t>(x - 1)],
                                       idx[static_cast<std::size_t>(x - 1)]));
        factors.push_back(elem_pow(ctx, rv.f_vec[static_cast<std::size_t>(m - 1)],
                                   idx[static_cast<std::size_t>(m - 1)]));
        for (long x = m - 1; x >= 1; --x)
            factors.push_back(elem_pow(ctx, rv.f_vec[static_cast<std::size_t>(x - 1)],
                                       kap[static_cast<std::size_t>(x - 1)] - 1));
        out.push_back(verma_act(ctx, mul(ctx, factors), v));
        std::size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < lim[pos]) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) break;
    }
    return out;
}

// highest weight for the reflected presentation, written in its own
// coordinates; compensates the lattice relabeling with a bicharacter twist
inline Character reflected_highest_weight(AlgebraCtx& dst, int i, const Character& hw) {
    long kap = kappa(dst.chi.qij(i, i));
    Weight ai = unit_weight(dst.rank(), i);
    Character out{hw.field, {}, {}};
    for (int j = 0; j < dst.rank(); ++j) {
        Weight sj = reflect_weight(dst.chi, i, unit_weight(dst.rank(), j), dst.cartan_cap);
        out.kvals.push_back(dst.chi.eval(sj, ai).pow(-(kap - 1)) *
                            hw.eval(sj, weight_zero(dst.rank())));
        out.lvals.push_back(dst.chi.eval(ai, sj).pow(kap - 1) *
                            hw.eval(weight_zero(dst.rank()), sj));
    }
    return out;
}

// transport of a vector over the reflected presentation into the module of
// the base presentation
inline VermaVector lusztig_verma(AlgebraCtx& dst, AlgebraCtx& src, int i, const Character& hw,
                                 const VermaVector& v) {
    long kap = kappa(dst.chi.qij(i, i));
    if (kap < 2)
        throw HypothesisViolated("reflected-module transport needs a finite order of at least 2 at index " +
                                 std::to_string(i));
    Weight ai = unit_weight(dst.rank(), i);
    for (long tp = 0; tp <= kap - 2; ++tp) {
        Scalar val = -hw.eval(ai, weight_zero(dst.rank())) +
                     dst.chi.qij(i, i).pow(tp) * hw.eval(weight_zero(dst.rank()), ai);
        if (val.is_zero())
            throw HypothesisViolated("transport blocked: highest weight sits on the order-" +
                                     std::to_string(tp) + " hyperplane at index " + std::to_string(i));
    }
    Character twisted = reflected_highest_weight(dst, i, hw);
    if (v.hw.kvals != twisted.kvals || v.hw.lvals != twisted.lvals)
        throw HypothesisViolated("transported vector does not carry the reflected highest weight");
    AlgebraElem x(src.field(), src.rank());
    for (const auto& [w, c] : v.terms)
        x.add_term({w, weight_zero(src.rank()), weight_zero(src.rank()), {}}, c);
    AlgebraElem carrier = mul(dst, reflection_op(dst, i, x),
                              elem_pow(dst, gen_F(dst, i), kap - 1));
    return verma_act(dst, carrier, verma_vacuum(dst, hw));
}

// transports a full degree slice and checks the images stay independent
inline std::vector<VermaVector> lusztig_verma_degree_check(AlgebraCtx& dst, AlgebraCtx& src, int i,
                                                           const Character& hw, const Weight& gamma) {
    Character twisted = reflected_highest_weight(dst, i, hw);
    const AlgebraCtx::DegreeBasis& b = src.basis(gamma);
    std::vector<VermaVector> images;
    for (const Word& w : b.fwords) {
        VermaVector v{twisted, {}};
        v.add(w, Scalar::one(src.field()));
        images.push_back(lusztig_verma(dst, src, i, hw, v));
    }
    if (verma_span_dim(dst.field(), images) != b.dim())
        throw VerificationFailed("reflected-module transport dropped rank at degree " +
                                 weight_str(gamma));
    return images;
}

// deterministic exact character samples; optional multiplicative hyperplane
// rho_hat(alpha) * hw(K_alpha) = q_alpha^t * hw(L_alpha)
inline Character sample_character(AlgebraCtx& ctx, detail::SampleRng& rng) {
    Character hw{ctx.field(), {}, {}};
    for (int j = 0; j < ctx.rank(); ++j) {
        hw.kvals.push_back(rng.value(ctx.field()));
        hw.lvals.push_back(rng.value(ctx.field()));
    }
    return hw;
}

inline Character sample_character_on_hyperplane(AlgebraCtx& ctx, const Weight& alpha, long t,
                                                detail::SampleRng& rng) {
    const Scalar qa = ctx.chi.root_q(alpha);
    std::size_t pivot = alpha.size();
    for (std::size_t j = 0; j < alpha.size(); ++j)
        if (alpha[j] == 1 || alpha[j] == -1) {
            pivot = j;
            break;
        }
    if (pivot == alpha.size())
        throw HypothesisViolated("no unit coordinate in " + weight_str(alpha) +
                                 "; cannot solve the hyperplane for a character value");
    Character hw = sample_character(ctx, rng);
    // rho * prod K^alpha = q^t * prod L^alpha, solved for the pivot L-value
    Scalar rhs = ctx.chi.rho_hat(alpha) * qa.pow(-t) *
                 hw.eval(alpha, weight_zero(ctx.rank()));
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (j == pivot || alpha[j] == 0) continue;
        rhs *= hw.lvals[j].pow(-alpha[j]);
    }
    hw.lvals[pivot] = (alpha[pivot] == 1) ? rhs : rhs.inv();
    return hw;
}

struct RankBoundReport {
    Weight beta;
    Weight alpha;
    long t = 0;
    long deficit = 0;       // forced rank drop
    std::size_t dim = 0;    // matrix size
    long samples = 0;
    long equality_hits = 0;
    bool radical_generated = false;
};

// evaluated transfer matrices on the hyperplane of one root and exponent:
// rank never exceeds dim - deficit, reaches it generically, and the kernel
// is generated from the degree-t*alpha highest vector
inline RankBoundReport rank_bound_check(AlgebraCtx& ctx, const Weight& beta,
                                        std::size_t alpha_index, long t, long nsamples,
                                        std::uint64_t seed) {
    const RootSystemData& rd = ctx.roots();
    const Weight alpha = rd.roots[alpha_index];
    const Scalar& qa = rd.root_qs[alpha_index];
    if (qa.is_one())
        throw HypothesisViolated("self-pairing value 1 at root " + weight_str(alpha));
    long r = multiset_count_at_least(rd, beta, alpha_index, t);
    if (r < 1)
        throw HypothesisViolated("no admissible multiset of " + weight_str(beta) + " uses " +
                                 weight_str(alpha) + " at least " + std::to_string(t) + " times");
    ShapovalovMatrix s = shapovalov_matrix(ctx, beta);
    RankBoundReport rep;
    rep.beta = beta;
    rep.alpha = alpha;
    rep.t = t;
    rep.deficit = r;
    rep.dim = s.dim();
    rep.samples = nsamples;
    long kap_a = kappa(qa);
    detail::SampleRng rng(seed);
    for (long it = 0; it < nsamples; ++it) {
        Character hw = sample_character_on_hyperplane(ctx, alpha, t, rng);
        std::size_t rank = detail::scalar_mat_rank(s.eval(hw), ctx.field());
        if (rank > s.dim() - static_cast<std::size_t>(r))
            throw VerificationFailed("rank " + std::to_string(rank) + " above the bound " +
                                     std::to_string(s.dim() - static_cast<std::size_t>(r)) +
                                     " at " + weight_str(beta) + " on the hyperplane of " +
                                     weight_str(alpha) + ", exponent " + std::to_string(t));
        // genericity: stay off every other vanishing locus of the closed product
        bool generic = true;
        for (std::size_t a = 0; a < rd.roots.size() && generic; ++a)
            for (long tp = 1;; ++tp) {
                if (multiset_count_at_least(rd, beta, a, tp) == 0) break;
                if (a == alpha_index && kap_a >= 2 && (tp - t) % kap_a == 0) continue;
                if (a == alpha_index && kap_a < 2 && tp == t) continue;
                if (detail::hyperplane_value(ctx, hw, rd.roots[a], rd.root_qs[a], tp).is_zero()) {
                    generic = false;
                    break;
                }
            }
        if (!generic || rank != s.dim() - static_cast<std::size_t>(r)) continue;
        ++rep.equality_hits;
        if (rep.radical_generated) continue;
        // generate the radical slice from the degree-t*alpha highest vector
        std::vector<VermaVector> kern = verma_radical(ctx, hw, t * alpha);
        std::vector<VermaVector> singulars;
        for (const auto& v : kern) {
            bool killed = true;
            for (int j = 0; j < ctx.rank() && killed; ++j)
                killed = verma_act(ctx, gen_E(ctx, j), v).is_zero();
            if (killed) singulars.push_back(v);
        }
        if (singulars.size() != 1) continue;
        const AlgebraCtx::DegreeBasis& rest = ctx.basis(beta - t * alpha);
        std::vector<VermaVector> generated;
        for (const Word& w : rest.fwords) {
            AlgebraElem fe(ctx.field(), ctx.rank());
            fe.add_term({w, weight_zero(ctx.rank()), weight_zero(ctx.rank()), {}},
                        Scalar::one(ctx.field()));
            generated.push_back(verma_act(ctx, fe, singulars.front()));
        }
        std::vector<VermaVector> radical = verma_radical(ctx, hw, beta);
        if (radical.size() != static_cast<std::size_t>(r)) continue;
        std::vector<VermaVector> both = generated;
        both.insert(both.end(), radical.begin(), radical.end());
        if (verma_span_dim(ctx.field(), generated) == static_cast<std::size_t>(r) &&
            verma_span_dim(ctx.field(), both) == static_cast<std::size_t>(r))
            rep.radical_generated = true;
    }
    if (rep.equality_hits == 0)
        throw VerificationFailed("no sampled character reached the rank bound at " +
                                 weight_str(beta) + " for " + weight_str(alpha) + ", exponent " +
                                 std::to_string(t));
    if (!rep.radical_generated)
        throw VerificationFailed("radical slice at " + weight_str(beta) +
                                 " was never generated from the degree-" +
                                 weight_str(t * alpha) + " highest vector");
    return rep;
}

} // namespace gqg
