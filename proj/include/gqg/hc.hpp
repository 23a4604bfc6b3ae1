#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gqg/verma.hpp"

namespace gqg {

// ---- coefficient windows ----------------------------------------------------

// finite set of (lambda, mu) torus-weight pairs carrying the coefficients of a
// candidate toral element; everything outside the window counts as zero
struct HCWindow {
    int rank = 0;
    long radius = 0;
    std::vector<std::pair<Weight, Weight>> pairs;  // sorted, unique
    std::map<std::pair<Weight, Weight>, std::size_t> pos;

    std::size_t size() const { return pairs.size(); }
    std::optional<std::size_t> find(const Weight& la, const Weight& mu) const {
        auto it = pos.find({la, mu});
        if (it == pos.end()) return std::nullopt;
        return it->second;
    }
};

inline HCWindow window_from_pairs(int rank, std::vector<std::pair<Weight, Weight>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    HCWindow w;
    w.rank = rank;
    for (const auto& [la, mu] : pairs)
        for (int j = 0; j < rank; ++j)
            w.radius = std::max({w.radius, std::labs(la[j]), std::labs(mu[j])});
    w.pairs = std::move(pairs);
    for (std::size_t i = 0; i < w.pairs.size(); ++i) w.pos.emplace(w.pairs[i], i);
    return w;
}

namespace detail {

inline bool in_box(const Weight& w, long r) {
    for (long x : w)
        if (x > r || x < -r) return false;
    return true;
}

inline long floordiv(long a, long b) {  // b > 0
    long q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

}  // namespace detail

// grow the seed pairs along every root direction, staying inside the
// coordinate box of the given radius
inline HCWindow window_closure(const RootSystemData& rsd,
                               const std::vector<std::pair<Weight, Weight>>& seeds, long radius) {
    std::set<std::pair<Weight, Weight>> acc(seeds.begin(), seeds.end());
    std::vector<std::pair<Weight, Weight>> work(acc.begin(), acc.end());
    while (!work.empty()) {
        auto [la, mu] = work.back();
        work.pop_back();
        for (const Weight& beta : rsd.roots)
            for (long t = -radius; t <= radius; ++t) {
                if (t == 0) continue;
                Weight la2 = la + t * beta, mu2 = mu + (-t) * beta;
                if (!detail::in_box(la2, radius) || !detail::in_box(mu2, radius)) continue;
                if (acc.insert({la2, mu2}).second) work.emplace_back(la2, mu2);
            }
    }
    return window_from_pairs(rsd.chi0.rank, {acc.begin(), acc.end()});
}

// every pair whose coordinates all lie in [-radius, radius]
inline HCWindow window_box(int rank, long radius) {
    std::vector<Weight> grid;
    Weight cur(static_cast<std::size_t>(rank), -radius);
    for (;;) {
        grid.push_back(cur);
        int j = 0;
        while (j < rank && cur[j] == radius) cur[j++] = -radius;
        if (j == rank) break;
        ++cur[j];
    }
    std::vector<std::pair<Weight, Weight>> pairs;
    pairs.reserve(grid.size() * grid.size());
    for (const Weight& la : grid)
        for (const Weight& mu : grid) pairs.emplace_back(la, mu);
    return window_from_pairs(rank, std::move(pairs));
}

// one beta-string inside a window: all pairs of the form (rep + t*beta, rep' - t*beta)
struct HCLadder {
    Weight beta;
    Weight rep_la, rep_mu;
    std::vector<std::pair<long, std::size_t>> members;  // (offset, pair index), ascending
};

inline std::vector<HCLadder> window_ladders(const HCWindow& w, const Weight& beta) {
    std::size_t j0 = 0;
    while (j0 < beta.size() && beta[j0] == 0) ++j0;
    std::map<std::pair<Weight, Weight>, HCLadder> grouped;
    for (std::size_t p = 0; p < w.pairs.size(); ++p) {
        const auto& [la, mu] = w.pairs[p];
        long t = detail::floordiv(la[j0], beta[j0]);
        Weight rla = la + (-t) * beta, rmu = mu + t * beta;
        auto key = std::make_pair(rla, rmu);
        auto it = grouped.find(key);
        if (it == grouped.end()) {
            HCLadder lad;
            lad.beta = beta;
            lad.rep_la = rla;
            lad.rep_mu = rmu;
            it = grouped.emplace(std::move(key), std::move(lad)).first;
        }
        it->second.members.emplace_back(t, p);
    }
    std::vector<HCLadder> out;
    out.reserve(grouped.size());
    for (auto& [key, lad] : grouped) {
        std::sort(lad.members.begin(), lad.members.end());
        out.push_back(std::move(lad));
    }
    return out;
}

// ---- ladder equations --------------------------------------------------------

struct HCSystem {
    HCWindow window;
    EtaHom eta;
    ScalarMat rows;  // deduplicated, each of length window.size()
    std::size_t anchors = 0;
};

// assemble the exact linear conditions a toral element must satisfy to be the
// transfer image of a skew-commuting element: every root string either scales
// coefficients by powers of the rho-hat weight, kills them, or ties together
// the string's orbit sums.  Sums are truncated to the window; referenced pairs
// outside it count as zero, which turns unreachable partners into vanishing
// conditions.
inline HCSystem hc_constraints(const Bicharacter& chi, const RootSystemData& rsd,
                               const EtaHom& eta, const HCWindow& window) {
    const FieldSpec& f = chi.field;
    for (const Scalar& q : rsd.root_qs)
        if (q.is_one())
            throw HypothesisViolated("a positive root pairs to 1, so the string equations degenerate");
    HCSystem sys;
    sys.window = window;
    sys.eta = eta;
    std::set<std::vector<std::string>> seen;
    auto push_row = [&](std::vector<Scalar> row) {
        std::size_t lead = row.size();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead == row.size()) return;
        Scalar s = row[lead].inv();
        std::vector<std::string> key;
        key.reserve(row.size());
        for (auto& c : row) {
            c *= s;
            key.push_back(c.str());
        }
        if (seen.insert(std::move(key)).second) sys.rows.push_back(std::move(row));
    };
    std::size_t n = window.size();
    for (std::size_t ri = 0; ri < rsd.roots.size(); ++ri) {
        const Weight& beta = rsd.roots[ri];
        const Scalar& qb = rsd.root_qs[ri];
        Scalar rb = chi.rho_hat(beta);
        long kap = kappa(qb);
        for (const HCLadder& lad : window_ladders(window, beta)) {
            if (kap == 0) {
                // free string: each pair is paired with at most one partner,
                // found by a bounded power search
                long reach = 4 * window.radius + 2;
                for (const auto& [off, p] : lad.members) {
                    ++sys.anchors;
                    const auto& [la, mu] = window.pairs[p];
                    auto t = disc_log(qb, eta_shift(eta, chi, la, mu, beta), -reach, reach);
                    if (!t) {  // shift misses every reachable power: the coefficient dies
                        std::vector<Scalar> row(n, Scalar::zero(f));
                        row[p] = Scalar::one(f);
                        push_row(std::move(row));
                        continue;
                    }
                    if (*t == 0) continue;  // self-paired, no condition
                    std::vector<Scalar> row(n, Scalar::zero(f));
                    auto q = window.find(la + *t * beta, mu + (-*t) * beta);
                    if (q) {
                        row[*q] = Scalar::one(f);
                        row[p] = -rb.pow(*t);
                    } else {  // partner truncated away
                        row[p] = Scalar::one(f);
                    }
                    push_row(std::move(row));
                }
            } else {
                // periodic string: orbit sums over offset classes mod kap must
                // agree; anchor one period past each end so no relation between
                // the window's classes is missed
                long lo = lad.members.front().first - kap;
                long hi = lad.members.back().first + kap;
                for (long off = lo; off <= hi; ++off) {
                    ++sys.anchors;
                    Weight la = lad.rep_la + off * beta, mu = lad.rep_mu + (-off) * beta;
                    auto t0 = disc_log(qb, eta_shift(eta, chi, la, mu, beta), 0, kap - 1);
                    std::vector<long> ts;
                    if (t0) {
                        if (*t0 == 0) continue;  // balanced shift, no condition
                        ts.push_back(*t0);
                    } else {
                        for (long t = 1; t <= kap - 1; ++t) ts.push_back(t);
                    }
                    for (long t : ts) {
                        std::vector<Scalar> row(n, Scalar::zero(f));
                        for (const auto& [moff, p] : lad.members) {
                            long s = moff - off;
                            long cls = ((s % kap) + kap) % kap;
                            if (cls == t)
                                row[p] += rb.pow(-s);
                            else if (cls == 0)
                                row[p] -= rb.pow(-s);
                        }
                        push_row(std::move(row));
                    }
                }
            }
        }
    }
    return sys;
}

inline bool hc_satisfies(const HCSystem& sys, const std::vector<Scalar>& coeffs) {
    for (const auto& row : sys.rows) {
        Scalar acc = Scalar::zero(sys.eta.field);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero() && !coeffs[j].is_zero()) acc += row[j] * coeffs[j];
        if (!acc.is_zero()) return false;
    }
    return true;
}

// ---- solutions ---------------------------------------------------------------

struct HCSolution {
    HCWindow window;
    EtaHom eta;
    std::vector<Scalar> coeffs;  // aligned with window.pairs

    U0Elem to_u0() const {
        U0Elem r = U0Elem::zero(eta.field, window.rank);
        for (std::size_t p = 0; p < coeffs.size(); ++p)
            if (!coeffs[p].is_zero())
                r.add_term(window.pairs[p].first, window.pairs[p].second, coeffs[p]);
        return r;
    }
};

inline std::vector<HCSolution> solve_B_eta(const Bicharacter& chi, const RootSystemData& rsd,
                                           const EtaHom& eta, const HCWindow& window) {
    HCSystem sys = hc_constraints(chi, rsd, eta, window);
    ScalarMat basis = scalar_mat_nullspace(sys.rows, window.size(), chi.field);
    std::vector<HCSolution> out;
    out.reserve(basis.size());
    for (auto& v : basis) out.push_back(HCSolution{window, eta, std::move(v)});
    return out;
}

// wrap a toral element as a solution candidate on its own support
inline HCSolution hc_candidate(const EtaHom& eta, const U0Elem& p) {
    std::vector<std::pair<Weight, Weight>> supp;
    supp.reserve(p.terms.size());
    for (const auto& [k, c] : p.terms) supp.push_back(k);
    HCWindow w = window_from_pairs(p.rank, std::move(supp));
    std::vector<Scalar> coeffs(w.size(), Scalar::zero(eta.field));
    for (const auto& [k, c] : p.terms) coeffs[*w.find(k.first, k.second)] = c;
    return HCSolution{std::move(w), eta, std::move(coeffs)};
}

// ---- twisted-character compatibility ----------------------------------------

// twisting a character across the hyperplane attached to (beta, t) rescales
// every solution value by the same root of eta
inline bool smscP_check(const Bicharacter& chi, const EtaHom& eta, const HCSolution& p,
                        const Weight& beta, long t, const Character& lam) {
    Scalar qb = chi.root_q(beta);
    if (qb.is_one()) throw HypothesisViolated("the root pairs to 1");
    auto kp = kappa_prime(qb);
    if (t < 1 || (kp && t > *kp - 1))
        throw HypothesisViolated("twist exponent outside the admissible range");
    if (!(lam.eval(beta, (-1L) * beta) == qb.pow(t) / chi.rho_hat(beta)))
        throw HypothesisViolated("the character misses the twisting hyperplane");
    Scalar lhs = Scalar::zero(chi.field), rhs = Scalar::zero(chi.field);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i].is_zero()) continue;
        const auto& [la, mu] = p.window.pairs[i];
        Scalar base = p.coeffs[i] * lam.eval(la, mu);
        lhs += base * chi.eval(beta, mu).pow(t) * chi.eval(la, beta).pow(-t);
        rhs += base;
    }
    return lhs == rhs * eta.eval(beta).pow(-t);
}

// ---- reconstruction ----------------------------------------------------------

struct SkewCentralElement {
    AlgebraElem element;
    EtaHom eta;
    U0Elem source;  // the toral element it was grown from
};

// total degree of the toral element once its exponents are shifted to be
// nonnegative; bounds how deep the reconstruction has to descend
inline long hc_degree_bound(const U0Elem& p) {
    if (p.terms.empty()) return 0;
    Weight lmin = p.terms.begin()->first.first, mmin = p.terms.begin()->first.second;
    for (const auto& [k, c] : p.terms)
        for (int j = 0; j < p.rank; ++j) {
            lmin[j] = std::min(lmin[j], k.first[j]);
            mmin[j] = std::min(mmin[j], k.second[j]);
        }
    long best = 0;
    for (const auto& [k, c] : p.terms) {
        long d = 0;
        for (int j = 0; j < p.rank; ++j) d += (k.first[j] - lmin[j]) + (k.second[j] - mmin[j]);
        best = std::max(best, d);
    }
    return best;
}

namespace detail {

inline void weights_of_height_rec(int rank, int j, long rem, Weight& cur,
                                  std::vector<Weight>& out) {
    if (j == rank - 1) {
        cur[j] = rem;
        out.push_back(cur);
        return;
    }
    for (long v = 0; v <= rem; ++v) {
        cur[j] = v;
        weights_of_height_rec(rank, j + 1, rem - v, cur, out);
    }
}

inline std::vector<Weight> weights_of_height(int rank, long h) {
    std::vector<Weight> out;
    Weight cur(static_cast<std::size_t>(rank), 0);
    weights_of_height_rec(rank, 0, h, cur, out);
    return out;
}

inline AlgebraElem fword_elem(AlgebraCtx& ctx, const Word& w) {
    AlgebraElem r(ctx.field(), ctx.rank());
    r.add_term({w, weight_zero(ctx.rank()), weight_zero(ctx.rank()), {}}, Scalar::one(ctx.field()));
    return r;
}

inline AlgebraElem eword_elem(AlgebraCtx& ctx, const Word& w) {
    AlgebraElem r(ctx.field(), ctx.rank());
    r.add_term({{}, weight_zero(ctx.rank()), weight_zero(ctx.rank()), w}, Scalar::one(ctx.field()));
    return r;
}

}  // namespace detail

// grow the toral seed into a full skew-commuting element, degree by degree: at
// each degree the required lowering-side coordinates come from pairing the
// partial sum against the basis, and the transfer matrix is inverted exactly
// via its adjugate.  Divisions are required to clear; a residue would mean the
// seed was not liftable after all.
inline SkewCentralElement reconstruct_center(AlgebraCtx& ctx, const RootSystemData& rsd,
                                             const EtaHom& eta, const HCSolution& p) {
    const FieldSpec& f = ctx.field();
    int n = ctx.rank();
    HCSystem sys = hc_constraints(ctx.chi, rsd, eta, p.window);
    if (!hc_satisfies(sys, p.coeffs))
        throw NotInB("the seed toral element violates its own string equations");
    U0Elem p0 = p.to_u0();
    AlgebraElem pelem = from_u0(ctx, p0);
    AlgebraElem v = pelem;
    long bound = hc_degree_bound(p0);
    std::vector<Weight> processed;
    for (long h = 1; h <= bound + 1; ++h) {
        bool tail = (h == bound + 1);  // one height past the bound only audits
        for (const Weight& beta : detail::weights_of_height(n, h)) {
            const auto& db = ctx.basis(beta);
            std::size_t m = db.dim();
            if (m == 0) continue;
            std::map<Word, std::size_t> findex;
            for (std::size_t x = 0; x < m; ++x) findex.emplace(db.fwords[x], x);
            Scalar em = eta.eval((-1L) * beta);
            std::vector<std::vector<U0Elem>> cmat(m, std::vector<U0Elem>(m, U0Elem::zero(f, n)));
            bool any = false;
            for (std::size_t y = 0; y < m; ++y) {
                AlgebraElem yy = detail::fword_elem(ctx, db.fwords[y]);
                AlgebraElem a = em * mul(ctx, yy, pelem) - mul(ctx, v, yy).lower_part();
                for (const auto& [k, c] : a.terms()) {
                    auto it = findex.find(k.fword);
                    if (!k.eword.empty() || it == findex.end())
                        throw InternalInconsistency(
                            "lowered product strays off the degree basis at " + weight_str(beta));
                    cmat[it->second][y].add_term(k.kw, k.lw, c);
                    any = true;
                }
            }
            if (!any) continue;
            if (tail)
                throw VerificationFailed("degree bound missed a nonzero tail at " + weight_str(beta));
            ShapovalovMatrix sm = shapovalov_matrix(ctx, beta);
            U0Elem det = u0_det(sm.entries, f, n);
            auto adj = u0_adjugate(sm.entries, f, n);
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t xp = 0; xp < m; ++xp) {
                    U0Elem num = U0Elem::zero(f, n);
                    for (std::size_t y = 0; y < m; ++y) num = num + cmat[x][y] * adj[y][xp];
                    if (num.terms.empty()) continue;
                    auto z = u0_div(num, det);
                    if (!z)
                        throw IntegralityFailed("transfer inverse leaves a residue at " +
                                                weight_str(beta));
                    v += mul(ctx, std::vector<AlgebraElem>{detail::fword_elem(ctx, db.fwords[x]),
                                                           from_u0(ctx, *z),
                                                           detail::eword_elem(ctx, db.ewords[xp])});
                }
            processed.push_back(beta);
        }
        if (tail) continue;
        // audit every degree handled so far: lowering the partial sum must
        // reproduce the seed, scaled by the grading character
        for (const Weight& bp : processed) {
            const auto& db = ctx.basis(bp);
            Scalar em = eta.eval((-1L) * bp);
            for (std::size_t y = 0; y < db.dim(); ++y) {
                AlgebraElem yy = detail::fword_elem(ctx, db.fwords[y]);
                if (!(mul(ctx, v, yy).lower_part() == em * mul(ctx, yy, pelem)))
                    throw VerificationFailed("lowered-product audit fails at " + weight_str(bp));
            }
        }
    }
    if (!(v.toral_part() == p0) || !is_skew_central(ctx, v, eta))
        throw VerificationFailed("reconstructed element fails the commutation audit");
    return SkewCentralElement{std::move(v), eta, std::move(p0)};
}

inline bool verify_skew_central(AlgebraCtx& ctx, const AlgebraElem& v, const EtaHom& eta) {
    return is_skew_central(ctx, v, eta);
}

// toral part of a skew-commuting element; certifies on the way out that the
// image satisfies the string equations on its own support
inline U0Elem hc_image(AlgebraCtx& ctx, const RootSystemData& rsd, const EtaHom& eta,
                       const AlgebraElem& v) {
    if (!is_skew_central(ctx, v, eta))
        throw HypothesisViolated("the element is not skew-commuting for this grading character");
    U0Elem p = v.toral_part();
    if (p.terms.empty()) return p;
    HCSolution cand = hc_candidate(eta, p);
    HCSystem sys = hc_constraints(ctx.chi, rsd, eta, cand.window);
    if (!hc_satisfies(sys, cand.coeffs))
        throw VerificationFailed("a skew-commuting element's toral part escapes the string equations");
    return p;
}

// ---- reflection compatibility -------------------------------------------------

// pushing a skew-commuting element through the i-th reflection operator
// multiplies its toral part by a diagonal character; both sides are compared
// exactly.  The input lives over the reflected bicharacter and must be
// skew-commuting for the pulled-back grading character.
inline bool shift_conjugation_check(CtxStore& store, AlgebraCtx& dst, int i, const EtaHom& eta,
                                    const AlgebraElem& v_src) {
    int n = dst.rank();
    Bicharacter rchi = reflect(dst.chi, i, dst.cartan_cap);
    AlgebraCtx& src = store.get(rchi);
    EtaHom eta_src{eta.field, {}};
    for (int j = 0; j < n; ++j)
        eta_src.vals.push_back(
            eta.eval(reflect_weight(dst.chi, i, unit_weight(n, j), dst.cartan_cap)));
    if (!is_skew_central(src, v_src, eta_src))
        throw HypothesisViolated("the element is not skew-commuting in the reflected presentation");
    U0Elem lhs = reflection_op(dst, i, v_src).toral_part();
    long e = kappa(dst.chi.qij(i, i)) - 1;
    Weight ai = unit_weight(n, i);
    U0Elem rhs = U0Elem::zero(dst.field(), n);
    for (const auto& [k, c] : v_src.toral_part().terms) {
        Weight sl = reflect_weight(dst.chi, i, k.first, dst.cartan_cap);
        Weight sm = reflect_weight(dst.chi, i, k.second, dst.cartan_cap);
        Scalar fac =
            eta.eval(ai).pow(e) * dst.chi.eval(ai, sm).pow(e) * dst.chi.eval(sl, ai).pow(-e);
        rhs = rhs + U0Elem::monomial(dst.field(), n, sl, sm, c * fac);
    }
    return lhs == rhs;
}

// dimension of the span of a family of algebra elements
inline std::size_t elem_span_dim(const FieldSpec& f, const std::vector<AlgebraElem>& els) {
    std::map<TriKey, std::size_t> cols;
    for (const auto& e : els)
        for (const auto& [k, c] : e.terms())
            if (!cols.count(k)) cols.emplace(k, cols.size());
    if (cols.empty()) return 0;
    ScalarMat m;
    for (const auto& e : els) {
        std::vector<Scalar> row(cols.size(), Scalar::zero(f));
        for (const auto& [k, c] : e.terms()) row[cols.at(k)] = c;
        m.push_back(std::move(row));
    }
    return detail::scalar_mat_rank(std::move(m), f);
}

}  // namespace gqg
