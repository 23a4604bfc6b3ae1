#pragma once

#include "lattice.hpp"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gqg {

struct GroupoidCaps {
    long roots = 1024;
    long objects = 4096;
    long cartan = 64;
    // bounds the height of any single root: past this the system is infinite
    // for every matrix this library can finish on, and the self-pairing values
    // would grow quadratically in degree
    long root_height = 512;
};

// N_ij = max{ m : (m)_{q_ii}! (m; q_ii, q_ij q_ji)! != 0 }, with N_ii = -2,
// so that the i-th reflection sends a_j to a_j + N_ij a_i for every j.
inline long cartan_entry(const Bicharacter& chi, int i, int j, long cap = 64) {
    if (i == j) return -2;
    const Scalar& qii = chi.qij(i, i);
    Scalar qq = chi.qij(i, j) * chi.qij(j, i);
    Scalar value = Scalar::one(chi.field);
    for (long m = 0; m <= cap; ++m) {
        Scalar next = value * qnum(m + 1, qii) * qpair(m + 1, qii, qq);
        if (next.is_zero()) return m;
        value = next;
    }
    throw CapExceeded("cartan_entry(" + std::to_string(i) + "," + std::to_string(j) +
                      ") exceeds cap " + std::to_string(cap));
}

// s_i as a lattice map: e_j -> e_j + N_ij e_i (N_ii = -2).
inline Weight reflect_weight(const Bicharacter& chi, int i, const Weight& w, long cap = 64) {
    long shift = 0;
    for (int j = 0; j < chi.rank; ++j) {
        long wj = w[static_cast<std::size_t>(j)];
        if (wj != 0) shift += wj * cartan_entry(chi, i, j, cap);
    }
    Weight r = w;
    r[static_cast<std::size_t>(i)] += shift;
    return r;
}

// reflected bicharacter tau_i(chi): entries chi(s_i e_j, s_i e_k)
inline Bicharacter reflect(const Bicharacter& chi, int i, long cap = 64) {
    Bicharacter out{chi.field, chi.rank, chi.q};
    std::vector<Weight> img;
    img.reserve(static_cast<std::size_t>(chi.rank));
    for (int j = 0; j < chi.rank; ++j)
        img.push_back(reflect_weight(chi, i, unit_weight(chi.rank, j), cap));
    for (int j = 0; j < chi.rank; ++j)
        for (int k = 0; k < chi.rank; ++k)
            out.q[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                chi.eval(img[static_cast<std::size_t>(j)], img[static_cast<std::size_t>(k)]);
    return out;
}

// integer matrix as columns of weights: M e_j = cols[j]
struct LatticeMap {
    std::vector<Weight> cols;

    static LatticeMap identity(int rank) {
        LatticeMap m;
        for (int j = 0; j < rank; ++j) m.cols.push_back(unit_weight(rank, j));
        return m;
    }
    Weight apply(const Weight& w) const {
        Weight r = weight_zero(static_cast<int>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (w[j] != 0) r = r + w[j] * cols[j];
        return r;
    }
    LatticeMap compose(const LatticeMap& inner) const { // this . inner
        LatticeMap m;
        for (const auto& c : inner.cols) m.cols.push_back(apply(c));
        return m;
    }
    bool is_identity() const {
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (cols[j] != unit_weight(static_cast<int>(cols.size()), static_cast<int>(j)))
                return false;
        return true;
    }
};

inline LatticeMap reflection_map(const Bicharacter& chi, int i, long cap = 64) {
    LatticeMap m;
    for (int j = 0; j < chi.rank; ++j)
        m.cols.push_back(reflect_weight(chi, i, unit_weight(chi.rank, j), cap));
    return m;
}

struct RootSystemData {
    Bicharacter chi0;
    std::vector<int> word;          // reduced expression of the longest element
    std::vector<Weight> roots;      // positive roots in discovery order
    std::vector<Bicharacter> chain; // chain[t] = object after t reflections
    std::vector<Scalar> root_qs;    // chi(beta, beta) per root

    long theta() const { return static_cast<long>(roots.size()); }
    long root_index(const Weight& beta) const {
        for (std::size_t t = 0; t < roots.size(); ++t)
            if (roots[t] == beta) return static_cast<long>(t);
        return -1;
    }
};

// Greedy longest-word walk: repeatedly apply the reflection with the smallest
// index whose candidate root is still positive; the candidates enumerate the
// positive roots exactly once.
inline RootSystemData enumerate_roots(const Bicharacter& chi, const GroupoidCaps& caps = {}) {
    RootSystemData out;
    out.chi0 = chi;
    out.chain.push_back(chi);
    LatticeMap m = LatticeMap::identity(chi.rank);
    std::set<Weight> seen;
    for (;;) {
        int pick = -1;
        Weight cand;
        for (int i = 0; i < chi.rank; ++i) {
            Weight beta = m.apply(unit_weight(chi.rank, i));
            if (all_nonneg(beta) && !is_zero_weight(beta)) {
                pick = i;
                cand = beta;
                break;
            }
        }
        if (pick < 0) break;
        if (static_cast<long>(out.roots.size()) >= caps.roots)
            throw CapExceeded("positive-root enumeration exceeded cap " +
                              std::to_string(caps.roots));
        long height = 0;
        for (long c : cand) height += c;
        if (height > caps.root_height)
            throw CapExceeded("positive root " + weight_str(cand) + " exceeds height cap " +
                              std::to_string(caps.root_height));
        if (!seen.insert(cand).second)
            throw InternalInconsistency("repeated positive root " + weight_str(cand));
        const Bicharacter& cur = out.chain.back();
        out.word.push_back(pick);
        out.roots.push_back(cand);
        out.root_qs.push_back(chi.eval(cand, cand));
        m = m.compose(reflection_map(cur, pick, caps.cartan));
        out.chain.push_back(reflect(cur, pick, caps.cartan));
    }
    return out;
}

// number of positive roots in the i-j cone; checks the alternating word of
// that length returns to the same object with the identity lattice map
inline long rank2_mij(const Bicharacter& chi, int i, int j, const GroupoidCaps& caps = {}) {
    if (i == j) return 1;
    RootSystemData rd = enumerate_roots(chi, caps);
    long m = 0;
    for (const auto& beta : rd.roots) {
        bool in_cone = true;
        for (int k = 0; k < chi.rank; ++k)
            if (k != i && k != j && beta[static_cast<std::size_t>(k)] != 0) in_cone = false;
        if (in_cone) ++m;
    }
    // alternating defining relation
    Bicharacter cur = chi;
    LatticeMap w = LatticeMap::identity(chi.rank);
    for (long s = 0; s < 2 * m; ++s) {
        int idx = (s % 2 == 0) ? i : j;
        w = w.compose(reflection_map(cur, idx, caps.cartan));
        cur = reflect(cur, idx, caps.cartan);
    }
    if (!(cur == chi) || !w.is_identity())
        throw InternalInconsistency("alternating word of length 2*m_ij is not the identity");
    return m;
}

struct GroupoidData {
    std::vector<Bicharacter> objects;
    std::map<std::pair<std::size_t, int>, std::size_t> edges; // (object, i) -> object
};

// breadth-first closure under the reflections tau_i
inline GroupoidData explore_groupoid(const Bicharacter& chi, const GroupoidCaps& caps = {}) {
    GroupoidData g;
    std::map<std::string, std::size_t> index;
    std::deque<std::size_t> queue;
    g.objects.push_back(chi);
    index.emplace(chi.key(), 0);
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t at = queue.front();
        queue.pop_front();
        for (int i = 0; i < chi.rank; ++i) {
            Bicharacter nb = reflect(g.objects[at], i, caps.cartan);
            // reflections are involutive object-wise
            if (!(reflect(nb, i, caps.cartan) == g.objects[at]))
                throw InternalInconsistency("reflection is not involutive at object " +
                                            std::to_string(at));
            // the Cartan entries agree across the edge
            for (int j = 0; j < chi.rank; ++j)
                if (cartan_entry(g.objects[at], i, j, caps.cartan) !=
                    cartan_entry(nb, i, j, caps.cartan))
                    throw InternalInconsistency("Cartan entries differ across an edge");
            auto it = index.find(nb.key());
            std::size_t to;
            if (it == index.end()) {
                if (static_cast<long>(g.objects.size()) >= caps.objects)
                    throw CapExceeded("groupoid exploration exceeded object cap " +
                                      std::to_string(caps.objects));
                to = g.objects.size();
                g.objects.push_back(nb);
                index.emplace(nb.key(), to);
                queue.push_back(to);
            } else {
                to = it->second;
            }
            g.edges[{at, i}] = to;
        }
    }
    return g;
}

// length of the morphism given by a composable word, computed two ways:
// by the inversion-set formula and by stepwise +-1 increments
inline long word_length(const Bicharacter& chi, const std::vector<int>& word,
                        const GroupoidCaps& caps = {}) {
    Bicharacter cur = chi;
    LatticeMap w = LatticeMap::identity(chi.rank);
    long steps = 0;
    for (int i : word) {
        Weight cand = w.apply(unit_weight(chi.rank, i));
        steps += all_nonneg(cand) ? 1 : -1;
        w = w.compose(reflection_map(cur, i, caps.cartan));
        cur = reflect(cur, i, caps.cartan);
    }
    RootSystemData rb = enumerate_roots(cur, caps);
    long inv = 0;
    for (const auto& beta : rb.roots) {
        Weight img = w.apply(beta);
        if (all_nonpos(img) && !is_zero_weight(img)) ++inv;
    }
    if (inv != steps)
        throw InternalInconsistency("length formulas disagree: inversions " +
                                    std::to_string(inv) + " vs incremental " +
                                    std::to_string(steps));
    return inv;
}

// multiset of positive roots with multiplicities c(alpha) summing to beta,
// where each exponent keeps (c)_{q_alpha}! nonzero
using RootMultiset = std::map<std::size_t, long>; // root index -> exponent

inline void multiset_rec(const RootSystemData& rd, std::size_t at, Weight remaining,
                         RootMultiset& cur, std::vector<RootMultiset>& out) {
    if (is_zero_weight(remaining)) {
        out.push_back(cur);
        return;
    }
    if (at >= rd.roots.size()) return;
    if (!all_nonneg(remaining)) return;
    // exponent 0 first, then grow while admissible and fitting
    multiset_rec(rd, at + 1, remaining, cur, out);
    const Weight& alpha = rd.roots[at];
    const Scalar& qa = rd.root_qs[at];
    Scalar fact = Scalar::one(qa.field());
    Weight rest = remaining;
    for (long c = 1;; ++c) {
        fact *= qnum(c, qa);
        if (fact.is_zero()) break;
        rest = rest - alpha;
        if (!all_nonneg(rest)) break;
        cur[at] = c;
        multiset_rec(rd, at + 1, rest, cur, out);
        cur.erase(at);
    }
}

inline std::vector<RootMultiset> root_multisets(const RootSystemData& rd, const Weight& beta) {
    std::vector<RootMultiset> out;
    RootMultiset cur;
    multiset_rec(rd, 0, beta, cur, out);
    return out;
}

// multisets of beta whose alpha-exponent is >= t
inline std::vector<RootMultiset> root_multisets_filtered(const RootSystemData& rd,
                                                         const Weight& beta,
                                                         std::size_t alpha_index, long t) {
    std::vector<RootMultiset> out;
    for (auto& ms : root_multisets(rd, beta)) {
        auto it = ms.find(alpha_index);
        long c = (it == ms.end()) ? 0 : it->second;
        if (c >= t) out.push_back(std::move(ms));
    }
    return out;
}

// r(alpha, t) = number of multisets of beta whose alpha-exponent is >= t
inline long multiset_count_at_least(const RootSystemData& rd, const Weight& beta,
                                    std::size_t alpha_index, long t) {
    return static_cast<long>(root_multisets_filtered(rd, beta, alpha_index, t).size());
}

} // namespace gqg
