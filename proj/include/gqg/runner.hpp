#pragma once

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gqg/cache.hpp"
#include "gqg/json_io.hpp"
#include "gqg/rank1.hpp"

namespace gqg {

// an explicit q matrix wins over a preset; the preset fills the gap otherwise
inline void apply_preset(JobSpec& job) {
    if (job.qlit.empty() && !job.preset.empty()) {
        const PresetDef& def = find_preset(job.preset);
        job.field = def.field;
        job.qlit = def.q;
        job.chi = preset_chi(def);
    }
}

// ---- report pieces ---------------------------------------------------------------

inline Json u0_json(const U0Elem& p) {
    Json arr = Json::array();
    for (const auto& [kl, c] : p.terms) {
        Json term;
        term["k"] = weight_json(kl.first);
        term["l"] = weight_json(kl.second);
        term["c"] = c.str();
        arr.push_back(std::move(term));
    }
    return arr;
}

inline Json claim(const std::string& what, Json value, const std::string& identity) {
    Json c;
    c["claim"] = what;
    c["value"] = std::move(value);
    c["identity"] = identity;
    return c;
}

struct RunResult {
    Json report;
    int exit_code = 0;
};

namespace run_detail {

inline GroupoidCaps caps_of(const JobSpec& job) {
    GroupoidCaps caps;
    caps.roots = job.cap_roots;
    return caps;
}

inline std::uint64_t sample_seed() { return 0x5eedf00dULL; }

// ---- roots -----------------------------------------------------------------------

inline Json roots_payload(const Bicharacter& chi, const GroupoidCaps& caps) {
    RootSystemData rd = enumerate_roots(chi, caps);
    Json payload;
    payload["count"] = rd.theta();
    Json roots = Json::array(), qs = Json::array(), word = Json::array();
    for (std::size_t a = 0; a < rd.roots.size(); ++a) {
        roots.push_back(weight_json(rd.roots[a]));
        qs.push_back(rd.root_qs[a].str());
        word.push_back(rd.word[a]);
    }
    payload["roots"] = std::move(roots);
    payload["root_q"] = std::move(qs);
    payload["word"] = std::move(word);
    return payload;
}

inline Json cmd_roots(const JobSpec& job, std::size_t& cache_hits) {
    GroupoidCaps caps = caps_of(job);
    std::string dir = cache_dir(job.cache);
    std::string key = cache_key("roots", job.chi);
    Json payload;
    bool have = false;
    if (auto hit = cache_get(dir, key)) {
        if (hit->contains("count") && (*hit)["count"].is_number_integer() &&
            (*hit)["count"].get<long>() <= job.cap_roots)
        {
            payload = *hit;
            have = true;
            ++cache_hits;
        }
    }
    if (!have) {
        payload = roots_payload(job.chi, caps);
        cache_put(dir, key, payload);
    }
    for (int i = 0; i < job.chi.rank; ++i)
        if (!(reflect(reflect(job.chi, i), i) == job.chi))
            throw VerificationFailed("reflection at index " + std::to_string(i) +
                                     " fails to square to the identity");
    Json res;
    res["roots"] = payload;
    Json claims = Json::array();
    claims.push_back(claim("positive root count", payload["count"],
                           "each root is the degree of one generator on the longest-word chain, "
                           "and r_i(r_i(q)) = q holds for every index i"));
    res["claims"] = std::move(claims);
    return res;
}

// ---- groupoid --------------------------------------------------------------------

inline Json cmd_groupoid(const JobSpec& job, std::size_t& cache_hits) {
    GroupoidCaps caps = caps_of(job);
    std::string dir = cache_dir(job.cache);
    std::string key = cache_key("groupoid", job.chi);
    Json payload;
    bool have = false;
    if (auto hit = cache_get(dir, key)) {
        if (hit->contains("objects")) {
            payload = *hit;
            have = true;
            ++cache_hits;
        }
    }
    if (!have) {
        GroupoidData g = explore_groupoid(job.chi, caps);
        for (const auto& [from, to] : g.edges) {
            auto back = g.edges.find({to, from.second});
            if (back == g.edges.end() || back->second != from.first)
                throw VerificationFailed("reflection edge at object " +
                                         std::to_string(from.first) + ", index " +
                                         std::to_string(from.second) + " has no inverse edge");
        }
        payload["objects"] = g.objects.size();
        payload["edges"] = g.edges.size();
        Json mats = Json::array();
        for (const auto& obj : g.objects) {
            Json m = Json::array();
            for (int r = 0; r < obj.rank; ++r) {
                Json row = Json::array();
                for (int c = 0; c < obj.rank; ++c) row.push_back(obj.qij(r, c).str());
                m.push_back(std::move(row));
            }
            mats.push_back(std::move(m));
        }
        payload["object_matrices"] = std::move(mats);
        cache_put(dir, key, payload);
    }
    Json res;
    res["groupoid"] = payload;
    Json claims = Json::array();
    claims.push_back(claim("object count", payload["objects"],
                           "objects are the distinct q-matrices reachable by reflections, and "
                           "every edge (x, i) is inverted by the edge (r_i(x), i)"));
    res["claims"] = std::move(claims);
    return res;
}

// ---- graded dimensions -----------------------------------------------------------

inline void compositions_of(int rank, long h, Weight& cur, std::vector<Weight>& out) {
    if (rank == 1) {
        cur.push_back(h);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long x = 0; x <= h; ++x) {
        cur.push_back(x);
        compositions_of(rank - 1, h - x, cur, out);
        cur.pop_back();
    }
}

inline Json cmd_pbw_dims(const JobSpec& job, std::size_t& cache_hits) {
    GroupoidCaps caps = caps_of(job);
    std::string dir = cache_dir(job.cache);
    std::string key = cache_key("pbw-dims", job.chi, job.cap_height);
    Json payload;
    bool have = false;
    if (auto hit = cache_get(dir, key)) {
        if (hit->contains("heights")) {
            payload = *hit;
            have = true;
            ++cache_hits;
        }
    }
    long crosscheck_h = std::min<long>(job.cap_height, 3);
    if (!have) {
        RootSystemData rd = enumerate_roots(job.chi, caps);
        AlgebraCtx ctx(job.chi);
        Json heights = Json::array();
        for (long h = 0; h <= job.cap_height; ++h) {
            std::vector<Weight> betas;
            Weight cur;
            compositions_of(job.chi.rank, h, cur, betas);
            long total = 0;
            Json degs = Json::array();
            for (const auto& beta : betas) {
                std::size_t c = root_multisets(rd, beta).size();
                if (c == 0) continue;
                if (h <= crosscheck_h && ctx.basis(beta).fwords.size() != c)
                    throw VerificationFailed("graded dimension at " + weight_str(beta) +
                                             " disagrees with the raw word basis");
                total += static_cast<long>(c);
                Json d;
                d["degree"] = weight_json(beta);
                d["dim"] = c;
                degs.push_back(std::move(d));
            }
            Json row;
            row["height"] = h;
            row["total"] = total;
            row["degrees"] = std::move(degs);
            heights.push_back(std::move(row));
        }
        payload["heights"] = std::move(heights);
        cache_put(dir, key, payload);
    }
    Json res;
    res["dims"] = payload;
    Json claims = Json::array();
    claims.push_back(claim(
        "graded dimension table", payload["heights"],
        "the dimension in degree beta counts monomials in the root vectors with multiplicities "
        "below each root's nilpotency order; cross-checked against the raw word basis up to "
        "height " +
            std::to_string(crosscheck_h)));
    res["claims"] = std::move(claims);
    Json notices = Json::array();
    notices.push_back("dimension table truncated at height " + std::to_string(job.cap_height));
    res["notices"] = std::move(notices);
    return res;
}

// ---- transfer-matrix determinant ---------------------------------------------------

inline Json cmd_shapovalov(const JobSpec& job) {
    if (!job.root) throw ValidationError("field 'root' is required for shapovalov");
    AlgebraCtx ctx(job.chi);
    ShapoReport rep = shapovalov_det_verify(ctx, *job.root);
    Json res;
    res["degree"] = weight_json(rep.beta);
    res["dim"] = rep.dim;
    res["gram_det"] = rep.gram_det.str();
    res["det"] = u0_json(rep.det);
    Json factors = Json::array();
    for (const auto& fac : rep.factors) {
        Json f;
        f["root"] = weight_json(fac.root);
        f["t"] = fac.t;
        f["multiplicity"] = fac.mult;
        factors.push_back(std::move(f));
    }
    res["factors"] = std::move(factors);
    Json claims = Json::array();
    claims.push_back(claim(
        "determinant factorization", Json(rep.factors.size()),
        "det of the degree-" + weight_str(rep.beta) +
            " transfer matrix equals the Gram determinant times the product of "
            "(L_a - rho(a) q_a^{-t} K_a) over the listed factors, each to its multiplicity; "
            "verified exactly"));
    res["claims"] = std::move(claims);
    return res;
}

// ---- singular vectors ----------------------------------------------------------------

inline Json character_json(const Character& hw) {
    Json j;
    Json k = Json::array(), l = Json::array();
    for (const auto& v : hw.kvals) k.push_back(v.str());
    for (const auto& v : hw.lvals) l.push_back(v.str());
    j["k"] = std::move(k);
    j["l"] = std::move(l);
    return j;
}

inline Json cmd_singular(const JobSpec& job) {
    CtxStore store;
    AlgebraCtx& ctx = store.get(job.chi);
    const RootSystemData& rd = ctx.roots(caps_of(job));
    long m = job.position, t = job.twist;
    if (m < 1 || m > rd.theta())
        throw ValidationError("field 'position' must index a positive root, 1.." +
                              std::to_string(rd.theta()));
    Character hw{job.field, {}, {}};
    bool sampled = false;
    if (job.lambda) {
        hw = *job.lambda;
    } else {
        detail::SampleRng rng(sample_seed());
        hw = sample_character_on_hyperplane(ctx, rd.roots[static_cast<std::size_t>(m - 1)], t, rng);
        sampled = true;
    }
    VermaVector v = singular_vector(store, ctx, m, t, hw);
    if (v.is_zero()) throw VerificationFailed("singular vector construction returned zero");
    for (int i = 0; i < ctx.rank(); ++i)
        if (!verma_act(ctx, gen_E(ctx, i), v).is_zero())
            throw VerificationFailed("candidate vector is not annihilated by raising index " +
                                     std::to_string(i));
    std::vector<VermaVector> family = singular_submodule_family(store, ctx, m, t, v);
    std::size_t span = verma_span_dim(ctx.field(), family);
    if (span != family.size())
        throw VerificationFailed("singular family is linearly dependent: span " +
                                 std::to_string(span) + " of " + std::to_string(family.size()));
    Json res;
    res["position"] = m;
    res["twist"] = t;
    res["character"] = character_json(hw);
    res["character_sampled"] = sampled;
    res["degree"] = weight_json(Weight(rd.roots[static_cast<std::size_t>(m - 1)]));
    res["terms"] = v.terms.size();
    res["family_size"] = family.size();
    Json claims = Json::array();
    claims.push_back(claim("singular vector terms", Json(v.terms.size()),
                           "the vector is annihilated by every raising generator; checked for "
                           "each index by direct action"));
    claims.push_back(claim("submodule family rank", Json(span),
                           "the generated family is linearly independent: its span dimension "
                           "equals its size"));
    res["claims"] = std::move(claims);
    return res;
}

// ---- radical / rank bound --------------------------------------------------------------

inline Json cmd_radical(const JobSpec& job) {
    if (!job.root) throw ValidationError("field 'root' is required for radical");
    AlgebraCtx ctx(job.chi);
    const RootSystemData& rd = ctx.roots(caps_of(job));
    long a = job.position, t = job.twist;
    if (a < 1 || a > rd.theta())
        throw ValidationError("field 'position' must index a positive root, 1.." +
                              std::to_string(rd.theta()));
    RankBoundReport rep =
        rank_bound_check(ctx, *job.root, static_cast<std::size_t>(a - 1), t, 20, sample_seed());
    Json res;
    res["degree"] = weight_json(rep.beta);
    res["root"] = weight_json(rep.alpha);
    res["twist"] = rep.t;
    res["dim"] = rep.dim;
    res["deficit"] = rep.deficit;
    res["samples"] = rep.samples;
    res["equality_hits"] = rep.equality_hits;
    res["radical_generated"] = rep.radical_generated;
    Json claims = Json::array();
    claims.push_back(claim(
        "rank deficit", Json(rep.deficit),
        "on the hyperplane of the chosen root and exponent, the evaluated transfer matrix "
        "has rank at most dim - deficit, where the deficit counts admissible multisets using "
        "the root at least t times; checked on " +
            std::to_string(rep.samples) + " samples"));
    claims.push_back(claim("generic equality hits", Json(rep.equality_hits),
                           "samples off every other vanishing locus reach the bound exactly"));
    claims.push_back(claim("radical generated", Json(rep.radical_generated),
                           "the kernel slice in the twisted degree is generated by a single "
                           "vector killed by all raising generators"));
    res["claims"] = std::move(claims);
    return res;
}

// ---- rank-one center --------------------------------------------------------------------

inline Json cmd_center_rank1(const JobSpec& job) {
    AlgebraCtx ctx(job.chi);
    require_rank1(ctx);
    Scalar eta1 = job.eta ? job.eta->vals[0] : Scalar::one(job.field);
    CenterBasis cb = classify_center(ctx, eta1, job.box);
    std::vector<AlgebraElem> sols = center_solve_box(ctx, eta1, job.box);
    if (cb.dim() != sols.size())
        throw VerificationFailed("classification dimension " + std::to_string(cb.dim()) +
                                 " disagrees with the box solver dimension " +
                                 std::to_string(sols.size()));
    EtaHom eta{job.field, {eta1}};
    auto elem_row = [&](const CenterElement& ce, bool toral) {
        if (!is_skew_central(ctx, ce.elem, eta))
            throw VerificationFailed("classified element fails the commutation audit");
        Json e;
        e["kind"] = toral ? "toral" : "generic";
        e["k_shift"] = ce.lam;
        e["l_shift"] = ce.mu;
        e["layers"] = ce.deg;
        e["terms"] = ce.elem.terms().size();
        return e;
    };
    Json elems = Json::array();
    for (const auto& ce : cb.toral) elems.push_back(elem_row(ce, true));
    for (const auto& ce : cb.generic) elems.push_back(elem_row(ce, false));
    Json res;
    res["radius"] = job.box;
    res["eta"] = eta1.str();
    res["dim"] = cb.dim();
    res["elements"] = std::move(elems);
    Json claims = Json::array();
    claims.push_back(claim("center dimension in the box", Json(cb.dim()),
                           "the closed-form family and an independent linear solve over the "
                           "boxed support produce the same dimension, and every listed element "
                           "passes the commutation audit against all four generator types"));
    res["claims"] = std::move(claims);
    return res;
}

// ---- string equations: solve and lift --------------------------------------------------

struct HCWork {
    RootSystemData rd;
    EtaHom eta;
    HCWindow window;
    HCSystem sys;
    std::vector<HCSolution> sols;
};

inline HCWork hc_work(const JobSpec& job) {
    HCWork w{enumerate_roots(job.chi, caps_of(job)),
             job.eta ? *job.eta : EtaHom::trivial(job.field, job.chi.rank),
             {},
             {},
             {}};
    w.window = job.seeds.empty() ? window_box(job.chi.rank, job.box)
                                 : window_closure(w.rd, job.seeds, job.box);
    w.sys = hc_constraints(job.chi, w.rd, w.eta, w.window);
    w.sols = solve_B_eta(job.chi, w.rd, w.eta, w.window);
    for (const auto& s : w.sols)
        if (!hc_satisfies(w.sys, s.coeffs))
            throw VerificationFailed("a solver output violates the string equations");
    return w;
}

inline Json eta_json(const EtaHom& eta) {
    Json a = Json::array();
    for (const auto& v : eta.vals) a.push_back(v.str());
    return a;
}

inline Json cmd_hc_solve(const JobSpec& job) {
    HCWork w = hc_work(job);
    Json res;
    res["eta"] = eta_json(w.eta);
    res["window_pairs"] = w.window.size();
    res["equations"] = w.sys.rows.size();
    res["dim"] = w.sols.size();
    Json basis = Json::array();
    for (const auto& s : w.sols) basis.push_back(u0_json(s.to_u0()));
    res["basis"] = std::move(basis);
    Json claims = Json::array();
    claims.push_back(claim(
        "solution dimension", Json(w.sols.size()),
        "every basis vector satisfies all string equations over the window: each pair of "
        "group-like degrees is tied to its root-shifted neighbours by the discrete-logarithm "
        "and orbit-sum rules, re-checked after solving"));
    res["claims"] = std::move(claims);
    return res;
}

inline Json cmd_center_lift(const JobSpec& job, std::size_t limit = 0) {
    AlgebraCtx ctx(job.chi);
    HCWork w = hc_work(job);
    Json res;
    res["eta"] = eta_json(w.eta);
    res["window_pairs"] = w.window.size();
    res["dim"] = w.sols.size();
    std::vector<std::size_t> picks;
    if (limit == 0 || w.sols.size() <= limit) {
        for (std::size_t i = 0; i < w.sols.size(); ++i) picks.push_back(i);
    } else {
        for (std::size_t i = 0; i < limit; ++i)
            picks.push_back(i * (w.sols.size() - 1) / (limit - 1));
    }
    Json lifts = Json::array();
    std::vector<AlgebraElem> found;
    for (std::size_t pi : picks) {
        const HCSolution& s = w.sols[pi];
        U0Elem p = s.to_u0();
        SkewCentralElement lifted = reconstruct_center(ctx, w.rd, w.eta, s);
        if (!verify_skew_central(ctx, lifted.element, w.eta))
            throw VerificationFailed("lift fails the commutation audit");
        if (!(hc_image(ctx, w.rd, w.eta, lifted.element) == p))
            throw VerificationFailed("lift does not project back onto its seed");
        long max_h = 0, terms_off_toral = 0;
        for (const auto& [key, c] : lifted.element.terms()) {
            max_h = std::max(max_h, static_cast<long>(key.fword.size()));
            if (!key.fword.empty()) ++terms_off_toral;
        }
        Json l;
        l["seed"] = u0_json(p);
        l["degree_bound"] = hc_degree_bound(p);
        l["max_height"] = max_h;
        l["terms"] = lifted.element.terms().size();
        l["terms_off_toral"] = terms_off_toral;
        l["skew_central"] = true;
        l["projects_to_seed"] = true;
        lifts.push_back(std::move(l));
        found.push_back(lifted.element);
    }
    if (elem_span_dim(job.field, found) != found.size())
        throw VerificationFailed("lifted elements are linearly dependent");
    res["lifts"] = std::move(lifts);
    res["lifted"] = picks.size();
    Json claims = Json::array();
    claims.push_back(claim(
        "lifted basis size", Json(found.size()),
        "each lifted solution becomes an element commuting with every generator up to the "
        "skew parameter; the group-like part of each lift equals its seed, and the lifts "
        "stay linearly independent"));
    res["claims"] = std::move(claims);
    if (picks.size() < w.sols.size()) {
        Json notices = Json::array();
        notices.push_back("lift limited to " + std::to_string(picks.size()) + " of " +
                          std::to_string(w.sols.size()) + " solutions");
        res["notices"] = std::move(notices);
    }
    return res;
}

// ---- the battery ------------------------------------------------------------------------

inline Json battery_for(const std::string& name, const PresetDef& def, const JobSpec& base,
                        std::size_t& cache_hits) {
    JobSpec job = base;
    job.preset = name;
    job.field = def.field;
    job.qlit = def.q;
    job.chi = preset_chi(def);
    job.eta.reset();
    job.lambda.reset();
    job.seeds.clear();
    Json out;
    out["roots"] = cmd_roots(job, cache_hits);
    out["groupoid"] = cmd_groupoid(job, cache_hits);
    JobSpec dims = job;
    dims.cap_height = 3;
    out["pbw-dims"] = cmd_pbw_dims(dims, cache_hits);

    Json shap = Json::array();
    {
        JobSpec sj = job;
        for (int i = 0; i < job.chi.rank; ++i) {
            sj.root = unit_weight(job.chi.rank, i);
            shap.push_back(cmd_shapovalov(sj));
        }
        if (job.chi.rank == 1) {
            sj.root = Weight{2};
            shap.push_back(cmd_shapovalov(sj));
        } else if (job.chi.rank == 2) {
            sj.root = Weight{1, 1};
            shap.push_back(cmd_shapovalov(sj));
        }
    }
    out["shapovalov"] = std::move(shap);

    if (job.chi.rank == 1) {
        JobSpec cj = job;
        cj.box = 2;
        out["center-rank1"] = cmd_center_rank1(cj);
    }

    bool heavy = name == "B2-generic" || name == "groupoid-example";
    if (!heavy) {
        JobSpec hj = job;
        hj.box = 1;
        out["hc-solve"] = cmd_hc_solve(hj);
        out["center-lift"] = cmd_center_lift(hj, job.chi.rank == 1 ? 0 : 2);
    } else {
        out["notices"] = Json::array({"string-equation battery skipped for this preset"});
    }
    return out;
}

inline Json cmd_verify_all(const JobSpec& job, std::size_t& cache_hits) {
    Json res;
    Json presets = Json::object();
    if (!job.qlit.empty()) {
        PresetDef def{job.field, job.qlit};
        std::string name = job.preset.empty() ? "custom" : job.preset;
        presets[name] = battery_for(name, def, job, cache_hits);
    } else if (!job.preset.empty()) {
        presets[job.preset] = battery_for(job.preset, find_preset(job.preset), job, cache_hits);
    } else {
        for (const auto& [name, def] : preset_table())
            presets[name] = battery_for(name, def, job, cache_hits);
    }
    res["presets"] = std::move(presets);
    Json claims = Json::array();
    claims.push_back(claim("batteries passed", Json(res["presets"].size()),
                           "per preset: reflection involutions, groupoid edge inverses, graded "
                           "dimension cross-checks, exact determinant factorizations, and (where "
                           "run) center classifications and string-equation lifts all verified"));
    res["claims"] = std::move(claims);
    return res;
}

}  // namespace run_detail

// ---- the entry point ----------------------------------------------------------------------
//
// Exit codes: 0 success, 1 a mathematical check failed or a cap was exceeded,
// 2 the job itself was unusable.  Timing and cache-hit counts go to stderr so
// that identical jobs produce byte-identical reports.

inline RunResult run(JobSpec job) {
    RunResult out;
    Json& rep = out.report;
    rep = Json::object();
    rep["schema"] = "gqg-report/1";
    auto t0 = std::chrono::steady_clock::now();
    std::size_t cache_hits = 0;
    try {
        apply_preset(job);
        rep["command"] = job.command;
        Json input;
        if (!job.preset.empty()) input["preset"] = job.preset;
        if (!job.qlit.empty()) {
            input["field"] = job.field.str();
            Json q = Json::array();
            for (const auto& row : job.qlit) {
                Json r = Json::array();
                for (const auto& lit : row) r.push_back(lit);
                q.push_back(std::move(r));
            }
            input["q"] = std::move(q);
        }
        if (job.eta) input["eta"] = run_detail::eta_json(*job.eta);
        input["box"] = job.box;
        Json caps;
        caps["roots"] = job.cap_roots;
        caps["height"] = job.cap_height;
        input["caps"] = std::move(caps);
        rep["input"] = std::move(input);

        if (job.command != "verify-all" && job.qlit.empty())
            throw ValidationError("field 'q' (with 'field') or 'preset' is required");

        Json results;
        if (job.command == "roots")
            results = run_detail::cmd_roots(job, cache_hits);
        else if (job.command == "groupoid")
            results = run_detail::cmd_groupoid(job, cache_hits);
        else if (job.command == "pbw-dims")
            results = run_detail::cmd_pbw_dims(job, cache_hits);
        else if (job.command == "shapovalov")
            results = run_detail::cmd_shapovalov(job);
        else if (job.command == "singular")
            results = run_detail::cmd_singular(job);
        else if (job.command == "radical")
            results = run_detail::cmd_radical(job);
        else if (job.command == "center-rank1")
            results = run_detail::cmd_center_rank1(job);
        else if (job.command == "hc-solve")
            results = run_detail::cmd_hc_solve(job);
        else if (job.command == "center-lift")
            results = run_detail::cmd_center_lift(job);
        else if (job.command == "verify-all")
            results = run_detail::cmd_verify_all(job, cache_hits);
        else
            throw ValidationError("field 'command' has no subcommand named '" + job.command + "'");
        rep["results"] = std::move(results);
        rep["status"] = "ok";
        out.exit_code = 0;
    } catch (const CapExceeded& e) {
        Json err;
        err["kind"] = "CapExceeded";
        err["what"] = e.what();
        err["diagnosis"] =
            "a configured cap stopped the computation; raise caps.roots or caps.height if the "
            "object is expected to be finite, otherwise the root system is infinite at this "
            "q-matrix";
        rep["error"] = std::move(err);
        rep["status"] = "error";
        out.exit_code = 1;
    } catch (const ValidationError& e) {
        Json err;
        err["kind"] = "ValidationError";
        err["what"] = e.what();
        rep["error"] = std::move(err);
        rep["status"] = "error";
        out.exit_code = 2;
    } catch (const ParseError& e) {
        Json err;
        err["kind"] = "ParseError";
        err["what"] = e.what();
        rep["error"] = std::move(err);
        rep["status"] = "error";
        out.exit_code = 2;
    } catch (const RankMismatch& e) {
        Json err;
        err["kind"] = "RankMismatch";
        err["what"] = e.what();
        rep["error"] = std::move(err);
        rep["status"] = "error";
        out.exit_code = 2;
    } catch (const std::runtime_error& e) {
        // HypothesisViolated, VerificationFailed, NotInB, IntegralityFailed,
        // BackendMismatch: the mathematics refused, not the user
        Json err;
        err["kind"] = "MathError";
        err["what"] = e.what();
        rep["error"] = std::move(err);
        rep["status"] = "error";
        out.exit_code = 1;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "timing: " << ms << " ms, cache hits: " << cache_hits << "\n";
    return out;
}

}  // namespace gqg
