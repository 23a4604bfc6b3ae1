#include <catch2/catch_amalgamated.hpp>

#include "gqg/rank1.hpp"

using namespace gqg;

namespace {

AlgebraElem expected_small_center(AlgebraCtx& ctx) {
    const FieldSpec& f = ctx.field();
    Scalar q = rank1_q(ctx), one = Scalar::one(f);
    AlgebraElem c(f, 1);
    c.add_term({{}, Weight{1}, Weight{0}, {}}, q);
    c.add_term({{}, Weight{0}, Weight{1}, {}}, one);
    c.add_term({Word{0}, Weight{0}, Weight{0}, Word{0}}, one - q);
    return c;
}

}  // namespace

TEST_CASE("the smallest central element in closed form") {
    for (FieldSpec f : {FieldSpec::rational_function(), FieldSpec::cyclotomic(3),
                        FieldSpec::cyclotomic(4), FieldSpec::cyclotomic(6)}) {
        Bicharacter chi(f, 1, {{Scalar::gen(f)}});
        AlgebraCtx ctx(chi);
        Scalar one = Scalar::one(f);
        AlgebraElem c = central_candidate(ctx, one, 0, 1, 1);
        CHECK(c == expected_small_center(ctx));
        CHECK(is_skew_central(ctx, c, EtaHom::trivial(f, 1)));
    }
}

TEST_CASE("rank restriction is enforced") {
    FieldSpec f = FieldSpec::cyclotomic(3);
    Scalar z = Scalar::gen(f);
    Bicharacter chi(f, 2, {{z, z}, {z, z}});
    AlgebraCtx ctx(chi);
    CHECK_THROWS_AS(rank1_q(ctx), RankMismatch);
}

TEST_CASE("criterion equals direct commutation on a grid") {
    FieldSpec f = FieldSpec::cyclotomic(3);
    Bicharacter chi(f, 1, {{Scalar::gen(f)}});
    AlgebraCtx ctx(chi);
    for (const Scalar& eta : {Scalar::one(f), -Scalar::one(f), Scalar::gen(f)})
        for (long lam = -1; lam <= 1; ++lam)
            for (long mu = -1; mu <= 1; ++mu)
                for (long k = 0; k <= 2; ++k)
                    CHECK(candidate_criterion(ctx, eta, lam, mu, k) ==
                          candidate_skew_central(ctx, eta, lam, mu, k));
}

TEST_CASE("layer recursion holds exactly on the closed-form candidates") {
    FieldSpec f = FieldSpec::cyclotomic(4);
    Bicharacter chi(f, 1, {{Scalar::gen(f)}});
    AlgebraCtx ctx(chi);
    Scalar one = Scalar::one(f);
    for (long k = 0; k <= 3; ++k) {
        AlgebraElem c = central_candidate(ctx, one, 0, k, k);
        CHECK(detail::layer_recursion_holds(ctx, c, one, 0, k, k));
    }
    // a deliberately wrong element breaks a recursion row
    AlgebraElem bad = central_candidate(ctx, one, 0, 1, 1);
    bad.add_term({Word{0}, Weight{0}, Weight{0}, Word{0}}, Scalar::one(f));
    CHECK_FALSE(detail::layer_recursion_holds(ctx, bad, one, 0, 1, 1));
}

TEST_CASE("classification matches the independent solver") {
    FieldSpec f3 = FieldSpec::cyclotomic(3);
    Bicharacter chi3(f3, 1, {{Scalar::gen(f3)}});
    AlgebraCtx ctx3(chi3);
    Scalar one3 = Scalar::one(f3);

    CenterBasis cb = classify_center(ctx3, one3, 2);
    CHECK(cb.dim() == 18);
    CHECK(cb.generic.empty());
    CHECK(center_solve_box(ctx3, one3, 2).size() == 18);

    CenterBasis cbm = classify_center(ctx3, -one3, 2);
    CHECK(cbm.dim() == 9);
    CHECK(cbm.toral.empty());
    CHECK(center_solve_box(ctx3, -one3, 2).size() == 9);

    FieldSpec ft = FieldSpec::rational_function();
    Bicharacter chit(ft, 1, {{Scalar::gen(ft)}});
    AlgebraCtx ctxt(chit);
    Scalar onet = Scalar::one(ft);
    CHECK(classify_center(ctxt, onet, 2).dim() == 15);
    CHECK(center_solve_box(ctxt, onet, 2).size() == 15);

    Scalar t = Scalar::gen(ft);
    CHECK(classify_center(ctxt, t, 2).dim() == 10);
    CHECK(center_solve_box(ctxt, t, 2).size() == 10);
}

TEST_CASE("reflection identities") {
    FieldSpec f = FieldSpec::cyclotomic(3);
    Bicharacter chi(f, 1, {{Scalar::gen(f)}});
    AlgebraCtx ctx(chi);
    Scalar one = Scalar::one(f);
    CHECK(reflection_elementary_check(ctx));
    CHECK(reflection_full_depth_check(ctx, -one, 1, 0));
    CenterBasis cb = classify_center(ctx, one, 2);
    for (const auto& ce : cb.toral) CHECK(reflection_shift_check(ctx, one, ce.elem));
    CenterBasis cbm = classify_center(ctx, -one, 2);
    for (const auto& ce : cbm.generic) CHECK(reflection_shift_check(ctx, -one, ce.elem));
}
