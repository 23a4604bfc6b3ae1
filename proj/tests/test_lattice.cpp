#include <catch2/catch_amalgamated.hpp>

#include "gqg/lattice.hpp"

using namespace gqg;

namespace {

Bicharacter a2_zeta3() {
    FieldSpec f = FieldSpec::cyclotomic(3);
    Scalar z = Scalar::gen(f);
    return Bicharacter(f, 2, {{z, z}, {z, z}});
}

Bicharacter a2_generic() {
    FieldSpec f = FieldSpec::rational_function();
    Scalar t = Scalar::gen(f);
    return Bicharacter(f, 2, {{t.pow(2), t.pow(-1)}, {t.pow(-1), t.pow(2)}});
}

}  // namespace

TEST_CASE("weight arithmetic") {
    Weight a{2, -1}, b{1, 3};
    CHECK(a + b == Weight{3, 2});
    CHECK(a - b == Weight{1, -4});
    CHECK(-a == Weight{-2, 1});
    CHECK(3 * a == Weight{6, -3});
    CHECK(is_zero_weight(a - a));
    CHECK(all_nonneg(b));
    CHECK_FALSE(all_nonneg(a));
    CHECK(unit_weight(3, 1) == Weight{0, 1, 0});
    CHECK(weight_zero(2) == Weight{0, 0});
}

TEST_CASE("bicharacter evaluation is multiplicative in each slot") {
    Bicharacter chi = a2_generic();
    Weight a{1, 2}, b{-1, 1}, c{2, 0};
    CHECK(chi.eval(a + b, c) == chi.eval(a, c) * chi.eval(b, c));
    CHECK(chi.eval(a, b + c) == chi.eval(a, b) * chi.eval(a, c));
    CHECK(chi.eval(weight_zero(2), a).is_one());
    CHECK(chi.eval(a, -a) == chi.eval(a, a).pow(-1));
    // entries recover the matrix
    CHECK(chi.eval(unit_weight(2, 0), unit_weight(2, 1)) == chi.qij(0, 1));
}

TEST_CASE("rho_hat is the diagonal homomorphism") {
    Bicharacter chi = a2_zeta3();
    for (int j = 0; j < 2; ++j) CHECK(chi.rho_hat(unit_weight(2, j)) == chi.qij(j, j));
    Weight a{2, -1}, b{1, 1};
    CHECK(chi.rho_hat(a + b) == chi.rho_hat(a) * chi.rho_hat(b));
    CHECK(chi.rho_hat(weight_zero(2)).is_one());
}

TEST_CASE("homomorphisms from the weight lattice") {
    FieldSpec f = FieldSpec::cyclotomic(3);
    Scalar z = Scalar::gen(f);
    EtaHom eta{f, {z, z.pow(2)}};
    CHECK(eta.eval(Weight{1, 1}).is_one());  // z * z^2
    CHECK(eta.eval(Weight{2, 0}) == z.pow(2));
    CHECK(eta.eval(Weight{-1, 0}) == z.pow(-1));
    CHECK_FALSE(eta.is_trivial());
    CHECK(EtaHom::trivial(f, 2).is_trivial());

    Character lam{f, {z, Scalar::one(f)}, {z.pow(2), -Scalar::one(f)}};
    CHECK(lam.eval(Weight{1, 0}, Weight{0, 0}) == z);
    CHECK(lam.eval(Weight{0, 0}, Weight{0, 1}) == -Scalar::one(f));
    CHECK(lam.eval(Weight{1, 1}, Weight{1, 0}) == z * Scalar::one(f) * z.pow(2));
}

TEST_CASE("eta-shift ratio") {
    Bicharacter chi = a2_zeta3();
    const FieldSpec& f = chi.field;
    EtaHom eta{f, {Scalar::gen(f), Scalar::gen_pow(f, 2)}};
    Weight lam{1, -1}, mu{0, 2}, beta{1, 1};
    Scalar expect = eta.eval(beta) * chi.eval(beta, mu) / chi.eval(lam, beta);
    CHECK(eta_shift(eta, chi, lam, mu, beta) == expect);
    // shifting the pair one step along beta multiplies the ratio by q_beta^-2
    Scalar qb = chi.eval(beta, beta);
    CHECK(eta_shift(eta, chi, lam + beta, mu - beta, beta) ==
          eta_shift(eta, chi, lam, mu, beta) * qb.pow(-2));
}
