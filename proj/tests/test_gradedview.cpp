#include "test_support.hpp"

#include <doctest.h>

using namespace defcohom;
using namespace defcohom::testing;

TEST_CASE("forms algebra: graded commutativity and squares") {
    DvbModel model(2, 1, 1, 1);
    Form x1 = Form::generator(model, 0);
    Form x2 = Form::generator(model, 1);
    CHECK(x1.wedge(x2) == x2.wedge(x1) * Rational(-1));
    CHECK(x1.wedge(x1).is_zero());
    Form f = Form::function(model, PolyFunction::coordinate(1, 0));
    CHECK(f.wedge(x1) == x1.wedge(f));
    CHECK(forms_basis_dimension(model) == 2 * 8); // |O| * 2^(a+c)
}

TEST_CASE("ce differential of an abelian algebra vanishes") {
    BuiltBracket ab = from_lie_algebra(abelian_algebra(3));
    GradedDerivation d = ce_differential(ab.bracket);
    for (int j = 0; j < 3; ++j) CHECK(d.odd_image(j).is_zero());
}

TEST_CASE("ce differential of so3 and d^2 = 0") {
    BuiltBracket s = from_lie_algebra(so3());
    GradedDerivation d = ce_differential(s.bracket);
    // d(xi^3) = -c^3_{12} xi^1 xi^2 in the fixed sign convention
    Form img = d.odd_image(2);
    CHECK(img.coefficient({0, 1}) == PolyFunction::constant(0, -1));
    for (int j = 0; j < 3; ++j) {
        Form xi = Form::generator(s.model, j);
        CHECK(d.apply(d.apply(xi)).is_zero());
    }
}

TEST_CASE("ce differential rejects non-Jacobi brackets with a witness") {
    DvbModel model(3, 0, 0, 0);
    MultiDerivation bad(model, 2);
    bad.set_val({0, 1}, Section::basis(model, 0));
    bad.set_val({0, 2}, Section::basis(model, 1));
    REQUIRE(!mc_check(bad).ok);
    CHECK_THROWS_WITH_AS(static_cast<void>(ce_differential(bad)),
                         doctest::Contains("d^2 != 0"), Error);
}

TEST_CASE("cochain_to_derivation on endomorphisms over a point") {
    DvbModel model(2, 0, 0, 0);
    MultiDerivation c(model, 1); // e1 -> e2
    c.set_val({0}, Section::basis(model, 1));
    GradedDerivation d = cochain_to_derivation(c);
    // delta_c(phi)(alpha) = +-<phi, c(alpha)>: xi^2 -> -xi^1 in our signs
    CHECK(d.odd_image(1).coefficient({0}) == PolyFunction::constant(0, -1));
    CHECK(d.odd_image(0).is_zero());
}

TEST_CASE("delta_b equals the ce differential") {
    for (const LieAlgebraData& g : {so3(), sl2(), heisenberg3(), aff1()}) {
        BuiltBracket built = from_lie_algebra(g);
        CHECK(cochain_to_derivation(built.bracket.underlying()) ==
              ce_differential(built.bracket));
    }
    // and over a model with coordinates
    BuiltBracket t1 = type1_pullback(aff1(), 1, 1);
    CHECK(cochain_to_derivation(t1.bracket.underlying()) == ce_differential(t1.bracket));
}

TEST_CASE("cochains with zero symbol kill coordinate functions") {
    std::mt19937_64 rng(3);
    DvbModel model(1, 1, 1, 1);
    MultiDerivation c(model, 2);
    c.set_val({0, 1}, random_section(model, rng));
    GradedDerivation d = cochain_to_derivation(c);
    CHECK(d.coordinate_image(0).is_zero());
}

TEST_CASE("cochain map into derivations is linear and injective on samples") {
    std::mt19937_64 rng(5);
    DvbModel model(2, 0, 1, 0);
    for (int trial = 0; trial < 5; ++trial) {
        MultiDerivation c1 = random_md(model, 2, rng, 2);
        MultiDerivation c2 = random_md(model, 2, rng, 2);
        GradedDerivation sum = cochain_to_derivation(c1 + c2);
        CHECK(sum == cochain_to_derivation(c1) + cochain_to_derivation(c2));
        if (!(c1 == c2)) CHECK(!(cochain_to_derivation(c1) == cochain_to_derivation(c2)));
    }
}

TEST_CASE("commutators: [d,d] = 2 d^2 = 0 and the bracket is intertwined") {
    BuiltBracket s = from_lie_algebra(so3());
    GradedDerivation d = ce_differential(s.bracket);
    GradedDerivation dd = derivation_commutator(d, d);
    DvbModel model = s.model;
    GradedDerivation zero(model, 2);
    CHECK(dd == zero);

    std::mt19937_64 rng(7);
    for (const LieAlgebraData& g : {abelian_algebra(2), heisenberg3(), so3()}) {
        BuiltBracket built = from_lie_algebra(g);
        for (int trial = 0; trial < 4; ++trial) {
            int k = 1 + static_cast<int>(rng() % 2);
            int l = 1 + static_cast<int>(rng() % 2);
            MultiDerivation c1 = random_md(built.model, k, rng, 2);
            MultiDerivation c2 = random_md(built.model, l, rng, 2);
            // [delta_{c1}, delta_{c2}] = delta_{[[c1,c2]]}
            CHECK(derivation_commutator(cochain_to_derivation(c1), cochain_to_derivation(c2)) ==
                  cochain_to_derivation(gerstenhaber_bracket(c1, c2)));
            // [d, delta_c] = delta_{delta c}
            CHECK(derivation_commutator(ce_differential(built.bracket),
                                        cochain_to_derivation(c1)) ==
                  cochain_to_derivation(def_differential(built.bracket, c1)));
        }
    }
}

TEST_CASE("weight criterion: c linear iff delta_c has weight zero") {
    std::mt19937_64 rng(11);
    DvbModel model(1, 1, 1, 1);
    for (int trial = 0; trial < 8; ++trial) {
        MultiDerivation c = random_md(model, 1 + static_cast<int>(rng() % 2), rng, 3);
        CHECK(derivation_is_weight_zero(cochain_to_derivation(c)) == is_linear(c));
    }
    // deterministic instances of both kinds
    BuiltBracket t1 = type1_pullback(aff1(), 1, 1);
    CHECK(derivation_is_weight_zero(cochain_to_derivation(t1.bracket.underlying())));
    MultiDerivation core(t1.model, 0);
    core.set_val({}, Section::basis(t1.model, t1.model.dim_a())); // a core section
    CHECK(!derivation_is_weight_zero(cochain_to_derivation(core)));
}
