#include "defcohom/sections.hpp"

#include <doctest.h>

#include <random>

using namespace defcohom;

TEST_CASE("homogeneity pair at lambda = 1 is the identity") {
    DvbModel model(1, 2, 1, 2);
    AutomorphismPair h1 = homogeneity_pair(model, 1);
    Section s(model);
    s.coeff(0) = PolyFunction::coordinate(2, 0);
    s.coeff(1) = PolyFunction::constant(2, 3);
    CHECK(pullback_section(h1, s) == s);
    CHECK_THROWS_AS(homogeneity_pair(model, Rational(-1)), Error);
}

TEST_CASE("core sections scale by 1/lambda, linear sections are fixed") {
    DvbModel model(1, 1, 1, 2);
    AutomorphismPair h2 = homogeneity_pair(model, 2);

    Section core(model); // constant core block
    core.coeff(1) = PolyFunction::constant(1, 1);
    Section pulled = pullback_section(h2, core);
    CHECK(pulled.coeff(1) == PolyFunction::constant(1, Rational(1, 2)));

    Section linear(model); // constant A block + degree-1 core block
    linear.coeff(0) = PolyFunction::constant(1, 5);
    linear.coeff(1) = PolyFunction::coordinate(1, 0);
    CHECK(pullback_section(h2, linear) == linear);
}

TEST_CASE("pullback respects the module structure") {
    DvbModel model(1, 2, 1, 2);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int lam = 1; lam <= 3; ++lam) {
        AutomorphismPair h = homogeneity_pair(model, lam);
        PolyFunction f(2);
        f.add_term({1, 0}, coeff(rng));
        f.add_term({0, 2}, coeff(rng));
        Section s(model);
        s.coeff(0) = PolyFunction::coordinate(2, 1);
        s.coeff(1) = PolyFunction::constant(2, 2);
        // phi*(f s) = phi_M*(f) phi*(s)
        CHECK(pullback_section(h, s.scaled_by(f)) ==
              pullback_section(h, s).scaled_by(h.pullback_function(f)));
    }
}

TEST_CASE("h_lambda h_mu = h_{lambda mu} on sections") {
    DvbModel model(2, 1, 1, 2);
    std::mt19937_64 rng(9);
    Rational lambdas[] = {Rational(2), Rational(1, 3), Rational(5, 2)};
    for (const Rational& lam : lambdas)
        for (const Rational& mu : lambdas) {
            AutomorphismPair hl = homogeneity_pair(model, lam);
            AutomorphismPair hm = homogeneity_pair(model, mu);
            AutomorphismPair both = homogeneity_pair(model, lam * mu);
            AutomorphismPair composed = AutomorphismPair::compose(hl, hm);
            Section s(model);
            s.coeff(0) = PolyFunction::coordinate(1, 0);
            s.coeff(2) = PolyFunction::constant(1, 1) + PolyFunction::coordinate(1, 0);
            CHECK(pullback_section(both, s) == pullback_section(composed, s));
            // contravariance: (hl hm)* = hl* o hm* for commuting diagonal pairs
            CHECK(pullback_section(both, s) ==
                  pullback_section(hl, pullback_section(hm, s)));
        }
}

TEST_CASE("composition of pullbacks matches pullback of composition") {
    DvbModel model(1, 2, 1, 2);
    std::vector<std::vector<Rational>> base = {{Rational(1), Rational(1)},
                                               {Rational(0), Rational(1)}};
    std::vector<std::vector<Rational>> mod = {{Rational(2), Rational(0)},
                                              {Rational(1), Rational(1)}};
    AutomorphismPair phi = AutomorphismPair::linear(model, base, mod);
    AutomorphismPair psi = homogeneity_pair(model, 3);
    AutomorphismPair composed = AutomorphismPair::compose(phi, psi);
    Section s(model);
    s.coeff(0) = PolyFunction::coordinate(2, 0) * Rational(2);
    s.coeff(1) = PolyFunction::coordinate(2, 1) + PolyFunction::constant(2, 1);
    CHECK(pullback_section(composed, s) == pullback_section(phi, pullback_section(psi, s)));

    // inverse undoes the pullback
    CHECK(pullback_section(phi.inverse(), pullback_section(phi, s)) == s);
}

TEST_CASE("weight eigenvalues of section basis elements are >= -1") {
    // Exhaustive over coefficient monomials and fiber indices: the pullback
    // eigenvalue of mono * e_i under h_2 is 2^(deg mono - [core]), so the
    // minimal weight is -1, attained by constant core sections.
    DvbModel model(2, 2, 2, 2);
    AutomorphismPair h2 = homogeneity_pair(model, 2);
    for (int i = 0; i < model.section_rank(); ++i)
        for (const Monomial& mono : model.algebra().monomial_basis()) {
            Section s(model);
            s.coeff(i) = PolyFunction::monomial_term(mono, 1);
            Section pulled = pullback_section(h2, s);
            int weight = monomial_degree(mono) - (model.is_core_index(i) ? 1 : 0);
            Rational expect = 1;
            for (int w = 0; w < weight; ++w) expect *= 2;
            for (int w = 0; w > weight; --w) expect /= 2;
            CHECK(pulled == s * expect);
            CHECK(weight >= -1);
        }
}

TEST_CASE("basis names round-trip") {
    DvbModel model(2, 1, 3, 1);
    CHECK(model.basis_name(0) == "A1");
    CHECK(model.basis_name(2) == "C1");
    CHECK(*model.parse_basis_name("C3") == 4);
    CHECK(!model.parse_basis_name("A3").has_value());
    CHECK(!model.parse_basis_name("B1").has_value());
}
