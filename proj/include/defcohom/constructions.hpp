// Builders for the example classes: Lie algebras, semidirect products with
// a representation, LA-vector spaces, tangent lifts, action algebroids and
// type-1 pullbacks, together with the structural maps between their
// complexes (base projection, endomorphism kernel, Theta and its cone).
#pragma once

#include "defcohom/homogeneity.hpp"

#include <array>
#include <memory>
#include <optional>

namespace defcohom {

struct LieAlgebraData {
    int dim = 0;
    // structure[{i,j}] with i < j (0-based) -> coefficients of [e_i, e_j].
    std::map<std::pair<int, int>, std::vector<Rational>> structure;

    std::vector<Rational> bracket(int i, int j) const; // skew extension
    std::optional<std::array<int, 3>> jacobi_witness() const;
};

struct RepresentationData {
    int dim_module = 0;
    std::vector<RationalMatrix> matrices; // one dim_module x dim_module matrix per basis element

    // theta([x,y]) = theta(x)theta(y) - theta(y)theta(x) on all basis pairs.
    void validate(const LieAlgebraData& g) const;
};

struct CoreAnchorData {
    RationalMatrix partial; // e x c matrix of the core-anchor C -> E
};

LieAlgebraData abelian_algebra(int n);
LieAlgebraData heisenberg3();
LieAlgebraData so3();
LieAlgebraData sl2();
LieAlgebraData aff1();
// "abelian" (needs dim), "heisenberg3", "so3", "sl2", "aff1".
LieAlgebraData named_lie_algebra(const std::string& name, int dim = -1);
// "adjoint", "trivial" (needs dim), "standard" (sl2: the 2-dim module).
RepresentationData named_representation(const LieAlgebraData& g, const std::string& g_name,
                                        const std::string& rep_name, int dim = -1);

struct BuiltBracket {
    DvbModel model;
    BracketElement bracket;
};

// Plain Lie algebra as the a-dimensional model over a point (m = c = 0).
BuiltBracket from_lie_algebra(const LieAlgebraData& g);

// Semidirect product g x| C with b((v1,x1),(v2,x2)) =
// ([v1,v2], theta(v1)x2 - theta(v2)x1); linear and Maurer-Cartan.
BuiltBracket vb_semidirect(const LieAlgebraData& g, const RepresentationData& rep);

// Chevalley-Eilenberg complex of g with coefficients in the representation,
// assembled directly from the textbook formula (independent of the
// multiderivation machinery; used as an oracle and for Theta).
// Basis per degree: increasing k-tuples (lex) x module basis index.
CochainComplex ce_complex(const LieAlgebraData& g, const RepresentationData& rep,
                          int k_min, int k_max);

// The representation of g on End C induced by rep: x . phi = [theta(x), phi].
RepresentationData endomorphism_representation(const LieAlgebraData& g,
                                               const RepresentationData& rep);

struct ThetaConeResult {
    std::shared_ptr<CochainComplex> source; // C_def(g)[-1]: degree j holds (j-1)-cochains
    std::shared_ptr<CochainComplex> target; // CE(g, End C)
    ComplexMap theta;                       // extension of scalars by theta, a cochain map
    std::shared_ptr<CochainComplex> cone;
    LinearSubcomplex linear;                // directly assembled linear complex of g x| C
    // Per degree k_min..k_max: cone -> linear basis change, a signed
    // permutation conjugating the cone differential into the assembled one.
    std::vector<RationalMatrix> splitting;
    int k_min = 0, k_max = 0;
};

ThetaConeResult theta_cone(const LieAlgebraData& g, const RepresentationData& rep,
                           int k_min, int k_max);

// LA-vector space: a = 0, sections are maps E -> C, bracket determined by
// the core-anchor: sym(C_I) = (partial C_I)^, val = 0.
BuiltBracket la_vector_space(const CoreAnchorData& anchor, int trunc);

struct LaBetti {
    std::size_t h_minus1, h0, h1;
};
// End(coker (+) ker[1]) dimensions: (dim coker . dim ker,
// (dim coker)^2 + (dim ker)^2, dim ker . dim coker).
LaBetti la_cohomology_formula(const CoreAnchorData& anchor);

// Tangent prolongation: the VB-algebra g x|_ad g with the complete lift.
BuiltBracket tangent_vb(const LieAlgebraData& g);
// Complete lift of a cochain on g to the tangent model:
// values on k lifted sections lift, one core slot lands in the core block.
MultiDerivation tangent_lift(const MultiDerivation& c, const DvbModel& tangent_model);

// Action algebroid g x| E over E (core 0): val = structure constants,
// sym(xi_a) = the linear field of -R(e_a).
BuiltBracket action_algebroid(const LieAlgebraData& g, const RepresentationData& rep_on_e,
                              int trunc);

// Pullback algebroid q^! g over E = Q^m: core-anchor the identity,
// sym(core_i) = d/du_i, A-block bracket = structure constants.
BuiltBracket type1_pullback(const LieAlgebraData& g, int m, int trunc);

// (TE => E; TM => M) with M a point: type 1 with g = 0.
BuiltBracket tangent_bundle_model(int m, int trunc);

// The base Lie algebra of a linear bracket (constant A-block of the
// A-pair values) and the projection of linear cochains onto it.
LieAlgebraData base_lie_algebra(const BracketElement& b);
MultiDerivation base_projection(const BracketElement& b, const MultiDerivation& c);

// The weight-0 subcomplex split as 0 -> End-kernel -> linear -> C_def(base) -> 0.
struct EndKernelData {
    std::shared_ptr<CochainComplex> kernel;
    std::shared_ptr<CochainComplex> linear;
    std::shared_ptr<CochainComplex> base;
    ComplexMap inclusion;  // kernel -> linear
    ComplexMap projection; // linear -> base
    int k_min = 0, k_max = 0;
};

EndKernelData end_kernel_complex(const BracketElement& b, int k_min, int k_max);

} // namespace defcohom
