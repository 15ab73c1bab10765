// The graded-geometric picture: the algebra of functions on W[1]_E
// (polynomial coefficients times odd generators dual to the section
// basis), graded derivations by generator images, the algebroid de Rham
// differential, and the embedding of cochains as derivations.
#pragma once

#include "defcohom/multideriv.hpp"

#include <map>

namespace defcohom {

// An element of the forms algebra: sum over strictly increasing odd-index
// tuples of polynomial coefficients. The odd generators xi^1..xi^n
// anticommute and square to zero; coefficients are even.
class Form {
public:
    Form() = default;
    explicit Form(const DvbModel& model) : model_(model) {}

    const DvbModel& model() const { return model_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Tuple, PolyFunction>& terms() const { return terms_; }

    static Form function(const DvbModel& model, const PolyFunction& f);
    static Form generator(const DvbModel& model, int j); // xi^{j+1}

    void add_term(const Tuple& odd, const PolyFunction& coeff); // odd strictly increasing
    PolyFunction coefficient(const Tuple& odd) const;

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator*(const Rational& c) const;
    Form wedge(const Form& o) const;
    bool operator==(const Form& o) const { return terms_ == o.terms_; }

    std::string str() const;

private:
    DvbModel model_{0, 0, 0, 0};
    std::map<Tuple, PolyFunction> terms_;
};

// Dimension of the capped forms algebra: |monomial basis| * 2^(a+c).
std::size_t forms_basis_dimension(const DvbModel& model);

// Weight of a basis form mono . xi^S under the homogeneity structure:
// deg mono + #(core odd indices in S).
int form_weight(const DvbModel& model, const Monomial& mono, const Tuple& odd);
// Nonzero forms that are concentrated in a single weight report it.
std::optional<int> homogeneous_weight(const Form& f);

// A graded derivation of the forms algebra, stored by generator images and
// extended by the graded Leibniz rule.
class GradedDerivation {
public:
    GradedDerivation() = default;
    GradedDerivation(const DvbModel& model, int degree);

    const DvbModel& model() const { return model_; }
    int degree() const { return degree_; }

    void set_coordinate_image(int i, const Form& f); // image of u_{i+1}
    void set_odd_image(int j, const Form& f);        // image of xi^{j+1}
    const Form& coordinate_image(int i) const;
    const Form& odd_image(int j) const;

    Form apply(const Form& f) const;

    GradedDerivation operator+(const GradedDerivation& o) const;
    GradedDerivation operator-(const GradedDerivation& o) const;
    GradedDerivation operator*(const Rational& c) const;
    bool operator==(const GradedDerivation& o) const; // equality on generators

private:
    DvbModel model_{0, 0, 0, 0};
    int degree_ = 0;
    std::vector<Form> coord_images_;
    std::vector<Form> odd_images_;
};

// [D1,D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, by generator images.
GradedDerivation derivation_commutator(const GradedDerivation& d1, const GradedDerivation& d2);

// The de Rham differential of the algebroid structure b: on coordinates
// d u_i = sum_j (sigma_b(e_j) u_i) xi^j, on odd generators the structure
// constants term. Throws with a witness generator when d^2 != 0 (i.e. the
// arity-2 input is not Maurer-Cartan).
GradedDerivation ce_differential(const MultiDerivation& b);
GradedDerivation ce_differential(const BracketElement& b);

// The degree-k derivation delta_c attached to an arity-(k+1) cochain:
// coordinates go to symbol evaluations, odd generators to value pairings.
GradedDerivation cochain_to_derivation(const MultiDerivation& c);

// c is linear iff delta_c shifts every homogeneous form by weight 0; the
// check inspects images of all capped basis forms.
bool derivation_is_weight_zero(const GradedDerivation& d);

} // namespace defcohom
