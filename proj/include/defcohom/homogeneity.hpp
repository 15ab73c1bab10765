// The weight grading of multiderivations under the homogeneity maps
// h_lambda, the core/linear/pr_q projectors, the linear deformation
// subcomplex, and the linearization splitting.
//
// In the polynomial model lambda -> h_lambda^* c is a Laurent polynomial
// in lambda, so the limits defining core and lin are exact graded-
// component extractions; no analytic limits are taken.
#pragma once

#include "defcohom/multideriv.hpp"

#include <map>

namespace defcohom {

// VAL(T, out, mono): deg mono + #(core indices in T) - (1 if out is core);
// SYM(T, dir, mono): deg mono + #(core indices in T) - 1.
int weight_of_basis_element(const DvbModel& model, const DerivBasisElement& e);

struct WeightDecomposition {
    std::map<int, MultiDerivation> parts; // weight -> homogeneous component
    MultiDerivation part(int q, const DvbModel& model, int arity) const;
};

// Diagonal split in the tagged basis. Sum of parts reproduces c; each part
// is an h_lambda-eigenvector with eigenvalue lambda^q; min weight >= -1.
WeightDecomposition weight_decompose(const MultiDerivation& c);

MultiDerivation core_part(const MultiDerivation& c); // weight -1 component
MultiDerivation lin_part(const MultiDerivation& c);  // weight 0 component
MultiDerivation pr_q(const MultiDerivation& c, int q);

bool is_linear(const MultiDerivation& c);

// The weight-0 rows/columns of the full tagged basis, with the embedding.
class LinearBasis {
public:
    LinearBasis(const DvbModel& model, int arity);
    const DerivSpaceBasis& full() const { return full_; }
    std::size_t dimension() const { return indices_.size(); }
    const std::vector<std::size_t>& full_indices() const { return indices_; }

    MultiDerivation element(std::size_t i) const { return full_.element(indices_[i]); }
    Vec to_coordinates(const MultiDerivation& c) const; // rejects off-weight parts
    MultiDerivation from_coordinates(const Vec& coords) const;

private:
    DerivSpaceBasis full_;
    std::vector<std::size_t> indices_;
};

struct LinearSubcomplex {
    CochainComplex complex;                 // weight-0 cochains, degrees k_min..k_max
    std::vector<RationalMatrix> embeddings; // per degree, full-dim x linear-dim inclusion
    int k_min;
};

// delta restricted to weight-0 cochains. Requires b linear and MC; the
// embedding into the full tagged basis is a cochain map. Errors name a
// nonzero off-weight component of b when b is not linear.
LinearSubcomplex linear_subcomplex(const BracketElement& b, int k_min, int k_max);

struct LinearizationSplit {
    MultiDerivation lin;
    MultiDerivation residue; // c - lin, the ker(lin) component
};

// c = lin + residue with lin = lin_part(c). For linear MC b the
// linearization is a cochain map: delta(lin c) = lin(delta c).
LinearizationSplit linearization_split(const BracketElement& b, const MultiDerivation& c);

} // namespace defcohom
