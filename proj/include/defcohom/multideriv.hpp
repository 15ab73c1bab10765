// Multiderivations of W -> E with symbols, the Gerstenhaber product and
// bracket, the deformation differential, Maurer-Cartan checking, gauge
// flows, and matrix assembly of deformation complexes.
//
// A k-derivation is stored freely by its value table on strictly
// increasing k-tuples of section-basis indices and its symbol table on
// increasing (k-1)-tuples; the Leibniz rule extends the tables to all
// section arguments. Degree in the DGLA is arity - 1.
#pragma once

#include "defcohom/linalg.hpp"
#include "defcohom/sections.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace defcohom {

using Tuple = std::vector<int>; // strictly increasing section-basis indices

// All strictly increasing k-tuples from {0..n-1}, in lexicographic order.
std::vector<Tuple> increasing_tuples(int n, int k);

class MultiDerivation {
public:
    MultiDerivation() = default;
    MultiDerivation(const DvbModel& model, int arity);

    const DvbModel& model() const { return model_; }
    int arity() const { return arity_; }
    int degree() const { return arity_ - 1; }

    // Table access on increasing tuples; absent entries are zero.
    void set_val(const Tuple& t, const Section& s);
    void set_sym(const Tuple& t, const PolyVectorField& x);
    Section val(const Tuple& t) const;
    PolyVectorField sym(const Tuple& t) const;
    const std::map<Tuple, Section>& val_table() const { return val_; }
    const std::map<Tuple, PolyVectorField>& sym_table() const { return sym_; }

    // Skew extension: arbitrary index tuples, repeats give zero.
    Section val_skew(const Tuple& t) const;
    PolyVectorField sym_skew(const Tuple& t) const;

    bool is_zero() const { return val_.empty() && sym_.empty(); }
    MultiDerivation operator+(const MultiDerivation& o) const;
    MultiDerivation operator-(const MultiDerivation& o) const;
    MultiDerivation operator*(const Rational& c) const;
    bool operator==(const MultiDerivation& o) const;

    std::string str() const;

private:
    DvbModel model_{0, 0, 0, 0};
    int arity_ = 0;
    std::map<Tuple, Section> val_; // zero entries never stored
    std::map<Tuple, PolyVectorField> sym_;
};

// Leibniz-rule evaluation on k section arguments; R-multilinear and
// alternating, exact.
Section md_evaluate(const MultiDerivation& c, const std::vector<Section>& args);

// O-multilinear alternating extension of the symbol table on k-1 arguments.
PolyVectorField symbol_evaluate(const MultiDerivation& c, const std::vector<Section>& args);

// A raw alternating multilinear map, as produced by Gerstenhaber
// combinations before their (val, sym) tables are recovered.
struct RawMultiMap {
    DvbModel model{0, 0, 0, 0};
    int arity = 0;
    std::function<Section(const std::vector<Section>&)> eval;
};

// The Gerstenhaber product c1 o c2, arity k+l-1: unshuffle sum
//   sum_{tau in S_{l,k-1}} sign(tau) c1(c2(args_tau(1..l)), args_tau(l+1..)).
// The inner value lands in the first slot of c1; for l = 0 this degenerates
// to inserting the section c2 there. For k = 0 the product is the zero map.
RawMultiMap gerstenhaber_product(const MultiDerivation& c1, const MultiDerivation& c2);

// Recovers (val, sym) tables from a raw map: val on basis tuples, symbol by
// coordinate probes sym(T)(u_i) e_j = raw(T, u_i e_j) - u_i raw(T, e_j).
// Verifies probe consistency across all fiber indices j and reproduction of
// raw on all single-slot monomial probes within the degree cap; throws
// "not a multiderivation" otherwise.
MultiDerivation symbol_extract(const RawMultiMap& raw);

// [[c1, c2]] = (-1)^{(k-1)(l-1)} c1 o c2 - c2 o c1, materialized through
// symbol_extract. Throws for two arity-0 arguments (the bracket lands in
// degree -2, which is zero).
MultiDerivation gerstenhaber_bracket(const MultiDerivation& c1, const MultiDerivation& c2);

// (phi* c)(a_1..a_k) = phi*( c(phi^{-1}* a_1, ..., phi^{-1}* a_k) ).
MultiDerivation pullback_md(const AutomorphismPair& phi, const MultiDerivation& c);

struct McResult {
    bool ok = false;
    std::optional<Tuple> witness; // first basis tuple of a nonzero [[b,b]] entry
    std::string witness_kind;     // "val" or "sym"
};

// True iff [[b, b]] = 0 exactly; the witness names the first basis triple
// where the Jacobi defect shows up.
McResult mc_check(const MultiDerivation& b);

class BracketElement {
public:
    explicit BracketElement(MultiDerivation b); // runs mc_check, throws on failure
    static BracketElement unchecked(MultiDerivation b);

    const MultiDerivation& underlying() const { return b_; }
    const DvbModel& model() const { return b_.model(); }
    bool mc_verified() const { return mc_verified_; }

private:
    BracketElement() = default;
    MultiDerivation b_;
    bool mc_verified_ = false;
};

// delta = [[b, -]]; a degree-1 differential since b is Maurer-Cartan.
MultiDerivation def_differential(const BracketElement& b, const MultiDerivation& c);

// The explicit two-sum formula for delta on k-derivations,
//   delta c(a_1..a_{k+1}) = sum_i (-1)^{i+1} [a_i, c(.. a_i ..)]
//                         + sum_{i<j} (-1)^{i+j} c([a_i,a_j], .. a_i .. a_j ..),
// used to cross-validate the bracket route.
Section def_differential_explicit(const BracketElement& b, const MultiDerivation& c,
                                  const std::vector<Section>& args);

// Tagged coordinate basis of the arity-k multiderivation space at the
// model's degree cap. VAL block first, then SYM block; tuples in
// lexicographic order, then fiber/direction index, then monomial.
struct DerivBasisElement {
    enum class Kind { Val, Sym } kind;
    Tuple tuple;   // k indices for Val, k-1 for Sym
    int index;     // output fiber index (Val) or coordinate direction (Sym)
    Monomial mono; // coefficient monomial, degree <= cap
};

class DerivSpaceBasis {
public:
    DerivSpaceBasis(const DvbModel& model, int arity);

    const DvbModel& model() const { return model_; }
    int arity() const { return arity_; }
    std::size_t dimension() const { return elements_.size(); }
    const std::vector<DerivBasisElement>& elements() const { return elements_; }

    MultiDerivation element(std::size_t i) const;
    MultiDerivation from_coordinates(const Vec& coords) const;
    // Exact coordinates; throws if c has a table entry outside the cap basis
    // (the complex does not close at this truncation).
    Vec to_coordinates(const MultiDerivation& c) const;

private:
    DvbModel model_{0, 0, 0, 0};
    int arity_ = 0;
    std::vector<DerivBasisElement> elements_;
};

std::size_t deriv_space_dimension(const DvbModel& model, int arity);

// Matrices of delta on the tagged bases, degrees k_min..k_max (arity is
// degree+1). Fails if delta leaks outside the capped basis or d.d != 0.
CochainComplex def_complex(const BracketElement& b, int k_min, int k_max);

// Exact gauge flow: b_t = exp(t [[-, Delta]]) b for a nilpotent arity-1
// generator. The family satisfies db_t/dt = [[b_t, Delta]] identically in t.
struct GaugeFlow {
    // b_t = sum_j t^j coefficient_j
    std::vector<MultiDerivation> coefficients;
    MultiDerivation at(const Rational& t) const;
};

GaugeFlow gauge_flow(const BracketElement& b, const MultiDerivation& delta);
BracketElement gauge_transport(const BracketElement& b, const MultiDerivation& delta,
                               const Rational& t);

} // namespace defcohom
