// Polynomial functions and vector fields on the base E of W -> E.
//
// Coefficient arithmetic in the calculus is exact: PolyFunction carries a
// sparse exponent->coefficient map with no intrinsic degree bound, so the
// Leibniz rule and all bracket identities hold on the nose. The degree cap
// d of a TruncatedAlgebra bounds the *enumerated* monomial bases (spaces
// of cochains, forms, report tables) and provides the truncated product
// of the quotient by the (d+1)-st power of the maximal ideal.
#pragma once

#include "defcohom/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace defcohom {

// Exponent vector, one entry per base coordinate u_1..u_m.
using Monomial = std::vector<int>;

int monomial_degree(const Monomial& m);
std::string monomial_str(const Monomial& m); // "1", "u1^2*u2", ...

class PolyFunction {
public:
    PolyFunction() : nvars_(0) {}
    explicit PolyFunction(int nvars) : nvars_(nvars) {}
    static PolyFunction constant(int nvars, const Rational& c);
    static PolyFunction coordinate(int nvars, int i); // u_{i+1}
    static PolyFunction monomial_term(const Monomial& mono, const Rational& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const; // -1 for the zero polynomial
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coefficient(const Monomial& mono) const;
    Rational constant_term() const;

    void add_term(const Monomial& mono, const Rational& c);

    PolyFunction operator+(const PolyFunction& g) const;
    PolyFunction operator-(const PolyFunction& g) const;
    PolyFunction operator*(const PolyFunction& g) const; // exact product
    PolyFunction operator*(const Rational& c) const;
    PolyFunction operator-() const;
    bool operator==(const PolyFunction& g) const = default;

    PolyFunction derivative(int var) const;
    // Substitute coordinate i -> images[i]; images must all share a variable count.
    PolyFunction substitute(const std::vector<PolyFunction>& images) const;
    // Drop monomials of total degree > d.
    PolyFunction truncated(int d) const;
    // Keep only monomials of total degree == d.
    PolyFunction homogeneous_part(int d) const;

    std::string str() const;

private:
    int nvars_;
    std::map<Monomial, Rational> terms_; // zero coefficients never stored
};

// Vector field sum_i X^i d/du_i with polynomial components.
class PolyVectorField {
public:
    PolyVectorField() = default;
    explicit PolyVectorField(int nvars)
        : nvars_(nvars), components_(static_cast<std::size_t>(nvars), PolyFunction(nvars)) {}

    int nvars() const { return nvars_; }
    bool is_zero() const;
    PolyFunction& component(int i) { return components_[static_cast<std::size_t>(i)]; }
    const PolyFunction& component(int i) const { return components_[static_cast<std::size_t>(i)]; }

    PolyVectorField operator+(const PolyVectorField& y) const;
    PolyVectorField operator-(const PolyVectorField& y) const;
    PolyVectorField operator*(const Rational& c) const;
    bool operator==(const PolyVectorField& y) const = default;

    std::string str() const;

private:
    int nvars_ = 0;
    std::vector<PolyFunction> components_;
};

// X(f) = sum_i X^i df/du_i, exact.
PolyFunction vf_apply(const PolyVectorField& x, const PolyFunction& f);
// [X,Y]^i = X(Y^i) - Y(X^i).
PolyVectorField vf_commutator(const PolyVectorField& x, const PolyVectorField& y);

// The truncated polynomial algebra on m variables with degree cap d.
class TruncatedAlgebra {
public:
    TruncatedAlgebra(int num_vars, int degree_cap);

    int num_vars() const { return m_; }
    int degree_cap() const { return d_; }
    // Graded-lexicographic monomial basis of the quotient, constant first.
    const std::vector<Monomial>& monomial_basis() const { return basis_; }
    std::size_t basis_size() const { return basis_.size(); }
    std::size_t index_of(const Monomial& mono) const; // throws if out of range

    bool same_as(const TruncatedAlgebra& other) const {
        return m_ == other.m_ && d_ == other.d_;
    }

    // Product in the quotient: exact product with overflow monomials dropped.
    PolyFunction poly_multiply(const PolyFunction& f, const PolyFunction& g) const;
    bool contains(const PolyFunction& f) const; // degree <= d

private:
    int m_, d_;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t> index_;
};

} // namespace defcohom
