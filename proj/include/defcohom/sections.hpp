// The desk-scale double vector bundle model and its section module.
//
// The base manifold M is a point and everything is trivialized: the total
// space W sits over E = Q^m with fiber A (+) C, so sections of W -> E are
// (a+c)-tuples of polynomial functions on E. Section basis ordering puts
// the A-block before the C-block.
#pragma once

#include "defcohom/poly.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace defcohom {

class DvbModel {
public:
    DvbModel(int dim_a, int dim_e, int dim_c, int trunc);

    int dim_a() const { return a_; }
    int dim_e() const { return m_; }
    int dim_c() const { return c_; }
    int trunc() const { return d_; }
    int section_rank() const { return a_ + c_; } // n = a + c
    const TruncatedAlgebra& algebra() const { return *algebra_; }

    bool is_core_index(int i) const { return i >= a_; } // 0-based section index
    // "A1".."Aa" then "C1".."Cc".
    std::string basis_name(int i) const;
    // Parses "A1"/"C2" style names into 0-based section indices.
    std::optional<int> parse_basis_name(const std::string& name) const;

    bool same_as(const DvbModel& o) const {
        return a_ == o.a_ && m_ == o.m_ && c_ == o.c_ && d_ == o.d_;
    }

private:
    int a_, m_, c_, d_;
    std::shared_ptr<const TruncatedAlgebra> algebra_;
};

// A section of W -> E: one polynomial coefficient per fiber basis vector.
class Section {
public:
    Section() = default;
    explicit Section(const DvbModel& model);
    static Section basis(const DvbModel& model, int i);

    int rank() const { return static_cast<int>(coeffs_.size()); }
    PolyFunction& coeff(int i) { return coeffs_[static_cast<std::size_t>(i)]; }
    const PolyFunction& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    bool is_zero() const;

    Section operator+(const Section& s) const;
    Section operator-(const Section& s) const;
    Section operator*(const Rational& c) const;
    // Coefficient-wise product by a function, exact.
    Section scaled_by(const PolyFunction& f) const;
    bool operator==(const Section& s) const = default;

    std::string str(const DvbModel& model) const;

private:
    std::vector<PolyFunction> coeffs_;
};

// A vector bundle automorphism pair (base map, module matrix) acting on
// sections by pullback: (phi* s) = module_matrix . (s o base_map). Pairs
// built by the factories below carry their exact inverse so that they can
// also act on multiderivations.
class AutomorphismPair {
public:
    static AutomorphismPair identity(const DvbModel& model);
    // h_lambda of the homogeneity structure of W -> A: base u -> lambda u,
    // module matrix = id on the A-block, lambda^{-1} id on the C-block.
    static AutomorphismPair homogeneity(const DvbModel& model, const Rational& lambda);
    // Constant invertible module matrix over an invertible linear base map.
    static AutomorphismPair linear(const DvbModel& model,
                                   const std::vector<std::vector<Rational>>& base_matrix,
                                   const std::vector<std::vector<Rational>>& module_matrix);
    static AutomorphismPair compose(const AutomorphismPair& first, const AutomorphismPair& second);

    const DvbModel& model() const { return model_; }
    const std::vector<PolyFunction>& base_map() const { return base_; }
    const std::vector<std::vector<PolyFunction>>& module_matrix() const { return matrix_; }

    PolyFunction pullback_function(const PolyFunction& f) const; // f o base_map
    Section pullback_section(const Section& s) const;
    AutomorphismPair inverse() const;

    // Raw constructor; both directions must be exact inverses of each other.
    AutomorphismPair(const DvbModel& model, std::vector<PolyFunction> base,
                     std::vector<std::vector<PolyFunction>> matrix,
                     std::vector<PolyFunction> base_inv,
                     std::vector<std::vector<PolyFunction>> matrix_inv);

private:
    DvbModel model_;
    std::vector<PolyFunction> base_;
    std::vector<std::vector<PolyFunction>> matrix_;
    std::vector<PolyFunction> base_inv_;
    std::vector<std::vector<PolyFunction>> matrix_inv_;
};

AutomorphismPair homogeneity_pair(const DvbModel& model, const Rational& lambda);
Section pullback_section(const AutomorphismPair& phi, const Section& s);

} // namespace defcohom
