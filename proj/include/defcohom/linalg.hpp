// Exact rational linear algebra: ranks, kernels, cochain complexes,
// cohomology, mapping cones and exactness checks for short/long exact
// sequences. Everything is dense; desk-scale dimensions make sparse
// machinery unnecessary.
#pragma once

#include "defcohom/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace defcohom {

using Vec = std::vector<Rational>;

class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_zero() const;
    RationalMatrix transposed() const;
    Vec apply(const Vec& x) const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
    bool operator==(const RationalMatrix& other) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

struct RankKernelImage {
    std::size_t rank = 0;
    std::vector<Vec> kernel_basis; // vectors of length cols
    std::vector<Vec> image_basis;  // vectors of length rows
};

// Gaussian elimination with pivoting by smallest-magnitude nonzero
// numerator, to limit coefficient growth. rank + |kernel| = cols.
RankKernelImage rank_kernel_image(const RationalMatrix& m);

std::size_t rank_of(const RationalMatrix& m);

// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve_linear(const RationalMatrix& m, const Vec& b);

// Dimension of the span of the given vectors (all of equal length).
std::size_t span_dimension(const std::vector<Vec>& vectors);

// A finite cochain complex on a contiguous degree range. Differentials
// out of range are zero maps; d_k maps degree k to degree k+1 and has
// shape dims[k+1] x dims[k].
class CochainComplex {
public:
    CochainComplex() : k_min_(0), dims_{0} {} // trivial zero complex
    CochainComplex(int k_min, std::vector<std::size_t> dims,
                   std::vector<RationalMatrix> differentials);

    int k_min() const { return k_min_; }
    int k_max() const { return k_min_ + static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int k) const;
    // d_k for k_min <= k < k_max; zero map shape otherwise.
    RationalMatrix differential(int k) const;

private:
    int k_min_;
    std::vector<std::size_t> dims_;
    std::vector<RationalMatrix> differentials_; // differentials_[i] = d_{k_min + i}
};

struct ComplexWitness {
    int degree = 0;          // first degree where d_{k+1} d_k != 0
    std::size_t row = 0, col = 0;
};

// True iff d_{k+1} d_k = 0 for all k; on failure reports the first
// nonzero entry of a product.
struct ComplexCheck {
    bool ok = true;
    std::optional<ComplexWitness> witness;
};
ComplexCheck verify_complex(const CochainComplex& c);

struct CohomologyReport {
    int k_min = 0;
    std::vector<std::size_t> betti;               // per degree
    std::vector<std::vector<Vec>> representatives; // cocycles spanning a complement of the coboundaries
    std::size_t betti_at(int k) const;
};

// Exact Betti numbers with explicit representatives. Rejects inputs that
// fail verify_complex.
CohomologyReport cohomology(const CochainComplex& c);

// A degree-preserving map of complexes, one matrix per degree of the source.
struct ComplexMap {
    const CochainComplex* source = nullptr;
    const CochainComplex* target = nullptr;
    std::map<int, RationalMatrix> matrices; // degree -> dim(target,k) x dim(source,k)
    RationalMatrix matrix_at(int k) const;
};

// Throws unless f commutes with the differentials (witness degree in the message).
void require_cochain_map(const ComplexMap& f);

// Cone(f)^k = source^{k+1} (+) target^k, d(a,b) = (-d a, f(a) + d b).
CochainComplex mapping_cone(const ComplexMap& f);

// Short exact sequence 0 -> K -i-> M -p-> Q -> 0 of complexes.
struct ShortExactSequence {
    const CochainComplex* K = nullptr;
    const CochainComplex* M = nullptr;
    const CochainComplex* Q = nullptr;
    ComplexMap i; // K -> M
    ComplexMap p; // M -> Q
};

struct LesCheckResult {
    bool ok = true;
    std::string detail; // human-readable failure location when !ok
};

// Verifies the input is a SES of complexes (i injective, p surjective,
// im i = ker p, both cochain maps), constructs connecting maps by snake
// lifts on representatives, and verifies exactness of the long sequence
// at every node by rank counting.
LesCheckResult les_exactness_check(const ShortExactSequence& ses);

} // namespace defcohom
