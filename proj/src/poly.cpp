#include "defcohom/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace defcohom {

int monomial_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

std::string monomial_str(const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        os << "u" << (i + 1);
        if (m[i] > 1) os << "^" << m[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

PolyFunction PolyFunction::constant(int nvars, const Rational& c) {
    PolyFunction f(nvars);
    f.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
    return f;
}

PolyFunction PolyFunction::coordinate(int nvars, int i) {
    PolyFunction f(nvars);
    Monomial mono(static_cast<std::size_t>(nvars), 0);
    mono[static_cast<std::size_t>(i)] = 1;
    f.add_term(mono, 1);
    return f;
}

PolyFunction PolyFunction::monomial_term(const Monomial& mono, const Rational& c) {
    PolyFunction f(static_cast<int>(mono.size()));
    f.add_term(mono, c);
    return f;
}

int PolyFunction::degree() const {
    int d = -1;
    for (const auto& [mono, coeff] : terms_) d = std::max(d, monomial_degree(mono));
    return d;
}

Rational PolyFunction::coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational PolyFunction::constant_term() const {
    return coefficient(Monomial(static_cast<std::size_t>(nvars_), 0));
}

void PolyFunction::add_term(const Monomial& mono, const Rational& c) {
    if (static_cast<int>(mono.size()) != nvars_)
        throw Error("PolyFunction::add_term: wrong monomial length");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

PolyFunction PolyFunction::operator+(const PolyFunction& g) const {
    if (nvars_ != g.nvars_) throw Error("polynomial variable-count mismatch");
    PolyFunction out = *this;
    for (const auto& [mono, c] : g.terms_) out.add_term(mono, c);
    return out;
}

PolyFunction PolyFunction::operator-(const PolyFunction& g) const {
    if (nvars_ != g.nvars_) throw Error("polynomial variable-count mismatch");
    PolyFunction out = *this;
    for (const auto& [mono, c] : g.terms_) out.add_term(mono, -c);
    return out;
}

PolyFunction PolyFunction::operator*(const PolyFunction& g) const {
    if (nvars_ != g.nvars_) throw Error("polynomial variable-count mismatch");
    PolyFunction out(nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : g.terms_) {
            Monomial mono(ma);
            for (std::size_t i = 0; i < mono.size(); ++i) mono[i] += mb[i];
            out.add_term(mono, ca * cb);
        }
    return out;
}

PolyFunction PolyFunction::operator*(const Rational& c) const {
    PolyFunction out(nvars_);
    if (c == 0) return out;
    for (const auto& [mono, coeff] : terms_) out.add_term(mono, coeff * c);
    return out;
}

PolyFunction PolyFunction::operator-() const { return *this * Rational(-1); }

PolyFunction PolyFunction::derivative(int var) const {
    PolyFunction out(nvars_);
    for (const auto& [mono, c] : terms_) {
        int e = mono[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        Monomial reduced(mono);
        reduced[static_cast<std::size_t>(var)] -= 1;
        out.add_term(reduced, c * e);
    }
    return out;
}

PolyFunction PolyFunction::substitute(const std::vector<PolyFunction>& images) const {
    if (static_cast<int>(images.size()) != nvars_)
        throw Error("substitute: need one image per variable");
    int target_vars = images.empty() ? nvars_ : images[0].nvars();
    PolyFunction out(target_vars);
    for (const auto& [mono, c] : terms_) {
        PolyFunction term = PolyFunction::constant(target_vars, c);
        for (std::size_t i = 0; i < mono.size(); ++i)
            for (int e = 0; e < mono[i]; ++e) term = term * images[i];
        out = out + term;
    }
    return out;
}

PolyFunction PolyFunction::truncated(int d) const {
    PolyFunction out(nvars_);
    for (const auto& [mono, c] : terms_)
        if (monomial_degree(mono) <= d) out.add_term(mono, c);
    return out;
}

PolyFunction PolyFunction::homogeneous_part(int d) const {
    PolyFunction out(nvars_);
    for (const auto& [mono, c] : terms_)
        if (monomial_degree(mono) == d) out.add_term(mono, c);
    return out;
}

std::string PolyFunction::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        if (!first) os << " + ";
        os << rational_str(c);
        if (monomial_degree(mono) > 0) os << "*" << monomial_str(mono);
        first = false;
    }
    return os.str();
}

bool PolyVectorField::is_zero() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const PolyFunction& f) { return f.is_zero(); });
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& y) const {
    if (nvars_ != y.nvars_) throw Error("vector field variable-count mismatch");
    PolyVectorField out(nvars_);
    for (int i = 0; i < nvars_; ++i) out.component(i) = component(i) + y.component(i);
    return out;
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& y) const {
    if (nvars_ != y.nvars_) throw Error("vector field variable-count mismatch");
    PolyVectorField out(nvars_);
    for (int i = 0; i < nvars_; ++i) out.component(i) = component(i) - y.component(i);
    return out;
}

PolyVectorField PolyVectorField::operator*(const Rational& c) const {
    PolyVectorField out(nvars_);
    for (int i = 0; i < nvars_; ++i) out.component(i) = component(i) * c;
    return out;
}

std::string PolyVectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < nvars_; ++i) {
        if (component(i).is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << component(i).str() << ")*d/du" << (i + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

PolyFunction vf_apply(const PolyVectorField& x, const PolyFunction& f) {
    if (x.nvars() != f.nvars()) throw Error("vf_apply: variable-count mismatch");
    PolyFunction out(f.nvars());
    for (int i = 0; i < x.nvars(); ++i)
        if (!x.component(i).is_zero()) out = out + x.component(i) * f.derivative(i);
    return out;
}

PolyVectorField vf_commutator(const PolyVectorField& x, const PolyVectorField& y) {
    if (x.nvars() != y.nvars()) throw Error("vf_commutator: variable-count mismatch");
    PolyVectorField out(x.nvars());
    for (int i = 0; i < x.nvars(); ++i)
        out.component(i) = vf_apply(x, y.component(i)) - vf_apply(y, x.component(i));
    return out;
}

namespace {

// Graded-lexicographic order: total degree first, then exponent vectors.
bool grlex_less(const Monomial& a, const Monomial& b) {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    return a > b; // u1 before u2 within a degree block
}

} // namespace

TruncatedAlgebra::TruncatedAlgebra(int num_vars, int degree_cap) : m_(num_vars), d_(degree_cap) {
    if (m_ < 0 || d_ < 0) throw Error("TruncatedAlgebra: negative parameters");
    // Enumerate all exponent vectors of total degree <= d.
    Monomial mono(static_cast<std::size_t>(m_), 0);
    std::vector<Monomial> all;
    if (m_ == 0) {
        all.push_back(mono);
    } else {
        // Odometer over exponents bounded by total degree.
        while (true) {
            if (monomial_degree(mono) <= d_) all.push_back(mono);
            int i = m_ - 1;
            while (i >= 0) {
                mono[static_cast<std::size_t>(i)]++;
                if (monomial_degree(mono) <= d_) break;
                mono[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
        }
    }
    std::sort(all.begin(), all.end(), grlex_less);
    basis_ = std::move(all);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::size_t TruncatedAlgebra::index_of(const Monomial& mono) const {
    auto it = index_.find(mono);
    if (it == index_.end())
        throw Error("monomial " + monomial_str(mono) + " outside the degree-" +
                    std::to_string(d_) + " basis");
    return it->second;
}

PolyFunction TruncatedAlgebra::poly_multiply(const PolyFunction& f, const PolyFunction& g) const {
    if (f.nvars() != m_ || g.nvars() != m_)
        throw Error("poly_multiply: algebra mismatch");
    return (f * g).truncated(d_);
}

bool TruncatedAlgebra::contains(const PolyFunction& f) const {
    return f.nvars() == m_ && f.degree() <= d_;
}

} // namespace defcohom
