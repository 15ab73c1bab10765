#include "defcohom/sections.hpp"

#include <sstream>

namespace defcohom {

DvbModel::DvbModel(int dim_a, int dim_e, int dim_c, int trunc)
    : a_(dim_a), m_(dim_e), c_(dim_c), d_(trunc),
      algebra_(std::make_shared<TruncatedAlgebra>(dim_e, trunc)) {
    if (a_ < 0 || m_ < 0 || c_ < 0 || d_ < 0) throw Error("DvbModel: negative dimension");
}

std::string DvbModel::basis_name(int i) const {
    if (i < a_) return "A" + std::to_string(i + 1);
    return "C" + std::to_string(i - a_ + 1);
}

std::optional<int> DvbModel::parse_basis_name(const std::string& name) const {
    if (name.size() < 2 || (name[0] != 'A' && name[0] != 'C')) return std::nullopt;
    int idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        idx = idx * 10 + (name[i] - '0');
    }
    if (idx < 1) return std::nullopt;
    if (name[0] == 'A') {
        if (idx > a_) return std::nullopt;
        return idx - 1;
    }
    if (idx > c_) return std::nullopt;
    return a_ + idx - 1;
}

Section::Section(const DvbModel& model)
    : coeffs_(static_cast<std::size_t>(model.section_rank()), PolyFunction(model.dim_e())) {}

Section Section::basis(const DvbModel& model, int i) {
    Section s(model);
    s.coeff(i) = PolyFunction::constant(model.dim_e(), 1);
    return s;
}

bool Section::is_zero() const {
    for (const auto& f : coeffs_)
        if (!f.is_zero()) return false;
    return true;
}

Section Section::operator+(const Section& s) const {
    if (s.coeffs_.size() != coeffs_.size()) throw Error("section rank mismatch");
    Section out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = out.coeffs_[i] + s.coeffs_[i];
    return out;
}

Section Section::operator-(const Section& s) const {
    if (s.coeffs_.size() != coeffs_.size()) throw Error("section rank mismatch");
    Section out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = out.coeffs_[i] - s.coeffs_[i];
    return out;
}

Section Section::operator*(const Rational& c) const {
    Section out = *this;
    for (auto& f : out.coeffs_) f = f * c;
    return out;
}

Section Section::scaled_by(const PolyFunction& f) const {
    Section out = *this;
    for (auto& g : out.coeffs_) g = g * f;
    return out;
}

std::string Section::str(const DvbModel& model) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < rank(); ++i) {
        if (coeff(i).is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << coeff(i).str() << ")*" << model.basis_name(i);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

std::vector<PolyFunction> identity_base(const DvbModel& model) {
    std::vector<PolyFunction> base;
    for (int i = 0; i < model.dim_e(); ++i)
        base.push_back(PolyFunction::coordinate(model.dim_e(), i));
    return base;
}

std::vector<std::vector<PolyFunction>> constant_matrix(const DvbModel& model,
                                                       const std::vector<std::vector<Rational>>& k) {
    int n = model.section_rank();
    if (static_cast<int>(k.size()) != n) throw Error("module matrix has wrong size");
    std::vector<std::vector<PolyFunction>> out(
        static_cast<std::size_t>(n),
        std::vector<PolyFunction>(static_cast<std::size_t>(n), PolyFunction(model.dim_e())));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(k[static_cast<std::size_t>(i)].size()) != n)
            throw Error("module matrix has wrong size");
        for (int j = 0; j < n; ++j) {
            const Rational& c = k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (c != 0)
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    PolyFunction::constant(model.dim_e(), c);
        }
    }
    return out;
}

std::vector<std::vector<Rational>> invert_constant(const std::vector<std::vector<Rational>>& k) {
    int n = static_cast<int>(k.size());
    std::vector<std::vector<Rational>> aug(
        static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(2 * n), 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = k[i][j];
        aug[i][static_cast<std::size_t>(n + i)] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw Error("singular module/base matrix");
        std::swap(aug[static_cast<std::size_t>(col)], aug[static_cast<std::size_t>(pivot)]);
        Rational p = aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (auto& x : aug[static_cast<std::size_t>(col)]) x /= p;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rational f = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j < 2 * n; ++j)
                aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                    f * aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        }
    }
    std::vector<std::vector<Rational>> inv(
        static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][static_cast<std::size_t>(n + j)];
    return inv;
}

} // namespace

AutomorphismPair::AutomorphismPair(const DvbModel& model, std::vector<PolyFunction> base,
                                   std::vector<std::vector<PolyFunction>> matrix,
                                   std::vector<PolyFunction> base_inv,
                                   std::vector<std::vector<PolyFunction>> matrix_inv)
    : model_(model), base_(std::move(base)), matrix_(std::move(matrix)),
      base_inv_(std::move(base_inv)), matrix_inv_(std::move(matrix_inv)) {
    if (static_cast<int>(base_.size()) != model_.dim_e())
        throw Error("AutomorphismPair: base map needs one image per coordinate");
    // Truncation compatibility: translations are out of scope.
    for (const PolyFunction& image : base_)
        if (image.constant_term() != 0)
            throw Error("AutomorphismPair: base map must kill constant terms");
    // Invertibility of the module matrix over the truncated algebra reduces
    // to invertibility of its constant-term matrix over Q.
    int n = model_.section_rank();
    std::vector<std::vector<Rational>> constant(
        static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            constant[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].constant_term();
    invert_constant(constant); // throws "singular module/base matrix"
}

AutomorphismPair AutomorphismPair::identity(const DvbModel& model) {
    std::vector<std::vector<Rational>> id(
        static_cast<std::size_t>(model.section_rank()),
        std::vector<Rational>(static_cast<std::size_t>(model.section_rank()), 0));
    for (int i = 0; i < model.section_rank(); ++i)
        id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return {model, identity_base(model), constant_matrix(model, id), identity_base(model),
            constant_matrix(model, id)};
}

AutomorphismPair AutomorphismPair::homogeneity(const DvbModel& model, const Rational& lambda) {
    if (lambda <= 0) throw Error("homogeneity_pair: lambda must be positive");
    int m = model.dim_e(), n = model.section_rank();
    std::vector<PolyFunction> base, base_inv;
    for (int i = 0; i < m; ++i) {
        base.push_back(PolyFunction::coordinate(m, i) * lambda);
        base_inv.push_back(PolyFunction::coordinate(m, i) * (Rational(1) / lambda));
    }
    std::vector<std::vector<Rational>> k(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n), 0));
    std::vector<std::vector<Rational>> kinv = k;
    for (int i = 0; i < n; ++i) {
        Rational diag = model.is_core_index(i) ? Rational(1) / lambda : Rational(1);
        k[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = diag;
        kinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1 / diag;
    }
    return {model, std::move(base), constant_matrix(model, k), std::move(base_inv),
            constant_matrix(model, kinv)};
}

AutomorphismPair AutomorphismPair::linear(const DvbModel& model,
                                          const std::vector<std::vector<Rational>>& base_matrix,
                                          const std::vector<std::vector<Rational>>& module_matrix) {
    int m = model.dim_e();
    if (static_cast<int>(base_matrix.size()) != m) throw Error("base matrix has wrong size");
    auto base_inv_matrix = m > 0 ? invert_constant(base_matrix) : base_matrix;
    auto module_inv = invert_constant(module_matrix);
    auto to_base = [&](const std::vector<std::vector<Rational>>& mat) {
        std::vector<PolyFunction> images;
        for (int i = 0; i < m; ++i) {
            PolyFunction f(m);
            for (int j = 0; j < m; ++j)
                f = f + PolyFunction::coordinate(m, j) *
                            mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            images.push_back(f);
        }
        return images;
    };
    return {model, to_base(base_matrix), constant_matrix(model, module_matrix),
            to_base(base_inv_matrix), constant_matrix(model, module_inv)};
}

AutomorphismPair AutomorphismPair::compose(const AutomorphismPair& first,
                                           const AutomorphismPair& second) {
    // Pullback of the composite "first then second" is phi_first^* o phi_second^*;
    // represent it by base/base' composition and matrix product pulled back.
    const DvbModel& model = first.model();
    if (!model.same_as(second.model())) throw Error("compose: model mismatch");
    int m = model.dim_e(), n = model.section_rank();

    auto compose_maps = [&](const std::vector<PolyFunction>& f,
                            const std::vector<PolyFunction>& g) {
        // (f then g)(u) = g(f(u)) coordinate-wise: substitute f into g.
        std::vector<PolyFunction> out;
        for (int i = 0; i < m; ++i) out.push_back(g[static_cast<std::size_t>(i)].substitute(f));
        return out;
    };
    auto matrix_product = [&](const std::vector<std::vector<PolyFunction>>& lhs,
                              const std::vector<std::vector<PolyFunction>>& rhs) {
        std::vector<std::vector<PolyFunction>> out(
            static_cast<std::size_t>(n),
            std::vector<PolyFunction>(static_cast<std::size_t>(n), PolyFunction(m)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                PolyFunction acc(m);
                for (int k = 0; k < n; ++k)
                    acc = acc + lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                    rhs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
            }
        return out;
    };
    auto substitute_matrix = [&](const std::vector<std::vector<PolyFunction>>& mat,
                                 const std::vector<PolyFunction>& through) {
        auto out = mat;
        for (auto& row : out)
            for (auto& entry : row) entry = entry.substitute(through);
        return out;
    };

    // (psi o phi)^* s = phi^* (psi^* s) for the composite map psi o phi; with
    // phi = first and psi = second: base = second.base o first-through, matrix
    // = first.matrix . (second.matrix o first.base).
    std::vector<PolyFunction> base = compose_maps(first.base_, second.base_);
    auto matrix = matrix_product(first.matrix_, substitute_matrix(second.matrix_, first.base_));
    std::vector<PolyFunction> base_inv = compose_maps(second.base_inv_, first.base_inv_);
    auto matrix_inv =
        matrix_product(second.matrix_inv_, substitute_matrix(first.matrix_inv_, second.base_inv_));
    return {model, std::move(base), std::move(matrix), std::move(base_inv), std::move(matrix_inv)};
}

PolyFunction AutomorphismPair::pullback_function(const PolyFunction& f) const {
    return f.substitute(base_);
}

Section AutomorphismPair::pullback_section(const Section& s) const {
    int n = model_.section_rank();
    if (s.rank() != n) throw Error("pullback_section: rank mismatch");
    Section out(model_);
    for (int i = 0; i < n; ++i) {
        PolyFunction acc(model_.dim_e());
        for (int j = 0; j < n; ++j) {
            const PolyFunction& entry = matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (entry.is_zero() || s.coeff(j).is_zero()) continue;
            acc = acc + entry * s.coeff(j).substitute(base_);
        }
        out.coeff(i) = acc;
    }
    return out;
}

AutomorphismPair AutomorphismPair::inverse() const {
    return {model_, base_inv_, matrix_inv_, base_, matrix_};
}

AutomorphismPair homogeneity_pair(const DvbModel& model, const Rational& lambda) {
    return AutomorphismPair::homogeneity(model, lambda);
}

Section pullback_section(const AutomorphismPair& phi, const Section& s) {
    return phi.pullback_section(s);
}

} // namespace defcohom
