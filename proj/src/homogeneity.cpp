#include "defcohom/homogeneity.hpp"

namespace defcohom {

namespace {

int core_count(const DvbModel& model, const Tuple& t) {
    int count = 0;
    for (int i : t)
        if (model.is_core_index(i)) ++count;
    return count;
}

} // namespace

int weight_of_basis_element(const DvbModel& model, const DerivBasisElement& e) {
    int w = monomial_degree(e.mono) + core_count(model, e.tuple);
    if (e.kind == DerivBasisElement::Kind::Val)
        return w - (model.is_core_index(e.index) ? 1 : 0);
    return w - 1;
}

WeightDecomposition weight_decompose(const MultiDerivation& c) {
    const DvbModel& model = c.model();
    WeightDecomposition out;
    auto part_at = [&](int q) -> MultiDerivation& {
        auto it = out.parts.find(q);
        if (it == out.parts.end())
            it = out.parts.emplace(q, MultiDerivation(model, c.arity())).first;
        return it->second;
    };
    for (const auto& [t, s] : c.val_table()) {
        int base = core_count(model, t);
        for (int o = 0; o < model.section_rank(); ++o) {
            int adjust = model.is_core_index(o) ? 1 : 0;
            for (const auto& [mono, coeff] : s.coeff(o).terms()) {
                int q = monomial_degree(mono) + base - adjust;
                MultiDerivation& part = part_at(q);
                Section v = part.val(t);
                v.coeff(o) = v.coeff(o) + PolyFunction::monomial_term(mono, coeff);
                part.set_val(t, v);
            }
        }
    }
    for (const auto& [t, x] : c.sym_table()) {
        int base = core_count(model, t);
        for (int dir = 0; dir < model.dim_e(); ++dir) {
            for (const auto& [mono, coeff] : x.component(dir).terms()) {
                int q = monomial_degree(mono) + base - 1;
                MultiDerivation& part = part_at(q);
                PolyVectorField v = part.sym(t);
                v.component(dir) = v.component(dir) + PolyFunction::monomial_term(mono, coeff);
                part.set_sym(t, v);
            }
        }
    }
    // Prune exact zeros (cancellations cannot occur basis-diagonally, but
    // keep the invariant tight).
    for (auto it = out.parts.begin(); it != out.parts.end();)
        it = it->second.is_zero() ? out.parts.erase(it) : std::next(it);
    return out;
}

MultiDerivation WeightDecomposition::part(int q, const DvbModel& model, int arity) const {
    auto it = parts.find(q);
    return it == parts.end() ? MultiDerivation(model, arity) : it->second;
}

MultiDerivation core_part(const MultiDerivation& c) {
    return weight_decompose(c).part(-1, c.model(), c.arity());
}

MultiDerivation lin_part(const MultiDerivation& c) {
    return weight_decompose(c).part(0, c.model(), c.arity());
}

MultiDerivation pr_q(const MultiDerivation& c, int q) {
    return weight_decompose(c).part(q, c.model(), c.arity());
}

bool is_linear(const MultiDerivation& c) { return lin_part(c) == c; }

LinearBasis::LinearBasis(const DvbModel& model, int arity) : full_(model, arity) {
    if (model.dim_e() > 0 && model.trunc() < 1)
        throw Error("linear basis needs degree cap >= 1 when the base has coordinates");
    for (std::size_t i = 0; i < full_.dimension(); ++i)
        if (weight_of_basis_element(model, full_.elements()[i]) == 0) indices_.push_back(i);
}

Vec LinearBasis::to_coordinates(const MultiDerivation& c) const {
    Vec full_coords = full_.to_coordinates(c);
    Vec coords(indices_.size());
    std::vector<bool> kept(full_coords.size(), false);
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        coords[i] = full_coords[indices_[i]];
        kept[indices_[i]] = true;
    }
    for (std::size_t i = 0; i < full_coords.size(); ++i)
        if (!kept[i] && full_coords[i] != 0) {
            const DerivBasisElement& e = full_.elements()[i];
            throw Error("cochain has a nonzero component of weight " +
                        std::to_string(weight_of_basis_element(full_.model(), e)) +
                        " (monomial " + monomial_str(e.mono) + "); not in the linear subcomplex");
        }
    return coords;
}

MultiDerivation LinearBasis::from_coordinates(const Vec& coords) const {
    if (coords.size() != indices_.size()) throw Error("LinearBasis: dimension mismatch");
    Vec full_coords(full_.dimension());
    for (std::size_t i = 0; i < indices_.size(); ++i) full_coords[indices_[i]] = coords[i];
    return full_.from_coordinates(full_coords);
}

LinearSubcomplex linear_subcomplex(const BracketElement& b, int k_min, int k_max) {
    if (!b.mc_verified()) throw Error("linear_subcomplex: bracket not Maurer-Cartan verified");
    if (!is_linear(b.underlying())) {
        WeightDecomposition w = weight_decompose(b.underlying());
        for (const auto& [q, part] : w.parts)
            if (q != 0)
                throw Error("bracket is not linear: nonzero component of weight " +
                            std::to_string(q));
    }
    if (k_min > k_max) throw Error("linear_subcomplex: empty degree range");

    std::vector<LinearBasis> bases;
    for (int k = k_min; k <= k_max; ++k) bases.emplace_back(b.model(), k + 1);
    std::vector<std::size_t> dims;
    for (const auto& basis : bases) dims.push_back(basis.dimension());
    std::vector<RationalMatrix> diffs;
    for (int k = k_min; k < k_max; ++k) {
        const LinearBasis& src = bases[static_cast<std::size_t>(k - k_min)];
        const LinearBasis& dst = bases[static_cast<std::size_t>(k - k_min + 1)];
        RationalMatrix d(dst.dimension(), src.dimension());
        for (std::size_t j = 0; j < src.dimension(); ++j) {
            MultiDerivation dc = gerstenhaber_bracket(b.underlying(), src.element(j));
            Vec col = dst.to_coordinates(dc); // throws if delta leaves weight 0
            for (std::size_t i = 0; i < col.size(); ++i) d.at(i, j) = col[i];
        }
        diffs.push_back(std::move(d));
    }
    LinearSubcomplex out{CochainComplex(k_min, std::move(dims), std::move(diffs)), {}, k_min};
    ComplexCheck check = verify_complex(out.complex);
    if (!check.ok)
        throw Error("linear_subcomplex: d.d != 0 at degree " +
                    std::to_string(check.witness->degree));
    for (int k = k_min; k <= k_max; ++k) {
        const LinearBasis& basis = bases[static_cast<std::size_t>(k - k_min)];
        RationalMatrix embed(basis.full().dimension(), basis.dimension());
        for (std::size_t j = 0; j < basis.dimension(); ++j)
            embed.at(basis.full_indices()[j], j) = 1;
        out.embeddings.push_back(std::move(embed));
    }
    return out;
}

LinearizationSplit linearization_split(const BracketElement& b, const MultiDerivation& c) {
    if (!b.mc_verified()) throw Error("linearization_split: bracket not Maurer-Cartan verified");
    if (!is_linear(b.underlying())) throw Error("linearization_split: bracket must be linear");
    MultiDerivation lin = lin_part(c);
    return {lin, c - lin};
}

} // namespace defcohom
