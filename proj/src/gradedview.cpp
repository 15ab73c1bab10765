#include "defcohom/gradedview.hpp"

#include <sstream>

namespace defcohom {

namespace {

int sort_sign_tuple(Tuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j]) return 0;
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    return sign;
}

} // namespace

Form Form::function(const DvbModel& model, const PolyFunction& f) {
    Form out(model);
    out.add_term({}, f);
    return out;
}

Form Form::generator(const DvbModel& model, int j) {
    Form out(model);
    out.add_term({j}, PolyFunction::constant(model.dim_e(), 1));
    return out;
}

void Form::add_term(const Tuple& odd, const PolyFunction& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(odd, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyFunction Form::coefficient(const Tuple& odd) const {
    auto it = terms_.find(odd);
    return it == terms_.end() ? PolyFunction(model_.dim_e()) : it->second;
}

Form Form::operator+(const Form& o) const {
    Form out = *this;
    for (const auto& [odd, coeff] : o.terms_) out.add_term(odd, coeff);
    return out;
}

Form Form::operator-(const Form& o) const {
    Form out = *this;
    for (const auto& [odd, coeff] : o.terms_) out.add_term(odd, -coeff);
    return out;
}

Form Form::operator*(const Rational& c) const {
    Form out(model_);
    if (c == 0) return out;
    for (const auto& [odd, coeff] : terms_) out.add_term(odd, coeff * c);
    return out;
}

Form Form::wedge(const Form& o) const {
    Form out(model_);
    for (const auto& [s, g] : terms_)
        for (const auto& [t, h] : o.terms_) {
            Tuple joined = s;
            joined.insert(joined.end(), t.begin(), t.end());
            int sign = sort_sign_tuple(joined);
            if (sign == 0) continue;
            out.add_term(joined, (g * h) * Rational(sign));
        }
    return out;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [odd, coeff] : terms_) {
        if (!first) os << " + ";
        os << "(" << coeff.str() << ")";
        for (int j : odd) os << "*xi" << (j + 1);
        first = false;
    }
    return os.str();
}

std::size_t forms_basis_dimension(const DvbModel& model) {
    return model.algebra().basis_size() << model.section_rank();
}

int form_weight(const DvbModel& model, const Monomial& mono, const Tuple& odd) {
    int w = monomial_degree(mono);
    for (int j : odd)
        if (model.is_core_index(j)) ++w; // odd generator dual to a core section
    return w;
}

std::optional<int> homogeneous_weight(const Form& f) {
    std::optional<int> w;
    for (const auto& [odd, coeff] : f.terms())
        for (const auto& [mono, c] : coeff.terms()) {
            int cur = form_weight(f.model(), mono, odd);
            if (!w)
                w = cur;
            else if (*w != cur)
                return std::nullopt;
        }
    return w;
}

GradedDerivation::GradedDerivation(const DvbModel& model, int degree)
    : model_(model), degree_(degree),
      coord_images_(static_cast<std::size_t>(model.dim_e()), Form(model)),
      odd_images_(static_cast<std::size_t>(model.section_rank()), Form(model)) {}

void GradedDerivation::set_coordinate_image(int i, const Form& f) {
    coord_images_[static_cast<std::size_t>(i)] = f;
}

void GradedDerivation::set_odd_image(int j, const Form& f) {
    odd_images_[static_cast<std::size_t>(j)] = f;
}

const Form& GradedDerivation::coordinate_image(int i) const {
    return coord_images_[static_cast<std::size_t>(i)];
}

const Form& GradedDerivation::odd_image(int j) const {
    return odd_images_[static_cast<std::size_t>(j)];
}

Form GradedDerivation::apply(const Form& f) const {
    Form out(model_);
    for (const auto& [odd, coeff] : f.terms()) {
        // D(g xi^S) = D(g) xi^S + g D(xi^S); coefficients are even.
        Form xi_part(model_);
        xi_part.add_term(odd, PolyFunction::constant(model_.dim_e(), 1));
        // Chain rule on the polynomial coefficient.
        for (int i = 0; i < model_.dim_e(); ++i) {
            PolyFunction df = coeff.derivative(i);
            if (df.is_zero()) continue;
            Form scaled(model_);
            for (const auto& [o2, c2] : coord_images_[static_cast<std::size_t>(i)].terms())
                scaled.add_term(o2, c2 * df);
            out = out + scaled.wedge(xi_part);
        }
        // Leibniz over the odd generators.
        for (std::size_t t = 0; t < odd.size(); ++t) {
            int sign = (degree_ % 2 == 1 && t % 2 == 1) ? -1 : 1; // (-1)^{|D| (t)}
            Form left(model_);
            Tuple before(odd.begin(), odd.begin() + static_cast<long>(t));
            Tuple after(odd.begin() + static_cast<long>(t) + 1, odd.end());
            left.add_term(before, coeff * Rational(sign));
            Form mid = odd_images_[static_cast<std::size_t>(odd[t])];
            Form right(model_);
            right.add_term(after, PolyFunction::constant(model_.dim_e(), 1));
            out = out + left.wedge(mid).wedge(right);
        }
    }
    return out;
}

GradedDerivation GradedDerivation::operator+(const GradedDerivation& o) const {
    if (degree_ != o.degree_) throw Error("derivation sum: degree mismatch");
    GradedDerivation out(model_, degree_);
    for (int i = 0; i < model_.dim_e(); ++i)
        out.set_coordinate_image(i, coordinate_image(i) + o.coordinate_image(i));
    for (int j = 0; j < model_.section_rank(); ++j)
        out.set_odd_image(j, odd_image(j) + o.odd_image(j));
    return out;
}

GradedDerivation GradedDerivation::operator-(const GradedDerivation& o) const {
    return *this + o * Rational(-1);
}

GradedDerivation GradedDerivation::operator*(const Rational& c) const {
    GradedDerivation out(model_, degree_);
    for (int i = 0; i < model_.dim_e(); ++i) out.set_coordinate_image(i, coordinate_image(i) * c);
    for (int j = 0; j < model_.section_rank(); ++j) out.set_odd_image(j, odd_image(j) * c);
    return out;
}

bool GradedDerivation::operator==(const GradedDerivation& o) const {
    if (!model_.same_as(o.model_) || degree_ != o.degree_) return false;
    for (int i = 0; i < model_.dim_e(); ++i)
        if (!(coordinate_image(i) == o.coordinate_image(i))) return false;
    for (int j = 0; j < model_.section_rank(); ++j)
        if (!(odd_image(j) == o.odd_image(j))) return false;
    return true;
}

GradedDerivation derivation_commutator(const GradedDerivation& d1, const GradedDerivation& d2) {
    if (!d1.model().same_as(d2.model())) throw Error("derivation_commutator: model mismatch");
    const DvbModel& model = d1.model();
    GradedDerivation out(model, d1.degree() + d2.degree());
    int sign = (d1.degree() % 2 == 1 && d2.degree() % 2 == 1) ? -1 : 1;
    auto combine = [&](const Form& a, const Form& b) { return a - b * Rational(sign); };
    for (int i = 0; i < model.dim_e(); ++i) {
        Form u = Form::function(model, PolyFunction::coordinate(model.dim_e(), i));
        out.set_coordinate_image(i, combine(d1.apply(d2.apply(u)), d2.apply(d1.apply(u))));
    }
    for (int j = 0; j < model.section_rank(); ++j) {
        Form xi = Form::generator(model, j);
        out.set_odd_image(j, combine(d1.apply(d2.apply(xi)), d2.apply(d1.apply(xi))));
    }
    return out;
}

GradedDerivation cochain_to_derivation(const MultiDerivation& c) {
    const DvbModel& model = c.model();
    int r = c.arity();
    GradedDerivation out(model, r - 1);
    int n = model.section_rank();
    if (r >= 1) {
        for (int i = 0; i < model.dim_e(); ++i) {
            Form img(model);
            PolyFunction ui = PolyFunction::coordinate(model.dim_e(), i);
            for (const Tuple& t : increasing_tuples(n, r - 1)) {
                PolyFunction g = vf_apply(c.sym(t), ui);
                if (!g.is_zero()) img.add_term(t, g);
            }
            out.set_coordinate_image(i, img);
        }
    }
    // The value term carries the minus sign of the second unshuffle sum;
    // this is the choice that makes c -> delta_c a homomorphism of DGLAs
    // (with the opposite sign it is an anti-homomorphism).
    for (int p = 0; p < n; ++p) {
        Form img(model);
        for (const Tuple& t : increasing_tuples(n, r)) {
            PolyFunction g = c.val(t).coeff(p);
            if (!g.is_zero()) img.add_term(t, -g);
        }
        out.set_odd_image(p, img);
    }
    return out;
}

GradedDerivation ce_differential(const MultiDerivation& b) {
    if (b.arity() != 2) throw Error("ce_differential expects an arity-2 bracket");
    GradedDerivation d = cochain_to_derivation(b);
    // d^2 = 0 on generators iff b is Maurer-Cartan.
    const DvbModel& model = b.model();
    for (int i = 0; i < model.dim_e(); ++i) {
        PolyFunction ui = PolyFunction::coordinate(model.dim_e(), i);
        if (!d.apply(d.apply(Form::function(model, ui))).is_zero())
            throw Error("d^2 != 0 on coordinate u" + std::to_string(i + 1) +
                        ": bracket is not Maurer-Cartan");
    }
    for (int j = 0; j < model.section_rank(); ++j)
        if (!d.apply(d.apply(Form::generator(model, j))).is_zero())
            throw Error("d^2 != 0 on generator dual to " + model.basis_name(j) +
                        ": bracket is not Maurer-Cartan");
    return d;
}

GradedDerivation ce_differential(const BracketElement& b) {
    if (!b.mc_verified()) throw Error("ce_differential: bracket not Maurer-Cartan verified");
    return ce_differential(b.underlying());
}

bool derivation_is_weight_zero(const GradedDerivation& d) {
    const DvbModel& model = d.model();
    int n = model.section_rank();
    for (const Monomial& mono : model.algebra().monomial_basis()) {
        for (int k = 0; k <= n; ++k) {
            for (const Tuple& odd : increasing_tuples(n, k)) {
                Form basis(model);
                basis.add_term(odd, PolyFunction::monomial_term(mono, 1));
                int w = form_weight(model, mono, odd);
                Form img = d.apply(basis);
                if (img.is_zero()) continue;
                std::optional<int> iw = homogeneous_weight(img);
                if (!iw || *iw != w) return false;
            }
        }
    }
    return true;
}

} // namespace defcohom
