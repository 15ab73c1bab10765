#include "defcohom/multideriv.hpp"

#include <algorithm>
#include <sstream>

namespace defcohom {

std::vector<Tuple> increasing_tuples(int n, int k) {
    std::vector<Tuple> out;
    if (k < 0 || k > n) return out;
    Tuple t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++t[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

namespace {

// Sign of the permutation sorting t; 0 if t has repeats.
int sort_sign(Tuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j]) return 0;
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    return sign;
}

// (l, r)-unshuffles of {0..l+r-1} with parity signs.
struct Unshuffle {
    std::vector<int> order; // first l positions, then last r
    int sign;
};

std::vector<Unshuffle> unshuffles(int l, int r) {
    std::vector<Unshuffle> out;
    for (const Tuple& first : increasing_tuples(l + r, l)) {
        Unshuffle u;
        u.order.assign(first.begin(), first.end());
        std::vector<bool> used(static_cast<std::size_t>(l + r), false);
        for (int i : first) used[static_cast<std::size_t>(i)] = true;
        for (int i = 0; i < l + r; ++i)
            if (!used[static_cast<std::size_t>(i)]) u.order.push_back(i);
        // Parity of the permutation written in one-line notation.
        int sign = 1;
        for (std::size_t i = 0; i < u.order.size(); ++i)
            for (std::size_t j = i + 1; j < u.order.size(); ++j)
                if (u.order[i] > u.order[j]) sign = -sign;
        u.sign = sign;
        out.push_back(std::move(u));
    }
    return out;
}

} // namespace

MultiDerivation::MultiDerivation(const DvbModel& model, int arity)
    : model_(model), arity_(arity) {
    if (arity < 0) throw Error("MultiDerivation: negative arity");
}

void MultiDerivation::set_val(const Tuple& t, const Section& s) {
    if (static_cast<int>(t.size()) != arity_) throw Error("val tuple size != arity");
    if (!std::is_sorted(t.begin(), t.end()) ||
        std::adjacent_find(t.begin(), t.end()) != t.end())
        throw Error("val tuple must be strictly increasing");
    if (s.is_zero())
        val_.erase(t);
    else
        val_[t] = s;
}

void MultiDerivation::set_sym(const Tuple& t, const PolyVectorField& x) {
    if (arity_ == 0) throw Error("arity-0 multiderivations have no symbol");
    if (static_cast<int>(t.size()) != arity_ - 1) throw Error("sym tuple size != arity-1");
    if (!std::is_sorted(t.begin(), t.end()) ||
        std::adjacent_find(t.begin(), t.end()) != t.end())
        throw Error("sym tuple must be strictly increasing");
    if (x.is_zero())
        sym_.erase(t);
    else
        sym_[t] = x;
}

Section MultiDerivation::val(const Tuple& t) const {
    auto it = val_.find(t);
    return it == val_.end() ? Section(model_) : it->second;
}

PolyVectorField MultiDerivation::sym(const Tuple& t) const {
    auto it = sym_.find(t);
    return it == sym_.end() ? PolyVectorField(model_.dim_e()) : it->second;
}

Section MultiDerivation::val_skew(const Tuple& t) const {
    Tuple s = t;
    int sign = sort_sign(s);
    if (sign == 0) return Section(model_);
    Section v = val(s);
    return sign == 1 ? v : v * Rational(-1);
}

PolyVectorField MultiDerivation::sym_skew(const Tuple& t) const {
    Tuple s = t;
    int sign = sort_sign(s);
    if (sign == 0) return PolyVectorField(model_.dim_e());
    PolyVectorField x = sym(s);
    return sign == 1 ? x : x * Rational(-1);
}

MultiDerivation MultiDerivation::operator+(const MultiDerivation& o) const {
    if (!model_.same_as(o.model_) || arity_ != o.arity_)
        throw Error("multiderivation sum: arity/model mismatch");
    MultiDerivation out = *this;
    for (const auto& [t, s] : o.val_) out.set_val(t, out.val(t) + s);
    for (const auto& [t, x] : o.sym_) out.set_sym(t, out.sym(t) + x);
    return out;
}

MultiDerivation MultiDerivation::operator-(const MultiDerivation& o) const {
    return *this + o * Rational(-1);
}

MultiDerivation MultiDerivation::operator*(const Rational& c) const {
    MultiDerivation out(model_, arity_);
    if (c == 0) return out;
    for (const auto& [t, s] : val_) out.val_[t] = s * c;
    for (const auto& [t, x] : sym_) out.sym_[t] = x * c;
    return out;
}

bool MultiDerivation::operator==(const MultiDerivation& o) const {
    return model_.same_as(o.model_) && arity_ == o.arity_ && val_ == o.val_ && sym_ == o.sym_;
}

std::string MultiDerivation::str() const {
    std::ostringstream os;
    os << "arity-" << arity_ << " derivation";
    for (const auto& [t, s] : val_) {
        os << "\n  val(";
        for (std::size_t i = 0; i < t.size(); ++i)
            os << (i ? "," : "") << model_.basis_name(t[i]);
        os << ") = " << s.str(model_);
    }
    for (const auto& [t, x] : sym_) {
        os << "\n  sym(";
        for (std::size_t i = 0; i < t.size(); ++i)
            os << (i ? "," : "") << model_.basis_name(t[i]);
        os << ") = " << x.str();
    }
    return os.str();
}

Section md_evaluate(const MultiDerivation& c, const std::vector<Section>& args) {
    const DvbModel& model = c.model();
    int k = c.arity();
    if (static_cast<int>(args.size()) != k) throw Error("md_evaluate: arity mismatch");
    for (const Section& s : args)
        if (s.rank() != model.section_rank()) throw Error("md_evaluate: section rank mismatch");
    if (k == 0) return c.val(Tuple{});

    int n = model.section_rank();
    Section out(model);
    Tuple idx(static_cast<std::size_t>(k), 0);
    while (true) {
        // Coefficients of this multi-index.
        std::vector<const PolyFunction*> f(static_cast<std::size_t>(k));
        bool any_zero = false;
        for (int j = 0; j < k; ++j) {
            f[static_cast<std::size_t>(j)] =
                &args[static_cast<std::size_t>(j)].coeff(idx[static_cast<std::size_t>(j)]);
            if (f[static_cast<std::size_t>(j)]->is_zero()) any_zero = true;
        }
        if (!any_zero) {
            // Value term: (prod_j f_j) val(idx).
            Section v = c.val_skew(idx);
            if (!v.is_zero()) {
                PolyFunction prod = *f[0];
                for (int j = 1; j < k; ++j) prod = prod * *f[static_cast<std::size_t>(j)];
                out = out + v.scaled_by(prod);
            }
            // Symbol terms: sum_j (-1)^{k-j} sym(idx minus j)(f_j) (prod_{l!=j} f_l) e_{idx_j}.
            for (int j = 0; j < k; ++j) {
                Tuple rest;
                rest.reserve(static_cast<std::size_t>(k - 1));
                for (int l = 0; l < k; ++l)
                    if (l != j) rest.push_back(idx[static_cast<std::size_t>(l)]);
                PolyVectorField x = c.sym_skew(rest);
                if (x.is_zero()) continue;
                PolyFunction g = vf_apply(x, *f[static_cast<std::size_t>(j)]);
                if (g.is_zero()) continue;
                for (int l = 0; l < k; ++l)
                    if (l != j) g = g * *f[static_cast<std::size_t>(l)];
                if ((k - 1 - j) % 2 == 1) g = -g; // (-1)^{k-(j+1)} for 1-based j
                Section term(model);
                term.coeff(idx[static_cast<std::size_t>(j)]) = g;
                out = out + term;
            }
        }
        // Next multi-index.
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 1) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return out;
}

PolyVectorField symbol_evaluate(const MultiDerivation& c, const std::vector<Section>& args) {
    const DvbModel& model = c.model();
    if (c.arity() == 0) throw Error("symbol_evaluate: arity-0 multiderivations have no symbol");
    int k = c.arity() - 1;
    if (static_cast<int>(args.size()) != k) throw Error("symbol_evaluate: needs arity-1 arguments");
    if (k == 0) return c.sym(Tuple{});

    int n = model.section_rank();
    PolyVectorField out(model.dim_e());
    Tuple idx(static_cast<std::size_t>(k), 0);
    while (true) {
        PolyVectorField x = c.sym_skew(idx);
        if (!x.is_zero()) {
            PolyFunction prod = args[0].coeff(idx[0]);
            for (int j = 1; j < k && !prod.is_zero(); ++j)
                prod = prod * args[static_cast<std::size_t>(j)].coeff(idx[static_cast<std::size_t>(j)]);
            if (!prod.is_zero())
                for (int i = 0; i < model.dim_e(); ++i)
                    out.component(i) = out.component(i) + x.component(i) * prod;
        }
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 1) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return out;
}

RawMultiMap gerstenhaber_product(const MultiDerivation& c1, const MultiDerivation& c2) {
    if (!c1.model().same_as(c2.model())) throw Error("gerstenhaber_product: model mismatch");
    int k = c1.arity(), l = c2.arity();
    RawMultiMap raw;
    raw.model = c1.model();
    raw.arity = k + l - 1;
    if (raw.arity < 0) throw Error("gerstenhaber_product: arity would be negative");

    if (k == 0) {
        DvbModel model = c1.model();
        raw.eval = [model](const std::vector<Section>&) { return Section(model); };
        return raw;
    }
    MultiDerivation a = c1, b = c2;
    raw.eval = [a, b, k, l](const std::vector<Section>& args) {
        if (static_cast<int>(args.size()) != k + l - 1)
            throw Error("gerstenhaber product: wrong argument count");
        Section out(a.model());
        for (const Unshuffle& u : unshuffles(l, k - 1)) {
            std::vector<Section> inner;
            inner.reserve(static_cast<std::size_t>(l));
            for (int i = 0; i < l; ++i)
                inner.push_back(args[static_cast<std::size_t>(u.order[static_cast<std::size_t>(i)])]);
            std::vector<Section> outer;
            outer.reserve(static_cast<std::size_t>(k));
            outer.push_back(md_evaluate(b, inner));
            for (int i = l; i < l + k - 1; ++i)
                outer.push_back(args[static_cast<std::size_t>(u.order[static_cast<std::size_t>(i)])]);
            Section term = md_evaluate(a, outer);
            out = out + (u.sign == 1 ? term : term * Rational(-1));
        }
        return out;
    };
    return raw;
}

MultiDerivation symbol_extract(const RawMultiMap& raw) {
    const DvbModel& model = raw.model;
    int r = raw.arity;
    int n = model.section_rank();
    int m = model.dim_e();
    MultiDerivation c(model, r);

    std::vector<Section> basis_sections;
    for (int i = 0; i < n; ++i) basis_sections.push_back(Section::basis(model, i));

    auto args_for = [&](const Tuple& t) {
        std::vector<Section> args;
        for (int i : t) args.push_back(basis_sections[static_cast<std::size_t>(i)]);
        return args;
    };

    for (const Tuple& t : increasing_tuples(n, r)) c.set_val(t, raw.eval(args_for(t)));

    if (r >= 1) {
        for (const Tuple& t : increasing_tuples(n, r - 1)) {
            PolyVectorField x(m);
            for (int dir = 0; dir < m; ++dir) {
                PolyFunction u = PolyFunction::coordinate(m, dir);
                bool have_candidate = false;
                PolyFunction candidate(m);
                for (int j = 0; j < n; ++j) {
                    std::vector<Section> args = args_for(t);
                    args.push_back(basis_sections[static_cast<std::size_t>(j)].scaled_by(u));
                    Section probe = raw.eval(args);
                    std::vector<Section> plain_args = args_for(t);
                    plain_args.push_back(basis_sections[static_cast<std::size_t>(j)]);
                    Section base = raw.eval(plain_args).scaled_by(u);
                    Section diff = probe - base;
                    for (int i = 0; i < n; ++i)
                        if (i != j && !diff.coeff(i).is_zero())
                            throw Error("not a multiderivation: probe (" +
                                        model.basis_name(j) + ", u" + std::to_string(dir + 1) +
                                        ") has off-axis components");
                    if (!have_candidate) {
                        candidate = diff.coeff(j);
                        have_candidate = true;
                    } else if (!(candidate == diff.coeff(j))) {
                        throw Error("not a multiderivation: inconsistent symbol probes at " +
                                    model.basis_name(j));
                    }
                }
                x.component(dir) = candidate;
            }
            c.set_sym(t, x);
        }

        // Reconstruction must reproduce the raw map on every single-slot
        // monomial probe within the degree cap; this rejects genuinely
        // higher-order maps that happen to agree on degree-1 probes.
        for (const Tuple& t : increasing_tuples(n, r - 1)) {
            for (int j = 0; j < n; ++j) {
                for (const Monomial& mono : model.algebra().monomial_basis()) {
                    if (monomial_degree(mono) < 2) continue; // lower degrees checked above
                    PolyFunction f = PolyFunction::monomial_term(mono, 1);
                    std::vector<Section> args = args_for(t);
                    args.push_back(basis_sections[static_cast<std::size_t>(j)].scaled_by(f));
                    if (!(raw.eval(args) == md_evaluate(c, args)))
                        throw Error("not a multiderivation: fails monomial probe " +
                                    monomial_str(mono));
                }
            }
        }
    }
    return c;
}

MultiDerivation gerstenhaber_bracket(const MultiDerivation& c1, const MultiDerivation& c2) {
    if (!c1.model().same_as(c2.model())) throw Error("gerstenhaber_bracket: model mismatch");
    int k = c1.arity(), l = c2.arity();
    if (k == 0 && l == 0)
        throw Error("bracket of two sections lives in degree -2, which is zero");
    RawMultiMap p12 = gerstenhaber_product(c1, c2);
    RawMultiMap p21 = gerstenhaber_product(c2, c1);
    int sign = ((k - 1) * (l - 1)) % 2 == 0 ? 1 : -1;
    RawMultiMap combined;
    combined.model = c1.model();
    combined.arity = k + l - 1;
    combined.eval = [p12, p21, sign](const std::vector<Section>& args) {
        Section a = p12.eval(args);
        Section b = p21.eval(args);
        return (sign == 1 ? a : a * Rational(-1)) - b;
    };
    return symbol_extract(combined);
}

MultiDerivation pullback_md(const AutomorphismPair& phi, const MultiDerivation& c) {
    if (!phi.model().same_as(c.model())) throw Error("pullback_md: model mismatch");
    AutomorphismPair inv = phi.inverse();
    MultiDerivation cc = c;
    AutomorphismPair forward = phi;
    RawMultiMap raw;
    raw.model = c.model();
    raw.arity = c.arity();
    raw.eval = [cc, forward, inv](const std::vector<Section>& args) {
        std::vector<Section> pushed;
        pushed.reserve(args.size());
        for (const Section& s : args) pushed.push_back(inv.pullback_section(s));
        return forward.pullback_section(md_evaluate(cc, pushed));
    };
    return symbol_extract(raw);
}

McResult mc_check(const MultiDerivation& b) {
    if (b.arity() != 2) throw Error("mc_check expects an arity-2 multiderivation");
    MultiDerivation g = gerstenhaber_bracket(b, b);
    McResult res;
    if (g.is_zero()) {
        res.ok = true;
        return res;
    }
    res.ok = false;
    if (!g.val_table().empty()) {
        res.witness = g.val_table().begin()->first;
        res.witness_kind = "val";
    } else {
        res.witness = g.sym_table().begin()->first;
        res.witness_kind = "sym";
    }
    return res;
}

BracketElement::BracketElement(MultiDerivation b) : b_(std::move(b)) {
    McResult res = mc_check(b_);
    if (!res.ok) {
        std::string tuple;
        for (int i : *res.witness) tuple += (tuple.empty() ? "" : ",") + b_.model().basis_name(i);
        throw Error("bracket is not Maurer-Cartan: Jacobi fails at (" + tuple + ")");
    }
    mc_verified_ = true;
}

BracketElement BracketElement::unchecked(MultiDerivation b) {
    BracketElement e;
    e.b_ = std::move(b);
    e.mc_verified_ = false;
    return e;
}

MultiDerivation def_differential(const BracketElement& b, const MultiDerivation& c) {
    if (!b.mc_verified()) throw Error("def_differential: bracket not Maurer-Cartan verified");
    return gerstenhaber_bracket(b.underlying(), c);
}

Section def_differential_explicit(const BracketElement& b, const MultiDerivation& c,
                                  const std::vector<Section>& args) {
    int k = c.arity();
    if (static_cast<int>(args.size()) != k + 1)
        throw Error("def_differential_explicit: needs arity+1 arguments");
    const MultiDerivation& br = b.underlying();
    Section out(c.model());
    for (int i = 0; i <= k; ++i) {
        std::vector<Section> rest;
        for (int l = 0; l <= k; ++l)
            if (l != i) rest.push_back(args[static_cast<std::size_t>(l)]);
        Section inner = md_evaluate(c, rest);
        Section term = md_evaluate(br, {args[static_cast<std::size_t>(i)], inner});
        out = out + (i % 2 == 0 ? term : term * Rational(-1)); // (-1)^{i+1} for 1-based i
    }
    for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            if (k == 0) break;
            std::vector<Section> rest;
            rest.push_back(md_evaluate(br, {args[static_cast<std::size_t>(i)],
                                            args[static_cast<std::size_t>(j)]}));
            for (int l = 0; l <= k; ++l)
                if (l != i && l != j) rest.push_back(args[static_cast<std::size_t>(l)]);
            Section term = md_evaluate(c, rest);
            out = out + ((i + j) % 2 == 0 ? term : term * Rational(-1)); // (-1)^{i+j}, 1-based
        }
    return out;
}

DerivSpaceBasis::DerivSpaceBasis(const DvbModel& model, int arity)
    : model_(model), arity_(arity) {
    if (arity < 0) throw Error("DerivSpaceBasis: negative arity");
    int n = model.section_rank();
    const auto& monos = model.algebra().monomial_basis();
    for (const Tuple& t : increasing_tuples(n, arity))
        for (int o = 0; o < n; ++o)
            for (const Monomial& mono : monos)
                elements_.push_back({DerivBasisElement::Kind::Val, t, o, mono});
    if (arity >= 1)
        for (const Tuple& t : increasing_tuples(n, arity - 1))
            for (int dir = 0; dir < model.dim_e(); ++dir)
                for (const Monomial& mono : monos)
                    elements_.push_back({DerivBasisElement::Kind::Sym, t, dir, mono});
}

MultiDerivation DerivSpaceBasis::element(std::size_t i) const {
    const DerivBasisElement& e = elements_.at(i);
    MultiDerivation c(model_, arity_);
    if (e.kind == DerivBasisElement::Kind::Val) {
        Section s(model_);
        s.coeff(e.index) = PolyFunction::monomial_term(e.mono, 1);
        c.set_val(e.tuple, s);
    } else {
        PolyVectorField x(model_.dim_e());
        x.component(e.index) = PolyFunction::monomial_term(e.mono, 1);
        c.set_sym(e.tuple, x);
    }
    return c;
}

MultiDerivation DerivSpaceBasis::from_coordinates(const Vec& coords) const {
    if (coords.size() != elements_.size()) throw Error("from_coordinates: dimension mismatch");
    MultiDerivation c(model_, arity_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        const DerivBasisElement& e = elements_[i];
        if (e.kind == DerivBasisElement::Kind::Val) {
            Section s = c.val(e.tuple);
            s.coeff(e.index) = s.coeff(e.index) + PolyFunction::monomial_term(e.mono, coords[i]);
            c.set_val(e.tuple, s);
        } else {
            PolyVectorField x = c.sym(e.tuple);
            x.component(e.index) =
                x.component(e.index) + PolyFunction::monomial_term(e.mono, coords[i]);
            c.set_sym(e.tuple, x);
        }
    }
    return c;
}

Vec DerivSpaceBasis::to_coordinates(const MultiDerivation& c) const {
    if (!c.model().same_as(model_) || c.arity() != arity_)
        throw Error("to_coordinates: arity/model mismatch");
    int d = model_.trunc();
    Vec coords(elements_.size());
    std::map<std::pair<int, Tuple>, std::map<std::pair<int, Monomial>, std::size_t>> lookup;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const DerivBasisElement& e = elements_[i];
        int kind = e.kind == DerivBasisElement::Kind::Val ? 0 : 1;
        lookup[{kind, e.tuple}][{e.index, e.mono}] = i;
    }
    auto place = [&](int kind, const Tuple& t, int index, const PolyFunction& f) {
        for (const auto& [mono, coeff] : f.terms()) {
            if (monomial_degree(mono) > d)
                throw Error("multiderivation falls outside the degree-" + std::to_string(d) +
                            " basis (coefficient " + monomial_str(mono) +
                            "); the complex does not close at this truncation");
            coords[lookup.at({kind, t}).at({index, mono})] = coeff;
        }
    };
    for (const auto& [t, s] : c.val_table())
        for (int o = 0; o < model_.section_rank(); ++o) place(0, t, o, s.coeff(o));
    for (const auto& [t, x] : c.sym_table())
        for (int dir = 0; dir < model_.dim_e(); ++dir) place(1, t, dir, x.component(dir));
    return coords;
}

std::size_t deriv_space_dimension(const DvbModel& model, int arity) {
    return DerivSpaceBasis(model, arity).dimension();
}

CochainComplex def_complex(const BracketElement& b, int k_min, int k_max) {
    if (!b.mc_verified()) throw Error("def_complex: bracket not Maurer-Cartan verified");
    if (k_min > k_max) throw Error("def_complex: empty degree range");
    std::vector<DerivSpaceBasis> bases;
    for (int k = k_min; k <= k_max; ++k) bases.emplace_back(b.model(), k + 1);
    std::vector<std::size_t> dims;
    for (const auto& basis : bases) dims.push_back(basis.dimension());
    std::vector<RationalMatrix> diffs;
    for (int k = k_min; k < k_max; ++k) {
        const DerivSpaceBasis& src = bases[static_cast<std::size_t>(k - k_min)];
        const DerivSpaceBasis& dst = bases[static_cast<std::size_t>(k - k_min + 1)];
        RationalMatrix d(dst.dimension(), src.dimension());
        for (std::size_t j = 0; j < src.dimension(); ++j) {
            MultiDerivation dc = gerstenhaber_bracket(b.underlying(), src.element(j));
            Vec col = dst.to_coordinates(dc);
            for (std::size_t i = 0; i < col.size(); ++i) d.at(i, j) = col[i];
        }
        diffs.push_back(std::move(d));
    }
    CochainComplex complex(k_min, std::move(dims), std::move(diffs));
    ComplexCheck check = verify_complex(complex);
    if (!check.ok)
        throw Error("def_complex: d.d != 0 at degree " + std::to_string(check.witness->degree));
    return complex;
}

namespace {

// Iterated application bound for detecting non-nilpotent generators.
constexpr int kNilpotencyBound = 100;

void require_nilpotent(const MultiDerivation& delta) {
    if (delta.arity() != 1) throw Error("gauge generator must have arity 1");
    const DvbModel& model = delta.model();
    // Symbol iterates on coordinates.
    PolyVectorField x = delta.sym(Tuple{});
    for (int i = 0; i < model.dim_e(); ++i) {
        PolyFunction f = PolyFunction::coordinate(model.dim_e(), i);
        int steps = 0;
        while (!f.is_zero()) {
            f = vf_apply(x, f);
            if (++steps > kNilpotencyBound)
                throw Error("exact flow unavailable: generator symbol is not nilpotent");
        }
    }
    // Section-action iterates on the capped basis sections.
    for (int i = 0; i < model.section_rank(); ++i) {
        for (const Monomial& mono : model.algebra().monomial_basis()) {
            Section s(model);
            s.coeff(i) = PolyFunction::monomial_term(mono, 1);
            int steps = 0;
            while (!s.is_zero()) {
                s = md_evaluate(delta, {s});
                if (++steps > kNilpotencyBound)
                    throw Error("exact flow unavailable: generator action is not nilpotent");
            }
        }
    }
}

} // namespace

GaugeFlow gauge_flow(const BracketElement& b, const MultiDerivation& delta) {
    if (!b.mc_verified()) throw Error("gauge_flow: bracket not Maurer-Cartan verified");
    if (!b.model().same_as(delta.model())) throw Error("gauge_flow: model mismatch");
    require_nilpotent(delta);
    GaugeFlow flow;
    // coefficients[j] = (ad_Delta)^j b / j!, so that b_t = sum_j t^j coeff_j
    // solves db_t/dt = [[b_t, Delta]].
    MultiDerivation term = b.underlying();
    flow.coefficients.push_back(term);
    int j = 0;
    while (!term.is_zero()) {
        ++j;
        if (j > 3 * kNilpotencyBound)
            throw Error("exact flow unavailable: adjoint series does not terminate");
        term = gerstenhaber_bracket(term, delta) * (Rational(1) / j);
        if (term.is_zero()) break;
        flow.coefficients.push_back(term);
    }
    return flow;
}

MultiDerivation GaugeFlow::at(const Rational& t) const {
    MultiDerivation out = coefficients.front();
    Rational power = 1;
    for (std::size_t j = 1; j < coefficients.size(); ++j) {
        power *= t;
        out = out + coefficients[j] * power;
    }
    return out;
}

BracketElement gauge_transport(const BracketElement& b, const MultiDerivation& delta,
                               const Rational& t) {
    GaugeFlow flow = gauge_flow(b, delta);
    MultiDerivation bt = flow.at(t);
    McResult res = mc_check(bt);
    if (!res.ok)
        throw Error("internal invariant violation: gauge transport broke the Maurer-Cartan equation");
    return BracketElement(std::move(bt));
}

} // namespace defcohom
