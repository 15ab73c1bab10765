#include "defcohom/constructions.hpp"

#include <algorithm>

namespace defcohom {

std::vector<Rational> LieAlgebraData::bracket(int i, int j) const {
    std::vector<Rational> out(static_cast<std::size_t>(dim), 0);
    if (i == j) return out;
    auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
    auto it = structure.find(key);
    if (it == structure.end()) return out;
    out = it->second;
    if (i > j)
        for (auto& c : out) c = -c;
    return out;
}

std::optional<std::array<int, 3>> LieAlgebraData::jacobi_witness() const {
    auto brk = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        std::vector<Rational> out(static_cast<std::size_t>(dim), 0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (x[static_cast<std::size_t>(i)] == 0 || y[static_cast<std::size_t>(j)] == 0)
                    continue;
                std::vector<Rational> bij = bracket(i, j);
                for (int k = 0; k < dim; ++k)
                    out[static_cast<std::size_t>(k)] += x[static_cast<std::size_t>(i)] *
                                                        y[static_cast<std::size_t>(j)] *
                                                        bij[static_cast<std::size_t>(k)];
            }
        return out;
    };
    auto basis = [&](int i) {
        std::vector<Rational> e(static_cast<std::size_t>(dim), 0);
        e[static_cast<std::size_t>(i)] = 1;
        return e;
    };
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k) {
                std::vector<Rational> jac = brk(brk(basis(i), basis(j)), basis(k));
                std::vector<Rational> t2 = brk(brk(basis(j), basis(k)), basis(i));
                std::vector<Rational> t3 = brk(brk(basis(k), basis(i)), basis(j));
                bool zero = true;
                for (int l = 0; l < dim; ++l) {
                    Rational s = jac[static_cast<std::size_t>(l)] + t2[static_cast<std::size_t>(l)] +
                                 t3[static_cast<std::size_t>(l)];
                    if (s != 0) zero = false;
                }
                if (!zero) return std::array<int, 3>{i, j, k};
            }
    return std::nullopt;
}

void RepresentationData::validate(const LieAlgebraData& g) const {
    if (static_cast<int>(matrices.size()) != g.dim)
        throw Error("representation needs one matrix per Lie algebra basis element");
    for (const auto& m : matrices)
        if (static_cast<int>(m.rows()) != dim_module || static_cast<int>(m.cols()) != dim_module)
            throw Error("representation matrix has wrong shape");
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j) {
            RationalMatrix lhs(static_cast<std::size_t>(dim_module),
                               static_cast<std::size_t>(dim_module));
            std::vector<Rational> bij = g.bracket(i, j);
            for (int k = 0; k < g.dim; ++k) {
                if (bij[static_cast<std::size_t>(k)] == 0) continue;
                for (std::size_t p = 0; p < lhs.rows(); ++p)
                    for (std::size_t q = 0; q < lhs.cols(); ++q)
                        lhs.at(p, q) += bij[static_cast<std::size_t>(k)] *
                                        matrices[static_cast<std::size_t>(k)].at(p, q);
            }
            RationalMatrix rhs = matrices[static_cast<std::size_t>(i)] *
                                     matrices[static_cast<std::size_t>(j)] -
                                 matrices[static_cast<std::size_t>(j)] *
                                     matrices[static_cast<std::size_t>(i)];
            if (!(lhs == rhs))
                throw Error("not a representation: fails on basis pair (" + std::to_string(i + 1) +
                            "," + std::to_string(j + 1) + ")");
        }
}

LieAlgebraData abelian_algebra(int n) {
    LieAlgebraData g;
    g.dim = n;
    return g;
}

LieAlgebraData heisenberg3() {
    LieAlgebraData g;
    g.dim = 3;
    g.structure[{0, 1}] = {0, 0, 1}; // [e1,e2] = e3
    return g;
}

LieAlgebraData so3() {
    LieAlgebraData g;
    g.dim = 3;
    g.structure[{0, 1}] = {0, 0, 1};  // [e1,e2] = e3
    g.structure[{1, 2}] = {1, 0, 0};  // [e2,e3] = e1
    g.structure[{0, 2}] = {0, -1, 0}; // [e1,e3] = -e2
    return g;
}

LieAlgebraData sl2() {
    LieAlgebraData g;
    g.dim = 3; // h, e, f
    g.structure[{0, 1}] = {0, 2, 0};  // [h,e] = 2e
    g.structure[{0, 2}] = {0, 0, -2}; // [h,f] = -2f
    g.structure[{1, 2}] = {1, 0, 0};  // [e,f] = h
    return g;
}

LieAlgebraData aff1() {
    LieAlgebraData g;
    g.dim = 2;
    g.structure[{0, 1}] = {0, 1}; // [e1,e2] = e2
    return g;
}

LieAlgebraData named_lie_algebra(const std::string& name, int dim) {
    if (name == "so3") return so3();
    if (name == "sl2") return sl2();
    if (name == "aff1") return aff1();
    if (name == "heisenberg3") return heisenberg3();
    if (name == "abelian") {
        if (dim < 0) throw Error("abelian Lie algebra needs a dimension");
        return abelian_algebra(dim);
    }
    throw Error("unknown Lie algebra name: " + name);
}

RepresentationData named_representation(const LieAlgebraData& g, const std::string& g_name,
                                        const std::string& rep_name, int dim) {
    RepresentationData rep;
    if (rep_name == "trivial") {
        if (dim < 0) throw Error("trivial representation needs a dimension");
        rep.dim_module = dim;
        for (int i = 0; i < g.dim; ++i)
            rep.matrices.push_back(RationalMatrix(static_cast<std::size_t>(dim),
                                                  static_cast<std::size_t>(dim)));
        return rep;
    }
    if (rep_name == "adjoint") {
        rep.dim_module = g.dim;
        for (int i = 0; i < g.dim; ++i) {
            RationalMatrix m(static_cast<std::size_t>(g.dim), static_cast<std::size_t>(g.dim));
            for (int j = 0; j < g.dim; ++j) {
                std::vector<Rational> img = g.bracket(i, j);
                for (int k = 0; k < g.dim; ++k)
                    m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) =
                        img[static_cast<std::size_t>(k)];
            }
            rep.matrices.push_back(std::move(m));
        }
        rep.validate(g);
        return rep;
    }
    if (rep_name == "standard") {
        if (g_name == "sl2") {
            rep.dim_module = 2;
            RationalMatrix h(2, 2), e(2, 2), f(2, 2);
            h.at(0, 0) = 1;
            h.at(1, 1) = -1;
            e.at(0, 1) = 1;
            f.at(1, 0) = 1;
            rep.matrices = {h, e, f};
            rep.validate(g);
            return rep;
        }
        if (g_name == "so3") return named_representation(g, g_name, "adjoint");
        if (g_name == "heisenberg3") {
            // faithful triangular representation: e1 -> E12, e2 -> E23, e3 -> E13
            rep.dim_module = 3;
            RationalMatrix m1(3, 3), m2(3, 3), m3(3, 3);
            m1.at(0, 1) = 1;
            m2.at(1, 2) = 1;
            m3.at(0, 2) = 1;
            rep.matrices = {m1, m2, m3};
            rep.validate(g);
            return rep;
        }
        throw Error("no standard representation registered for " + g_name);
    }
    throw Error("unknown representation name: " + rep_name);
}

BuiltBracket from_lie_algebra(const LieAlgebraData& g) {
    if (auto w = g.jacobi_witness())
        throw Error("not a Lie algebra: Jacobi fails on (e" + std::to_string((*w)[0] + 1) + ",e" +
                    std::to_string((*w)[1] + 1) + ",e" + std::to_string((*w)[2] + 1) + ")");
    DvbModel model(g.dim, 0, 0, 0);
    MultiDerivation b(model, 2);
    for (const auto& [pair, img] : g.structure) {
        Section s(model);
        for (int k = 0; k < g.dim; ++k)
            if (img[static_cast<std::size_t>(k)] != 0)
                s.coeff(k) = PolyFunction::constant(0, img[static_cast<std::size_t>(k)]);
        b.set_val({pair.first, pair.second}, s);
    }
    return {model, BracketElement(std::move(b))};
}

BuiltBracket vb_semidirect(const LieAlgebraData& g, const RepresentationData& rep) {
    rep.validate(g);
    if (auto w = g.jacobi_witness()) throw Error("vb_semidirect: base fails Jacobi");
    int a = g.dim, c = rep.dim_module;
    DvbModel model(a, 0, c, 0);
    MultiDerivation b(model, 2);
    for (int i = 0; i < a; ++i)
        for (int j = i + 1; j < a; ++j) {
            std::vector<Rational> img = g.bracket(i, j);
            Section s(model);
            for (int k = 0; k < a; ++k)
                if (img[static_cast<std::size_t>(k)] != 0)
                    s.coeff(k) = PolyFunction::constant(0, img[static_cast<std::size_t>(k)]);
            b.set_val({i, j}, s);
        }
    // b(v, chi) = theta(v) chi on the core block.
    for (int i = 0; i < a; ++i)
        for (int q = 0; q < c; ++q) {
            Section s(model);
            for (int p = 0; p < c; ++p) {
                const Rational& entry = rep.matrices[static_cast<std::size_t>(i)].at(
                    static_cast<std::size_t>(p), static_cast<std::size_t>(q));
                if (entry != 0) s.coeff(a + p) = PolyFunction::constant(0, entry);
            }
            b.set_val({i, a + q}, s);
        }
    return {model, BracketElement(std::move(b))};
}

CochainComplex ce_complex(const LieAlgebraData& g, const RepresentationData& rep,
                          int k_min, int k_max) {
    rep.validate(g);
    if (k_min > k_max) throw Error("ce_complex: empty degree range");
    int n = g.dim, v = rep.dim_module;
    auto dim_at = [&](int k) -> std::size_t {
        if (k < 0 || k > n) return 0;
        return increasing_tuples(n, k).size() * static_cast<std::size_t>(v);
    };
    auto index_of = [&](const std::vector<Tuple>& tuples, const Tuple& t, int vi) {
        auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
        return static_cast<std::size_t>(it - tuples.begin()) * static_cast<std::size_t>(v) +
               static_cast<std::size_t>(vi);
    };
    std::vector<std::size_t> dims;
    for (int k = k_min; k <= k_max; ++k) dims.push_back(dim_at(k));
    std::vector<RationalMatrix> diffs;
    for (int k = k_min; k < k_max; ++k) {
        RationalMatrix d(dim_at(k + 1), dim_at(k));
        if (k >= 0 && k <= n && k + 1 <= n) {
            std::vector<Tuple> src = increasing_tuples(n, k);
            std::vector<Tuple> dst = increasing_tuples(n, k + 1);
            // (d omega)(x_1..x_{k+1}) = sum_i (-1)^{i+1} rho(x_i) omega(..x_i..)
            //                         + sum_{i<j} (-1)^{i+j} omega([x_i,x_j], ..).
            for (std::size_t col_t = 0; col_t < src.size(); ++col_t) {
                const Tuple& t = src[col_t];
                for (int vi = 0; vi < v; ++vi) {
                    std::size_t col = col_t * static_cast<std::size_t>(v) +
                                      static_cast<std::size_t>(vi);
                    for (const Tuple& s : dst) {
                        // omega = xi^t (x) e_vi evaluated via the formula on s.
                        for (std::size_t i = 0; i < s.size(); ++i) {
                            Tuple rest;
                            for (std::size_t l = 0; l < s.size(); ++l)
                                if (l != i) rest.push_back(s[l]);
                            if (rest != t) continue;
                            const RationalMatrix& rho =
                                rep.matrices[static_cast<std::size_t>(s[i])];
                            int sign = (i % 2 == 0) ? 1 : -1; // (-1)^{i+1}, 1-based
                            for (int p = 0; p < v; ++p) {
                                const Rational& entry = rho.at(static_cast<std::size_t>(p),
                                                               static_cast<std::size_t>(vi));
                                if (entry != 0)
                                    d.at(index_of(dst, s, p), col) += sign * entry;
                            }
                        }
                        for (std::size_t i = 0; i < s.size(); ++i)
                            for (std::size_t j = i + 1; j < s.size(); ++j) {
                                std::vector<Rational> br = g.bracket(s[i], s[j]);
                                Tuple rest;
                                for (std::size_t l = 0; l < s.size(); ++l)
                                    if (l != i && l != j) rest.push_back(s[l]);
                                // omega([x_i,x_j], rest): insert each bracket term
                                // into the first slot and sort.
                                for (int w = 0; w < n; ++w) {
                                    if (br[static_cast<std::size_t>(w)] == 0) continue;
                                    Tuple full;
                                    full.push_back(w);
                                    for (int r : rest) full.push_back(r);
                                    // sort with sign
                                    int sort_sign = 1;
                                    bool repeat = false;
                                    for (std::size_t x = 1; x < full.size() && !repeat; ++x)
                                        for (std::size_t y = x; y > 0; --y) {
                                            if (full[y - 1] == full[y]) {
                                                repeat = true;
                                                break;
                                            }
                                            if (full[y - 1] > full[y]) {
                                                std::swap(full[y - 1], full[y]);
                                                sort_sign = -sort_sign;
                                            } else
                                                break;
                                        }
                                    if (repeat || full != t) continue;
                                    int sign = ((i + j) % 2 == 0) ? 1 : -1; // (-1)^{i+j}, 1-based
                                    d.at(index_of(dst, s, vi), col) +=
                                        Rational(sign * sort_sign) *
                                        br[static_cast<std::size_t>(w)];
                                }
                            }
                    }
                }
            }
        }
        diffs.push_back(std::move(d));
    }
    return CochainComplex(k_min, std::move(dims), std::move(diffs));
}

RepresentationData endomorphism_representation(const LieAlgebraData& g,
                                               const RepresentationData& rep) {
    rep.validate(g);
    int c = rep.dim_module;
    RepresentationData out;
    out.dim_module = c * c; // basis E_{pq} indexed p*c+q
    for (int x = 0; x < g.dim; ++x) {
        const RationalMatrix& th = rep.matrices[static_cast<std::size_t>(x)];
        RationalMatrix m(static_cast<std::size_t>(c * c), static_cast<std::size_t>(c * c));
        for (int p = 0; p < c; ++p)
            for (int q = 0; q < c; ++q) {
                std::size_t col = static_cast<std::size_t>(p * c + q);
                // [theta, E_pq] = sum_i theta_{ip} E_{iq} - sum_j theta_{qj} E_{pj}
                for (int i = 0; i < c; ++i) {
                    const Rational& e = th.at(static_cast<std::size_t>(i),
                                              static_cast<std::size_t>(p));
                    if (e != 0) m.at(static_cast<std::size_t>(i * c + q), col) += e;
                }
                for (int j = 0; j < c; ++j) {
                    const Rational& e = th.at(static_cast<std::size_t>(q),
                                              static_cast<std::size_t>(j));
                    if (e != 0) m.at(static_cast<std::size_t>(p * c + j), col) -= e;
                }
            }
        out.matrices.push_back(std::move(m));
    }
    out.validate(g);
    return out;
}

ThetaConeResult theta_cone(const LieAlgebraData& g, const RepresentationData& rep,
                           int k_min, int k_max) {
    ThetaConeResult out;
    out.k_min = k_min;
    out.k_max = k_max;

    BuiltBracket base = from_lie_algebra(g);
    BuiltBracket semi = vb_semidirect(g, rep);

    // Source: C_def(g)[-1], i.e. degree j holds (j-1)-cochains of C_def(g).
    CochainComplex cdef = def_complex(base.bracket, k_min, k_max);
    {
        std::vector<std::size_t> dims;
        std::vector<RationalMatrix> diffs;
        for (int k = k_min; k <= k_max; ++k) dims.push_back(cdef.dim(k));
        for (int k = k_min; k < k_max; ++k) diffs.push_back(cdef.differential(k));
        out.source = std::make_shared<CochainComplex>(k_min + 1, std::move(dims), std::move(diffs));
    }
    RepresentationData end_rep = endomorphism_representation(g, rep);
    out.target = std::make_shared<CochainComplex>(ce_complex(g, end_rep, k_min, k_max));

    // Theta: extension of scalars by theta on the coefficient factor. The
    // source basis at degree j is VAL(tuple, out) of the base model (one
    // constant monomial); the target basis is (tuple, E_{pq}).
    out.theta.source = out.source.get();
    out.theta.target = out.target.get();
    int c = rep.dim_module;
    for (int j = k_min + 1; j <= k_max; ++j) {
        int arity = j; // source degree j <-> (j-1)-cochain <-> arity j
        DerivSpaceBasis src_basis(base.model, arity);
        std::vector<Tuple> tuples = increasing_tuples(g.dim, arity);
        RationalMatrix theta_j(out.target->dim(j), out.source->dim(j));
        for (std::size_t col = 0; col < src_basis.dimension(); ++col) {
            const DerivBasisElement& e = src_basis.elements()[col];
            std::size_t tuple_pos = static_cast<std::size_t>(
                std::lower_bound(tuples.begin(), tuples.end(), e.tuple) - tuples.begin());
            const RationalMatrix& th = rep.matrices[static_cast<std::size_t>(e.index)];
            for (int p = 0; p < c; ++p)
                for (int q = 0; q < c; ++q) {
                    const Rational& entry = th.at(static_cast<std::size_t>(p),
                                                  static_cast<std::size_t>(q));
                    if (entry != 0)
                        theta_j.at(tuple_pos * static_cast<std::size_t>(c * c) +
                                       static_cast<std::size_t>(p * c + q),
                                   col) = entry;
                }
        }
        out.theta.matrices.emplace(j, std::move(theta_j));
    }
    require_cochain_map(out.theta);
    out.cone = std::make_shared<CochainComplex>(mapping_cone(out.theta));

    // Directly assembled linear complex and the basis change conjugating the
    // cone differential into it.
    out.linear = linear_subcomplex(semi.bracket, k_min, k_max);
    int a = g.dim;
    for (int k = k_min; k <= k_max; ++k) {
        LinearBasis lin_basis(semi.model, k + 1);
        // Map each linear basis element to its cone coordinate.
        RationalMatrix n_k(lin_basis.dimension(), out.cone->dim(k));
        DerivSpaceBasis src_basis(base.model, k + 1);
        std::vector<Tuple> tgt_tuples = increasing_tuples(g.dim, k);
        std::size_t src_dim = out.source->dim(k + 1);
        // Build an index of the linear basis by (tuple, out).
        std::map<std::pair<Tuple, int>, std::size_t> lin_index;
        for (std::size_t i = 0; i < lin_basis.dimension(); ++i) {
            const DerivBasisElement& e = lin_basis.full().elements()[lin_basis.full_indices()[i]];
            lin_index[{e.tuple, e.index}] = i;
        }
        // Source part of the cone: (tuple of A-indices, A-out) -> the same
        // table entry, with the alternating sign of the degree shift.
        int shift_sign = ((k % 2) + 2) % 2 == 0 ? 1 : -1;
        for (std::size_t col = 0; col < src_dim; ++col) {
            const DerivBasisElement& e = src_basis.elements()[col];
            n_k.at(lin_index.at({e.tuple, e.index}), col) = shift_sign;
        }
        // Target part: (k-tuple T, E_pq) -> VAL(T + {a+q} -> a+p).
        for (std::size_t tpos = 0; tpos < tgt_tuples.size(); ++tpos)
            for (int p = 0; p < c; ++p)
                for (int q = 0; q < c; ++q) {
                    Tuple t = tgt_tuples[tpos];
                    t.push_back(a + q);
                    std::size_t col = src_dim + tpos * static_cast<std::size_t>(c * c) +
                                      static_cast<std::size_t>(p * c + q);
                    n_k.at(lin_index.at({t, a + p}), col) = 1;
                }
        out.splitting.push_back(std::move(n_k));
    }

    // The conjugation identity is part of the contract.
    for (int k = k_min; k < k_max; ++k) {
        const RationalMatrix& n_k = out.splitting[static_cast<std::size_t>(k - k_min)];
        const RationalMatrix& n_k1 = out.splitting[static_cast<std::size_t>(k - k_min + 1)];
        RationalMatrix lhs = out.linear.complex.differential(k) * n_k;
        RationalMatrix rhs = n_k1 * out.cone->differential(k);
        if (!(lhs == rhs))
            throw Error("internal invariant violation: cone splitting fails at degree " +
                        std::to_string(k));
    }
    return out;
}

BuiltBracket la_vector_space(const CoreAnchorData& anchor, int trunc) {
    int e = static_cast<int>(anchor.partial.rows());
    int c = static_cast<int>(anchor.partial.cols());
    DvbModel model(0, e, c, trunc);
    MultiDerivation b(model, 2);
    for (int q = 0; q < c; ++q) {
        PolyVectorField x(e);
        for (int i = 0; i < e; ++i) {
            const Rational& entry = anchor.partial.at(static_cast<std::size_t>(i),
                                                      static_cast<std::size_t>(q));
            if (entry != 0) x.component(i) = PolyFunction::constant(e, entry);
        }
        b.set_sym({q}, x); // section indices: all core since a = 0
    }
    return {model, BracketElement(std::move(b))};
}

LaBetti la_cohomology_formula(const CoreAnchorData& anchor) {
    std::size_t e = anchor.partial.rows();
    std::size_t c = anchor.partial.cols();
    std::size_t r = rank_of(anchor.partial);
    std::size_t ker = c - r, coker = e - r;
    return {coker * ker, coker * coker + ker * ker, ker * coker};
}

BuiltBracket tangent_vb(const LieAlgebraData& g) {
    BuiltBracket base = from_lie_algebra(g);
    DvbModel model(g.dim, 0, g.dim, 0);
    MultiDerivation lifted = tangent_lift(base.bracket.underlying(), model);
    return {model, BracketElement(std::move(lifted))};
}

MultiDerivation tangent_lift(const MultiDerivation& c, const DvbModel& tangent_model) {
    const DvbModel& base_model = c.model();
    int a = base_model.dim_a();
    if (base_model.dim_e() != 0 || base_model.dim_c() != 0)
        throw Error("tangent_lift: the input must live on a plain Lie algebra model");
    if (tangent_model.dim_a() != a || tangent_model.dim_c() != a || tangent_model.dim_e() != 0)
        throw Error("tangent_lift: tangent model must have a = c = dim g, m = 0");
    int k = c.arity();
    MultiDerivation out(tangent_model, k);
    auto embed = [&](const Section& s, bool core_block) {
        Section v(tangent_model);
        for (int i = 0; i < a; ++i) v.coeff(core_block ? a + i : i) = s.coeff(i);
        return v;
    };
    for (const auto& [t, s] : c.val_table()) {
        // All lifted sections: value lifts to the A-block.
        out.set_val(t, embed(s, false));
        // One core slot: replace the entry in each position by its core copy;
        // the core index a + t[i] sorts to the end, giving the sign of moving
        // that slot last.
        for (std::size_t i = 0; i < t.size(); ++i) {
            Tuple lifted;
            for (std::size_t l = 0; l < t.size(); ++l)
                if (l != i) lifted.push_back(t[l]);
            lifted.push_back(a + t[i]);
            int sign = (t.size() - 1 - i) % 2 == 0 ? 1 : -1;
            Section existing = out.val(lifted);
            out.set_val(lifted, existing + embed(s, true) * Rational(sign));
        }
    }
    return out;
}

BuiltBracket action_algebroid(const LieAlgebraData& g, const RepresentationData& rep_on_e,
                              int trunc) {
    rep_on_e.validate(g);
    int a = g.dim, m = rep_on_e.dim_module;
    DvbModel model(a, m, 0, trunc);
    MultiDerivation b(model, 2);
    for (const auto& [pair, img] : g.structure) {
        Section s(model);
        for (int k = 0; k < a; ++k)
            if (img[static_cast<std::size_t>(k)] != 0)
                s.coeff(k) = PolyFunction::constant(m, img[static_cast<std::size_t>(k)]);
        b.set_val({pair.first, pair.second}, s);
    }
    // Fundamental vector fields: the anchor of xi_a is the linear field of
    // -R(e_a), making the anchor a Lie algebra homomorphism.
    for (int i = 0; i < a; ++i) {
        PolyVectorField x(m);
        bool nonzero = false;
        for (int r = 0; r < m; ++r) {
            PolyFunction comp(m);
            for (int s = 0; s < m; ++s) {
                const Rational& entry = rep_on_e.matrices[static_cast<std::size_t>(i)].at(
                    static_cast<std::size_t>(r), static_cast<std::size_t>(s));
                if (entry != 0) comp = comp + PolyFunction::coordinate(m, s) * (-entry);
            }
            if (!comp.is_zero()) nonzero = true;
            x.component(r) = comp;
        }
        if (nonzero) b.set_sym({i}, x);
    }
    return {model, BracketElement(std::move(b))};
}

BuiltBracket type1_pullback(const LieAlgebraData& g, int m, int trunc) {
    if (auto w = g.jacobi_witness()) throw Error("type1_pullback: base fails Jacobi");
    int a = g.dim;
    DvbModel model(a, m, m, trunc);
    MultiDerivation b(model, 2);
    for (const auto& [pair, img] : g.structure) {
        Section s(model);
        for (int k = 0; k < a; ++k)
            if (img[static_cast<std::size_t>(k)] != 0)
                s.coeff(k) = PolyFunction::constant(m, img[static_cast<std::size_t>(k)]);
        b.set_val({pair.first, pair.second}, s);
    }
    for (int i = 0; i < m; ++i) {
        PolyVectorField x(m);
        x.component(i) = PolyFunction::constant(m, 1);
        b.set_sym({a + i}, x); // core-anchor = identity
    }
    return {model, BracketElement(std::move(b))};
}

BuiltBracket tangent_bundle_model(int m, int trunc) {
    return type1_pullback(abelian_algebra(0), m, trunc);
}

LieAlgebraData base_lie_algebra(const BracketElement& b) {
    if (!is_linear(b.underlying())) throw Error("base_lie_algebra: bracket must be linear");
    const DvbModel& model = b.model();
    LieAlgebraData g;
    g.dim = model.dim_a();
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j) {
            Section s = b.underlying().val({i, j});
            std::vector<Rational> img(static_cast<std::size_t>(g.dim), 0);
            bool nonzero = false;
            for (int k = 0; k < g.dim; ++k) {
                img[static_cast<std::size_t>(k)] = s.coeff(k).constant_term();
                if (img[static_cast<std::size_t>(k)] != 0) nonzero = true;
            }
            if (nonzero) g.structure[{i, j}] = std::move(img);
        }
    return g;
}

MultiDerivation base_projection(const BracketElement& b, const MultiDerivation& c) {
    if (!is_linear(c)) throw Error("base_projection: cochain must be linear");
    if (!c.model().same_as(b.model())) throw Error("base_projection: model mismatch");
    const DvbModel& model = c.model();
    DvbModel base(model.dim_a(), 0, 0, 0);
    MultiDerivation out(base, c.arity());
    for (const auto& [t, s] : c.val_table()) {
        if (std::any_of(t.begin(), t.end(), [&](int i) { return model.is_core_index(i); }))
            continue;
        Section v(base);
        bool nonzero = false;
        for (int k = 0; k < base.dim_a(); ++k) {
            Rational constant = s.coeff(k).constant_term();
            if (constant != 0) {
                v.coeff(k) = PolyFunction::constant(0, constant);
                nonzero = true;
            }
        }
        if (nonzero) out.set_val(t, v);
    }
    return out;
}

EndKernelData end_kernel_complex(const BracketElement& b, int k_min, int k_max) {
    EndKernelData out;
    out.k_min = k_min;
    out.k_max = k_max;
    LinearSubcomplex lin = linear_subcomplex(b, k_min, k_max);
    out.linear = std::make_shared<CochainComplex>(lin.complex);

    LieAlgebraData g = base_lie_algebra(b);
    BuiltBracket base = from_lie_algebra(g);
    out.base = std::make_shared<CochainComplex>(def_complex(base.bracket, k_min, k_max));

    const DvbModel& model = b.model();
    // Kernel columns: weight-0 elements that are not (all-A tuple, A-out).
    std::vector<std::vector<std::size_t>> kernel_indices; // per degree, into the linear basis
    std::vector<std::size_t> kernel_dims;
    std::vector<LinearBasis> lin_bases;
    for (int k = k_min; k <= k_max; ++k) lin_bases.emplace_back(model, k + 1);
    auto is_base_element = [&](const DerivBasisElement& e) {
        if (e.kind != DerivBasisElement::Kind::Val) return false;
        if (model.is_core_index(e.index)) return false;
        for (int i : e.tuple)
            if (model.is_core_index(i)) return false;
        return monomial_degree(e.mono) == 0;
    };
    for (int k = k_min; k <= k_max; ++k) {
        const LinearBasis& basis = lin_bases[static_cast<std::size_t>(k - k_min)];
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < basis.dimension(); ++i)
            if (!is_base_element(basis.full().elements()[basis.full_indices()[i]]))
                idx.push_back(i);
        kernel_dims.push_back(idx.size());
        kernel_indices.push_back(std::move(idx));
    }

    // Kernel differentials: restrict the linear differential.
    std::vector<RationalMatrix> kernel_diffs;
    for (int k = k_min; k < k_max; ++k) {
        const auto& src_idx = kernel_indices[static_cast<std::size_t>(k - k_min)];
        const auto& dst_idx = kernel_indices[static_cast<std::size_t>(k - k_min + 1)];
        RationalMatrix dlin = lin.complex.differential(k);
        RationalMatrix d(dst_idx.size(), src_idx.size());
        std::map<std::size_t, std::size_t> dst_pos;
        for (std::size_t i = 0; i < dst_idx.size(); ++i) dst_pos[dst_idx[i]] = i;
        for (std::size_t j = 0; j < src_idx.size(); ++j)
            for (std::size_t i = 0; i < dlin.rows(); ++i) {
                const Rational& entry = dlin.at(i, src_idx[j]);
                if (entry == 0) continue;
                auto it = dst_pos.find(i);
                if (it == dst_pos.end())
                    throw Error("end_kernel_complex: kernel is not delta-closed (unexpected)");
                d.at(it->second, j) = entry;
            }
        kernel_diffs.push_back(std::move(d));
    }
    out.kernel = std::make_shared<CochainComplex>(k_min, std::move(kernel_dims),
                                                  std::move(kernel_diffs));

    // Inclusion and projection matrices.
    out.inclusion.source = out.kernel.get();
    out.inclusion.target = out.linear.get();
    out.projection.source = out.linear.get();
    out.projection.target = out.base.get();
    for (int k = k_min; k <= k_max; ++k) {
        const LinearBasis& basis = lin_bases[static_cast<std::size_t>(k - k_min)];
        const auto& idx = kernel_indices[static_cast<std::size_t>(k - k_min)];
        RationalMatrix inc(basis.dimension(), idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) inc.at(idx[j], j) = 1;
        out.inclusion.matrices.emplace(k, std::move(inc));

        DerivSpaceBasis base_basis(base.model, k + 1);
        RationalMatrix proj(base_basis.dimension(), basis.dimension());
        // Base basis elements are VAL(tuple, out) with the unique constant
        // monomial; match linear elements by tuple and output.
        std::map<std::pair<Tuple, int>, std::size_t> base_index;
        for (std::size_t i = 0; i < base_basis.dimension(); ++i) {
            const DerivBasisElement& e = base_basis.elements()[i];
            base_index[{e.tuple, e.index}] = i;
        }
        for (std::size_t j = 0; j < basis.dimension(); ++j) {
            const DerivBasisElement& e = basis.full().elements()[basis.full_indices()[j]];
            if (!is_base_element(e)) continue;
            proj.at(base_index.at({e.tuple, e.index}), j) = 1;
        }
        out.projection.matrices.emplace(k, std::move(proj));
    }
    require_cochain_map(out.inclusion);
    require_cochain_map(out.projection);
    return out;
}

} // namespace defcohom
