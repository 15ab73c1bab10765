#include "defcohom/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace defcohom {

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rational(Integer(text));
        }
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        Integer d(den);
        if (d == 0) return std::nullopt;
        return Rational(Integer(num), d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Rational& r) { return r == 0; });
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Vec RationalMatrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw Error("matrix-vector dimension mismatch");
    Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
    return y;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b.at(k, j) != 0) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix sum shape mismatch");
    RationalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix diff shape mismatch");
    RationalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

namespace {

// Row echelon form of a working copy. Returns pivot columns; the pivot of
// row r lives in pivot_cols[r]. Pivot selection: among candidate rows,
// smallest |numerator| of the entry in the current column.
std::vector<std::size_t> echelonize(RationalMatrix& m) {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = m.rows();
        Integer best_num = 0;
        for (std::size_t i = r; i < m.rows(); ++i) {
            if (m.at(i, c) == 0) continue;
            Integer n = abs(numerator(m.at(i, c)));
            if (best == m.rows() || n < best_num) {
                best = i;
                best_num = n;
            }
        }
        if (best == m.rows()) continue;
        if (best != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(best, j));
        const Rational pivot = m.at(r, c);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational factor = m.at(i, c) / pivot;
            for (std::size_t j = c; j < m.cols(); ++j)
                m.at(i, j) -= factor * m.at(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

} // namespace

RankKernelImage rank_kernel_image(const RationalMatrix& m) {
    RationalMatrix w = m;
    std::vector<std::size_t> pivots = echelonize(w);
    RankKernelImage out;
    out.rank = pivots.size();

    // Kernel: one basis vector per free column.
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols());
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -w.at(r, c) / w.at(r, pivots[r]);
        out.kernel_basis.push_back(std::move(v));
    }

    // Image: the original columns sitting over pivot positions.
    for (std::size_t c : pivots) {
        Vec v(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, c);
        out.image_basis.push_back(std::move(v));
    }
    return out;
}

std::size_t rank_of(const RationalMatrix& m) {
    RationalMatrix w = m;
    return echelonize(w).size();
}

std::optional<Vec> solve_linear(const RationalMatrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw Error("solve_linear: |b| must equal rows");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = echelonize(aug);
    for (std::size_t c : pivots)
        if (c == m.cols()) return std::nullopt; // pivot in the augmented column
    Vec x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(r, m.cols()) / aug.at(r, pivots[r]);
    return x;
}

std::size_t span_dimension(const std::vector<Vec>& vectors) {
    if (vectors.empty()) return 0;
    RationalMatrix m(vectors[0].size(), vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != vectors[0].size())
            throw Error("span_dimension: ragged input");
        for (std::size_t i = 0; i < vectors[j].size(); ++i) m.at(i, j) = vectors[j][i];
    }
    return rank_of(m);
}

CochainComplex::CochainComplex(int k_min, std::vector<std::size_t> dims,
                               std::vector<RationalMatrix> differentials)
    : k_min_(k_min), dims_(std::move(dims)), differentials_(std::move(differentials)) {
    if (dims_.empty()) throw Error("CochainComplex: empty degree range");
    if (differentials_.size() + 1 != dims_.size())
        throw Error("CochainComplex: need one differential per adjacent degree pair");
    for (std::size_t i = 0; i + 1 < dims_.size(); ++i)
        if (differentials_[i].rows() != dims_[i + 1] || differentials_[i].cols() != dims_[i])
            throw Error("CochainComplex: differential shape mismatch at degree " +
                        std::to_string(k_min_ + static_cast<int>(i)));
}

std::size_t CochainComplex::dim(int k) const {
    if (k < k_min_ || k > k_max()) return 0;
    return dims_[static_cast<std::size_t>(k - k_min_)];
}

RationalMatrix CochainComplex::differential(int k) const {
    if (k < k_min_ || k >= k_max()) return RationalMatrix(dim(k + 1), dim(k));
    return differentials_[static_cast<std::size_t>(k - k_min_)];
}

ComplexCheck verify_complex(const CochainComplex& c) {
    for (int k = c.k_min(); k + 1 < c.k_max(); ++k) {
        RationalMatrix prod = c.differential(k + 1) * c.differential(k);
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j)
                if (prod.at(i, j) != 0) return {false, ComplexWitness{k, i, j}};
    }
    return {true, std::nullopt};
}

std::size_t CohomologyReport::betti_at(int k) const {
    int idx = k - k_min;
    if (idx < 0 || idx >= static_cast<int>(betti.size())) return 0;
    return betti[static_cast<std::size_t>(idx)];
}

CohomologyReport cohomology(const CochainComplex& c) {
    ComplexCheck check = verify_complex(c);
    if (!check.ok)
        throw Error("cohomology: not a complex (d.d != 0 at degree " +
                    std::to_string(check.witness->degree) + ")");
    CohomologyReport report;
    report.k_min = c.k_min();
    for (int k = c.k_min(); k <= c.k_max(); ++k) {
        RankKernelImage dk = rank_kernel_image(c.differential(k));
        std::size_t rank_prev = (k > c.k_min()) ? rank_of(c.differential(k - 1)) : 0;
        std::size_t b = dk.kernel_basis.size() - rank_prev;
        report.betti.push_back(b);

        // Representatives: kernel vectors extending a column basis of im d_{k-1}.
        std::vector<Vec> reps;
        if (b > 0) {
            RationalMatrix prev = c.differential(k - 1);
            std::size_t ncols = prev.cols();
            // Columns: image generators first, then kernel vectors; new pivots
            // among the kernel columns give the representatives.
            RationalMatrix probe(c.dim(k), ncols + dk.kernel_basis.size());
            for (std::size_t j = 0; j < ncols; ++j)
                for (std::size_t i = 0; i < probe.rows(); ++i) probe.at(i, j) = prev.at(i, j);
            for (std::size_t j = 0; j < dk.kernel_basis.size(); ++j)
                for (std::size_t i = 0; i < probe.rows(); ++i)
                    probe.at(i, ncols + j) = dk.kernel_basis[j][i];
            RationalMatrix w = probe;
            std::vector<std::size_t> pivots = echelonize(w);
            for (std::size_t p : pivots)
                if (p >= ncols) reps.push_back(dk.kernel_basis[p - ncols]);
        }
        report.representatives.push_back(std::move(reps));
    }
    return report;
}

RationalMatrix ComplexMap::matrix_at(int k) const {
    auto it = matrices.find(k);
    if (it != matrices.end()) return it->second;
    return RationalMatrix(target ? target->dim(k) : 0, source ? source->dim(k) : 0);
}

void require_cochain_map(const ComplexMap& f) {
    if (!f.source || !f.target) throw Error("cochain map: missing complexes");
    for (int k = f.source->k_min(); k <= f.source->k_max(); ++k) {
        RationalMatrix lhs = f.target->differential(k) * f.matrix_at(k);
        RationalMatrix rhs = f.matrix_at(k + 1) * f.source->differential(k);
        if (!(lhs == rhs))
            throw Error("not a cochain map: fails to commute at degree " + std::to_string(k));
    }
}

CochainComplex mapping_cone(const ComplexMap& f) {
    require_cochain_map(f);
    const CochainComplex& X = *f.source;
    const CochainComplex& Y = *f.target;
    int k_min = std::min(X.k_min() - 1, Y.k_min());
    int k_max = std::max(X.k_max() - 1, Y.k_max());
    std::vector<std::size_t> dims;
    for (int k = k_min; k <= k_max; ++k) dims.push_back(X.dim(k + 1) + Y.dim(k));
    std::vector<RationalMatrix> diffs;
    for (int k = k_min; k < k_max; ++k) {
        RationalMatrix d(X.dim(k + 2) + Y.dim(k + 1), X.dim(k + 1) + Y.dim(k));
        RationalMatrix dX = X.differential(k + 1);
        RationalMatrix dY = Y.differential(k);
        RationalMatrix fk = f.matrix_at(k + 1);
        for (std::size_t i = 0; i < dX.rows(); ++i)
            for (std::size_t j = 0; j < dX.cols(); ++j) d.at(i, j) = -dX.at(i, j);
        for (std::size_t i = 0; i < fk.rows(); ++i)
            for (std::size_t j = 0; j < fk.cols(); ++j) d.at(X.dim(k + 2) + i, j) = fk.at(i, j);
        for (std::size_t i = 0; i < dY.rows(); ++i)
            for (std::size_t j = 0; j < dY.cols(); ++j)
                d.at(X.dim(k + 2) + i, X.dim(k + 1) + j) = dY.at(i, j);
        diffs.push_back(std::move(d));
    }
    return CochainComplex(k_min, std::move(dims), std::move(diffs));
}

namespace {

// Coordinates of the cohomology class of z in the span of reps, modulo
// im(d_{k-1}). Solves [reps | im-columns] x = z and reads off the rep part.
std::optional<Vec> class_coordinates(const Vec& z, const std::vector<Vec>& reps,
                                     const RationalMatrix& d_prev) {
    std::size_t n = z.size();
    RationalMatrix sys(n, reps.size() + d_prev.cols());
    for (std::size_t j = 0; j < reps.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) sys.at(i, j) = reps[j][i];
    for (std::size_t j = 0; j < d_prev.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) sys.at(i, reps.size() + j) = d_prev.at(i, j);
    auto sol = solve_linear(sys, z);
    if (!sol) return std::nullopt;
    return Vec(sol->begin(), sol->begin() + static_cast<long>(reps.size()));
}

// Matrix of the induced map on cohomology, in the representative bases.
RationalMatrix induced_map(const ComplexMap& f, int k, const CohomologyReport& hs,
                           const CohomologyReport& ht, const CochainComplex& target) {
    const auto& src_reps = hs.representatives[static_cast<std::size_t>(k - hs.k_min)];
    const auto& tgt_reps = ht.representatives[static_cast<std::size_t>(k - ht.k_min)];
    RationalMatrix out(tgt_reps.size(), src_reps.size());
    RationalMatrix fk = f.matrix_at(k);
    for (std::size_t j = 0; j < src_reps.size(); ++j) {
        Vec img = fk.apply(src_reps[j]);
        auto coords = class_coordinates(img, tgt_reps, target.differential(k - 1));
        if (!coords)
            throw Error("induced_map: image class not expressible (it should be a cocycle)");
        for (std::size_t i = 0; i < tgt_reps.size(); ++i) out.at(i, j) = (*coords)[i];
    }
    return out;
}

} // namespace

LesCheckResult les_exactness_check(const ShortExactSequence& ses) {
    if (!ses.K || !ses.M || !ses.Q) throw Error("les_exactness_check: missing complexes");
    require_cochain_map(ses.i);
    require_cochain_map(ses.p);

    // Degree-wise SES check: i injective, p surjective, im i = ker p.
    for (int k = ses.M->k_min(); k <= ses.M->k_max(); ++k) {
        RationalMatrix ik = ses.i.matrix_at(k);
        RationalMatrix pk = ses.p.matrix_at(k);
        if (rank_of(ik) != ses.K->dim(k))
            throw Error("not a SES: i not injective at degree " + std::to_string(k));
        if (rank_of(pk) != ses.Q->dim(k))
            throw Error("not a SES: p not surjective at degree " + std::to_string(k));
        if (!(pk * ik).is_zero())
            throw Error("not a SES: p i != 0 at degree " + std::to_string(k));
        if (rank_of(ik) + rank_of(pk) != ses.M->dim(k))
            throw Error("not a SES: im i != ker p at degree " + std::to_string(k));
    }

    CohomologyReport hk = cohomology(*ses.K);
    CohomologyReport hm = cohomology(*ses.M);
    CohomologyReport hq = cohomology(*ses.Q);

    auto reps_of = [](const CohomologyReport& h, int k) -> const std::vector<Vec>& {
        static const std::vector<Vec> empty;
        int idx = k - h.k_min;
        if (idx < 0 || idx >= static_cast<int>(h.representatives.size())) return empty;
        return h.representatives[static_cast<std::size_t>(idx)];
    };

    int k_min = ses.M->k_min();
    int k_max = ses.M->k_max();

    // Connecting maps by snake lifts: [q] -> [i^{-1}(d_M(lift(q)))].
    std::map<int, RationalMatrix> connecting; // H^k(Q) -> H^{k+1}(K)
    for (int k = k_min; k <= k_max; ++k) {
        const auto& q_reps = reps_of(hq, k);
        const auto& k_reps = reps_of(hk, k + 1);
        RationalMatrix conn(k_reps.size(), q_reps.size());
        for (std::size_t j = 0; j < q_reps.size(); ++j) {
            auto lift = solve_linear(ses.p.matrix_at(k), q_reps[j]);
            if (!lift) throw Error("snake lift failed (p should be surjective)");
            Vec dm = ses.M->differential(k).apply(*lift);
            auto pre = solve_linear(ses.i.matrix_at(k + 1), dm);
            if (!pre) throw Error("snake: d(lift) not in im i");
            if (!k_reps.empty() || !pre->empty()) {
                auto coords = class_coordinates(*pre, k_reps, ses.K->differential(k));
                if (!coords) throw Error("snake: connecting image not a K-class");
                for (std::size_t i = 0; i < k_reps.size(); ++i) conn.at(i, j) = (*coords)[i];
            }
        }
        connecting.emplace(k, std::move(conn));
    }

    auto fail = [](int k, const std::string& where) {
        return LesCheckResult{false, "exactness fails at " + where + ", degree " + std::to_string(k)};
    };

    // Bottom edge: the sequence starts 0 -> H^{k_min}(K) -> ..., so i* must
    // be injective there.
    {
        RationalMatrix i0 = induced_map(ses.i, k_min, hk, hm, *ses.M);
        if (rank_of(i0) != hk.betti_at(k_min)) return fail(k_min, "H(K) (i* not injective at bottom)");
    }

    for (int k = k_min; k <= k_max; ++k) {
        RationalMatrix i_star = induced_map(ses.i, k, hk, hm, *ses.M);
        RationalMatrix p_star = induced_map(ses.p, k, hm, hq, *ses.Q);
        const RationalMatrix& del = connecting.at(k);

        // H^k(K) -> H^k(M) -> H^k(Q): im i* = ker p*.
        if (!(p_star * i_star).is_zero()) return fail(k, "H(M) (p* i* != 0)");
        if (rank_of(i_star) + rank_of(p_star) != hm.betti_at(k))
            return fail(k, "H(M) (rank i* + rank p* != dim H(M))");

        // H^k(M) -> H^k(Q) -> H^{k+1}(K): im p* = ker del.
        if (!(del * p_star).is_zero()) return fail(k, "H(Q) (del p* != 0)");
        if (rank_of(p_star) + rank_of(del) != hq.betti_at(k))
            return fail(k, "H(Q) (rank p* + rank del != dim H(Q))");

        // H^k(Q) -> H^{k+1}(K) -> H^{k+1}(M): im del = ker i*.
        if (k + 1 <= k_max) {
            RationalMatrix i_star_next = induced_map(ses.i, k + 1, hk, hm, *ses.M);
            if (!(i_star_next * del).is_zero()) return fail(k + 1, "H(K) (i* del != 0)");
            if (rank_of(del) + rank_of(i_star_next) != hk.betti_at(k + 1))
                return fail(k + 1, "H(K) (rank del + rank i* != dim H(K))");
        }
    }
    return {true, ""};
}

} // namespace defcohom
