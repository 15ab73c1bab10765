#include "defcohom/job.hpp"

#include <random>
#include <sstream>

namespace defcohom {

using nlohmann::json;

namespace {

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
    throw Error("input error at " + where + ": " + what);
}

Rational need_rational(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        auto r = parse_rational(j.get<std::string>());
        if (r) return *r;
        fail_at(where, "malformed rational \"" + j.get<std::string>() + "\"");
    }
    fail_at(where, "expected a rational as string \"p/q\" or integer");
}

int need_int(const json& j, const std::string& where, int lo, int hi) {
    if (!j.is_number_integer()) fail_at(where, "expected an integer");
    long long v = j.get<long long>();
    if (v < lo || v > hi)
        fail_at(where, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + "," +
                           std::to_string(hi) + "]");
    return static_cast<int>(v);
}

std::string need_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail_at(where, "expected a string");
    return j.get<std::string>();
}

Monomial parse_monomial(const std::string& text, int nvars, const std::string& where) {
    Monomial mono(static_cast<std::size_t>(nvars), 0);
    if (text == "1" || text.empty()) return mono;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, '*')) {
        if (token.empty() || token[0] != 'u') fail_at(where, "bad monomial factor \"" + token + "\"");
        std::size_t caret = token.find('^');
        std::string var = token.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        int exponent = 1;
        if (caret != std::string::npos) {
            try {
                exponent = std::stoi(token.substr(caret + 1));
            } catch (const std::exception&) {
                fail_at(where, "bad exponent in \"" + token + "\"");
            }
        }
        int idx = 0;
        try {
            idx = std::stoi(var);
        } catch (const std::exception&) {
            fail_at(where, "bad coordinate in \"" + token + "\"");
        }
        if (idx < 1 || idx > nvars) fail_at(where, "unknown coordinate u" + std::to_string(idx));
        if (exponent < 1) fail_at(where, "exponent must be positive");
        mono[static_cast<std::size_t>(idx - 1)] += exponent;
    }
    return mono;
}

PolyFunction parse_poly(const json& j, int nvars, const std::string& where) {
    PolyFunction f(nvars);
    if (!j.is_object()) fail_at(where, "expected an object {monomial: rational}");
    for (const auto& [key, value] : j.items())
        f.add_term(parse_monomial(key, nvars, where + "." + key),
                   need_rational(value, where + "." + key));
    return f;
}

LieAlgebraData parse_lie_algebra(const json& j, const std::string& where) {
    if (j.contains("name")) {
        std::string name = need_string(j.at("name"), where + ".name");
        int dim = j.contains("dim") ? need_int(j.at("dim"), where + ".dim", 0, 16) : -1;
        try {
            return named_lie_algebra(name, dim);
        } catch (const Error& e) {
            fail_at(where + ".name", e.what());
        }
    }
    if (!j.contains("dim")) fail_at(where, "need \"name\" or explicit \"dim\"+\"structure\"");
    int dim = need_int(j.at("dim"), where + ".dim", 0, 16);
    LieAlgebraData g;
    g.dim = dim;
    if (j.contains("structure")) {
        const json& st = j.at("structure");
        if (!st.is_array()) fail_at(where + ".structure", "expected an array");
        for (std::size_t idx = 0; idx < st.size(); ++idx) {
            std::string loc = where + ".structure[" + std::to_string(idx) + "]";
            const json& entry = st[idx];
            int i = need_int(entry.at("i"), loc + ".i", 1, dim) - 1;
            int jj = need_int(entry.at("j"), loc + ".j", 1, dim) - 1;
            if (i >= jj) fail_at(loc, "need i < j");
            const json& image = entry.at("image");
            if (!image.is_array() || static_cast<int>(image.size()) != dim)
                fail_at(loc + ".image", "expected an array of dim rationals");
            std::vector<Rational> img;
            for (std::size_t k = 0; k < image.size(); ++k)
                img.push_back(need_rational(image[k], loc + ".image[" + std::to_string(k) + "]"));
            g.structure[{i, jj}] = std::move(img);
        }
    }
    return g;
}

RepresentationData parse_representation(const LieAlgebraData& g, const std::string& g_name,
                                        const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return named_representation(g, g_name, j.get<std::string>());
        } catch (const Error& e) {
            fail_at(where, e.what());
        }
    }
    if (j.is_object() && j.contains("name")) {
        int dim = j.contains("dim") ? need_int(j.at("dim"), where + ".dim", 0, 16) : -1;
        try {
            return named_representation(g, g_name, need_string(j.at("name"), where + ".name"), dim);
        } catch (const Error& e) {
            fail_at(where, e.what());
        }
    }
    if (j.is_object() && j.contains("matrices")) {
        const json& mats = j.at("matrices");
        if (!mats.is_array() || static_cast<int>(mats.size()) != g.dim)
            fail_at(where + ".matrices", "need one matrix per basis element");
        RepresentationData rep;
        rep.dim_module = -1;
        for (std::size_t mi = 0; mi < mats.size(); ++mi) {
            std::string loc = where + ".matrices[" + std::to_string(mi) + "]";
            const json& rows = mats[mi];
            if (!rows.is_array() || rows.empty()) fail_at(loc, "expected a nonempty matrix");
            int v = static_cast<int>(rows.size());
            if (rep.dim_module < 0) rep.dim_module = v;
            if (rep.dim_module != v) fail_at(loc, "matrix sizes disagree");
            RationalMatrix m(static_cast<std::size_t>(v), static_cast<std::size_t>(v));
            for (int r = 0; r < v; ++r) {
                const json& row = rows[static_cast<std::size_t>(r)];
                if (!row.is_array() || static_cast<int>(row.size()) != v)
                    fail_at(loc, "matrix must be square");
                for (int c = 0; c < v; ++c)
                    m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = need_rational(
                        row[static_cast<std::size_t>(c)],
                        loc + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
            }
            rep.matrices.push_back(std::move(m));
        }
        return rep;
    }
    fail_at(where, "expected a representation name or {matrices: [...]}");
}

void validate_tasks(const json& doc, std::vector<JobTask>& tasks) {
    static const std::vector<std::string> known = {
        "mc-check", "cohomology", "weights", "linearize",
        "gauge",    "splitting-check", "les-check", "formula-check"};
    if (!doc.contains("tasks")) fail_at("tasks", "missing task list");
    const json& ts = doc.at("tasks");
    if (!ts.is_array() || ts.empty()) fail_at("tasks", "expected a nonempty array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string loc = "tasks[" + std::to_string(i) + "]";
        const json& t = ts[i];
        if (!t.is_object() || !t.contains("op")) fail_at(loc, "task needs an \"op\"");
        std::string op = need_string(t.at("op"), loc + ".op");
        if (std::find(known.begin(), known.end(), op) == known.end())
            fail_at(loc + ".op", "unknown operation \"" + op + "\"");
        if (op == "cohomology" || op == "les-check" || op == "splitting-check") {
            if (!t.contains("degrees")) fail_at(loc, "\"" + op + "\" needs a degrees window");
        }
        if (t.contains("degrees")) {
            const json& d = t.at("degrees");
            if (!d.is_array() || d.size() != 2) fail_at(loc + ".degrees", "expected [lo, hi]");
            int lo = need_int(d[0], loc + ".degrees[0]", -2, 16);
            int hi = need_int(d[1], loc + ".degrees[1]", -2, 16);
            if (lo > hi) fail_at(loc + ".degrees", "empty window");
        }
        if (op == "cohomology" && t.contains("complex")) {
            std::string kind = need_string(t.at("complex"), loc + ".complex");
            if (kind != "full" && kind != "linear")
                fail_at(loc + ".complex", "expected \"full\" or \"linear\"");
        }
        tasks.push_back({op, t});
    }
}

MultiDerivation parse_bracket_tables(const DvbModel& model, const json& j,
                                     const std::string& where, int arity) {
    MultiDerivation b(model, arity);
    if (j.contains("val")) {
        const json& vals = j.at("val");
        if (!vals.is_array()) fail_at(where + ".val", "expected an array");
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::string loc = where + ".val[" + std::to_string(i) + "]";
            const json& entry = vals[i];
            const json& inputs = entry.at("inputs");
            if (!inputs.is_array() || static_cast<int>(inputs.size()) != arity)
                fail_at(loc + ".inputs", "expected " + std::to_string(arity) + " basis indices");
            Tuple t;
            for (std::size_t k = 0; k < inputs.size(); ++k) {
                std::string name = need_string(inputs[k], loc + ".inputs[" + std::to_string(k) + "]");
                auto idx = model.parse_basis_name(name);
                if (!idx)
                    fail_at(loc + ".inputs[" + std::to_string(k) + "]",
                            "unknown basis index \"" + name + "\"");
                t.push_back(*idx);
            }
            if (!std::is_sorted(t.begin(), t.end()) ||
                std::adjacent_find(t.begin(), t.end()) != t.end())
                fail_at(loc + ".inputs", "indices must be strictly increasing (A-block first)");
            const json& output = entry.at("output");
            if (!output.is_object()) fail_at(loc + ".output", "expected {index: coefficient}");
            Section s(model);
            for (const auto& [key, value] : output.items()) {
                auto idx = model.parse_basis_name(key);
                if (!idx) fail_at(loc + ".output", "unknown basis index \"" + key + "\"");
                if (value.is_object())
                    s.coeff(*idx) = parse_poly(value, model.dim_e(), loc + ".output." + key);
                else
                    s.coeff(*idx) = PolyFunction::constant(
                        model.dim_e(), need_rational(value, loc + ".output." + key));
            }
            b.set_val(t, b.val(t) + s);
        }
    }
    if (j.contains("sym")) {
        const json& syms = j.at("sym");
        if (!syms.is_array()) fail_at(where + ".sym", "expected an array");
        for (std::size_t i = 0; i < syms.size(); ++i) {
            std::string loc = where + ".sym[" + std::to_string(i) + "]";
            const json& entry = syms[i];
            const json& inputs = entry.at("inputs");
            if (!inputs.is_array() || static_cast<int>(inputs.size()) != arity - 1)
                fail_at(loc + ".inputs", "expected " + std::to_string(arity - 1) + " basis indices");
            Tuple t;
            for (std::size_t k = 0; k < inputs.size(); ++k) {
                std::string name = need_string(inputs[k], loc + ".inputs[" + std::to_string(k) + "]");
                auto idx = model.parse_basis_name(name);
                if (!idx)
                    fail_at(loc + ".inputs[" + std::to_string(k) + "]",
                            "unknown basis index \"" + name + "\"");
                t.push_back(*idx);
            }
            if (!std::is_sorted(t.begin(), t.end()) ||
                std::adjacent_find(t.begin(), t.end()) != t.end())
                fail_at(loc + ".inputs", "indices must be strictly increasing");
            int dir = need_int(entry.at("direction"), loc + ".direction", 1, model.dim_e()) - 1;
            PolyVectorField x = b.sym(t);
            x.component(dir) =
                x.component(dir) + parse_poly(entry.at("coeff"), model.dim_e(), loc + ".coeff");
            b.set_sym(t, x);
        }
    }
    return b;
}

} // namespace

JobSpec parse_job(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("input error: not valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) fail_at("<root>", "expected a JSON object");
    bool has_model = doc.contains("model");
    bool has_construct = doc.contains("construct");
    if (has_model == has_construct)
        fail_at("<root>", "exactly one of \"model\" or \"construct\" must be present");

    JobSpec spec;
    spec.document = doc;
    validate_tasks(doc, spec.tasks);

    // Validate the model descriptor now; materialization happens at run time.
    if (has_construct) {
        const json& c = doc.at("construct");
        std::string kind = need_string(c.at("kind"), "construct.kind");
        static const std::vector<std::string> kinds = {
            "lie_algebra", "vb_algebra",     "la_vector_space", "tangent",
            "action",      "type1",          "tangent_bundle"};
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
            fail_at("construct.kind", "unknown construction \"" + kind + "\"");
        materialize_model(spec); // shape/arithmetic validation, throws with location
    } else {
        materialize_model(spec);
    }
    return spec;
}

MaterializedModel materialize_model(const JobSpec& spec) {
    const json& doc = spec.document;
    if (doc.contains("construct")) {
        const json& c = doc.at("construct");
        std::string kind = need_string(c.at("kind"), "construct.kind");
        if (kind == "lie_algebra") {
            LieAlgebraData g = parse_lie_algebra(c, "construct");
            BuiltBracket built = from_lie_algebra(g);
            return {built.model, built.bracket.underlying(), "lie_algebra"};
        }
        if (kind == "vb_algebra" || kind == "tangent" || kind == "action" || kind == "type1") {
            LieAlgebraData g;
            std::string g_name = "custom";
            if (c.contains("g") && c.at("g").is_string()) {
                g_name = c.at("g").get<std::string>();
                int dim = c.contains("dim") ? need_int(c.at("dim"), "construct.dim", 0, 16) : -1;
                try {
                    g = named_lie_algebra(g_name, dim);
                } catch (const Error& e) {
                    fail_at("construct.g", e.what());
                }
            } else if (c.contains("g")) {
                g = parse_lie_algebra(c.at("g"), "construct.g");
            } else {
                fail_at("construct", "\"" + kind + "\" needs \"g\"");
            }
            if (kind == "tangent") {
                BuiltBracket built = tangent_vb(g);
                return {built.model, built.bracket.underlying(), "tangent"};
            }
            if (kind == "type1") {
                int m = need_int(c.at("m"), "construct.m", 0, 8);
                int d = need_int(c.at("trunc"), "construct.trunc", 0, 8);
                BuiltBracket built = type1_pullback(g, m, d);
                return {built.model, built.bracket.underlying(), "type1"};
            }
            RepresentationData rep =
                parse_representation(g, g_name, c.at("rep"), "construct.rep");
            try {
                rep.validate(g);
            } catch (const Error& e) {
                fail_at("construct.rep", e.what());
            }
            if (kind == "vb_algebra") {
                BuiltBracket built = vb_semidirect(g, rep);
                return {built.model, built.bracket.underlying(), "vb_algebra"};
            }
            int d = need_int(c.at("trunc"), "construct.trunc", 1, 8);
            BuiltBracket built = action_algebroid(g, rep, d);
            return {built.model, built.bracket.underlying(), "action"};
        }
        if (kind == "la_vector_space") {
            const json& rows = c.at("partial");
            if (!rows.is_array() || rows.empty())
                fail_at("construct.partial", "expected a nonempty matrix");
            std::size_t e = rows.size();
            std::size_t cc = rows[0].is_array() ? rows[0].size() : 0;
            if (cc == 0) fail_at("construct.partial", "expected a matrix of rationals");
            RationalMatrix partial(e, cc);
            for (std::size_t r = 0; r < e; ++r) {
                if (!rows[r].is_array() || rows[r].size() != cc)
                    fail_at("construct.partial", "ragged matrix");
                for (std::size_t q = 0; q < cc; ++q)
                    partial.at(r, q) = need_rational(rows[r][q],
                                                     "construct.partial[" + std::to_string(r) +
                                                         "][" + std::to_string(q) + "]");
            }
            int d = need_int(c.at("trunc"), "construct.trunc", 1, 8);
            BuiltBracket built = la_vector_space({partial}, d);
            return {built.model, built.bracket.underlying(), "la_vector_space"};
        }
        if (kind == "tangent_bundle") {
            int m = need_int(c.at("m"), "construct.m", 0, 8);
            int d = need_int(c.at("trunc"), "construct.trunc", 1, 8);
            BuiltBracket built = tangent_bundle_model(m, d);
            return {built.model, built.bracket.underlying(), "tangent_bundle"};
        }
        fail_at("construct.kind", "unknown construction");
    }

    const json& m = doc.at("model");
    int a = need_int(m.at("dimA"), "model.dimA", 0, 8);
    int e = need_int(m.at("dimE"), "model.dimE", 0, 8);
    int cc = need_int(m.at("dimC"), "model.dimC", 0, 8);
    int d = need_int(m.at("trunc"), "model.trunc", 0, 8);
    DvbModel model(a, e, cc, d);
    MultiDerivation bracket(model, 2);
    if (doc.contains("bracket"))
        bracket = parse_bracket_tables(model, doc.at("bracket"), "bracket", 2);
    return {model, bracket, "raw model"};
}

namespace {

json betti_json(const CohomologyReport& report, const CochainComplex& complex, int lo, int hi) {
    json degrees = json::array(), betti = json::array(), dims = json::array();
    for (int k = lo; k <= hi; ++k) {
        degrees.push_back(k);
        betti.push_back(report.betti_at(k));
        dims.push_back(complex.dim(k));
    }
    return json{{"degrees", degrees}, {"betti", betti}, {"dims", dims}};
}

// Assemble with one guard degree on each side (clamped to the natural
// support) so the reported values are the true Betti numbers, free of
// window-edge artifacts.
std::pair<int, int> guarded_window(const DvbModel& model, int lo, int hi) {
    int top_degree = model.section_rank() + (model.dim_e() > 0 ? 0 : -1);
    int glo = std::max(-1, lo - 1);
    int ghi = std::min(hi + 1, top_degree + 1);
    ghi = std::max(ghi, glo);
    return {glo, ghi};
}

std::string tuple_names(const DvbModel& model, const Tuple& t) {
    std::string out;
    for (int i : t) out += (out.empty() ? "" : ",") + model.basis_name(i);
    return out;
}

// Deterministic sparse random cochain for the linearize task.
MultiDerivation random_cochain(const DvbModel& model, int arity, std::mt19937_64& rng) {
    DerivSpaceBasis basis(model, arity);
    Vec coords(basis.dimension());
    std::uniform_int_distribution<int> numer(-3, 3);
    std::uniform_int_distribution<int> pick(0, 3);
    for (auto& c : coords)
        if (pick(rng) == 0) c = Rational(numer(rng));
    return basis.from_coordinates(coords);
}

json run_one_task(const JobTask& task, const MaterializedModel& mat) {
    const DvbModel& model = mat.model;
    json out{{"op", task.op}, {"status", "PASS"}, {"data", json::object()}};

    auto degrees_of = [&](int def_lo, int def_hi) {
        if (!task.params.contains("degrees")) return std::make_pair(def_lo, def_hi);
        return std::make_pair(task.params.at("degrees")[0].get<int>(),
                              task.params.at("degrees")[1].get<int>());
    };
    auto require_mc = [&]() {
        McResult res = mc_check(mat.bracket);
        if (!res.ok)
            throw Error("bracket is not Maurer-Cartan (witness " +
                        tuple_names(model, *res.witness) + ")");
        return BracketElement(mat.bracket);
    };

    if (task.op == "mc-check") {
        McResult res = mc_check(mat.bracket);
        out["data"]["maurer_cartan"] = res.ok;
        if (!res.ok) {
            out["status"] = "FAIL";
            out["witness"] = json{{"kind", res.witness_kind},
                                  {"tuple", tuple_names(model, *res.witness)}};
        }
        return out;
    }

    if (task.op == "cohomology") {
        auto [lo, hi] = degrees_of(-1, 2);
        auto [glo, ghi] = guarded_window(model, lo, hi);
        std::string kind =
            task.params.contains("complex") ? task.params.at("complex").get<std::string>() : "full";
        BracketElement b = require_mc();
        if (kind == "linear") {
            LinearSubcomplex lin = linear_subcomplex(b, glo, ghi);
            out["data"] = betti_json(cohomology(lin.complex), lin.complex, lo, hi);
        } else {
            CochainComplex complex = def_complex(b, glo, ghi);
            out["data"] = betti_json(cohomology(complex), complex, lo, hi);
        }
        out["data"]["complex"] = kind;
        return out;
    }

    if (task.op == "weights") {
        WeightDecomposition w = weight_decompose(mat.bracket);
        json parts = json::array();
        for (const auto& [q, part] : w.parts)
            parts.push_back(json{{"weight", q},
                                 {"val_entries", part.val_table().size()},
                                 {"sym_entries", part.sym_table().size()}});
        out["data"]["bracket_weights"] = parts;
        out["data"]["linear"] = is_linear(mat.bracket);
        return out;
    }

    if (task.op == "linearize") {
        BracketElement b = require_mc();
        if (!is_linear(mat.bracket)) throw Error("linearize needs a linear bracket");
        int samples = task.params.contains("samples") ? task.params.at("samples").get<int>() : 5;
        unsigned long long seed =
            task.params.contains("seed") ? task.params.at("seed").get<unsigned long long>() : 1;
        std::mt19937_64 rng(seed);
        int checked = 0;
        for (int s = 0; s < samples; ++s) {
            int arity = 1 + static_cast<int>(rng() % 2);
            MultiDerivation c = random_cochain(model, arity, rng);
            LinearizationSplit split = linearization_split(b, c);
            MultiDerivation lhs = def_differential(b, split.lin);
            MultiDerivation rhs = lin_part(def_differential(b, c));
            if (!(lhs == rhs) || !(lin_part(split.lin) == split.lin)) {
                out["status"] = "FAIL";
                out["witness"] = json{{"sample", s}};
                return out;
            }
            ++checked;
        }
        out["data"]["samples_checked"] = checked;
        return out;
    }

    if (task.op == "gauge") {
        BracketElement b = require_mc();
        if (!task.params.contains("generator")) throw Error("gauge needs a generator");
        MultiDerivation delta =
            parse_bracket_tables(model, task.params.at("generator"), "generator", 1);
        GaugeFlow flow = gauge_flow(b, delta);
        // ODE db_t/dt = [[b_t, Delta]] coefficient-wise: (j+1) c_{j+1} = [[c_j, Delta]].
        for (std::size_t j = 0; j + 1 <= flow.coefficients.size(); ++j) {
            MultiDerivation rhs = gerstenhaber_bracket(flow.coefficients[j], delta);
            MultiDerivation lhs = (j + 1 < flow.coefficients.size())
                                      ? flow.coefficients[j + 1] * Rational(static_cast<int>(j + 1))
                                      : MultiDerivation(model, 2);
            if (!(lhs == rhs)) {
                out["status"] = "FAIL";
                out["witness"] = json{{"ode_coefficient", j}};
                return out;
            }
        }
        // Initial velocity is the coboundary delta(Delta).
        MultiDerivation velocity = flow.coefficients.size() > 1 ? flow.coefficients[1]
                                                                : MultiDerivation(model, 2);
        if (!(velocity == def_differential(b, delta))) {
            out["status"] = "FAIL";
            out["witness"] = "initial velocity is not delta(generator)";
            return out;
        }
        json times = json::array();
        if (task.params.contains("times"))
            for (const auto& t : task.params.at("times")) {
                Rational tv = need_rational(t, "gauge.times");
                MultiDerivation bt = flow.at(tv);
                McResult res = mc_check(bt);
                times.push_back(json{{"t", rational_str(tv)}, {"maurer_cartan", res.ok}});
                if (!res.ok) out["status"] = "FAIL";
            }
        out["data"]["times"] = times;
        out["data"]["flow_degree"] = flow.coefficients.size() - 1;
        out["data"]["ode_verified"] = true;
        out["data"]["initial_velocity_is_coboundary"] = true;
        return out;
    }

    if (task.op == "splitting-check") {
        if (model.dim_e() != 0)
            throw Error("splitting-check applies to VB-algebra models (dimE = 0)");
        BracketElement b = require_mc();
        if (!is_linear(mat.bracket)) throw Error("splitting-check needs a linear bracket");
        auto [lo, hi] = degrees_of(-1, 2);
        LieAlgebraData g = base_lie_algebra(b);
        // Recover theta from the A x C -> C block.
        RepresentationData rep;
        rep.dim_module = model.dim_c();
        for (int i = 0; i < model.dim_a(); ++i) {
            RationalMatrix th(static_cast<std::size_t>(model.dim_c()),
                              static_cast<std::size_t>(model.dim_c()));
            for (int q = 0; q < model.dim_c(); ++q) {
                Section s = mat.bracket.val({i, model.dim_a() + q});
                for (int p = 0; p < model.dim_c(); ++p)
                    th.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) =
                        s.coeff(model.dim_a() + p).constant_term();
            }
            rep.matrices.push_back(std::move(th));
        }
        rep.validate(g);
        ThetaConeResult res = theta_cone(g, rep, lo, hi); // throws if conjugation fails
        CohomologyReport cone_h = cohomology(*res.cone);
        CohomologyReport lin_h = cohomology(res.linear.complex);
        json cone_betti = json::array(), lin_betti = json::array(), degrees = json::array();
        bool equal = true;
        for (int k = lo; k <= hi; ++k) {
            degrees.push_back(k);
            cone_betti.push_back(cone_h.betti_at(k));
            lin_betti.push_back(lin_h.betti_at(k));
            if (cone_h.betti_at(k) != lin_h.betti_at(k)) equal = false;
        }
        out["data"] = json{{"degrees", degrees},
                           {"cone_betti", cone_betti},
                           {"linear_betti", lin_betti},
                           {"splitting_conjugation", "exact"}};
        if (!equal) out["status"] = "FAIL";
        return out;
    }

    if (task.op == "les-check") {
        BracketElement b = require_mc();
        if (!is_linear(mat.bracket)) throw Error("les-check needs a linear bracket");
        auto [lo, hi] = degrees_of(-1, 2);
        EndKernelData data = end_kernel_complex(b, lo, hi);
        ShortExactSequence ses{data.kernel.get(), data.linear.get(), data.base.get(),
                               data.inclusion, data.projection};
        LesCheckResult res = les_exactness_check(ses);
        out["data"]["exact"] = res.ok;
        if (!res.ok) {
            out["status"] = "FAIL";
            out["witness"] = res.detail;
        }
        return out;
    }

    if (task.op == "formula-check") {
        if (model.dim_a() != 0)
            throw Error("formula-check applies to LA-vector-space models (dimA = 0)");
        BracketElement b = require_mc();
        // Recover the core-anchor from the symbol table.
        RationalMatrix partial(static_cast<std::size_t>(model.dim_e()),
                               static_cast<std::size_t>(model.dim_c()));
        for (int q = 0; q < model.dim_c(); ++q) {
            PolyVectorField x = mat.bracket.sym({q});
            for (int i = 0; i < model.dim_e(); ++i)
                partial.at(static_cast<std::size_t>(i), static_cast<std::size_t>(q)) =
                    x.component(i).constant_term();
        }
        LaBetti formula = la_cohomology_formula({partial});
        LinearSubcomplex lin = linear_subcomplex(b, -1, 1);
        CohomologyReport h = cohomology(lin.complex);
        bool equal = h.betti_at(-1) == formula.h_minus1 && h.betti_at(0) == formula.h0 &&
                     h.betti_at(1) == formula.h1;
        out["data"] = json{
            {"assembled", json::array({h.betti_at(-1), h.betti_at(0), h.betti_at(1)})},
            {"formula", json::array({formula.h_minus1, formula.h0, formula.h1})}};
        if (!equal) out["status"] = "FAIL";
        return out;
    }

    throw Error("unknown operation " + task.op);
}

} // namespace

nlohmann::json run_job(const JobSpec& spec, const std::string& raw_input) {
    json report;
    report["meta"] = json{{"engine", "defcohom 1.0.0"},
                          {"schema", 1},
                          {"input_digest", input_digest(raw_input)}};
    json tasks = json::array();
    MaterializedModel mat = materialize_model(spec);
    report["meta"]["model"] = json{{"description", mat.description},
                                   {"dimA", mat.model.dim_a()},
                                   {"dimE", mat.model.dim_e()},
                                   {"dimC", mat.model.dim_c()},
                                   {"trunc", mat.model.trunc()}};
    for (const JobTask& task : spec.tasks) {
        json entry;
        try {
            entry = run_one_task(task, mat);
        } catch (const Error& e) {
            entry = json{{"op", task.op}, {"status", "ERROR"}, {"error", e.what()}};
        }
        tasks.push_back(std::move(entry));
    }
    report["tasks"] = std::move(tasks);
    return report;
}

int report_exit_code(const nlohmann::json& report) {
    for (const auto& task : report.at("tasks"))
        if (task.at("status") != "PASS") return 1;
    return 0;
}

std::string report_to_table(const nlohmann::json& report) {
    std::ostringstream os;
    os << "defcohom report (input digest " << report.at("meta").at("input_digest").get<std::string>()
       << ")\n";
    const auto& model = report.at("meta").at("model");
    os << "model: " << model.at("description").get<std::string>() << " a=" << model.at("dimA")
       << " m=" << model.at("dimE") << " c=" << model.at("dimC") << " d=" << model.at("trunc")
       << "\n";
    for (const auto& task : report.at("tasks")) {
        os << "  [" << task.at("status").get<std::string>() << "] "
           << task.at("op").get<std::string>();
        if (task.contains("error")) os << " -- " << task.at("error").get<std::string>();
        if (task.contains("data") && task.at("data").contains("betti")) {
            os << " betti=(";
            const auto& betti = task.at("data").at("betti");
            for (std::size_t i = 0; i < betti.size(); ++i) os << (i ? "," : "") << betti[i];
            os << ") in degrees [";
            const auto& degrees = task.at("data").at("degrees");
            os << degrees.front() << ".." << degrees.back() << "]";
        }
        if (task.contains("witness")) os << " witness=" << task.at("witness").dump();
        os << "\n";
    }
    return os.str();
}

nlohmann::json examples_catalog() {
    json catalog = json::array();
    auto add = [&](const std::string& name, const std::string& summary, const json& job) {
        catalog.push_back(json{{"name", name}, {"summary", summary}, {"job", job}});
    };
    add("so3", "compact 3-dimensional algebra; rigid in degrees 0 and 1",
        json{{"construct", {{"kind", "lie_algebra"}, {"name", "so3"}}},
             {"tasks", json::array({json{{"op", "mc-check"}},
                                    json{{"op", "cohomology"}, {"degrees", {-1, 2}}}})}});
    add("sl2", "Whitehead vanishing: betti 0 in degrees 0 and 1",
        json{{"construct", {{"kind", "lie_algebra"}, {"name", "sl2"}}},
             {"tasks", json::array({json{{"op", "cohomology"}, {"degrees", {-1, 2}}}})}});
    add("heisenberg3", "nilpotent example with outer derivations",
        json{{"construct", {{"kind", "lie_algebra"}, {"name", "heisenberg3"}}},
             {"tasks", json::array({json{{"op", "cohomology"}, {"degrees", {-1, 2}}}})}});
    add("abelian", "abelian algebra, zero differential",
        json{{"construct", {{"kind", "lie_algebra"}, {"name", "abelian"}, {"dim", 2}}},
             {"tasks", json::array({json{{"op", "cohomology"}, {"degrees", {-1, 2}}}})}});
    add("aff1", "the affine line algebra",
        json{{"construct", {{"kind", "lie_algebra"}, {"name", "aff1"}}},
             {"tasks", json::array({json{{"op", "cohomology"}, {"degrees", {-1, 2}}}})}});
    add("vb_algebra(sl2,standard)", "semidirect product with cone splitting and exact sequence",
        json{{"construct", {{"kind", "vb_algebra"}, {"g", "sl2"}, {"rep", "standard"}}},
             {"tasks",
              json::array({json{{"op", "cohomology"}, {"complex", "linear"}, {"degrees", {-1, 3}}},
                           json{{"op", "splitting-check"}, {"degrees", {-1, 3}}},
                           json{{"op", "les-check"}, {"degrees", {-1, 3}}}})}});
    add("la_vector_space(diag(1,0))", "core-anchor of rank 1 on c = e = 2",
        json{{"construct",
              {{"kind", "la_vector_space"},
               {"partial", json::array({json::array({"1", "0"}), json::array({"0", "0"})})},
               {"trunc", 1}}},
             {"tasks",
              json::array({json{{"op", "cohomology"}, {"complex", "linear"}, {"degrees", {-1, 1}}},
                           json{{"op", "formula-check"}}})}});
    add("tangent(so3)", "tangent prolongation as the adjoint semidirect product",
        json{{"construct", {{"kind", "tangent"}, {"g", "so3"}}},
             {"tasks",
              json::array({json{{"op", "mc-check"}},
                           json{{"op", "cohomology"}, {"complex", "linear"}, {"degrees", {-1, 2}}},
                           json{{"op", "les-check"}, {"degrees", {-1, 2}}}})}});
    add("action(sl2,standard,d=1)", "action algebroid over the plane",
        json{{"construct",
              {{"kind", "action"}, {"g", "sl2"}, {"rep", "standard"}, {"trunc", 1}}},
             {"tasks",
              json::array({json{{"op", "mc-check"}},
                           json{{"op", "cohomology"}, {"complex", "linear"}, {"degrees", {-1, 1}}}})}});
    add("type1(aff1,m=1,d=2)", "pullback algebroid; linear cohomology matches the base",
        json{{"construct", {{"kind", "type1"}, {"g", "aff1"}, {"m", 1}, {"trunc", 2}}},
             {"tasks",
              json::array({json{{"op", "mc-check"}},
                           json{{"op", "cohomology"}, {"complex", "linear"}, {"degrees", {-1, 2}}}})}});
    add("tangent_bundle(m=1,d=2)", "the tangent model; linear cohomology vanishes",
        json{{"construct", {{"kind", "tangent_bundle"}, {"m", 1}, {"trunc", 2}}},
             {"tasks",
              json::array({json{{"op", "cohomology"}, {"complex", "linear"}, {"degrees", {-1, 2}}}})}});
    add("gauge(heisenberg3)", "exact gauge flow along a nilpotent generator",
        json{{"construct", {{"kind", "lie_algebra"}, {"name", "heisenberg3"}}},
             {"tasks",
              json::array({json{
                  {"op", "gauge"},
                  {"generator",
                   {{"val", json::array({json{{"inputs", json::array({"A3"})},
                                              {"output", {{"A1", "1"}}}}})}}},
                  {"times", json::array({"1", "2"})}}})}});
    return catalog;
}

std::string input_digest(const std::string& bytes) {
    unsigned long long hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << hash;
    return os.str();
}

} // namespace defcohom
