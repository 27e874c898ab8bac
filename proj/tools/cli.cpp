#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <random>
#include <regex>
#include <sstream>

#include "saito/errors.hpp"
#include "saito/rmatrix.hpp"

namespace saito::cli {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"milnor",         "pairing",   "decompose", "trivialize", "reduce",
                                            "primitive-form", "potential", "rmatrix",   "check"};

std::string idx_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

Rational rational_field(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) throw SpecError(path, "expected a rational written as \"p/q\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SpecError(path, e.what());
    }
}

std::string string_field(const json& v, const std::string& path) {
    if (!v.is_string()) throw SpecError(path, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw SpecError(path, "expected a list of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string_field(v[i], idx_path(path, i)));
    return out;
}

int order_field(const json& v, const std::string& path, int min) {
    if (!v.is_number_integer()) throw SpecError(path, "expected an integer");
    long n = v.get<long>();
    if (n < min || n > 1000) throw SpecError(path, "out of range");
    return static_cast<int>(n);
}

ojson matrix_json(const QMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

ojson vector_json(const QVector& v) {
    ojson out = ojson::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

// Everything derived from the input document, with stable addresses for the pointers
// held by the good basis.
struct Session {
    InputSpec spec;
    Names names;  // x names and z
    JacobianData J;
    std::unique_ptr<GoodBasis> GB;
    std::vector<Rational> point;
    bool has_point = false;

    Names xs_names() const {
        Names n = names;
        n.s = J.names.s;
        return n;
    }
};

MPoly parse_field(const std::string& text, const Names& n, const std::string& path) {
    try {
        return parse_poly(text, n);
    } catch (const std::invalid_argument& e) {
        throw SpecError(path, e.what());
    }
}

std::unique_ptr<Session> open_session(const InputSpec& spec, const std::optional<std::map<std::string, Rational>>& point) {
    auto S = std::make_unique<Session>();
    S->spec = spec;
    S->names.x = spec.variables;
    MPoly f = parse_field(spec.f, S->names, "f");
    std::optional<std::vector<MPoly>> basis;
    if (spec.basis) {
        basis.emplace();
        for (std::size_t i = 0; i < spec.basis->size(); ++i)
            basis->push_back(parse_field((*spec.basis)[i], S->names, idx_path("basis", i)));
    }
    try {
        S->J = build_jacobian(f, spec.weights, spec.variables, basis);
    } catch (const std::invalid_argument& e) {
        throw SpecError(spec.basis ? "basis" : "f", e.what());
    }
    if (spec.good_basis) {
        std::vector<MPoly> om;
        for (std::size_t i = 0; i < spec.good_basis->size(); ++i)
            om.push_back(parse_field((*spec.good_basis)[i], S->names, idx_path("good_basis", i)));
        try {
            S->GB = std::make_unique<GoodBasis>(custom_good_basis(S->J, om, spec.allow_unverified_basis));
        } catch (const std::invalid_argument& e) {
            throw SpecError("good_basis", e.what());
        }
    } else {
        S->GB = std::make_unique<GoodBasis>(monomial_good_basis(S->J));
    }
    const auto& coords = point ? *point : spec.point;
    S->point.assign(S->J.mu, 0);
    S->has_point = point.has_value() || !spec.point.empty();
    for (const auto& [name, value] : coords) {
        auto it = std::find(S->J.names.s.begin(), S->J.names.s.end(), name);
        if (it == S->J.names.s.end()) throw SpecError("point." + name, "not a parameter name");
        S->point[it - S->J.names.s.begin()] = value;
    }
    return S;
}

ojson point_json(const Session& S) {
    ojson p = ojson::object();
    for (int a = 0; a < S.J.mu; ++a) p[S.J.names.s[a]] = to_string(S.point[a]);
    return p;
}

ojson basis_json(const JacobianData& J) {
    ojson b = ojson::array();
    Names n;
    n.x = J.names.x;
    for (const auto& phi : J.milnor_basis) b.push_back(to_string(phi, n));
    return b;
}

// g without s-dependence, moved to shape (N, 0).
MPoly drop_s(const MPoly& g, int N) {
    Shape sh{N, 0};
    MPoly r(sh);
    for (const auto& [e, c] : g.terms()) {
        Exponents d(sh.size(), 0);
        for (int k = 0; k < N; ++k) d[k] = e[k];
        d[sh.z_index()] = e[g.shape().z_index()];
        r.add_term(d, c);
    }
    return r;
}

std::string lattice_string(const LatticeElement& e, const JacobianData& J) {
    return e.is_zero() ? "0" : to_string(e, J);
}

MPoly require_input(const std::optional<std::string>& input, const Names& n) {
    if (!input) throw SpecError("--input", "this command needs --input POLY");
    return parse_field(*input, n, "--input");
}

void cmd_milnor(const Session& S, ojson& doc) {
    const auto& J = S.J;
    doc["mu"] = J.mu;
    doc["d"] = to_string(J.d);
    doc["basis"] = basis_json(J);
    doc["basis_weights"] = vector_json(J.basis_weights);
    doc["s_weights"] = vector_json(J.W.s);
    doc["hessian_direction"] = doc["basis"][J.top_index];
    doc["hessian_class"] = vector_json(J.hess_class);
}

void cmd_pairing(const Session& S, ojson& doc) {
    doc["basis"] = basis_json(S.J);
    doc["eta"] = matrix_json(S.J.gram);
    if (S.spec.good_basis) doc["eta_good_basis"] = matrix_json(S.GB->eta);
}

void cmd_decompose(const Session& S, const std::optional<std::string>& input, ojson& doc) {
    MPoly g = require_input(input, S.names);
    if (g.depends_on_z()) throw SpecError("--input", "decompose takes a polynomial in x");
    auto D = regseq_decompose(S.J, g);
    doc["input"] = to_string(g, S.names);
    doc["decomposition"] = to_string(D, S.J);
    doc["recomposition_ok"] = recompose(S.J, D, S.J.df) == g;
}

void cmd_trivialize(const Session& S, const std::optional<std::string>& input, ojson& doc) {
    MPoly g = require_input(input, S.names);
    if (g.depends_on_z()) throw SpecError("--input", "trivialize takes a polynomial in x");
    doc["input"] = to_string(g, S.names);
    doc["image"] = to_string(phi_top_apply(Trivialization::central(S.J), g), S.names);
}

void cmd_reduce(const Session& S, const std::optional<std::string>& input, ojson& doc) {
    Names n = S.xs_names();
    MPoly g = require_input(input, n);
    doc["input"] = to_string(g, n);
    LatticeElement e;
    if (S.has_point) {
        if (g.depends_on_s()) throw SpecError("--input", "a polynomial in s cannot be reduced at a point");
        doc["mode"] = "point";
        doc["point"] = point_json(S);
        e = lattice_reduce_at_point(S.J, S.point, drop_s(g, S.J.N));
    } else if (g.depends_on_s()) {
        doc["mode"] = "unfolding";
        doc["s_order"] = S.spec.orders.s_order;
        e = lattice_reduce_unfolding(S.J, g.widen(S.J.xs_shape()), STruncation::bound(S.spec.orders.s_order));
    } else {
        doc["mode"] = "central";
        e = lattice_reduce(S.J, drop_s(g, S.J.N));
    }
    doc["class"] = lattice_string(e, S.J);
    if (S.spec.good_basis) doc["good_basis_coordinates"] = lattice_string(phi_omega_inverse(*S.GB, e), S.J);
}

ZetaProjection projection_of(const std::string& p) {
    return p == "nonnegative" ? ZetaProjection::NonNegative : ZetaProjection::Positive;
}

void cmd_primitive_form(const Session& S, int order, const std::string& projection, ojson& doc) {
    auto zeta = primitive_form(*S.GB, order, projection_of(projection));
    doc["s_order"] = order;
    doc["projection"] = projection;
    ojson comps = ojson::array();
    for (int p = 0; p <= zeta.order(); ++p) comps.push_back({{"order", p}, {"value", lattice_string(zeta.components[p], S.J)}});
    doc["components"] = comps;
    auto Jf = j_function(*S.GB, standard_unfolding(S.J), zeta);
    bool zero = true;
    for (const auto& c : Jf.components) zero = zero && c.pi_positive().is_zero();
    doc["j_positive_part_zero"] = zero;
}

void cmd_potential(const Session& S, int order, const std::string& projection, ojson& doc) {
    auto FD = frobenius_data(*S.GB, order, projection_of(projection));
    Names sn;
    sn.s = S.J.names.s;
    doc["s_order"] = order;
    doc["d"] = to_string(FD.d);
    doc["potential_degree"] = order + 3;
    doc["potential"] = to_string_t(FD.potential);
    ojson t = ojson::array();
    for (const auto& p : FD.flat.t_of_s) t.push_back(to_string(p, sn));
    doc["flat_coordinates"] = t;
    doc["eta"] = matrix_json(FD.eta);
    doc["euler_weights"] = vector_json(FD.E_weights);
    auto w = wdvv_check(FD.potential, FD.eta, order);
    doc["wdvv"] = {{"ok", w.ok}, {"verified_degree", w.verified_degree}};
    doc["euler"] = euler_check(FD.potential, FD.E_weights, FD.d);
}

ojson check_json(const RCheck& c, bool with_residuals) {
    ojson o = {{"ok", c.ok}, {"first_failure", c.first_failure}};
    if (with_residuals) {
        ojson r = ojson::array();
        for (const auto& m : c.residuals) r.push_back(matrix_json(m));
        o["residuals"] = r;
    }
    return o;
}

ojson verification_json(const RVerification& v) {
    return {{"r0_identity", v.r0_identity},
            {"dubrovin", check_json(v.dubrovin, true)},
            {"symplectic", check_json(v.symplectic, true)},
            {"homogeneity", check_json(v.homogeneity, true)},
            {"all_passed", v.ok()}};
}

ojson series_json(const RSeries& R) {
    ojson out = ojson::array();
    for (const auto& m : R.R) out.push_back(matrix_json(m));
    return out;
}

struct RResult {
    SemisimplePoint SP;
    RSeries recursion, dense;
    RVerification recursion_check, dense_check;
    PointFrame frame;
};

RResult compute_r(const Session& S, int K, ZetaProjection projection) {
    if (!S.has_point) throw SpecError("point", "this command needs a point (spec field or --point)");
    const auto& J = S.J;
    RResult r{check_semisimple(J, S.point), {}, {}, {}, {}, {}};
    auto sc = scaled_point(J, S.point);
    auto FD = frobenius_data(*S.GB, S.spec.orders.s_order, projection);
    r.frame = point_frame(FD, S.point);
    auto scaled_frame = point_frame(FD, sc.point);
    r.recursion = r_matrix(*S.GB, r.SP, K);
    auto rec_scaled = r_matrix(*S.GB, check_semisimple(J, sc.point), K);
    r.recursion_check = verify_r(r.recursion, rec_scaled, r.frame, S.GB->weights, sc.log2_lambda);
    r.dense = r_matrix_dense(r.frame.B0, r.frame.Binf, K);
    auto dense_scaled = r_matrix_dense(scaled_frame.B0, scaled_frame.Binf, K);
    r.dense_check = verify_r(r.dense, dense_scaled, r.frame, S.GB->weights, sc.log2_lambda);
    return r;
}

void cmd_rmatrix(const Session& S, int K, ZetaProjection projection, ojson& doc) {
    auto r = compute_r(S, K, projection);
    doc["point"] = point_json(S);
    doc["r_order"] = K;
    doc["characteristic_polynomial"] = vector_json(r.SP.charpoly);
    doc["frame_exact"] = r.frame.exact;
    doc["B0"] = matrix_json(r.frame.B0);
    doc["Binf"] = matrix_json(r.frame.Binf);
    doc["recursion"] = {{"R", series_json(r.recursion)}, {"verification", verification_json(r.recursion_check)}};
    doc["dense_oracle"] = {{"R", series_json(r.dense)}, {"verification", verification_json(r.dense_check)}};
    doc["recursion_matches_oracle"] = r.recursion.R == r.dense.R;
}

MPoly random_poly(const JacobianData& J, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 5), count(1, 4);
    Shape sh = J.x_shape();
    MPoly g(sh);
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Exponents e(sh.size(), 0);
        int left = deg(rng);
        for (int k = 0; k < J.N && left > 0; ++k) {
            int take = k + 1 == J.N ? left : std::uniform_int_distribution<int>(0, left)(rng);
            e[k] = take;
            left -= take;
        }
        g.add_term(e, coeff(rng));
    }
    return g;
}

void cmd_check(const Session& S, int order, ZetaProjection projection, ojson& doc) {
    const auto& J = S.J;
    ojson results = ojson::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
        ojson r = {{"name", name}, {"passed", ok}};
        if (!detail.empty()) r["detail"] = detail;
        results.push_back(r);
        all = all && ok;
    };

    QVector unit_class = class_of(J, MPoly::constant(J.x_shape(), 1));
    record("pairing symmetric", J.gram == J.gram.transpose());
    record("pairing normalized", residue_pairing(J, unit_class, J.hess_class) == J.mu);

    std::mt19937 rng(20240601u);
    bool triv = true;
    for (int i = 0; i < 20; ++i) {
        MPoly g = random_poly(J, rng);
        for (int k = 0; k < J.N; ++k) triv = triv && trivialization_identity_check(Trivialization::central(J), g, k);
    }
    record("trivialization identity (20 random inputs)", triv);

    auto F = standard_unfolding(J);
    auto zeta = primitive_form(*S.GB, F, order, ZetaProjection::NonNegative);
    auto oracle = oracle_primitive_form(*S.GB, F, order, S.spec.orders.z_order);
    record("primitive form recursion equals fixed-point oracle", zeta.components == oracle.components);
    auto Jf = j_function(*S.GB, F, primitive_form(*S.GB, F, order));
    bool pos = true;
    for (const auto& c : Jf.components) pos = pos && c.pi_positive().is_zero();
    record("positive part of J vanishes", pos);

    std::optional<FrobeniusData> FDo;
    try {
        FDo = frobenius_data(*S.GB, order, projection);
    } catch (const std::logic_error& e) {
        record("Frobenius structure", false, e.what());
    }
    if (FDo) {
    const auto& FD = *FDo;
    bool eta_ok = true;
    for (int i = 0; i < J.mu; ++i)
        for (int j = 0; j < J.mu; ++j)
            eta_ok = eta_ok && third_derivative(FD.potential, 0, i, j) == MPoly::constant(Shape{0, J.mu}, FD.eta(i, j));
    record("metric from third derivatives of the potential", eta_ok);
    auto w = wdvv_check(FD.potential, FD.eta, order);
    record("WDVV", w.ok, "through t-degree " + std::to_string(w.verified_degree));
    record("Euler homogeneity", euler_check(FD.potential, FD.E_weights, FD.d));
    }

    if (S.has_point) {
        int K = S.spec.orders.r_order;
        auto SP = check_semisimple(J, S.point);
        bool a_ok = true;
        for (const auto& r : a_series_residual(SP, a_series(SP, K))) a_ok = a_ok && r == QVector(J.mu, 0);
        record("F times A-series is 1", a_ok);
        auto r = compute_r(S, K, projection);
        record("dense R: symplectic", r.dense_check.symplectic.ok);
        record("dense R: Dubrovin equation", r.dense_check.dubrovin.ok);
        record("dense R: homogeneity", r.dense_check.homogeneity.ok);
        record("recursion R: R_0 = Id", r.recursion_check.r0_identity);
        record("recursion R: symplectic", r.recursion_check.symplectic.ok);
        record("recursion R: Dubrovin equation", r.recursion_check.dubrovin.ok,
               r.recursion_check.dubrovin.ok ? "" : "first failure at m = " +
                                                         std::to_string(r.recursion_check.dubrovin.first_failure));
        record("recursion R: homogeneity", r.recursion_check.homogeneity.ok);
        record("recursion R equals dense oracle", r.recursion.R == r.dense.R);
    }
    doc["s_order"] = order;
    doc["results"] = results;
    doc["all_passed"] = all;
}

// --- human rendering -------------------------------------------------------

bool is_scalar(const ojson& v) { return !v.is_array() && !v.is_object(); }

std::string scalar_text(const ojson& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_scalar_list(const ojson& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const ojson& x) { return is_scalar(x); });
}

bool single_line(const ojson& v) { return is_scalar(v) || (is_scalar_list(v) && !v.empty()); }

bool is_matrix(const ojson& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const auto& row : v) {
        if (!row.is_array() || row.size() != v[0].size()) return false;
        for (const auto& x : row)
            if (!x.is_string()) return false;
    }
    return true;
}

void render(const ojson& v, int indent, std::ostream& out);

void render_matrix(const ojson& m, int indent, std::ostream& out) {
    std::size_t width = 0;
    for (const auto& row : m)
        for (const auto& x : row) width = std::max(width, x.get<std::string>().size());
    for (const auto& row : m) {
        out << std::string(indent, ' ') << "[";
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "  " : " ") << std::setw(static_cast<int>(width)) << row[j].get<std::string>();
        out << " ]\n";
    }
}

void render_entry(const std::string& label, const ojson& v, int indent, std::ostream& out) {
    std::string pad(indent, ' ');
    if (is_scalar(v)) {
        out << pad << label << ": " << scalar_text(v) << "\n";
    } else if (is_matrix(v)) {
        out << pad << label << ":\n";
        render_matrix(v, indent + 2, out);
    } else if (single_line(v)) {
        out << pad << label << ": ";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
        out << "\n";
    } else {
        out << pad << label << ":\n";
        render(v, indent + 2, out);
    }
}

void render(const ojson& v, int indent, std::ostream& out) {
    if (v.is_object()) {
        std::size_t width = 0;
        for (auto it = v.begin(); it != v.end(); ++it)
            if (single_line(it.value())) width = std::max(width, it.key().size());
        for (auto it = v.begin(); it != v.end(); ++it) {
            std::string label = it.key();
            if (single_line(it.value())) label += std::string(width - label.size(), ' ');
            render_entry(label, it.value(), indent, out);
        }
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) render_entry("[" + std::to_string(i) + "]", v[i], indent, out);
    } else {
        out << std::string(indent, ' ') << scalar_text(v) << "\n";
    }
}

}  // namespace

InputSpec parse_spec(const json& doc) {
    if (!doc.is_object()) throw SpecError("spec", "expected an object at the top level");
    static const std::vector<std::string> known = {"variables", "weights",    "f",     "basis",
                                                   "good_basis", "orders",    "point", "allow_unverified_basis"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) throw SpecError(it.key(), "unknown field");
    for (const char* req : {"variables", "weights", "f"})
        if (!doc.contains(req)) throw SpecError(req, "missing required field");

    InputSpec s;
    s.variables = string_list(doc["variables"], "variables");
    if (s.variables.empty()) throw SpecError("variables", "at least one variable is required");
    static const std::regex ident("[A-Za-z_][A-Za-z_0-9]*");
    for (std::size_t i = 0; i < s.variables.size(); ++i) {
        if (!std::regex_match(s.variables[i], ident)) throw SpecError(idx_path("variables", i), "not an identifier");
        if (s.variables[i] == "z") throw SpecError(idx_path("variables", i), "z is reserved");
        for (std::size_t j = 0; j < i; ++j)
            if (s.variables[j] == s.variables[i]) throw SpecError(idx_path("variables", i), "duplicate name");
    }
    const json& w = doc["weights"];
    if (!w.is_array()) throw SpecError("weights", "expected a list of rationals");
    if (w.size() != s.variables.size()) throw SpecError("weights", "length differs from variables");
    for (std::size_t i = 0; i < w.size(); ++i) s.weights.push_back(rational_field(w[i], idx_path("weights", i)));
    s.f = string_field(doc["f"], "f");
    if (doc.contains("basis")) s.basis = string_list(doc["basis"], "basis");
    if (doc.contains("good_basis")) s.good_basis = string_list(doc["good_basis"], "good_basis");
    if (doc.contains("orders")) {
        const json& o = doc["orders"];
        if (!o.is_object()) throw SpecError("orders", "expected an object");
        for (auto it = o.begin(); it != o.end(); ++it) {
            std::string path = "orders." + it.key();
            if (it.key() == "s_order")
                s.orders.s_order = order_field(it.value(), path, 0);
            else if (it.key() == "z_order")
                s.orders.z_order = order_field(it.value(), path, 0);
            else if (it.key() == "r_order")
                s.orders.r_order = order_field(it.value(), path, 1);
            else
                throw SpecError(path, "unknown field");
        }
    }
    if (doc.contains("point")) {
        const json& p = doc["point"];
        if (!p.is_object()) throw SpecError("point", "expected an object mapping parameter names to rationals");
        for (auto it = p.begin(); it != p.end(); ++it) s.point[it.key()] = rational_field(it.value(), "point." + it.key());
    }
    if (doc.contains("allow_unverified_basis")) {
        if (!doc["allow_unverified_basis"].is_boolean()) throw SpecError("allow_unverified_basis", "expected a boolean");
        s.allow_unverified_basis = doc["allow_unverified_basis"].get<bool>();
    }
    return s;
}

InputSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("--spec", "cannot read " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError("spec", e.what());
    }
    return parse_spec(doc);
}

std::map<std::string, Rational> parse_point(const std::string& text) {
    std::map<std::string, Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw SpecError("--point", "expected name=value, got \"" + item + "\"");
        std::string name = item.substr(0, eq);
        try {
            out[name] = parse_rational(item.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw SpecError("--point." + name, e.what());
        }
    }
    return out;
}

std::string render_human(const ojson& doc) {
    std::ostringstream out;
    render(doc, 0, out);
    return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations for quasihomogeneous isolated singularities"};
    std::string command, spec_path, mode = "human", projection = "nonnegative";
    std::optional<int> order;
    std::optional<std::string> input, point_text;
    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(kCommands));
    app.add_option("--spec", spec_path, "Input specification (JSON)")->required();
    app.add_option("--mode", mode, "Output mode")->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--order", order, "Overrides the order used by the command")->check(CLI::NonNegativeNumber);
    app.add_option("--input", input, "Polynomial for decompose, trivialize and reduce");
    app.add_option("--point", point_text, "Point as s1=p/q,s2=...");
    app.add_option("--projection", projection, "Projection fixing the primitive form")
        ->check(CLI::IsMember({"positive", "nonnegative"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        InputSpec spec = load_spec(spec_path);
        std::optional<std::map<std::string, Rational>> point;
        if (point_text) point = parse_point(*point_text);
        if (order && command == "rmatrix") {
            if (*order < 1) throw SpecError("--order", "the R-matrix order must be at least 1");
            spec.orders.r_order = *order;
        } else if (order) {
            spec.orders.s_order = *order;
        }
        auto S = open_session(spec, point);

        ojson doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = command;
        doc["variables"] = spec.variables;
        doc["weights"] = vector_json(spec.weights);
        doc["f"] = to_string(S->J.f, S->names);
        const int s_order = S->spec.orders.s_order;
        if (command == "milnor")
            cmd_milnor(*S, doc);
        else if (command == "pairing")
            cmd_pairing(*S, doc);
        else if (command == "decompose")
            cmd_decompose(*S, input, doc);
        else if (command == "trivialize")
            cmd_trivialize(*S, input, doc);
        else if (command == "reduce")
            cmd_reduce(*S, input, doc);
        else if (command == "primitive-form")
            cmd_primitive_form(*S, s_order, projection, doc);
        else if (command == "potential")
            cmd_potential(*S, s_order, projection, doc);
        else if (command == "rmatrix")
            cmd_rmatrix(*S, S->spec.orders.r_order, projection_of(projection), doc);
        else
            cmd_check(*S, s_order, projection_of(projection), doc);

        if (mode == "machine")
            out << doc.dump(2) << "\n";
        else
            out << render_human(doc);
        return 0;
    } catch (const SpecError& e) {
        err << "spec error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const TruncationExhausted& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace saito::cli
