#include "tglab/cli.hpp"

#include "tglab/error.hpp"
#include "tglab/intlinalg.hpp"
#include "tglab/lgfamily.hpp"
#include "tglab/qdmcheck.hpp"
#include "tglab/semigroup.hpp"
#include "tglab/weylops.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace tglab::cli {

namespace {

Json int_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return to_string(x);
}

Json vec_json(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

Json rvec_json(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json matrix_json(const IntegerMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i)));
    return a;
}

Json lvec_json(const std::vector<long>& v) {
    Json a = Json::array();
    for (long x : v) a.push_back(x);
    return a;
}

Json operator_json(const WeylOperator& op) {
    Json terms = Json::array();
    for (const auto& t : op.terms()) {
        Json e;
        e["coeff"] = to_string(t.coeff);
        e["z"] = t.mono.z;
        e["thetaz"] = t.mono.theta;
        e["lambda"] = lvec_json(t.mono.lambda);
        e["partial"] = lvec_json(t.mono.partial);
        terms.push_back(e);
    }
    Json o;
    o["text"] = op.str();
    o["terms"] = terms;
    return o;
}

Json cone_json(const Cone& c) {
    Json o;
    Json rays = Json::array();
    for (const auto& r : c.rays) rays.push_back(vec_json(primitive(r)));
    o["rays"] = rays;
    Json lin = Json::array();
    for (const auto& r : c.lineality) lin.push_back(vec_json(primitive(r)));
    o["lineality"] = lin;
    return o;
}

[[noreturn]] void invalid(const std::string& what) { throw Error("InvalidSpec", what); }

Int json_int(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    invalid(where + ": expected an integer");
}

Rat json_rat(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    invalid(where + ": expected a rational \"num/den\" or an integer");
}

IntegerMatrix json_matrix(const nlohmann::json& j, const std::string& where, std::size_t cols) {
    if (!j.is_array()) invalid(where + ": expected an array of rows");
    IntegerMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols)
            invalid(where + "[" + std::to_string(i) + "]: expected " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = json_int(row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return m;
}

long json_long(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer()) invalid(where + ": expected an integer");
    return j.get<long>();
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Accumulates report sections and checks.
class Builder {
public:
    Builder(const std::string& command, const ProblemSpec& spec, long seed) {
        body_["schema"] = 1;
        body_["command"] = command;
        body_["spec"] = spec.name;
        body_["seed"] = seed;
        body_["sections"] = Json::object();
        body_["checks"] = Json::array();
    }

    Json& section(const std::string& name, const std::string& anchor) {
        Json& s = body_["sections"][name];
        if (s.is_null()) s["anchor"] = anchor;
        return s;
    }

    void check(const std::string& name, const std::string& anchor, bool passed, Json witness = nullptr) {
        Json c;
        c["name"] = name;
        c["anchor"] = anchor;
        c["passed"] = passed;
        if (!witness.is_null()) c["witness"] = witness;
        body_["checks"].push_back(c);
        passed_ = passed_ && passed;
    }

    // Runs fn; a module error becomes a failed check carrying the error.
    void guarded(const std::string& name, const std::string& anchor, const std::function<bool(Json&)>& fn) {
        Json witness;
        bool ok = false;
        try {
            ok = fn(witness);
        } catch (const Error& e) {
            witness = Json::object();
            witness["error"] = e.code();
            witness["message"] = e.what();
            ok = false;
        }
        check(name, anchor, ok, witness);
    }

    Report finish() {
        body_["status"] = passed_ ? "pass" : "fail";
        return Report{body_, passed_};
    }

private:
    Json body_;
    bool passed_ = true;
};

IntegerMatrix aprime_of(const ProblemSpec& s) { return total_matrix(s.fan.ray_matrix(), s.bundles); }

QuantumSystem quantum_system(const ProblemSpec& s) {
    return s.basis_p ? qdm_generators(s.fan, s.bundles, *s.basis_p) : qdm_generators(s.fan, s.bundles);
}

// Deterministic draws independent of the standard library's distributions.
class Draw {
public:
    explicit Draw(long seed) : rng_(static_cast<std::uint64_t>(seed)) {}
    long uniform(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Rat nonzero_rational() {
        for (;;) {
            Rat x(uniform(-9, 9), uniform(1, 7));
            x.canonicalize();
            if (x != 0) return x;
        }
    }

private:
    std::mt19937_64 rng_;
};

void cmd_validate(Builder& b, const ProblemSpec& s) {
    FanDiagnostics d = validate_fan(s.fan);
    Json& fan = b.section("fan", "fan-diagnostics");
    fan["rays"] = matrix_json(s.fan.ray_matrix().transpose());
    fan["max_cones"] = s.fan.max_cones;
    fan["smooth"] = d.smooth;
    fan["complete"] = d.complete;
    fan["simplicial"] = d.simplicial;
    b.check("fan_smooth", "fan-diagnostics", d.smooth);
    b.check("fan_complete", "fan-diagnostics", d.complete);
    if (!d.smooth || !d.complete) return;

    IntegerMatrix ker = kernel_lattice(s.fan.ray_matrix()).basis;
    Json& nef = b.section("nef_cone", "nef-cone-anticones");
    Cone anti = nef_cone_anticones(s.fan, ker);
    nef["kernel_basis"] = matrix_json(ker);
    nef["anticones"] = cone_json(anti);
    b.check("nef_cone_anticones_equals_pl", "nef-cone-anticones", anti.equals(nef_cone_pl(s.fan, ker)));

    Json& bundles = b.section("bundles", "nef-line-bundles");
    Json rows = Json::array();
    bool all_nef = true;
    for (std::size_t j = 0; j < s.bundles.rows(); ++j) {
        bool ok = divisor_is_nef(s.fan, s.bundles.row(j));
        all_nef = all_nef && ok;
        Json r;
        r["divisor"] = vec_json(s.bundles.row(j));
        r["nef"] = ok;
        rows.push_back(r);
        b.check("bundle_" + std::to_string(j) + "_nef", "nef-line-bundles", ok,
                ok ? Json(nullptr) : Json(vec_json(s.bundles.row(j))));
    }
    bundles["rows"] = rows;

    Json& tot = b.section("total_space", "total-space-fan");
    try {
        Fan f2 = total_space_fan(s.fan, s.bundles);
        tot["constructed"] = true;
        tot["rays"] = matrix_json(f2.ray_matrix().transpose());
        tot["max_cones"] = f2.max_cones;
    } catch (const Error& e) {
        tot["constructed"] = false;
        tot["error"] = e.code();
    }
    WSetReport w = w_set_report(s.fan, s.bundles, true);
    Json& ws = b.section("w_set", "w-set-convexity");
    ws["w_set_convexity"] = w.convex;
    ws["hull_volume"] = int_json(w.hull_volume);
    ws["pieces"] = w.pieces;
    b.check("w_set_convexity", "w-set-convexity", w.convex);
    if (all_nef && s.bundles.rows() > 0)
        b.guarded("nef_cone_pullback", "nef-cone-pullback",
                  [&](Json&) { return nef_cone_pullback_check(s.fan, s.bundles); });
}

void cmd_construct(Builder& b, const ProblemSpec& s) {
    IntegerMatrix a = s.fan.ray_matrix(), ap = aprime_of(s), app = homogenize(ap);
    Json& m = b.section("matrices", "total-matrices");
    m["A"] = matrix_json(a);
    m["D"] = matrix_json(s.bundles);
    m["Aprime"] = matrix_json(ap);
    m["Adoubleprime"] = matrix_json(app);
    IntegerMatrix ker = kernel_lattice(a).basis;
    m["kernel_basis"] = matrix_json(ker);
    b.guarded("section_identities", "section-system", [&](Json&) {
        SectionSystem ss = section_system(ap);
        Json& sec = b.section("section_system", "section-system");
        sec["C"] = matrix_json(ss.C);
        sec["L"] = matrix_json(ss.L);
        sec["M"] = matrix_json(ss.M);
        sec["D"] = matrix_json(ss.Dmat);
        return section_identities_hold(ap, ss);
    });
    b.guarded("total_space_fan", "total-space-fan", [&](Json&) {
        Fan f2 = total_space_fan(s.fan, s.bundles);
        Json& t = b.section("total_space", "total-space-fan");
        t["max_cones"] = f2.max_cones;
        return validate_fan(f2).smooth;
    });
    Json& vol = b.section("volumes", "newton-polytope");
    vol["newton_Aprime"] = int_json(normalized_volume(Polytope::newton(ap)));
    vol["fan_polytope"] = int_json(normalized_volume(Polytope::newton(a)));
    if (s.bundles.rows() > 0) {
        b.guarded("nef_cone_pullback", "nef-cone-pullback",
                  [&](Json&) { return nef_cone_pullback_check(s.fan, s.bundles); });
        b.guarded("anticanonical_consistency", "anticanonical-nef", [&](Json& w) {
            AnticanonicalConsistency ac = anticanonical_consistency(s.fan, s.bundles);
            w = Json::object();
            w["total_space_nef"] = ac.total_space_nef;
            w["base_condition"] = ac.base_condition;
            return ac.consistent();
        });
    }
}

void cmd_semigroup(Builder& b, const ProblemSpec& s, long degree) {
    IntegerMatrix ap = aprime_of(s), app = homogenize(ap);
    std::size_t c = s.bundles.rows();
    IVec grading(app.rows(), Int(0));
    grading[0] = 1;
    SaturationResult sat = saturation_check({app, grading, {}}, degree);
    Json& sg = b.section("saturation", "semigroup-saturation");
    sg["degree"] = degree;
    sg["saturated_up_to_D"] = sat.saturated_up_to_D;
    sg["points_checked"] = sat.points_checked;
    if (sat.witness) sg["witness"] = vec_json(*sat.witness);
    b.check("saturated_up_to_D", "semigroup-saturation", sat.saturated_up_to_D,
            sat.witness ? vec_json(*sat.witness) : Json(nullptr));
    b.guarded("gorenstein_shift", "gorenstein-shift", [&](Json& w) {
        ShiftResult r = gorenstein_shift_check(app, c, degree);
        Json& g = b.section("gorenstein_shift", "gorenstein-shift");
        g["shift"] = vec_json(r.shift);
        g["shift_degree"] = r.shift_degree;
        g["interior_points"] = r.interior_points;
        g["shifted_points"] = r.shifted_points;
        if (!r.holds) {
            w = Json::object();
            w["interior_points"] = r.interior_points;
            w["shifted_points"] = r.shifted_points;
        }
        return r.holds;
    });
    b.guarded("interior_Aprime", "interior-of-aprime", [&](Json&) {
        Fan f2 = total_space_fan(s.fan, s.bundles);
        ShiftResult r = interior_Aprime_check(ap, c, f2.max_cones, std::min<long>(degree, 5));
        Json& g = b.section("interior_Aprime", "interior-of-aprime");
        g["shift"] = vec_json(r.shift);
        g["interior_points"] = r.interior_points;
        return r.holds;
    });
    Json& v = b.section("volume", "newton-polytope");
    v["normalized_volume"] = int_json(normalized_volume(Polytope::newton(ap)));
}

Json family_json(const OperatorFamily& f) {
    Json o;
    o["nvars"] = f.nvars;
    Json rel = Json::array();
    for (const auto& l : f.relations) rel.push_back(vec_json(l));
    o["relations"] = rel;
    Json boxes = Json::array(), eulers = Json::array();
    for (const auto& x : f.boxes) boxes.push_back(operator_json(x));
    for (const auto& x : f.eulers) eulers.push_back(operator_json(x));
    o["boxes"] = boxes;
    o["eulers"] = eulers;
    o["integral_parameters"] = f.integral_parameters;
    return o;
}

void theta_checks(Builder& b, const QuantumSystem& sys) {
    std::vector<Rat> zero(sys.Aprime.rows() + 1, Rat(0));
    OperatorFamily star = star_n_generators(sys.Aprime, sys.m, zero, sys.L);
    bool boxes = true, eulers = theta_restricted(star.eulers[0], sys) == sys.E_hat;
    for (std::size_t k = 0; k < star.boxes.size(); ++k) boxes = boxes && theta_restricted(star.boxes[k], sys) == sys.Q[k];
    for (std::size_t k = 1; k < star.eulers.size(); ++k) eulers = eulers && theta_restricted(star.eulers[k], sys).is_zero();
    b.check("theta_boxes_to_Q", "theta-transform", boxes);
    b.check("theta_eulers_to_E_hat_and_zero", "theta-transform", eulers);
}

void cmd_gkz(Builder& b, const ProblemSpec& s, const Flags& fl, long seed) {
    IntegerMatrix ap = aprime_of(s);
    std::size_t rows = ap.rows();
    const std::string& v = fl.variant;
    auto beta_of = [&](std::size_t n) {
        std::vector<Rat> beta = fl.beta ? *fl.beta : std::vector<Rat>(n, Rat(0));
        if (beta.size() != n)
            throw Error("DimensionMismatch", "--beta needs " + std::to_string(n) + " entries for variant " + v);
        return beta;
    };
    Json& g = b.section("gkz", "gkz-system");
    g["variant"] = v;
    if (v == "plain") {
        auto beta = beta_of(rows);
        g["beta"] = rvec_json(beta);
        g["family"] = family_json(gkz_generators(ap, beta));
        IntegerMatrix bt = homogenize(ap);
        IntegerMatrix ker = kernel_lattice(bt).basis;
        Draw draw(seed);
        bool all = true;
        Json pairs = Json::array();
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Int> k(bt.cols(), Int(0)), c1(bt.cols()), c2(bt.cols());
            for (std::size_t j = 0; j < ker.cols(); ++j) {
                long x = draw.uniform(-2, 2);
                for (std::size_t i = 0; i < bt.cols(); ++i) k[i] += x * ker(i, j);
            }
            Int lo = 0;
            for (std::size_t i = 0; i < bt.cols(); ++i) {
                c1[i] = draw.uniform(0, 3);
                c2[i] = c1[i] - k[i];
                lo = std::min(lo, c2[i]);
            }
            for (std::size_t i = 0; i < bt.cols(); ++i) {
                c1[i] -= lo;
                c2[i] -= lo;
            }
            ShiftCertificate cert = shift_morphism_factorization(bt, c1, c2);
            Json p;
            p["c1"] = vec_json(c1);
            p["c2"] = vec_json(c2);
            p["verified"] = cert.verified;
            pairs.push_back(p);
            all = all && cert.verified;
        }
        Json& sh = b.section("shift_morphisms", "shift-morphism");
        sh["pairs"] = pairs;
        b.check("shift_morphism_factorization", "shift-morphism", all);
    } else if (v == "homog" || v == "hat") {
        auto beta = beta_of(rows + 1);
        g["beta"] = rvec_json(beta);
        std::vector<Rat> hb = beta;
        OperatorFamily h, hat;
        if (v == "homog") {
            h = homogenized_generators(ap, beta);
            hb[0] += 1;
            hat = fl_hat_generators(ap, hb);
            g["family"] = family_json(h);
        } else {
            hat = fl_hat_generators(ap, beta);
            hb[0] -= 1;
            h = homogenized_generators(ap, hb);
            g["family"] = family_json(hat);
        }
        bool ok = h.boxes.size() == hat.boxes.size() && h.eulers.size() == hat.eulers.size();
        Json shifts = Json::array();
        for (std::size_t k = 0; ok && k < h.boxes.size(); ++k) {
            FLImage img = fl_substitution(h.boxes[k]);
            shifts.push_back(img.z_shift);
            ok = img.normalized == hat.boxes[k];
        }
        for (std::size_t k = 0; ok && k < h.eulers.size(); ++k) ok = fl_substitution(h.eulers[k]).normalized == hat.eulers[k];
        Json& f = b.section("fourier_laplace", "fourier-laplace");
        f["z_shifts"] = shifts;
        b.check("fl_substitution_matches_hat", "fourier-laplace", ok);
    } else if (v == "star") {
        auto beta = beta_of(rows + 1);
        g["beta"] = rvec_json(beta);
        QuantumSystem sys = quantum_system(s);
        g["family"] = family_json(star_n_generators(ap, s.fan.rays.size(), beta, sys.L));
        bool tilde_ok = duality_morphism(DualityKind::Tilde, sys.m, sys.c) ==
                        psi_operator(sys.m, sys.c) * duality_morphism(DualityKind::Hat, sys.m, sys.c);
        Json& d = b.section("duality", "duality-morphisms");
        d["tilde"] = operator_json(duality_morphism(DualityKind::Tilde, sys.m, sys.c));
        b.check("tilde_equals_hat_after_psi", "duality-morphisms", tilde_ok);
        bool zero_beta = true;
        for (const auto& x : beta) zero_beta = zero_beta && x == 0;
        if (zero_beta) theta_checks(b, sys);
    } else if (v == "qdm") {
        QuantumSystem sys = quantum_system(s);
        Json q;
        q["basis_p"] = matrix_json(sys.P);
        q["L"] = matrix_json(sys.L);
        q["M"] = matrix_json(sys.M);
        q["C"] = matrix_json(sys.C);
        Json rel = Json::array(), qs = Json::array();
        for (const auto& l : sys.relations) rel.push_back(vec_json(l));
        for (const auto& x : sys.Q) qs.push_back(operator_json(x));
        q["relations"] = rel;
        q["Q"] = qs;
        q["E_hat"] = operator_json(sys.E_hat);
        q["c_top"] = operator_json(sys.c_top());
        g["quantum"] = q;
        theta_checks(b, sys);
    } else {
        throw Error("UsageError", "unknown variant " + v + " (plain, homog, hat, star, qdm)");
    }
}

Json witness_json(const TorusWitness& w) {
    Json o;
    std::vector<Int> cols;
    for (auto c : w.columns) cols.push_back(Int(static_cast<long>(c)));
    o["columns"] = vec_json(cols);
    o["prime"] = w.prime;
    o["point"] = lvec_json(w.point);
    if (w.lambda0) o["lambda0"] = *w.lambda0;
    return o;
}

void cmd_lg(Builder& b, const ProblemSpec& s, const Flags& fl, long seed) {
    IntegerMatrix ap = aprime_of(s);
    LaurentFamily fam = build_family(ap);
    Json& f = b.section("family", "laurent-family");
    f["f"] = fam.str();
    try {
        QuantumSystem sys = quantum_system(s);
        KMRestriction km = km_restriction(sys.M, sys.m);
        Json& k = b.section("kahler_restriction", "kahler-restriction");
        k["M"] = matrix_json(sys.M);
        k["f_q"] = restrict_to_km(fam, km).str();
        b.check("km_matches_theta", "kahler-restriction", km_matches_theta(sys));
    } catch (const Error& e) {
        Json& k = b.section("kahler_restriction", "kahler-restriction");
        k["error"] = e.code();
    }

    JacobianOptions opt;
    opt.window = fl.window.value_or(s.options.stabilization_window);
    opt.cutoff = fl.cutoff.value_or(s.options.cutoff);
    std::vector<std::vector<Rat>> params;
    bool random = !(fl.lambda || s.lambda);
    if (!random) {
        params.push_back(fl.lambda ? *fl.lambda : *s.lambda);
    } else {
        Draw draw(seed);
        for (int k = 0; k < 5; ++k) {
            std::vector<Rat> lam;
            for (std::size_t i = 0; i < ap.cols(); ++i) lam.push_back(draw.nonzero_rational());
            params.push_back(lam);
        }
    }
    Json rows = Json::array();
    std::size_t good = 0;
    bool volume_ok = true;
    for (const auto& lam : params) {
        Classification c = classify_parameter(ap, lam, opt);
        Json r;
        r["lambda"] = rvec_json(lam);
        r["verdict"] = verdict_name(c.verdict);
        r["stabilized"] = c.jacobian.stabilized;
        r["jacobian_dim"] = c.jacobian.dim;
        r["normalized_volume"] = int_json(c.jacobian.volume);
        r["weight_denominator"] = c.jacobian.denominator;
        Json dims = Json::array();
        for (const auto& sl : c.jacobian.slices) dims.push_back(sl.dim);
        r["slice_dims"] = dims;
        Json stair = Json::array();
        for (const auto& u : c.jacobian.staircase) stair.push_back(vec_json(u));
        r["staircase"] = stair;
        Json bad = Json::array(), nt = Json::array();
        for (const auto& w : c.bad_witnesses) bad.push_back(witness_json(w));
        for (const auto& w : c.non_tame_witnesses) nt.push_back(witness_json(w));
        r["bad_witnesses"] = bad;
        r["non_tame_witnesses"] = nt;
        r["evidence"] = c.evidence;
        rows.push_back(r);
        if (c.verdict == Verdict::Good) {
            ++good;
            volume_ok = volume_ok && Int(c.jacobian.dim) == c.jacobian.volume;
        }
    }
    Json& j = b.section("jacobian", "jacobian-quotient");
    j["parameters"] = rows;
    j["good"] = good;
    b.check("good_parameters_have_volume_dimension", "jacobian-quotient", volume_ok);
}

void cmd_ifun(Builder& b, const ProblemSpec& s, long dmax) {
    QDMContext ctx = s.basis_p ? make_qdm_context(s.fan, s.bundles, *s.basis_p) : make_qdm_context(s.fan, s.bundles);
    IFunctionTable t = i_function(ctx, dmax);
    Json& ifn = b.section("i_function", "i-function");
    ifn["d_max"] = dmax;
    Json coeffs = Json::array();
    for (const auto& [d, a] : t.A) {
        Json c;
        c["degree"] = lvec_json(d);
        c["A_d"] = a.str(ctx.ring);
        coeffs.push_back(c);
    }
    ifn["coefficients"] = coeffs;
    Json rows = Json::array();
    bool all = true;
    for (const auto& l : ctx.sys.relations) {
        for (const auto& r : annihilation_check(ctx, l, t, dmax)) {
            Json o;
            o["degree"] = lvec_json(r.degree);
            o["relation"] = vec_json(r.relation);
            o["B_d_is_zero"] = r.b_is_zero;
            o["c_top_landing"] = r.c_top_landing;
            rows.push_back(o);
            all = all && r.b_is_zero;
        }
    }
    Json& an = b.section("annihilation", "i-function-annihilation");
    an["rows"] = rows;
    b.check("annihilation", "i-function-annihilation", all);
    Json& h = b.section("homogeneity", "i-function-homogeneity");
    Json degs = Json::array();
    for (const auto& [d, a] : t.A) {
        Json o;
        o["degree"] = lvec_json(d);
        o["expected"] = expected_degree(ctx, d);
        auto got = a.degree(ctx.ring);
        o["actual"] = got ? Json(*got) : Json(nullptr);
        degs.push_back(o);
    }
    h["degrees"] = degs;
    b.check("homogeneity", "i-function-homogeneity", homogeneity_check(ctx, t, dmax));
}

}  // namespace

ProblemSpec parse_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string msg = e.what();
        auto pos = msg.find(": ", msg.find("parse error"));
        throw Error("ParseError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                      (pos == std::string::npos ? msg : msg.substr(pos + 2)));
    }
    if (!j.is_object()) invalid("top level must be an object");
    ProblemSpec s;
    if (j.contains("name")) {
        if (!j["name"].is_string()) invalid("name: expected a string");
        s.name = j["name"].get<std::string>();
    }
    if (!j.contains("fan") || !j["fan"].is_object()) invalid("fan: missing");
    const auto& fan = j["fan"];
    if (!fan.contains("rays") || !fan["rays"].is_array() || fan["rays"].empty()) invalid("fan.rays: missing");
    std::size_t dim = fan["rays"][0].is_array() ? fan["rays"][0].size() : 0;
    if (dim == 0) invalid("fan.rays: rays must be nonempty arrays");
    IntegerMatrix rays = json_matrix(fan["rays"], "fan.rays", dim);
    s.fan.dim = dim;
    for (std::size_t i = 0; i < rays.rows(); ++i) s.fan.rays.push_back(rays.row(i));
    if (!fan.contains("max_cones") || !fan["max_cones"].is_array()) invalid("fan.max_cones: missing");
    for (std::size_t k = 0; k < fan["max_cones"].size(); ++k) {
        const auto& c = fan["max_cones"][k];
        std::string where = "fan.max_cones[" + std::to_string(k) + "]";
        if (!c.is_array()) invalid(where + ": expected an array");
        std::vector<std::size_t> cone;
        for (const auto& x : c) {
            long v = json_long(x, where);
            if (v < 0 || static_cast<std::size_t>(v) >= s.fan.rays.size()) invalid(where + ": ray index out of range");
            cone.push_back(static_cast<std::size_t>(v));
        }
        s.fan.max_cones.push_back(cone);
    }
    std::size_t m = s.fan.rays.size();
    s.bundles = j.contains("bundles") ? json_matrix(j["bundles"], "bundles", m) : IntegerMatrix(0, m);
    if (j.contains("basis_p")) s.basis_p = json_matrix(j["basis_p"], "basis_p", m);
    if (j.contains("lambda")) {
        if (!j["lambda"].is_array()) invalid("lambda: expected an array");
        std::vector<Rat> lam;
        for (std::size_t i = 0; i < j["lambda"].size(); ++i)
            lam.push_back(json_rat(j["lambda"][i], "lambda[" + std::to_string(i) + "]"));
        s.lambda = lam;
    }
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) invalid("options: expected an object");
        for (auto it = o.begin(); it != o.end(); ++it) {
            long v = json_long(it.value(), "options." + it.key());
            if (it.key() == "degree_bound")
                s.options.degree_bound = v;
            else if (it.key() == "d_max")
                s.options.d_max = v;
            else if (it.key() == "seed")
                s.options.seed = v;
            else if (it.key() == "stabilization_window")
                s.options.stabilization_window = v;
            else if (it.key() == "cutoff")
                s.options.cutoff = v;
            else
                invalid("options." + it.key() + ": unknown option");
        }
    }
    return s;
}

Json spec_to_json(const ProblemSpec& s) {
    Json j;
    j["name"] = s.name;
    Json fan;
    fan["rays"] = matrix_json(s.fan.ray_matrix().transpose());
    fan["max_cones"] = s.fan.max_cones;
    j["fan"] = fan;
    j["bundles"] = matrix_json(s.bundles);
    if (s.basis_p) j["basis_p"] = matrix_json(*s.basis_p);
    if (s.lambda) j["lambda"] = rvec_json(*s.lambda);
    Json o;
    o["degree_bound"] = s.options.degree_bound;
    o["d_max"] = s.options.d_max;
    o["seed"] = s.options.seed;
    o["stabilization_window"] = s.options.stabilization_window;
    o["cutoff"] = s.options.cutoff;
    j["options"] = o;
    return j;
}

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"validate", "construct", "semigroup", "gkz", "lg", "ifun"};
    return c;
}

Report run_command(const std::string& command, const ProblemSpec& spec, const Flags& flags) {
    long seed = flags.seed.value_or(spec.options.seed);
    Builder b(command, spec, seed);
    if (command == "validate")
        cmd_validate(b, spec);
    else if (command == "construct")
        cmd_construct(b, spec);
    else if (command == "semigroup")
        cmd_semigroup(b, spec, flags.degree.value_or(spec.options.degree_bound));
    else if (command == "gkz")
        cmd_gkz(b, spec, flags, seed);
    else if (command == "lg")
        cmd_lg(b, spec, flags, seed);
    else if (command == "ifun")
        cmd_ifun(b, spec, flags.dmax.value_or(spec.options.d_max));
    else
        throw Error("UsageError", "unknown command " + command);
    return b.finish();
}

std::string render_text(const Report& report) {
    const Json& j = report.body;
    std::ostringstream os;
    os << "tglab " << j["command"].get<std::string>();
    if (!j["spec"].get<std::string>().empty()) os << " on " << j["spec"].get<std::string>();
    os << " (schema " << j["schema"].get<int>() << ", seed " << j["seed"].get<long>() << ")\n";
    for (const auto& c : j["checks"]) {
        os << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " ["
           << c["anchor"].get<std::string>() << "]";
        if (c.contains("witness")) os << " witness " << c["witness"].dump();
        os << "\n";
    }
    for (auto it = j["sections"].begin(); it != j["sections"].end(); ++it) {
        os << "\n" << it.key() << " [" << it.value()["anchor"].get<std::string>() << "]\n";
        for (auto f = it.value().begin(); f != it.value().end(); ++f) {
            if (f.key() == "anchor") continue;
            os << "  " << f.key() << ": " << (f.value().is_string() ? f.value().get<std::string>() : f.value().dump())
               << "\n";
        }
    }
    os << "\nstatus: " << j["status"].get<std::string>() << "\n";
    return os.str();
}

std::vector<Rat> parse_rational_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto a = item.find_first_not_of(" \t");
        auto z = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw Error("UsageError", "empty entry in list '" + s + "'");
        try {
            out.push_back(parse_rational(item.substr(a, z - a + 1)));
        } catch (const std::exception&) {
            throw Error("UsageError", "not a rational: '" + item + "'");
        }
    }
    return out;
}

}  // namespace tglab::cli
