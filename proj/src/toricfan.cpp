#include "tglab/toricfan.hpp"

#include "tglab/intlinalg.hpp"
#include "tglab/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tglab {

IntegerMatrix Fan::ray_matrix() const {
    IntegerMatrix a(dim, rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) a(i, j) = rays[j][i];
    return a;
}

namespace {

IntegerMatrix cone_matrix(const Fan& f, const std::vector<std::size_t>& cone) {
    IntegerMatrix m(f.dim, cone.size());
    for (std::size_t k = 0; k < cone.size(); ++k)
        for (std::size_t i = 0; i < f.dim; ++i) m(i, k) = f.rays[cone[k]][i];
    return m;
}

bool in_cone(const std::vector<std::size_t>& cone, std::size_t i) {
    return std::find(cone.begin(), cone.end(), i) != cone.end();
}

void check_shape(const Fan& f) {
    for (const auto& r : f.rays) {
        if (r.size() != f.dim) throw Error("DimensionMismatch", "ray length differs from fan dimension");
        if (gcd_of(r) != 1) throw Error("NonPrimitiveRay", "ray is not primitive");
    }
    for (const auto& c : f.max_cones) {
        for (auto i : c)
            if (i >= f.rays.size()) throw Error("DimensionMismatch", "cone refers to a missing ray");
        if (rank(cone_matrix(f, c)) != f.dim) throw Error("DimensionMismatch", "maximal cone is not full-dimensional");
    }
}

void require_complete(const Fan& f, bool allow_incomplete) {
    if (!allow_incomplete && !validate_fan(f).complete) throw Error("IncompleteFan", "fan is not complete");
}

}  // namespace

FanDiagnostics validate_fan(const Fan& f) {
    check_shape(f);
    FanDiagnostics d;
    d.simplicial = true;
    for (const auto& c : f.max_cones)
        if (c.size() != f.dim) d.simplicial = false;
    d.smooth = d.simplicial;
    if (d.smooth)
        for (const auto& c : f.max_cones) {
            Int det_c = det(cone_matrix(f, c));
            if (det_c != 1 && det_c != -1) d.smooth = false;
        }
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> facet_owner;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const auto& c = f.max_cones[ci];
        std::vector<RVec> gens;
        for (auto i : c) gens.push_back(to_rvec(f.rays[i]));
        Cone cone = Cone::from_generators(f.dim, gens);
        for (const auto& a : cone.inequalities) {
            std::vector<std::size_t> facet;
            for (auto i : c)
                if (dot(a, to_rvec(f.rays[i])) == 0) facet.push_back(i);
            std::sort(facet.begin(), facet.end());
            facet_owner[facet].push_back(ci);
        }
    }
    bool paired = !f.max_cones.empty();
    for (const auto& [facet, owners] : facet_owner)
        if (owners.size() != 2) paired = false;
    bool connected = false;
    if (paired) {
        std::vector<bool> seen(f.max_cones.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t c = stack.back();
            stack.pop_back();
            for (const auto& [facet, owners] : facet_owner) {
                if (std::find(owners.begin(), owners.end(), c) == owners.end()) continue;
                for (auto o : owners)
                    if (!seen[o]) {
                        seen[o] = true;
                        stack.push_back(o);
                    }
            }
        }
        connected = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
    d.complete = paired && connected;
    return d;
}

Fan total_space_fan(const Fan& f, const IntegerMatrix& d, bool allow_negative) {
    FanDiagnostics diag = validate_fan(f);
    if (!diag.smooth || !diag.complete) throw Error("InputNotSmooth", "base fan must be smooth and complete");
    std::size_t m = f.rays.size(), c = d.rows();
    if (c > 0 && d.cols() != m) throw Error("DimensionMismatch", "bundle rows must have one entry per ray");
    if (!allow_negative)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (d(j, i) < 0) throw Error("NegativeCoefficient", "bundle coefficients must be nonnegative");
    if (c == 0) return f;
    Fan out;
    out.dim = f.dim + c;
    for (std::size_t i = 0; i < m; ++i) {
        IVec r = f.rays[i];
        for (std::size_t j = 0; j < c; ++j) r.push_back(d(j, i));
        out.rays.push_back(r);
    }
    for (std::size_t j = 0; j < c; ++j) {
        IVec e(out.dim, Int(0));
        e[f.dim + j] = 1;
        out.rays.push_back(e);
    }
    for (const auto& s : f.max_cones) {
        std::vector<std::size_t> cone = s;
        for (std::size_t j = 0; j < c; ++j) cone.push_back(m + j);
        out.max_cones.push_back(cone);
    }
    return out;
}

Convexity pl_is_convex(const Fan& f, const RVec& psi, bool allow_incomplete) {
    if (psi.size() != f.rays.size()) throw Error("DimensionMismatch", "one PL value per ray required");
    require_complete(f, allow_incomplete);
    Convexity out{true, true};
    for (const auto& c : f.max_cones) {
        RatMatrix sys(c.size(), f.dim);
        RVec rhs;
        for (std::size_t k = 0; k < c.size(); ++k) {
            for (std::size_t i = 0; i < f.dim; ++i) sys(k, i) = f.rays[c[k]][i];
            rhs.push_back(psi[c[k]]);
        }
        auto lin = solve(sys, rhs);
        if (!lin) return {false, false};
        for (std::size_t j = 0; j < f.rays.size(); ++j) {
            Rat val = dot(*lin, to_rvec(f.rays[j]));
            if (psi[j] > val) out.convex = false;
            if (!in_cone(c, j) && psi[j] >= val) out.strictly = false;
        }
    }
    if (!out.convex) out.strictly = false;
    return out;
}

bool divisor_is_nef(const Fan& f, const IVec& d, bool allow_incomplete) {
    RVec psi;
    for (const auto& x : d) psi.push_back(-x);
    return pl_is_convex(f, psi, allow_incomplete).convex;
}

std::vector<RVec> divisor_classes(const IntegerMatrix& kernel) {
    std::vector<RVec> out;
    for (std::size_t i = 0; i < kernel.rows(); ++i) out.push_back(to_rvec(kernel.row(i)));
    return out;
}

Cone nef_cone_anticones(const Fan& f, const IntegerMatrix& kernel, bool allow_incomplete) {
    require_complete(f, allow_incomplete);
    std::size_t r = kernel.cols();
    std::vector<RVec> cls = divisor_classes(kernel);
    Cone acc = Cone::from_constraints(r, {}, {});
    for (const auto& c : f.max_cones) {
        std::vector<RVec> gens;
        for (std::size_t i = 0; i < f.rays.size(); ++i)
            if (!in_cone(c, i)) gens.push_back(cls[i]);
        acc = acc.intersect(Cone::from_generators(r, gens));
    }
    if (acc.dimension() < r) throw Error("KahlerConeEmpty", "nef cone has empty interior; fan is not projective");
    return acc;
}

Cone nef_cone_anticones(const Fan& f) { return nef_cone_anticones(f, kernel_lattice(f.ray_matrix()).basis); }

Cone nef_cone_pl(const Fan& f, const IntegerMatrix& kernel, bool allow_incomplete) {
    require_complete(f, allow_incomplete);
    std::size_t m = f.rays.size(), r = kernel.cols();
    std::vector<RVec> ineqs;
    for (const auto& c : f.max_cones) {
        RatMatrix basis = to_rat(cone_matrix(f, c));
        for (std::size_t j = 0; j < m; ++j) {
            if (in_cone(c, j)) continue;
            auto coeff = solve(basis, to_rvec(f.rays[j]));
            if (!coeff) throw Error("DimensionMismatch", "ray outside the span of a maximal cone");
            RVec a(m, Rat(0));
            a[j] = 1;
            for (std::size_t k = 0; k < c.size(); ++k) a[c[k]] -= (*coeff)[k];
            ineqs.push_back(a);
        }
    }
    Cone convex = Cone::from_constraints(m, {}, ineqs);
    RatMatrix lt = to_rat(kernel).transpose();
    std::vector<RVec> image;
    for (const auto& g : convex.generators()) image.push_back(lt * g);
    return Cone::from_generators(r, image);
}

Cone nef_cone_pl(const Fan& f) { return nef_cone_pl(f, kernel_lattice(f.ray_matrix()).basis); }

bool nef_cone_pullback_check(const Fan& f, const IntegerMatrix& d) {
    Fan total = total_space_fan(f, d);
    IntegerMatrix a = f.ray_matrix();
    IntegerMatrix la = kernel_lattice(a).basis;
    std::vector<IVec> ext;
    for (std::size_t k = 0; k < la.cols(); ++k) ext.push_back(extend_relation(a, la.col(k), d));
    IntegerMatrix ap = total_matrix(a, d);
    IntegerMatrix e = IntegerMatrix::from_columns(ext, ap.cols());
    IntegerMatrix kp = kernel_lattice(ap).basis;
    SectionSystem se = section_system_with_kernel(ap, e);
    IntegerMatrix g = se.M * kp;
    if (!(e * g == kp)) return false;
    Int dg = det(g);
    if (dg != 1 && dg != -1) return false;
    Cone base = nef_cone_anticones(f, la);
    std::size_t r = la.cols();
    RatMatrix gr = to_rat(g);
    std::vector<RVec> image;
    for (const auto& v : base.generators()) {
        RVec w(r, Rat(0));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) w[j] += v[k] * gr(k, j);
        image.push_back(w);
    }
    Cone pulled = Cone::from_generators(r, image);
    Cone anti = nef_cone_anticones(total, kp, true);
    Cone pl = nef_cone_pl(total, kp, true);
    return pulled.equals(anti) && anti.equals(pl);
}

AnticanonicalConsistency anticanonical_consistency(const Fan& f, const IntegerMatrix& d) {
    Fan total = total_space_fan(f, d);
    AnticanonicalConsistency out;
    out.total_space_nef = pl_is_convex(total, RVec(total.rays.size(), Rat(-1)), true).convex;
    RVec psi;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        Rat v = 1;
        for (std::size_t j = 0; j < d.rows(); ++j) v -= d(j, i);
        psi.push_back(-v);
    }
    out.base_condition = pl_is_convex(f, psi).convex;
    return out;
}

std::optional<RVec> cone_coordinates(const Fan& f, std::size_t cone, const RVec& v) {
    return solve(to_rat(cone_matrix(f, f.max_cones[cone])), v);
}

bool in_support(const Fan& f, const RVec& v) {
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        auto x = cone_coordinates(f, c, v);
        if (x && std::all_of(x->begin(), x->end(), [](const Rat& t) { return t >= 0; })) return true;
    }
    return false;
}

bool conv_in_support_check(const Fan& f, const IntegerMatrix& d) {
    for (std::size_t j = 0; j < d.rows(); ++j)
        if (!divisor_is_nef(f, d.row(j))) throw Error("BundleNotNef", "bundle row " + std::to_string(j) + " is not nef");
    Fan total = total_space_fan(f, d);
    std::vector<RVec> pts{RVec(total.dim, Rat(0))};
    for (const auto& r : total.rays) pts.push_back(to_rvec(r));
    bool ok = true;
    for (std::size_t k = 1; k <= pts.size() && ok; ++k)
        for_each_subset(pts.size(), k, [&](const std::vector<std::size_t>& sub) {
            RVec bary(total.dim, Rat(0));
            for (auto i : sub)
                for (std::size_t t = 0; t < total.dim; ++t) bary[t] += pts[i][t];
            for (auto& x : bary) x /= static_cast<long>(sub.size());
            if (!in_support(total, bary)) ok = false;
            return ok;
        });
    return ok;
}

WSetReport w_set_report(const Fan& f, const IntegerMatrix& d, bool allow_negative) {
    Fan total = total_space_fan(f, d, allow_negative);
    std::vector<IVec> pts{IVec(total.dim, Int(0))};
    for (const auto& r : total.rays) pts.push_back(r);
    Polytope hull(pts);
    WSetReport out;
    out.hull_volume = hull.normalized_volume();
    Int pieces_volume = 0;
    for (const auto& c : total.max_cones) pieces_volume += abs(det(cone_matrix(total, c)));
    out.pieces = total.max_cones.size();
    out.vertices_covered = true;
    for (auto v : hull.vertices()) {
        bool covered = false;
        for (std::size_t c = 0; c < total.max_cones.size() && !covered; ++c) {
            auto x = cone_coordinates(total, c, to_rvec(pts[v]));
            if (!x) continue;
            Rat s = 0;
            bool nonneg = true;
            for (const auto& t : *x) {
                if (t < 0) nonneg = false;
                s += t;
            }
            covered = nonneg && s <= 1;
        }
        if (!covered) out.vertices_covered = false;
    }
    out.convex = out.vertices_covered && out.hull_volume == pieces_volume;
    return out;
}

bool w_set_convexity(const Fan& f, const IntegerMatrix& d, bool allow_negative) {
    return w_set_report(f, d, allow_negative).convex;
}

}  // namespace tglab
