#include "tglab/polyhedral.hpp"

#include "tglab/linalg.hpp"

#include <algorithm>
#include <set>

namespace tglab {

RVec to_rvec(const IVec& v) { return RVec(v.begin(), v.end()); }

IVec primitive_int(const RVec& v) { return primitive(v); }

void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!fn(idx)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

namespace {

RatMatrix rows_matrix(const std::vector<RVec>& rows, std::size_t cols) {
    return RatMatrix::from_rows(rows, cols);
}

std::vector<RVec> primitive_rows_of_columns(const RatMatrix& cols) {
    std::vector<RVec> out;
    for (std::size_t j = 0; j < cols.cols(); ++j) out.push_back(to_rvec(primitive(cols.col(j))));
    return out;
}

std::vector<RVec> facet_normals(std::size_t ambient, const std::vector<RVec>& gens, const std::vector<RVec>& eqs) {
    if (gens.empty()) return {};
    std::size_t k = rank(rows_matrix(gens, ambient));
    if (k == 0) return {};
    std::set<IVec> found;
    for_each_subset(gens.size(), k - 1, [&](const std::vector<std::size_t>& sub) {
        std::vector<RVec> rows = eqs;
        for (auto i : sub) rows.push_back(gens[i]);
        RatMatrix ns = nullspace(rows_matrix(rows, ambient));
        if (ns.cols() != 1) return true;
        RVec nv = ns.col(0);
        bool pos = false, neg = false;
        for (const auto& g : gens) {
            Rat v = dot(nv, g);
            if (v > 0) pos = true;
            if (v < 0) neg = true;
        }
        if (pos && neg) return true;
        if (!pos && !neg) return true;
        if (neg)
            for (auto& x : nv) x = -x;
        found.insert(primitive(nv));
        return true;
    });
    std::vector<RVec> out;
    for (const auto& f : found) out.push_back(to_rvec(f));
    return out;
}

std::vector<RVec> canonical_equations(std::size_t ambient, const std::vector<RVec>& eqs) {
    if (eqs.empty()) return {};
    std::vector<std::size_t> piv;
    RatMatrix r = rref(rows_matrix(eqs, ambient), &piv);
    std::vector<RVec> out;
    for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(to_rvec(primitive(r.row(i))));
    return out;
}

}  // namespace

Cone Cone::from_constraints(std::size_t ambient, const std::vector<RVec>& eqs_in, const std::vector<RVec>& ineqs) {
    std::vector<RVec> eqs = canonical_equations(ambient, eqs_in);
    std::vector<RVec> all = eqs;
    all.insert(all.end(), ineqs.begin(), ineqs.end());
    std::vector<RVec> lin = primitive_rows_of_columns(nullspace(rows_matrix(all, ambient)));
    std::vector<RVec> base = eqs;
    base.insert(base.end(), lin.begin(), lin.end());
    std::size_t kdim = ambient - (eqs.empty() ? 0 : rank(rows_matrix(eqs, ambient)));
    std::size_t p = kdim - lin.size();
    std::set<IVec> rays;
    if (p > 0) {
        for_each_subset(ineqs.size(), p - 1, [&](const std::vector<std::size_t>& sub) {
            std::vector<RVec> rows = base;
            for (auto i : sub) rows.push_back(ineqs[i]);
            RatMatrix ns = nullspace(rows_matrix(rows, ambient));
            if (ns.cols() != 1) return true;
            RVec r = ns.col(0);
            for (int sign = 0; sign < 2; ++sign) {
                bool ok = true;
                for (const auto& a : ineqs)
                    if (dot(a, r) < 0) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    rays.insert(primitive(r));
                    break;
                }
                for (auto& x : r) x = -x;
            }
            return true;
        });
    }
    Cone c;
    c.ambient = ambient;
    for (const auto& r : rays) c.rays.push_back(to_rvec(r));
    c.lineality = lin;
    std::vector<RVec> gens = c.generators();
    c.equations = canonical_equations(ambient, primitive_rows_of_columns(nullspace(
                                                   gens.empty() ? RatMatrix(0, ambient) : rows_matrix(gens, ambient))));
    c.inequalities = facet_normals(ambient, gens, c.equations);
    return c;
}

Cone Cone::from_generators(std::size_t ambient, const std::vector<RVec>& gens_in) {
    std::vector<RVec> gens;
    for (const auto& g : gens_in) {
        if (g.size() != ambient) throw Error("DimensionMismatch", "cone generator length");
        if (std::any_of(g.begin(), g.end(), [](const Rat& x) { return x != 0; })) gens.push_back(g);
    }
    std::vector<RVec> eqs = canonical_equations(
        ambient,
        primitive_rows_of_columns(nullspace(gens.empty() ? RatMatrix(0, ambient) : rows_matrix(gens, ambient))));
    return from_constraints(ambient, eqs, facet_normals(ambient, gens, eqs));
}

std::vector<RVec> Cone::generators() const {
    std::vector<RVec> g = rays;
    for (const auto& l : lineality) {
        g.push_back(l);
        RVec m = l;
        for (auto& x : m) x = -x;
        g.push_back(m);
    }
    return g;
}

bool Cone::contains(const RVec& v) const {
    if (v.size() != ambient) throw Error("DimensionMismatch", "cone membership");
    for (const auto& e : equations)
        if (dot(e, v) != 0) return false;
    for (const auto& a : inequalities)
        if (dot(a, v) < 0) return false;
    return true;
}

bool Cone::in_relative_interior(const RVec& v) const {
    if (!contains(v)) return false;
    for (const auto& a : inequalities)
        if (dot(a, v) <= 0) return false;
    return true;
}

Cone Cone::intersect(const Cone& o) const {
    if (o.ambient != ambient) throw Error("DimensionMismatch", "cone intersection");
    std::vector<RVec> eqs = equations, ineqs = inequalities;
    eqs.insert(eqs.end(), o.equations.begin(), o.equations.end());
    ineqs.insert(ineqs.end(), o.inequalities.begin(), o.inequalities.end());
    return from_constraints(ambient, eqs, ineqs);
}

bool Cone::equals(const Cone& o) const {
    if (o.ambient != ambient) return false;
    for (const auto& g : o.generators())
        if (!contains(g)) return false;
    for (const auto& g : generators())
        if (!o.contains(g)) return false;
    return true;
}

namespace {

RVec homog(const IVec& p) {
    RVec v{Rat(1)};
    for (const auto& x : p) v.push_back(x);
    return v;
}

RVec homog(const RVec& p) {
    RVec v{Rat(1)};
    v.insert(v.end(), p.begin(), p.end());
    return v;
}

}  // namespace

Polytope::Polytope(std::vector<IVec> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error("EmptyPolytope", "no points");
    ambient_ = points_[0].size();
    std::vector<RVec> gens;
    for (const auto& p : points_) {
        if (p.size() != ambient_) throw Error("DimensionMismatch", "polytope point length");
        gens.push_back(homog(p));
    }
    cone_ = Cone::from_generators(ambient_ + 1, gens);
    std::set<IVec> seen;
    std::set<IVec> extreme;
    for (const auto& r : cone_.rays) extreme.insert(primitive(r));
    for (std::size_t i = 0; i < points_.size(); ++i) {
        IVec h = primitive(homog(points_[i]));
        if (extreme.count(h) && !seen.count(points_[i])) {
            vertices_.push_back(i);
            seen.insert(points_[i]);
        }
    }
    origin_.assign(ambient_, Rat(0));
}

Polytope Polytope::newton(const IntegerMatrix& b) {
    std::vector<IVec> pts{IVec(b.rows(), Int(0))};
    for (std::size_t j = 0; j < b.cols(); ++j) pts.push_back(b.col(j));
    return Polytope(pts);
}

bool Polytope::contains(const RVec& x) const { return cone_.contains(homog(x)); }

bool Polytope::in_interior(const RVec& x) const { return full_dimensional() && cone_.in_relative_interior(homog(x)); }

std::vector<Face> Polytope::faces() const {
    const auto& ineqs = cone_.inequalities;
    std::vector<std::vector<std::size_t>> tight(ineqs.size());
    for (std::size_t f = 0; f < ineqs.size(); ++f)
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (dot(ineqs[f], homog(points_[i])) == 0) tight[f].push_back(i);
    std::set<std::vector<std::size_t>> sets;
    std::vector<std::vector<std::size_t>> queue;
    for (const auto& t : tight)
        if (!t.empty() && sets.insert(t).second) queue.push_back(t);
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& t : tight) {
            std::vector<std::size_t> meet;
            std::set_intersection(queue[q].begin(), queue[q].end(), t.begin(), t.end(), std::back_inserter(meet));
            if (!meet.empty() && sets.insert(meet).second) queue.push_back(meet);
        }
    }
    std::vector<std::size_t> all(points_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    sets.insert(all);
    std::vector<Face> out;
    for (const auto& s : sets) {
        Face f;
        f.points = s;
        std::vector<RVec> rows;
        for (auto i : s) rows.push_back(homog(points_[i]));
        f.dim = rank(RatMatrix::from_rows(rows)) - 1;
        RVec func(ambient_ + 1, Rat(0));
        for (std::size_t k = 0; k < ineqs.size(); ++k)
            if (std::includes(tight[k].begin(), tight[k].end(), s.begin(), s.end()))
                for (std::size_t j = 0; j <= ambient_; ++j) func[j] += ineqs[k][j];
        if (s == all) func.assign(ambient_ + 1, Rat(0));
        f.offset = -func[0];
        f.normal.assign(func.begin() + 1, func.end());
        f.contains_origin = contains(origin_) && f.offset == 0;
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.points < b.points;
    });
    return out;
}

Int Polytope::normalized_volume(bool reversed_order) const {
    if (!full_dimensional()) throw Error("DegeneratePolytope", "polytope is not full-dimensional");
    std::vector<Face> fs = faces();
    std::vector<std::size_t> order = vertices_;
    if (reversed_order) std::reverse(order.begin(), order.end());
    std::function<std::vector<std::vector<std::size_t>>(std::size_t)> tri = [&](std::size_t fi) {
        const Face& g = fs[fi];
        std::size_t v = points_.size();
        for (auto o : order)
            if (std::binary_search(g.points.begin(), g.points.end(), o)) {
                v = o;
                break;
            }
        if (g.dim == 0) return std::vector<std::vector<std::size_t>>{{v}};
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t hi = 0; hi < fs.size(); ++hi) {
            const Face& h = fs[hi];
            if (h.dim + 1 != g.dim) continue;
            if (!std::includes(g.points.begin(), g.points.end(), h.points.begin(), h.points.end())) continue;
            if (std::binary_search(h.points.begin(), h.points.end(), v)) continue;
            for (auto t : tri(hi)) {
                t.push_back(v);
                out.push_back(std::move(t));
            }
        }
        return out;
    };
    Int total = 0;
    for (const auto& simplex : tri(fs.size() - 1)) {
        IntegerMatrix m(ambient_, ambient_);
        for (std::size_t k = 1; k < simplex.size(); ++k)
            for (std::size_t j = 0; j < ambient_; ++j) m(j, k - 1) = points_[simplex[k]][j] - points_[simplex[0]][j];
        total += abs(det(m));
    }
    return total;
}

std::vector<IVec> Polytope::lattice_points(long scale) const {
    IVec lo(ambient_), hi(ambient_);
    for (std::size_t j = 0; j < ambient_; ++j) {
        lo[j] = hi[j] = points_[vertices_[0]][j] * scale;
        for (auto v : vertices_) {
            lo[j] = std::min<Int>(lo[j], points_[v][j] * scale);
            hi[j] = std::max<Int>(hi[j], points_[v][j] * scale);
        }
    }
    std::vector<IVec> out;
    enumerate_box(lo, hi, [&](const IVec& x) {
        RVec h{Rat(scale)};
        for (const auto& y : x) h.push_back(y);
        if (cone_.contains(h)) out.push_back(x);
    });
    return out;
}

void enumerate_box(const IVec& lo, const IVec& hi, const std::function<void(const IVec&)>& fn) {
    std::size_t n = lo.size();
    for (std::size_t j = 0; j < n; ++j)
        if (lo[j] > hi[j]) return;
    IVec x = lo;
    for (;;) {
        fn(x);
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (x[j] < hi[j]) {
                ++x[j];
                for (std::size_t k = j + 1; k < n; ++k) x[k] = lo[k];
                break;
            }
            if (j == 0) return;
        }
        if (n == 0) return;
    }
}

}  // namespace tglab
