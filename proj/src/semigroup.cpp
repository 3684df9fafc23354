#include "tglab/semigroup.hpp"

#include "tglab/intlinalg.hpp"
#include "tglab/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tglab {

std::vector<Face> faces(const Polytope& q) { return q.faces(); }

Int normalized_volume(const Polytope& q, bool reversed_order) { return q.normalized_volume(reversed_order); }

namespace {

bool is_zero(const IVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IVec sub(const IVec& a, const IVec& b) {
    IVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

IVec add(const IVec& a, const IVec& b) {
    IVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

}  // namespace

SemigroupMembership::SemigroupMembership(const AffineSemigroup& s) : s_(s) {
    std::vector<RVec> rgens;
    for (std::size_t j = 0; j < s.generators.cols(); ++j) {
        IVec g = s.generators.col(j);
        if (is_zero(g)) continue;
        gens_.push_back(g);
        rgens.push_back(to_rvec(g));
    }
    cone_ = Cone::from_generators(s.generators.rows(), rgens);
    auto positive = [&](const IVec& w) {
        return std::all_of(gens_.begin(), gens_.end(), [&](const IVec& g) { return dot(w, g) > 0; });
    };
    if (s.grading && s.grading->size() == s.generators.rows() && positive(*s.grading)) {
        grading_ = s.grading;
    } else if (cone_.is_pointed()) {
        IVec w(s.generators.rows(), Int(0));
        for (const auto& a : cone_.inequalities)
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += a[i].get_num();
        if (positive(w)) grading_ = w;
    }
}

bool SemigroupMembership::contains(const IVec& v) {
    if (v.size() != s_.generators.rows()) throw Error("DimensionMismatch", "semigroup point length");
    if (!in_cone(v)) return false;
    if (is_zero(v)) return true;
    if (!s_.unimodular_cones.empty()) {
        for (const auto& c : s_.unimodular_cones) {
            auto x = solve(to_rat(s_.generators.select_columns(c)), to_rvec(v));
            if (x && std::all_of(x->begin(), x->end(), [](const Rat& t) { return t >= 0 && t.get_den() == 1; }))
                return true;
        }
    }
    if (grading_) return search(v);
    throw Error("UnboundedSearch", "no grading and the cone decomposition does not cover the point");
}

bool SemigroupMembership::search(const IVec& v) {
    if (is_zero(v)) return true;
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    bool found = false;
    if (dot(*grading_, v) > 0) {
        for (const auto& g : gens_) {
            IVec u = sub(v, g);
            if (dot(*grading_, u) < 0 || !in_cone(u)) continue;
            if (search(u)) {
                found = true;
                break;
            }
        }
    }
    memo_[v] = found;
    return found;
}

bool semigroup_contains(const AffineSemigroup& s, const IVec& v) { return SemigroupMembership(s).contains(v); }

std::vector<IVec> graded_cone_points(const Cone& cone, const IVec& grading, long bound) {
    std::size_t n = cone.ambient;
    if (!cone.is_pointed()) throw Error("UnboundedSearch", "graded enumeration needs a pointed cone");
    RVec w = to_rvec(grading);
    std::vector<RVec> corners{RVec(n, Rat(0))};
    for (const auto& r : cone.rays) {
        Rat wr = dot(w, r);
        if (wr <= 0) throw Error("UnboundedSearch", "grading is not positive on the cone");
        RVec p = r;
        for (auto& x : p) x *= Rat(bound) / wr;
        corners.push_back(p);
    }
    IVec lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat mn = corners[0][j], mx = corners[0][j];
        for (const auto& p : corners) {
            mn = std::min(mn, p[j]);
            mx = std::max(mx, p[j]);
        }
        mpz_fdiv_q(lo[j].get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
        mpz_cdiv_q(hi[j].get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    }
    std::vector<std::pair<Int, IVec>> pts;
    enumerate_box(lo, hi, [&](const IVec& x) {
        Int g = dot(grading, x);
        if (g <= bound && cone.contains(to_rvec(x))) pts.emplace_back(g, x);
    });
    std::sort(pts.begin(), pts.end());
    std::vector<IVec> out;
    for (auto& p : pts) out.push_back(std::move(p.second));
    return out;
}

SaturationResult saturation_check(const AffineSemigroup& s, long degree_bound) {
    SemigroupMembership mem(s);
    if (!mem.grading()) throw Error("UnboundedSearch", "saturation check needs a grading or a pointed cone");
    SaturationResult out;
    for (const auto& x : graded_cone_points(mem.cone(), *mem.grading(), degree_bound)) {
        ++out.points_checked;
        if (!mem.contains(x)) {
            out.saturated_up_to_D = false;
            out.witness = x;
            break;
        }
    }
    return out;
}

ShiftResult gorenstein_shift_check(const IntegerMatrix& a2, std::size_t c, long degree_bound) {
    IVec w(a2.rows(), Int(0));
    w[0] = 1;
    AffineSemigroup s{a2, w, {}};
    SaturationResult sat = saturation_check(s, degree_bound);
    if (!sat.saturated_up_to_D) throw Error("NotSaturated", "semigroup is not saturated up to the degree bound");
    SemigroupMembership mem(s);
    ShiftResult out;
    out.shift = a2.col(0);
    for (std::size_t j = 0; j < c; ++j) out.shift = add(out.shift, a2.col(a2.cols() - c + j));
    out.shift_degree = out.shift[0].get_si();
    std::vector<IVec> pts = graded_cone_points(mem.cone(), w, degree_bound);
    std::set<IVec> interior, shifted;
    for (const auto& p : pts) {
        if (mem.cone().in_relative_interior(to_rvec(p))) interior.insert(p);
        if (p[0] <= degree_bound - static_cast<long>(c + 1)) shifted.insert(add(p, out.shift));
    }
    out.interior_points = interior.size();
    out.shifted_points = shifted.size();
    out.holds = out.shift_degree == static_cast<long>(c + 1) && interior == shifted;
    return out;
}

ShiftResult interior_Aprime_check(const IntegerMatrix& a1, std::size_t c,
                                  const std::vector<std::vector<std::size_t>>& cones, long bound) {
    AffineSemigroup s{a1, std::nullopt, cones};
    SemigroupMembership mem(s);
    ShiftResult out;
    out.shift.assign(a1.rows(), Int(0));
    for (std::size_t j = 0; j < c; ++j) out.shift = add(out.shift, a1.col(a1.cols() - c + j));
    out.shift_degree = static_cast<long>(c);
    std::set<IVec> interior, shifted;
    IVec lo(a1.rows(), Int(-bound)), hi(a1.rows(), Int(bound));
    enumerate_box(lo, hi, [&](const IVec& x) {
        if (mem.in_cone(x)) {
            if (!mem.contains(x)) throw Error("NotSaturated", "lattice point of the cone outside the semigroup");
            if (mem.cone().in_relative_interior(to_rvec(x))) interior.insert(x);
        }
        IVec y = sub(x, out.shift);
        if (mem.in_cone(y) && mem.contains(y)) shifted.insert(x);
    });
    out.interior_points = interior.size();
    out.shifted_points = shifted.size();
    out.holds = interior == shifted;
    return out;
}

namespace {

void compositions(std::size_t vars, long degree, const std::function<void(const IVec&)>& fn) {
    IVec cur(vars, Int(0));
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i + 1 == vars) {
            cur[i] = left;
            fn(cur);
            return;
        }
        for (long k = left; k >= 0; --k) {
            cur[i] = k;
            rec(i + 1, left - k);
        }
    };
    if (vars > 0) rec(0, degree);
}

bool dominates(const IVec& u, const IVec& a) {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < a[i]) return false;
    return true;
}

}  // namespace

std::vector<Binomial> toric_ideal_binomials(const IntegerMatrix& b, long degree_bound) {
    bool graded = b.rows() > 0;
    for (std::size_t j = 0; j < b.cols() && graded; ++j)
        if (b(0, j) != 1) graded = false;
    IntegerMatrix h = graded ? b : homogenize(b);
    IntegerMatrix k = kernel_lattice(h).basis;
    std::vector<Binomial> out;
    if (k.cols() == 0) return out;
    for (std::size_t j = 0; j < k.cols(); ++j) {
        Int pos = 0;
        for (std::size_t i = 0; i < k.rows(); ++i)
            if (k(i, j) > 0) pos += k(i, j);
        if (pos > degree_bound) throw Error("BoundTooSmall", "lattice basis element of degree " + pos.get_str());
    }
    std::size_t t = h.cols();
    long last_new = 0;
    for (long deg = 1; deg <= degree_bound; ++deg) {
        std::map<IVec, std::vector<IVec>> fibers;
        compositions(t, deg, [&](const IVec& u) { fibers[h * u].push_back(u); });
        for (auto& [key, fiber] : fibers) {
            if (fiber.size() < 2) continue;
            std::sort(fiber.begin(), fiber.end());
            std::vector<std::size_t> parent(fiber.size());
            std::iota(parent.begin(), parent.end(), 0);
            std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            auto index_of = [&](const IVec& v) {
                return static_cast<std::size_t>(std::lower_bound(fiber.begin(), fiber.end(), v) - fiber.begin());
            };
            for (std::size_t i = 0; i < fiber.size(); ++i)
                for (const auto& bin : out) {
                    if (dominates(fiber[i], bin.plus)) parent[find(i)] = find(index_of(add(sub(fiber[i], bin.plus), bin.minus)));
                    if (dominates(fiber[i], bin.minus)) parent[find(i)] = find(index_of(add(sub(fiber[i], bin.minus), bin.plus)));
                }
            std::vector<std::size_t> reps;
            for (std::size_t i = 0; i < fiber.size(); ++i)
                if (find(i) == i) reps.push_back(i);
            for (std::size_t r = 1; r < reps.size(); ++r) {
                out.push_back({fiber[reps[r]], fiber[reps[0]]});
                last_new = deg;
            }
        }
    }
    if (last_new == degree_bound) throw Error("BoundTooSmall", "new generators still appear at the degree bound");
    return out;
}

}  // namespace tglab
