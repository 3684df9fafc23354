#include "tglab/qdmcheck.hpp"

#include "tglab/error.hpp"

#include <functional>
#include <sstream>

namespace tglab {

namespace {

bool class_zero(const CohClass& c) {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

}  // namespace

LaurentClass::LaurentClass(const CohomologyRing& ring, const CohClass& c, long zpow) : dim_(ring.dim()) { add(zpow, c); }

LaurentClass LaurentClass::zero(const CohomologyRing& ring) {
    LaurentClass z;
    z.dim_ = ring.dim();
    return z;
}

LaurentClass LaurentClass::one(const CohomologyRing& ring) { return LaurentClass(ring, ring.one()); }

void LaurentClass::add(long k, const CohClass& c) {
    if (class_zero(c)) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    for (std::size_t i = 0; i < c.size(); ++i) it->second[i] += c[i];
    if (class_zero(it->second)) t_.erase(it);
}

LaurentClass LaurentClass::operator+(const LaurentClass& o) const {
    LaurentClass r = *this;
    if (r.dim_ == 0) r.dim_ = o.dim_;
    for (const auto& [k, c] : o.t_) r.add(k, c);
    return r;
}

LaurentClass LaurentClass::operator-(const LaurentClass& o) const { return *this + o.scaled(-1); }

LaurentClass LaurentClass::scaled(const Rat& s) const {
    LaurentClass r;
    r.dim_ = dim_;
    if (s == 0) return r;
    for (const auto& [k, c] : t_) {
        CohClass v = c;
        for (auto& x : v) x *= s;
        r.t_.emplace(k, v);
    }
    return r;
}

LaurentClass LaurentClass::shifted(long k) const {
    LaurentClass r;
    r.dim_ = dim_;
    for (const auto& [e, c] : t_) r.t_.emplace(e + k, c);
    return r;
}

LaurentClass LaurentClass::times(const CohomologyRing& ring, const LaurentClass& o) const {
    LaurentClass r = zero(ring);
    for (const auto& [k1, c1] : t_)
        for (const auto& [k2, c2] : o.t_) r.add(k1 + k2, ring.multiply(c1, c2));
    return r;
}

LaurentClass LaurentClass::times(const CohomologyRing& ring, const CohClass& c) const {
    return times(ring, LaurentClass(ring, c));
}

std::optional<long> LaurentClass::degree(const CohomologyRing& ring) const {
    std::optional<long> d;
    for (const auto& [k, c] : t_) {
        auto dc = ring.degree_of(c);
        if (!dc) return std::nullopt;
        long tot = *dc + k;
        if (d && *d != tot) return std::nullopt;
        d = tot;
    }
    return d;
}

std::string LaurentClass::str(const CohomologyRing& ring) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        os << (first ? "" : " + ") << "(" << ring.str(it->second) << ")";
        if (it->first != 0) os << "*z^" << it->first;
        first = false;
    }
    return os.str();
}

QDMContext make_qdm_context(const Fan& f, const IntegerMatrix& d) {
    QuantumSystem s = qdm_generators(f, d);
    return make_qdm_context(f, d, s.P);
}

QDMContext make_qdm_context(const Fan& f, const IntegerMatrix& d, const IntegerMatrix& basis_p) {
    QDMContext ctx{CohomologyRing::build(f), qdm_generators(f, d, basis_p), {}, {}};
    ctx.chern = chern_data(ctx.ring, d);
    for (std::size_t a = 0; a < ctx.sys.r; ++a) ctx.p.push_back(ctx.ring.divisor_combination(basis_p.row(a)));
    return ctx;
}

LaurentClass inverse_linear(const CohomologyRing& ring, const CohClass& d, long k) {
    if (k == 0) throw Error("Singular", "D + 0z is not invertible");
    // (D + kz)^{-1} = sum_j (-1)^j D^j (kz)^{-j-1}
    LaurentClass out = LaurentClass::zero(ring);
    CohClass pw = ring.one();
    Rat kinv = Rat(1) / Rat(k);
    Rat w = kinv;
    for (long j = 0; j <= static_cast<long>(ring.n()); ++j) {
        out = out + LaurentClass(ring, ring.scale(pw, (j % 2 ? -w : w)), -j - 1);
        pw = ring.multiply(pw, d);
        w *= kinv;
    }
    return out;
}

namespace {

long pairing_with(const QDMContext& ctx, std::size_t i, const Degree& d) {
    long s = 0;
    for (std::size_t a = 0; a < d.size(); ++a) s += d[a] * to_long(ctx.sys.L(i, a));
    return s;
}

void check_degree(const QDMContext& ctx, const Degree& d) {
    if (d.size() != ctx.sys.r) throw Error("DimensionMismatch", "degree has wrong length");
    for (long x : d)
        if (x < 0) throw Error("NonEffectiveDegree", "negative coordinate in the basis p");
}

}  // namespace

LaurentClass i_coefficient(const QDMContext& ctx, const Degree& d) {
    check_degree(ctx, d);
    const auto& ring = ctx.ring;
    const auto& s = ctx.sys;
    LaurentClass a = LaurentClass::one(ring);
    for (std::size_t j = 0; j < s.c; ++j) {
        long dl = -pairing_with(ctx, s.m + j, d);
        if (dl < 0) throw Error("NonEffectiveDegree", "negative degree on a bundle");
        for (long mm = 1; mm <= dl; ++mm)
            a = a.times(ring, LaurentClass(ring, ctx.chern.c1[j]) + LaurentClass(ring, ring.scale(ring.one(), mm), 1));
    }
    for (std::size_t i = 0; i < s.m; ++i) {
        long di = pairing_with(ctx, i, d);
        CohClass D = ring.divisor(i);
        if (di >= 0) {
            for (long mm = 1; mm <= di; ++mm) a = a.times(ring, inverse_linear(ring, D, mm));
        } else {
            for (long mm = di + 1; mm <= 0; ++mm)
                a = a.times(ring, LaurentClass(ring, D) + LaurentClass(ring, ring.scale(ring.one(), mm), 1));
        }
    }
    return a;
}

std::vector<Degree> degree_box(std::size_t r, long d_max) {
    std::vector<Degree> out;
    Degree cur(r, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t a) {
        if (a == r) {
            out.push_back(cur);
            return;
        }
        for (long x = 0; x <= d_max; ++x) {
            cur[a] = x;
            rec(a + 1);
        }
    };
    rec(0);
    return out;
}

IFunctionTable i_function(const QDMContext& ctx, long d_max) {
    IFunctionTable t;
    t.d_max = d_max;
    for (const auto& d : degree_box(ctx.sys.r, d_max)) t.A.emplace(d, i_coefficient(ctx, d));
    return t;
}

DegreeTable apply_operator(const QDMContext& ctx, const WeylOperator& op, const DegreeTable& in, long d_max) {
    const auto& ring = ctx.ring;
    std::size_t r = ctx.sys.r;
    if (op.nvars() != r) throw Error("DimensionMismatch", "operator must live on q_1..q_r");
    DegreeTable out;
    for (const auto& d : degree_box(r, d_max)) {
        LaurentClass acc = LaurentClass::zero(ring);
        for (const auto& t : op.terms()) {
            if (t.mono.theta != 0) throw Error("UnsupportedOperator", "z^2 d_z has no degreewise action");
            Degree src(r);
            bool vanish = false;
            for (std::size_t a = 0; a < r; ++a) {
                src[a] = d[a] - (t.mono.lambda[a] - t.mono.partial[a]);
                if (src[a] < 0) vanish = true;
            }
            if (vanish) continue;
            auto it = in.find(src);
            if (it == in.end()) throw Error("MissingDegree", "degree outside the table");
            // q^b d^b = prod (q d)(q d - 1)...(q d - b + 1), with q d acting as p/z + d.
            LaurentClass v = it->second;
            for (std::size_t a = 0; a < r; ++a)
                for (long nu = 0; nu < t.mono.partial[a]; ++nu) {
                    LaurentClass f = LaurentClass(ring, ctx.p[a], -1) +
                                     LaurentClass(ring, ring.scale(ring.one(), src[a] - nu));
                    v = f.times(ring, v);
                }
            acc = acc + v.shifted(t.mono.z).scaled(t.coeff);
        }
        out.emplace(d, acc);
    }
    return out;
}

std::vector<AnnihilationRow> annihilation_check(const QDMContext& ctx, const std::vector<Int>& l,
                                                const IFunctionTable& table, long d_max) {
    if (d_max > table.d_max) throw Error("MissingDegree", "table stops at " + std::to_string(table.d_max));
    WeylOperator q = qdm_box(ctx.sys, l);
    DegreeTable b = apply_operator(ctx, q, table.A, d_max);
    std::vector<AnnihilationRow> rows;
    for (const auto& [d, v] : b) {
        AnnihilationRow row{d, l, v.is_zero(), v.times(ctx.ring, ctx.chern.c_top).is_zero()};
        rows.push_back(row);
    }
    return rows;
}

bool annihilation_holds(const std::vector<AnnihilationRow>& rows) {
    for (const auto& r : rows)
        if (!r.b_is_zero) return false;
    return true;
}

bool quot_landing_check(const QDMContext& ctx, const WeylOperator& p, const IFunctionTable& table, long d_max) {
    if (d_max > table.d_max) throw Error("MissingDegree", "table stops at " + std::to_string(table.d_max));
    DegreeTable b = apply_operator(ctx, p, table.A, d_max);
    for (const auto& [d, v] : b)
        if (!v.times(ctx.ring, ctx.chern.c_top).is_zero()) return false;
    return true;
}

long expected_degree(const QDMContext& ctx, const Degree& d) {
    long s = 0;
    for (std::size_t i = 0; i < ctx.sys.m + ctx.sys.c; ++i) s += pairing_with(ctx, i, d);
    return -s;
}

bool homogeneity_check(const QDMContext& ctx, const IFunctionTable& table, long d_max) {
    for (const auto& [d, a] : table.A) {
        bool in_range = true;
        for (long x : d)
            if (x > d_max) in_range = false;
        if (!in_range) continue;
        auto deg = a.degree(ctx.ring);
        if (a.is_zero()) continue;
        if (!deg || *deg != expected_degree(ctx, d)) return false;
    }
    return true;
}

}  // namespace tglab
