#include "tglab/lgfamily.hpp"

#include "tglab/error.hpp"
#include "tglab/intlinalg.hpp"
#include "tglab/linalg.hpp"
#include "tglab/parallel.hpp"
#include "tglab/semigroup.hpp"

#include <algorithm>
#include <sstream>

namespace tglab {

namespace {

std::string monomial_str(const IVec& e, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        os << (first ? "" : "*") << var << k + 1;
        if (e[k] != 1) os << "^" << (e[k] < 0 ? "(" + to_string(e[k]) + ")" : to_string(e[k]));
        first = false;
    }
    return os.str();
}

void add_to(LaurentPoly& p, const IVec& e, const Rat& c) {
    if (c == 0) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) p.erase(it);
}

void check_lambda(const IntegerMatrix& b, const std::vector<Rat>& lambda) {
    if (lambda.size() != b.cols()) throw Error("DimensionMismatch", "one parameter per column is required");
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] == 0) throw Error("ZeroCoefficient", "lambda_" + std::to_string(i + 1) + " = 0");
}

}  // namespace

std::string laurent_str(const LaurentPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        std::string m = monomial_str(it->first, var);
        Rat c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        if (m.empty())
            os << to_short_string(c);
        else if (c == 1)
            os << m;
        else
            os << to_short_string(c) << "*" << m;
        first = false;
    }
    return os.str();
}

LaurentPoly LaurentFamily::evaluate(const std::vector<Rat>& lambda) const {
    if (lambda.size() != t()) throw Error("DimensionMismatch", "one parameter per column is required");
    LaurentPoly p;
    for (std::size_t i = 0; i < t(); ++i) add_to(p, B.col(i), -lambda[i]);
    return p;
}

std::string LaurentFamily::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < t(); ++i) {
        std::string m = monomial_str(B.col(i), "y");
        os << " - l" << i + 1 << (m.empty() ? "" : "*" + m);
    }
    std::string s = os.str();
    return s.empty() ? "0" : "-" + s.substr(3);
}

LaurentFamily build_family(const IntegerMatrix& b) { return LaurentFamily{b}; }

KMRestriction km_restriction(const IntegerMatrix& M, std::size_t m) {
    if (m > M.cols()) throw Error("DimensionMismatch", "m exceeds the number of columns");
    KMRestriction k{M, std::vector<int>(M.cols(), 0)};
    for (std::size_t i = m; i < M.cols(); ++i) k.eps[i] = 1;
    return k;
}

std::string KMFamily::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        std::string q = monomial_str(t.q, "q"), y = monomial_str(t.y, "y");
        std::string m = q.empty() ? y : (y.empty() ? q : q + "*" + y);
        if (m.empty()) m = "1";
        os << (first ? (t.sign < 0 ? "-" : "") : (t.sign < 0 ? " - " : " + ")) << m;
        first = false;
    }
    return first ? "0" : os.str();
}

KMFamily restrict_to_km(const LaurentFamily& fam, const KMRestriction& k) {
    if (k.M.cols() != fam.t()) throw Error("DimensionMismatch", "M must have one column per monomial");
    KMFamily out;
    for (std::size_t i = 0; i < fam.t(); ++i) out.terms.push_back({k.eps[i] ? 1 : -1, k.M.col(i), fam.B.col(i)});
    return out;
}

std::vector<Rat> km_parameters(const KMRestriction& k, const std::vector<Rat>& q) {
    if (q.size() != k.M.rows()) throw Error("DimensionMismatch", "one value per q coordinate is required");
    std::vector<Rat> lambda;
    for (std::size_t i = 0; i < k.M.cols(); ++i) {
        Rat v = k.eps[i] ? -1 : 1;
        for (std::size_t a = 0; a < q.size(); ++a) {
            long e = to_long(k.M(a, i));
            if (e != 0 && q[a] == 0) throw Error("ZeroCoefficient", "q_" + std::to_string(a + 1) + " = 0");
            Rat base = e < 0 ? Rat(1) / q[a] : q[a];
            for (long j = 0; j < (e < 0 ? -e : e); ++j) v *= base;
        }
        lambda.push_back(v);
    }
    return lambda;
}

bool km_matches_theta(const QuantumSystem& s) {
    std::size_t nv = s.m + s.c;
    KMRestriction k = km_restriction(s.M, s.m);
    for (std::size_t i = 0; i < nv; ++i) {
        WeylOperator img = theta_restricted(WeylOperator::lambda(nv, i).all_invertible(), s);
        Monomial mono;
        mono.lambda.assign(s.r, 0);
        mono.partial.assign(s.r, 0);
        for (std::size_t a = 0; a < s.r; ++a) mono.lambda[a] = to_long(k.M(a, i));
        WeylOperator expect = WeylOperator::monomial(s.r, Rat(k.eps[i] ? -1 : 1), mono).all_invertible();
        if (!(img == expect)) return false;
    }
    return true;
}

namespace {

// Lattice points of NB graded by e * (Newton weight).
class NewtonGrading {
public:
    explicit NewtonGrading(const IntegerMatrix& b) : b_(b), q_(Polytope::newton(b)) {
        if (!q_.full_dimensional()) throw Error("NotFullDimensional", "conv(0, B) is not full dimensional");
        std::vector<Int> hs;
        for (const auto& row : q_.facet_inequalities()) {
            IVec r = primitive(row);
            if (r[0] > 0) {
                facets_.push_back(r);
                hs.push_back(r[0]);
            }
        }
        e_ = hs.empty() ? 1 : to_long(lcm_of(hs));
        RVec origin(b.rows(), Rat(0));
        group_ = q_.in_interior(origin);
        if (group_) {
            snf_ = smith_normal_form(b);
        } else {
            AffineSemigroup sg{b, std::nullopt, {}};
            member_.emplace(sg);
            if (!member_->cone().is_pointed())
                throw Error("UnsupportedSemigroup", "cone of B has lines but the origin is on the boundary");
        }
    }

    long e() const { return e_; }
    const Polytope& polytope() const { return q_; }

    long level(const IVec& u) const {
        long best = 0;
        for (const auto& f : facets_) {
            Int num = 0;
            for (std::size_t k = 0; k < u.size(); ++k) num -= f[k + 1] * u[k];
            Int v = num * e_ / f[0];
            best = std::max(best, to_long(v));
        }
        return best;
    }

    bool in_semigroup(const IVec& u) {
        if (!group_) return member_->contains(u);
        IVec w = snf_.U * u;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i < snf_.rank) {
                if (w[i] % snf_.D(i, i) != 0) return false;
            } else if (w[i] != 0) {
                return false;
            }
        }
        return true;
    }

    // Points of NB in scale * conv(0, B).
    std::vector<IVec> points(long scale) {
        std::vector<IVec> out;
        for (const auto& u : q_.lattice_points(scale))
            if (in_semigroup(u)) out.push_back(u);
        return out;
    }

private:
    IntegerMatrix b_;
    Polytope q_;
    std::vector<IVec> facets_;
    long e_ = 1;
    bool group_ = false;
    SmithDecomposition snf_;
    std::optional<SemigroupMembership> member_;
};

using SparseRow = std::map<std::size_t, Rat>;

// Echelon basis keyed by the largest column of each row.
class Echelon {
public:
    void insert(SparseRow row) {
        while (!row.empty()) {
            auto lead = std::prev(row.end());
            auto it = rows_.find(lead->first);
            if (it == rows_.end()) {
                Rat inv = Rat(1) / lead->second;
                for (auto& [k, v] : row) v *= inv;
                rows_.emplace(lead->first, std::move(row));
                return;
            }
            Rat f = lead->second;
            for (const auto& [k, v] : it->second) {
                auto& x = row[k];
                x -= f * v;
                if (x == 0) row.erase(k);
            }
        }
    }
    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::size_t c) const { return rows_.count(c) > 0; }

private:
    std::map<std::size_t, SparseRow> rows_;
};

}  // namespace

JacobianData jacobian_quotient(const IntegerMatrix& b, const std::vector<Rat>& lambda, const JacobianOptions& opt) {
    check_lambda(b, lambda);
    NewtonGrading grading(b);
    std::size_t s = b.rows(), t = b.cols();
    long e = grading.e();
    long cutoff = opt.cutoff > 0 ? opt.cutoff : 4 * static_cast<long>(s + 1);
    long window = std::max<long>(1, opt.window);

    JacobianData out;
    out.denominator = e;
    out.volume = grading.polytope().normalized_volume();

    std::vector<IVec> cols(b.cols());
    for (std::size_t i = 0; i < t; ++i) cols[i] = b.col(i);
    // y_k d f / d y_k = -sum_i lambda_i b_{k i} y^{b_i}
    std::vector<std::vector<std::pair<std::size_t, Rat>>> gens(s);
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t i = 0; i < t; ++i)
            if (b(k, i) != 0) gens[k].push_back({i, -lambda[i] * Rat(b(k, i))});

    std::map<long, std::vector<IVec>> by_level;
    std::map<IVec, std::size_t> index;
    std::vector<IVec> order;
    long loaded = -1;
    Echelon ech;

    auto load = [&](long scale) {
        for (auto& u : grading.points(scale)) {
            long lv = grading.level(u);
            if (lv > (loaded < 0 ? -1 : loaded * e)) by_level[lv].push_back(u);
        }
        loaded = scale;
    };

    for (long lv = 0; lv <= cutoff * e; ++lv) {
        long need = (lv + e - 1) / e;
        if (need > loaded) load(need);
        auto& fresh = by_level[lv];
        std::sort(fresh.begin(), fresh.end());
        for (const auto& u : fresh) {
            index.emplace(u, order.size());
            order.push_back(u);
        }
        if (lv >= e) {
            auto src = by_level.find(lv - e);
            if (src != by_level.end())
                for (const auto& u : src->second)
                    for (std::size_t k = 0; k < s; ++k) {
                        SparseRow row;
                        for (const auto& [i, c] : gens[k]) {
                            IVec w = u;
                            for (std::size_t j = 0; j < s; ++j) w[j] += cols[i][j];
                            auto it = index.find(w);
                            if (it == index.end()) throw Error("InternalError", "product left the weight slice");
                            row[it->second] += c;
                        }
                        for (auto it = row.begin(); it != row.end();)
                            it = it->second == 0 ? row.erase(it) : std::next(it);
                        ech.insert(std::move(row));
                    }
        }
        JacobianSlice sl{Rat(lv, e), order.size(), ech.rank(), order.size() - ech.rank()};
        sl.weight.canonicalize();
        out.slices.push_back(sl);

        std::size_t nsl = out.slices.size();
        if (lv >= static_cast<long>(s) * e && nsl > static_cast<std::size_t>(window * e)) {
            bool flat = true;
            for (long j = 1; j <= window * e; ++j)
                if (out.slices[nsl - 1 - j].dim != sl.dim) flat = false;
            if (flat) {
                out.stabilized = true;
                out.dim = sl.dim;
                for (std::size_t c = 0; c < order.size(); ++c)
                    if (!ech.is_pivot(c)) out.staircase.push_back(order[c]);
                return out;
            }
        }
    }
    out.dim = out.slices.empty() ? 0 : out.slices.back().dim;
    return out;
}

std::size_t jacobian_quotient_dim(const IntegerMatrix& b, const std::vector<Rat>& lambda, const JacobianOptions& opt) {
    JacobianData d = jacobian_quotient(b, lambda, opt);
    if (!d.stabilized) {
        std::ostringstream os;
        os << "no plateau up to weight " << to_short_string(d.slices.back().weight) << "; dims";
        for (const auto& sl : d.slices) os << " " << sl.dim;
        throw Error("StabilizationFailed", os.str());
    }
    return d.dim;
}

FaceSystem face_critical_system(const IntegerMatrix& b, const Face& face, const std::vector<Rat>& lambda) {
    if (lambda.size() != b.cols()) throw Error("DimensionMismatch", "one parameter per column is required");
    FaceSystem sys;
    sys.contains_origin = face.contains_origin;
    LaurentPoly g;
    for (auto p : face.points) {
        if (p == 0) continue;
        sys.columns.push_back(p - 1);
        add_to(g, b.col(p - 1), lambda[p - 1]);
    }
    sys.equations.push_back(g);
    for (std::size_t k = 0; k < b.rows(); ++k) {
        LaurentPoly d;
        for (const auto& [u, c] : g) add_to(d, u, c * Rat(u[k]));
        sys.equations.push_back(d);
    }
    return sys;
}

namespace {

long mod(const Int& x, long p) {
    Int r = x % p;
    if (r < 0) r += p;
    return to_long(r);
}

long pow_mod(long a, long e, long p) {
    long r = 1;
    a %= p;
    while (e > 0) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

std::optional<TorusWitness> torus_witness(const IntegerMatrix& b, const FaceSystem& sys, long p) {
    std::size_t s = b.rows();
    // Monomials and coefficients mod p for each equation.
    std::vector<IVec> monos;
    std::map<IVec, std::size_t> mono_index;
    std::vector<std::vector<std::pair<std::size_t, long>>> eqs;
    for (const auto& eq : sys.equations) {
        std::vector<std::pair<std::size_t, long>> row;
        for (const auto& [u, c] : eq) {
            Int den = c.get_den();
            if (den % p == 0) return std::nullopt;
            long v = mod(c.get_num(), p) * pow_mod(mod(den, p), p - 2, p) % p;
            if (v == 0) continue;
            auto [it, fresh] = mono_index.emplace(u, monos.size());
            if (fresh) monos.push_back(u);
            row.push_back({it->second, v});
        }
        eqs.push_back(row);
    }
    std::size_t first = sys.contains_origin ? 1 : 0;
    // y^u through discrete logarithms to a primitive root.
    long g = 2;
    for (;; ++g) {
        long x = 1, order = 0;
        do {
            x = x * g % p;
            ++order;
        } while (x != 1);
        if (order == p - 1) break;
    }
    std::vector<long> gpow(p - 1), dlog(p);
    for (long a = 0, x = 1; a < p - 1; ++a, x = x * g % p) {
        gpow[a] = x;
        dlog[x] = a;
    }
    std::vector<std::vector<long>> ex(monos.size(), std::vector<long>(s));
    for (std::size_t j = 0; j < monos.size(); ++j)
        for (std::size_t k = 0; k < s; ++k) ex[j][k] = mod(monos[j][k], p - 1);
    std::vector<long> y(s, 1), val(monos.size());
    for (;;) {
        for (std::size_t j = 0; j < monos.size(); ++j) {
            long a = 0;
            for (std::size_t k = 0; k < s; ++k) a += ex[j][k] * dlog[y[k]];
            val[j] = gpow[a % (p - 1)];
        }
        bool ok = true;
        for (std::size_t q = first; q < eqs.size() && ok; ++q) {
            long acc = 0;
            for (const auto& [j, c] : eqs[q]) acc = (acc + c * val[j]) % p;
            if (acc != 0) ok = false;
        }
        if (ok) {
            TorusWitness w{sys.columns, sys.contains_origin, p, y, std::nullopt};
            if (sys.contains_origin) {
                long acc = 0;
                for (const auto& [j, c] : eqs[0]) acc = (acc + c * val[j]) % p;
                w.lambda0 = (p - acc) % p;
            }
            return w;
        }
        std::size_t k = 0;
        while (k < s && y[k] == p - 1) y[k++] = 1;
        if (k == s) break;
        ++y[k];
    }
    return std::nullopt;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Good: return "good";
        case Verdict::NonTameSuspected: return "non_tame_suspected";
        case Verdict::BadSuspected: return "bad_suspected";
    }
    return "";
}

Classification classify_parameter(const IntegerMatrix& b, const std::vector<Rat>& lambda, const JacobianOptions& opt,
                                  const std::vector<long>& primes) {
    check_lambda(b, lambda);
    Classification out;
    out.jacobian = jacobian_quotient(b, lambda, opt);

    Polytope q = Polytope::newton(b);
    std::vector<Face> proper;
    for (const auto& f : q.faces())
        if (f.dim < q.dim()) proper.push_back(f);
    std::vector<std::optional<TorusWitness>> found(proper.size() * primes.size());
    parallel_for(found.size(), [&](std::size_t k) {
        const Face& f = proper[k / primes.size()];
        found[k] = torus_witness(b, face_critical_system(b, f, lambda), primes[k % primes.size()]);
    });
    for (auto& w : found) {
        if (!w) continue;
        (w->contains_origin ? out.non_tame_witnesses : out.bad_witnesses).push_back(*w);
    }

    if (out.jacobian.stabilized)
        out.evidence.push_back("jacobian_dim " + std::to_string(out.jacobian.dim) + " vs volume " +
                               to_string(out.jacobian.volume));
    else
        out.evidence.push_back("jacobian quotient did not stabilize");
    if (!out.bad_witnesses.empty())
        out.evidence.push_back(std::to_string(out.bad_witnesses.size()) + " finite-field witness(es) on faces avoiding 0");
    if (!out.non_tame_witnesses.empty())
        out.evidence.push_back(std::to_string(out.non_tame_witnesses.size()) +
                               " finite-field witness(es) on proper faces through 0");

    bool dim_ok = out.jacobian.stabilized && Int(out.jacobian.dim) == out.jacobian.volume;
    if (!out.bad_witnesses.empty())
        out.verdict = Verdict::BadSuspected;
    else if (!dim_ok)
        out.verdict = Verdict::NonTameSuspected;
    else
        out.verdict = Verdict::Good;
    return out;
}

}  // namespace tglab
