#include "tglab/cohomring.hpp"

#include "tglab/error.hpp"
#include "tglab/linalg.hpp"
#include "tglab/polyhedral.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace tglab {

namespace {

std::vector<std::vector<long>> monomials_of_degree(std::size_t m, long k) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(m, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i + 1 == m) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (long e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    if (m == 0) {
        if (k == 0) out.push_back({});
        return out;
    }
    rec(0, k);
    std::sort(out.begin(), out.end());
    return out;
}

long total(const std::vector<long>& e) {
    long s = 0;
    for (long x : e) s += x;
    return s;
}

}  // namespace

CohomologyRing CohomologyRing::build(const Fan& f) {
    FanDiagnostics diag = validate_fan(f);
    if (!diag.smooth || !diag.complete) throw Error("FanNotSmoothComplete", "cohomology ring needs a smooth complete fan");
    CohomologyRing R;
    R.n_ = f.dim;
    R.m_ = f.rays.size();
    std::size_t m = R.m_;
    IntegerMatrix a = f.ray_matrix();

    std::vector<std::set<std::size_t>> cones;
    for (const auto& c : f.max_cones) cones.emplace_back(c.begin(), c.end());
    auto is_face = [&](const std::vector<std::size_t>& s) {
        for (const auto& c : cones)
            if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
        return false;
    };
    for (std::size_t k = 1; k <= std::min(m, R.n_ + 1); ++k) {
        for_each_subset(m, k, [&](const std::vector<std::size_t>& s) {
            if (is_face(s)) return true;
            for (const auto& known : R.sr_)
                if (std::includes(s.begin(), s.end(), known.begin(), known.end())) return true;
            R.sr_.push_back(s);
            return true;
        });
    }

    std::map<std::vector<long>, std::vector<std::pair<long, Rat>>> sparse;
    for (long k = 0; k <= static_cast<long>(R.n_); ++k) {
        auto mons = monomials_of_degree(m, k);
        std::map<std::vector<long>, std::size_t> index;
        for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
        std::vector<std::vector<Rat>> rows;
        if (k > 0) {
            for (const auto& u : monomials_of_degree(m, k - 1))
                for (std::size_t j = 0; j < a.rows(); ++j) {
                    std::vector<Rat> row(mons.size(), Rat(0));
                    for (std::size_t i = 0; i < m; ++i) {
                        if (a(j, i) == 0) continue;
                        auto v = u;
                        v[i] += 1;
                        row[index.at(v)] += Rat(a(j, i));
                    }
                    rows.push_back(row);
                }
            for (const auto& s : R.sr_) {
                long ds = static_cast<long>(s.size());
                if (ds > k) continue;
                for (auto u : monomials_of_degree(m, k - ds)) {
                    for (std::size_t i : s) u[i] += 1;
                    std::vector<Rat> row(mons.size(), Rat(0));
                    row[index.at(u)] = 1;
                    rows.push_back(row);
                }
            }
        }
        std::vector<std::size_t> pivots;
        RatMatrix red = rows.empty() ? RatMatrix(0, mons.size()) : rref(RatMatrix::from_rows(rows, mons.size()), &pivots);
        std::vector<long> free_index(mons.size(), -1);
        std::set<std::size_t> piv(pivots.begin(), pivots.end());
        for (std::size_t col = 0; col < mons.size(); ++col)
            if (!piv.count(col)) {
                free_index[col] = static_cast<long>(R.basis_.size());
                R.basis_.push_back(mons[col]);
                R.degrees_.push_back(k);
            }
        for (std::size_t col = 0; col < mons.size(); ++col) {
            auto& coords = sparse[mons[col]];
            if (free_index[col] >= 0) {
                coords.push_back({free_index[col], Rat(1)});
                continue;
            }
            std::size_t r = std::find(pivots.begin(), pivots.end(), col) - pivots.begin();
            for (std::size_t f2 = 0; f2 < mons.size(); ++f2)
                if (free_index[f2] >= 0 && red(r, f2) != 0) coords.push_back({free_index[f2], -red(r, f2)});
        }
    }
    for (const auto& [mono, coords] : sparse) {
        CohClass cl(R.basis_.size(), Rat(0));
        for (const auto& [i, v] : coords) cl[i] = v;
        R.nf_[mono] = cl;
    }
    if (R.basis_.size() != f.max_cones.size())
        throw Error("FanNotSmoothComplete", "ring dimension differs from the number of maximal cones");

    std::vector<long> pt(m, 0);
    for (std::size_t i : f.max_cones.front()) pt[i] = 1;
    CohClass p = R.nf_.at(pt);
    Rat s = 0;
    for (std::size_t i = 0; i < R.dim(); ++i)
        if (R.degrees_[i] == static_cast<long>(R.n_)) s += p[i];
    if (s == 0) throw Error("FanNotSmoothComplete", "point class vanishes");
    R.point_scale_ = 1 / s;

    R.table_.assign(R.dim(), std::vector<CohClass>(R.dim()));
    for (std::size_t i = 0; i < R.dim(); ++i)
        for (std::size_t j = 0; j < R.dim(); ++j) {
            std::vector<long> e(m);
            for (std::size_t k = 0; k < m; ++k) e[k] = R.basis_[i][k] + R.basis_[j][k];
            R.table_[i][j] = R.monomial(e);
        }
    return R;
}

CohClass CohomologyRing::zero() const { return CohClass(dim(), Rat(0)); }

CohClass CohomologyRing::one() const { return monomial(std::vector<long>(m_, 0)); }

CohClass CohomologyRing::divisor(std::size_t i) const {
    std::vector<long> e(m_, 0);
    e.at(i) = 1;
    return monomial(e);
}

CohClass CohomologyRing::divisor_combination(const std::vector<Int>& coeffs) const {
    if (coeffs.size() != m_) throw Error("DimensionMismatch", "divisor needs one coefficient per ray");
    CohClass out = zero();
    for (std::size_t i = 0; i < m_; ++i) out = add(out, scale(divisor(i), Rat(coeffs[i])));
    return out;
}

CohClass CohomologyRing::monomial(const std::vector<long>& exps) const {
    if (exps.size() != m_) throw Error("DimensionMismatch", "monomial length");
    if (total(exps) > static_cast<long>(n_)) return zero();
    return nf_.at(exps);
}

CohClass CohomologyRing::add(const CohClass& a, const CohClass& b) const {
    CohClass out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

CohClass CohomologyRing::scale(const CohClass& a, const Rat& s) const {
    CohClass out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = a[i] * s;
    return out;
}

CohClass CohomologyRing::multiply(const CohClass& a, const CohClass& b) const {
    CohClass out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j] == 0) continue;
            Rat w = a[i] * b[j];
            const auto& t = table_[i][j];
            for (std::size_t k = 0; k < dim(); ++k)
                if (t[k] != 0) out[k] += w * t[k];
        }
    }
    return out;
}

CohClass CohomologyRing::power(const CohClass& a, long k) const {
    CohClass out = one();
    for (long i = 0; i < k; ++i) out = multiply(out, a);
    return out;
}

CohClass CohomologyRing::homogeneous_part(const CohClass& a, long k) const {
    CohClass out = zero();
    for (std::size_t i = 0; i < dim(); ++i)
        if (degrees_[i] == k) out[i] = a[i];
    return out;
}

std::optional<long> CohomologyRing::degree_of(const CohClass& a) const {
    std::optional<long> d;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0) continue;
        if (d && *d != degrees_[i]) return std::nullopt;
        d = degrees_[i];
    }
    return d;
}

bool CohomologyRing::is_zero(const CohClass& a) const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Rat CohomologyRing::integral(const CohClass& a) const {
    Rat s = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        if (degrees_[i] == static_cast<long>(n_)) s += a[i];
    return s * point_scale_;
}

RatMatrix CohomologyRing::multiplication_matrix(const CohClass& a) const {
    RatMatrix out(dim(), dim());
    for (std::size_t b = 0; b < dim(); ++b) {
        CohClass e = zero();
        e[b] = 1;
        auto p = multiply(a, e);
        for (std::size_t i = 0; i < dim(); ++i) out(i, b) = p[i];
    }
    return out;
}

std::string CohomologyRing::str(const CohClass& a) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0) continue;
        Rat c = a[i];
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Rat ac = abs(c);
        std::vector<std::string> f;
        for (std::size_t k = 0; k < m_; ++k)
            if (basis_[i][k] > 0)
                f.push_back("D" + std::to_string(k) + (basis_[i][k] > 1 ? "^" + std::to_string(basis_[i][k]) : ""));
        if (f.empty()) {
            os << to_short_string(ac);
            continue;
        }
        if (ac != 1) os << to_short_string(ac) << "*";
        for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "*" : "") << f[k];
    }
    return first ? "0" : os.str();
}

ChernData chern_data(const CohomologyRing& ring, const IntegerMatrix& d) {
    if (d.rows() > 0 && d.cols() != ring.m()) throw Error("DimensionMismatch", "bundle rows must have one entry per ray");
    ChernData out;
    out.c_top = ring.one();
    CohClass sum = ring.zero();
    for (std::size_t j = 0; j < d.rows(); ++j) {
        out.c1.push_back(ring.divisor_combination(d.row(j)));
        out.c_top = ring.multiply(out.c_top, out.c1.back());
        sum = ring.add(sum, out.c1.back());
    }
    CohClass all = ring.zero();
    for (std::size_t i = 0; i < ring.m(); ++i) all = ring.add(all, ring.divisor(i));
    out.euler_class = ring.add(all, ring.scale(sum, -1));
    return out;
}

Rat twisted_pairing(const CohomologyRing& ring, const CohClass& c_top, const CohClass& a, const CohClass& b) {
    return ring.integral(ring.multiply(ring.multiply(a, b), c_top));
}

RatMatrix twisted_pairing_matrix(const CohomologyRing& ring, const CohClass& c_top) {
    RatMatrix g(ring.dim(), ring.dim());
    for (std::size_t i = 0; i < ring.dim(); ++i)
        for (std::size_t j = 0; j < ring.dim(); ++j) {
            CohClass a = ring.zero(), b = ring.zero();
            a[i] = 1;
            b[j] = 1;
            g(i, j) = twisted_pairing(ring, c_top, a, b);
        }
    return g;
}

ReducedRing reduced_ring(const CohomologyRing& ring, const CohClass& c_top) {
    ReducedRing out;
    std::size_t dim = ring.dim();
    out.kernel = nullspace(ring.multiplication_matrix(c_top));
    std::vector<std::vector<Rat>> cols;
    for (std::size_t k = 0; k < out.kernel.cols(); ++k) cols.push_back(out.kernel.col(k));
    std::size_t base_rank = cols.size();
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Rat> e(dim, Rat(0));
        e[i] = 1;
        cols.push_back(e);
        if (rank(RatMatrix::from_columns(cols, dim)) == base_rank + out.basis.size() + 1) {
            out.basis.push_back(i);
        } else {
            cols.pop_back();
        }
    }
    // Coordinates in (basis, kernel); keep the basis part.
    std::vector<std::vector<Rat>> frame;
    for (std::size_t i : out.basis) {
        std::vector<Rat> e(dim, Rat(0));
        e[i] = 1;
        frame.push_back(e);
    }
    for (std::size_t k = 0; k < out.kernel.cols(); ++k) frame.push_back(out.kernel.col(k));
    RatMatrix finv = dim ? inverse(RatMatrix::from_columns(frame, dim)) : RatMatrix();
    out.projection = RatMatrix(out.basis.size(), dim);
    for (std::size_t r = 0; r < out.basis.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) out.projection(r, c) = finv(r, c);

    RatMatrix g = twisted_pairing_matrix(ring, c_top);
    out.pairing = RatMatrix(out.rank(), out.rank());
    for (std::size_t a = 0; a < out.rank(); ++a)
        for (std::size_t b = 0; b < out.rank(); ++b) out.pairing(a, b) = g(out.basis[a], out.basis[b]);
    out.nondegenerate = rank(out.pairing) == out.rank();

    out.kernel_is_ideal = true;
    for (std::size_t k = 0; k < out.kernel.cols(); ++k)
        for (std::size_t b = 0; b < dim; ++b) {
            CohClass e = ring.zero();
            e[b] = 1;
            auto v = ring.multiply(out.kernel.col(k), e);
            if (!ring.is_zero(v) && !ring.is_zero(out.projection * v)) out.kernel_is_ideal = false;
        }
    return out;
}

std::vector<Rat> grading_mu(const CohomologyRing& ring, std::size_t c) {
    std::vector<Rat> out;
    Rat shift(static_cast<long>(ring.n()) - static_cast<long>(c), 2);
    shift.canonicalize();
    for (long d : ring.degrees()) out.push_back(Rat(d) - shift);
    return out;
}

}  // namespace tglab
