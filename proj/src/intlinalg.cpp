#include "tglab/intlinalg.hpp"

#include "tglab/linalg.hpp"

namespace tglab {

namespace {

void row_addmul(IntegerMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void col_addmul(IntegerMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
    std::size_t s = a.rows(), t = a.cols();
    IntegerMatrix d = a;
    IntegerMatrix u = IntegerMatrix::identity(s);
    IntegerMatrix v = IntegerMatrix::identity(t);
    std::size_t k = 0;
    for (; k < std::min(s, t); ++k) {
        for (;;) {
            std::size_t pi = s, pj = t;
            for (std::size_t i = k; i < s; ++i)
                for (std::size_t j = k; j < t; ++j)
                    if (d(i, j) != 0 && (pi == s || abs(d(i, j)) < abs(d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == s) break;
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            bool clean = true;
            for (std::size_t i = k + 1; i < s; ++i) {
                if (d(i, k) == 0) continue;
                Int q = floor_div(d(i, k), d(k, k));
                row_addmul(d, i, k, -q);
                row_addmul(u, i, k, -q);
                if (d(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < t; ++j) {
                if (d(k, j) == 0) continue;
                Int q = floor_div(d(k, j), d(k, k));
                col_addmul(d, j, k, -q);
                col_addmul(v, j, k, -q);
                if (d(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = s;
            for (std::size_t i = k + 1; i < s && bad == s; ++i)
                for (std::size_t j = k + 1; j < t; ++j)
                    if (d(i, j) % d(k, k) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == s) break;
            row_addmul(d, k, bad, 1);
            row_addmul(u, k, bad, 1);
        }
        if (k >= s || k >= t || d(k, k) == 0) break;
        if (d(k, k) < 0) {
            for (std::size_t j = 0; j < t; ++j) d(k, j) = -d(k, j);
            for (std::size_t j = 0; j < s; ++j) u(k, j) = -u(k, j);
        }
    }
    SmithDecomposition out{u, d, v, 0};
    while (out.rank < std::min(s, t) && d(out.rank, out.rank) != 0) ++out.rank;
    return out;
}

RelationLattice kernel_lattice(const IntegerMatrix& b) {
    SmithDecomposition snf = smith_normal_form(b);
    std::vector<std::size_t> cs;
    for (std::size_t j = snf.rank; j < b.cols(); ++j) cs.push_back(j);
    return RelationLattice{snf.V.select_columns(cs)};
}

SectionSystem section_system(const IntegerMatrix& b) {
    std::size_t s = b.rows(), t = b.cols();
    SmithDecomposition snf = smith_normal_form(b);
    if (snf.rank != s) throw Error("NotSurjective", "matrix does not have full row rank");
    for (std::size_t i = 0; i < s; ++i)
        if (snf.D(i, i) != 1) throw Error("NotSurjective", "columns do not generate Z^s");
    std::size_t r = t - s;
    IntegerMatrix vinv = to_integer(inverse(to_rat(snf.V)));
    SectionSystem out;
    IntegerMatrix top(t, s), bottom(t, r), mrows(r, t);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < s; ++j) top(i, j) = snf.V(i, j);
        for (std::size_t j = 0; j < r; ++j) bottom(i, j) = snf.V(i, s + j);
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < t; ++j) mrows(i, j) = vinv(s + i, j);
    out.C = top * snf.U;
    out.L = bottom;
    out.M = mrows;
    out.Dmat = (out.C * b).transpose();
    return out;
}

SectionSystem section_system_with_kernel(const IntegerMatrix& b, const IntegerMatrix& kernel) {
    SectionSystem s0 = section_system(b);
    if (kernel.rows() != b.cols() || kernel.cols() != s0.L.cols())
        throw Error("DimensionMismatch", "kernel basis shape");
    if (!(b * kernel).is_zero()) throw Error("NotARelation", "columns are not relations");
    IntegerMatrix g = s0.M * kernel;
    Int dg = det(g);
    if (dg != 1 && dg != -1) throw Error("NotUnimodular", "kernel basis does not span the relation lattice");
    IntegerMatrix ginv = to_integer(inverse(to_rat(g)));
    SectionSystem out;
    out.C = s0.C;
    out.L = kernel;
    out.M = ginv * s0.M;
    out.Dmat = s0.Dmat;
    return out;
}

bool section_identities_hold(const IntegerMatrix& b, const SectionSystem& s) {
    std::size_t t = b.cols(), sr = b.rows(), r = s.L.cols();
    if (s.C.rows() != t || s.C.cols() != sr || s.L.rows() != t || s.M.rows() != r || s.M.cols() != t)
        return false;
    return s.M * s.L == IntegerMatrix::identity(r) && b * s.C == IntegerMatrix::identity(sr) &&
           (b * s.L).is_zero() && (s.M * s.C).is_zero() &&
           s.C * b + s.L * s.M == IntegerMatrix::identity(t);
}

std::vector<Int> extend_relation(const IntegerMatrix& a, const std::vector<Int>& l, const IntegerMatrix& d) {
    if (l.size() != a.cols() || (d.rows() > 0 && d.cols() != a.cols()))
        throw Error("DimensionMismatch", "extend_relation");
    for (const auto& x : a * l)
        if (x != 0) throw Error("NotARelation", "A*l != 0");
    std::vector<Int> out = l;
    for (std::size_t j = 0; j < d.rows(); ++j) {
        Int s = 0;
        for (std::size_t i = 0; i < l.size(); ++i) s += l[i] * d(j, i);
        out.push_back(-s);
    }
    return out;
}

IntegerMatrix homogenize(const IntegerMatrix& b) {
    IntegerMatrix h(b.rows() + 1, b.cols() + 1);
    for (std::size_t j = 0; j <= b.cols(); ++j) h(0, j) = 1;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) h(i + 1, j + 1) = b(i, j);
    return h;
}

IntegerMatrix total_matrix(const IntegerMatrix& a, const IntegerMatrix& d) {
    std::size_t n = a.rows(), m = a.cols(), c = d.rows();
    if (c > 0 && d.cols() != m) throw Error("DimensionMismatch", "bundle rows must have one entry per ray");
    IntegerMatrix out(n + c, m + c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) out(i, j) = a(i, j);
    for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t j = 0; j < m; ++j) out(n + k, j) = d(k, j);
        out(n + k, m + k) = 1;
    }
    return out;
}

}  // namespace tglab
