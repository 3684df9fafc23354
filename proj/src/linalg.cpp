#include "tglab/linalg.hpp"

namespace tglab {

RatMatrix to_rat(const IntegerMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

std::vector<Rat> to_rat(const std::vector<Int>& v) {
    return std::vector<Rat>(v.begin(), v.end());
}

RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, r);
        Rat inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return a;
}

std::size_t rank(const RatMatrix& a) {
    std::vector<std::size_t> piv;
    rref(a, &piv);
    return piv.size();
}

std::size_t rank(const IntegerMatrix& a) { return rank(to_rat(a)); }

RatMatrix nullspace(const RatMatrix& a) {
    std::vector<std::size_t> piv;
    RatMatrix r = rref(a, &piv);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<Rat> v(a.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
        basis.push_back(std::move(v));
    }
    return RatMatrix::from_columns(basis, a.cols());
}

std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b) {
    if (b.size() != a.rows()) throw Error("DimensionMismatch", "solve");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    RatMatrix r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    std::vector<Rat> x(a.cols(), Rat(0));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r(k, a.cols());
    return x;
}

RatMatrix inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw Error("DimensionMismatch", "inverse of non-square matrix");
    std::size_t n = a.rows();
    RatMatrix r = rref(hcat(a, RatMatrix::identity(n)));
    for (std::size_t i = 0; i < n; ++i)
        if (r(i, i) != 1) throw Error("Singular", "matrix not invertible");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

Rat det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw Error("DimensionMismatch", "det of non-square matrix");
    RatMatrix a = m;
    std::size_t n = a.rows();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            a.swap_rows(p, c);
            d = -d;
        }
        d *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

Int det(const IntegerMatrix& a) { return det(to_rat(a)).get_num(); }

IntegerMatrix to_integer(const RatMatrix& a) {
    IntegerMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).get_den() != 1) throw Error("NotIntegral", "non-integer entry " + to_string(a(i, j)));
            r(i, j) = a(i, j).get_num();
        }
    return r;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "dot");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "dot");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace tglab
