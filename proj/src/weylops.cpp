#include "tglab/weylops.hpp"

#include "tglab/error.hpp"
#include "tglab/intlinalg.hpp"
#include "tglab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tglab {

namespace {

long degree(const Monomial& m) {
    long d = m.theta;
    for (long x : m.partial) d += x;
    return d;
}

Monomial unit(std::size_t n) {
    Monomial m;
    m.lambda.assign(n, 0);
    m.partial.assign(n, 0);
    return m;
}

void need_same(const WeylOperator& a, const WeylOperator& b) {
    if (a.nvars() != b.nvars()) throw Error("DimensionMismatch", "operators on different variable sets");
}

std::vector<bool> merge(const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<bool> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
    return out;
}

bool integral(const std::vector<Rat>& beta) {
    for (const auto& b : beta)
        if (b.get_den() != 1) return false;
    return true;
}

std::vector<std::vector<Int>> columns(const IntegerMatrix& k) {
    std::vector<std::vector<Int>> out;
    for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k.col(j));
    return out;
}

}  // namespace

bool monomial_less(const Monomial& a, const Monomial& b) {
    long da = degree(a), db = degree(b);
    if (da != db) return da < db;
    if (a.theta != b.theta) return a.theta > b.theta;
    for (std::size_t i = a.partial.size(); i-- > 0;)
        if (a.partial[i] != b.partial[i]) return a.partial[i] > b.partial[i];
    for (std::size_t i = 0; i < a.lambda.size(); ++i)
        if (a.lambda[i] != b.lambda[i]) return a.lambda[i] < b.lambda[i];
    return a.z < b.z;
}

WeylOperator::WeylOperator(std::size_t nvars, std::vector<bool> invertible) : n_(nvars), inv_(std::move(invertible)) {
    if (inv_.empty()) inv_.assign(n_, false);
    if (inv_.size() != n_) throw Error("DimensionMismatch", "invertibility mask");
}

WeylOperator WeylOperator::constant(std::size_t nvars, const Rat& c) {
    WeylOperator op(nvars);
    op.add_term(c, unit(nvars));
    return op;
}

WeylOperator WeylOperator::lambda(std::size_t nvars, std::size_t i, long e) {
    WeylOperator op(nvars);
    if (e < 0) op.inv_[i] = true;
    Monomial m = unit(nvars);
    m.lambda.at(i) = e;
    op.add_term(1, m);
    return op;
}

WeylOperator WeylOperator::partial(std::size_t nvars, std::size_t i, long k) {
    if (k < 0) throw Error("DimensionMismatch", "negative derivative order");
    WeylOperator op(nvars);
    Monomial m = unit(nvars);
    m.partial.at(i) = k;
    op.add_term(1, m);
    return op;
}

WeylOperator WeylOperator::z(std::size_t nvars, long e) {
    WeylOperator op(nvars);
    Monomial m = unit(nvars);
    m.z = e;
    op.add_term(1, m);
    return op;
}

WeylOperator WeylOperator::thetaz(std::size_t nvars, long k) {
    if (k < 0) throw Error("DimensionMismatch", "negative power of z^2 d_z");
    WeylOperator op(nvars);
    Monomial m = unit(nvars);
    m.theta = k;
    op.add_term(1, m);
    return op;
}

WeylOperator WeylOperator::monomial(std::size_t nvars, const Rat& c, const Monomial& m) {
    WeylOperator op(nvars);
    for (std::size_t i = 0; i < nvars && i < m.lambda.size(); ++i)
        if (m.lambda[i] < 0) op.inv_[i] = true;
    op.add_term(c, m);
    return op;
}

WeylOperator WeylOperator::with_invertible(std::vector<bool> mask) const {
    WeylOperator op(n_, std::move(mask));
    for (const auto& [m, c] : t_) op.add_term(c, m);
    return op;
}

WeylOperator WeylOperator::all_invertible() const { return with_invertible(std::vector<bool>(n_, true)); }

void WeylOperator::check(const Monomial& m) const {
    if (m.lambda.size() != n_ || m.partial.size() != n_) throw Error("DimensionMismatch", "monomial length");
    if (m.theta < 0) throw Error("DimensionMismatch", "negative power of z^2 d_z");
    for (std::size_t i = 0; i < n_; ++i) {
        if (m.partial[i] < 0) throw Error("DimensionMismatch", "negative derivative order");
        if (m.lambda[i] < 0 && !inv_[i])
            throw Error("NotInvertible", "lambda_" + std::to_string(i) + " is not invertible");
    }
}

std::vector<Term> WeylOperator::terms() const {
    std::vector<Term> out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) out.push_back({it->second, it->first});
    return out;
}

Rat WeylOperator::coefficient(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rat(0) : it->second;
}

void WeylOperator::add_term(const Rat& c, const Monomial& m) {
    if (c == 0) return;
    check(m);
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

WeylOperator WeylOperator::operator+(const WeylOperator& o) const {
    WeylOperator r = *this;
    r += o;
    return r;
}

WeylOperator WeylOperator::operator-(const WeylOperator& o) const {
    WeylOperator r = *this;
    r -= o;
    return r;
}

WeylOperator WeylOperator::operator-() const { return *this * Rat(-1); }

WeylOperator& WeylOperator::operator+=(const WeylOperator& o) {
    need_same(*this, o);
    inv_ = merge(inv_, o.inv_);
    for (const auto& [m, c] : o.t_) add_term(c, m);
    return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o) {
    need_same(*this, o);
    inv_ = merge(inv_, o.inv_);
    for (const auto& [m, c] : o.t_) add_term(-c, m);
    return *this;
}

WeylOperator WeylOperator::operator*(const Rat& c) const {
    WeylOperator r(n_, inv_);
    for (const auto& [m, x] : t_) r.add_term(x * c, m);
    return r;
}

WeylOperator operator*(const Rat& c, const WeylOperator& op) { return op * c; }

WeylOperator WeylOperator::operator*(const WeylOperator& o) const {
    need_same(*this, o);
    WeylOperator r(n_, merge(inv_, o.inv_));
    for (const auto& [m1, c1] : t_) {
        for (const auto& [m2, c2] : o.t_) {
            // theta^e1 z^a2 and d^b1 lambda^a2 are expanded independently.
            std::vector<std::pair<Rat, long>> zpart;
            for (long k = 0; k <= m1.theta; ++k) {
                Rat w = Rat(binomial(m1.theta, k)) * rising(Rat(m2.z), k);
                if (w != 0) zpart.push_back({w, k});
            }
            std::vector<std::vector<std::pair<Rat, long>>> vpart(n_);
            for (std::size_t i = 0; i < n_; ++i)
                for (long k = 0; k <= m1.partial[i]; ++k) {
                    Rat w = Rat(binomial(m1.partial[i], k)) * falling(Rat(m2.lambda[i]), k);
                    if (w != 0) vpart[i].push_back({w, k});
                }
            Monomial base;
            base.lambda.resize(n_);
            base.partial.resize(n_);
            std::function<void(std::size_t, Rat)> rec = [&](std::size_t i, Rat w) {
                if (i == n_) {
                    for (const auto& [wz, k] : zpart) {
                        Monomial m = base;
                        m.z = m1.z + m2.z + k;
                        m.theta = m1.theta - k + m2.theta;
                        r.add_term(c1 * c2 * w * wz, m);
                    }
                    return;
                }
                for (const auto& [wi, k] : vpart[i]) {
                    base.lambda[i] = m1.lambda[i] + m2.lambda[i] - k;
                    base.partial[i] = m1.partial[i] - k + m2.partial[i];
                    rec(i + 1, w * wi);
                }
            };
            rec(0, Rat(1));
        }
    }
    return r;
}

std::string WeylOperator::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms()) {
        Rat c = t.coeff;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Rat a = abs(c);
        std::vector<std::string> f;
        auto pw = [](const std::string& s, long e) { return e == 1 ? s : s + "^" + std::to_string(e); };
        if (t.mono.z != 0) f.push_back(pw("z", t.mono.z));
        for (std::size_t i = 0; i < n_; ++i)
            if (t.mono.lambda[i] != 0) f.push_back(pw("l" + std::to_string(i), t.mono.lambda[i]));
        if (t.mono.theta != 0) f.push_back(pw("T", t.mono.theta));
        for (std::size_t i = 0; i < n_; ++i)
            if (t.mono.partial[i] != 0) f.push_back(pw("d" + std::to_string(i), t.mono.partial[i]));
        if (f.empty()) {
            os << to_short_string(a);
            continue;
        }
        if (a != 1) os << to_short_string(a) << "*";
        for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "*" : "") << f[k];
    }
    return os.str();
}

WeylOperator normal_order(const std::vector<WeylOperator>& word) {
    if (word.empty()) return WeylOperator::constant(0, 1);
    WeylOperator r = word.front();
    for (std::size_t i = 1; i < word.size(); ++i) r = r * word[i];
    return r;
}

WeylOperator power(const WeylOperator& op, long k) {
    WeylOperator r = WeylOperator::constant(op.nvars(), 1);
    for (long i = 0; i < k; ++i) r = r * op;
    return r;
}

std::vector<WeylOperator> OperatorFamily::all() const {
    std::vector<WeylOperator> out = boxes;
    out.insert(out.end(), eulers.begin(), eulers.end());
    return out;
}

namespace {

// prod over the indices of one sign of factor(i, |l_i|)
WeylOperator signed_product(std::size_t n, const std::vector<Int>& l, int sign,
                            const std::function<WeylOperator(std::size_t, long)>& factor) {
    WeylOperator r = WeylOperator::constant(n, 1);
    for (std::size_t i = 0; i < l.size(); ++i) {
        long v = to_long(l[i]) * sign;
        if (v > 0) r = r * factor(i, v);
    }
    return r;
}

WeylOperator zd(std::size_t n, std::size_t i) { return WeylOperator::z(n) * WeylOperator::partial(n, i); }

WeylOperator zld(std::size_t n, std::size_t i) {
    return WeylOperator::z(n) * WeylOperator::lambda(n, i) * WeylOperator::partial(n, i);
}

WeylOperator euler(std::size_t n, const std::vector<Int>& row, std::size_t offset, bool hat) {
    WeylOperator e(n);
    for (std::size_t i = 0; i < row.size(); ++i) {
        WeylOperator t = hat ? zld(n, i + offset) : WeylOperator::lambda(n, i + offset) * WeylOperator::partial(n, i + offset);
        e += t * Rat(row[i]);
    }
    return e;
}

void check_beta(const IntegerMatrix& b, const std::vector<Rat>& beta, std::size_t extra) {
    if (beta.size() != b.rows() + extra)
        throw Error("DimensionMismatch", "parameter has " + std::to_string(beta.size()) + " entries, expected " +
                                             std::to_string(b.rows() + extra));
}

void check_kernel(const IntegerMatrix& b, const IntegerMatrix& kernel) {
    if (kernel.rows() != b.cols()) throw Error("DimensionMismatch", "kernel basis length");
    if (!(b * kernel).is_zero()) throw Error("NotARelation", "kernel basis is not in the kernel");
}

}  // namespace

WeylOperator gkz_box(std::size_t nvars, const std::vector<Int>& l) {
    if (l.size() != nvars) throw Error("DimensionMismatch", "relation length");
    auto d = [&](std::size_t i, long k) { return WeylOperator::partial(nvars, i, k); };
    return signed_product(nvars, l, -1, d) - signed_product(nvars, l, 1, d);
}

WeylOperator hat_box(std::size_t nvars, const std::vector<Int>& l) {
    if (l.size() != nvars) throw Error("DimensionMismatch", "relation length");
    auto d = [&](std::size_t i, long k) { return power(zd(nvars, i), k); };
    return signed_product(nvars, l, -1, d) - signed_product(nvars, l, 1, d);
}

OperatorFamily gkz_generators(const IntegerMatrix& b, const std::vector<Rat>& beta) {
    return gkz_generators(b, beta, kernel_lattice(b).basis);
}

OperatorFamily gkz_generators(const IntegerMatrix& b, const std::vector<Rat>& beta, const IntegerMatrix& kernel) {
    check_beta(b, beta, 0);
    check_kernel(b, kernel);
    OperatorFamily fam;
    std::size_t n = b.cols();
    fam.nvars = n;
    fam.relations = columns(kernel);
    fam.integral_parameters = integral(beta);
    for (const auto& l : fam.relations) fam.boxes.push_back(gkz_box(n, l));
    for (std::size_t k = 0; k < b.rows(); ++k)
        fam.eulers.push_back(euler(n, b.row(k), 0, false) - WeylOperator::constant(n, beta[k]));
    return fam;
}

std::vector<Int> homogenized_relation(const std::vector<Int>& l) {
    Int s = 0;
    for (const auto& x : l) s += x;
    std::vector<Int> out{-s};
    out.insert(out.end(), l.begin(), l.end());
    return out;
}

OperatorFamily homogenized_generators(const IntegerMatrix& b, const std::vector<Rat>& beta) {
    return homogenized_generators(b, beta, kernel_lattice(b).basis);
}

OperatorFamily homogenized_generators(const IntegerMatrix& b, const std::vector<Rat>& beta, const IntegerMatrix& kernel) {
    check_beta(b, beta, 1);
    check_kernel(b, kernel);
    OperatorFamily fam;
    std::size_t n = b.cols() + 1;
    fam.nvars = n;
    fam.integral_parameters = integral(beta);
    for (const auto& l : columns(kernel)) {
        auto lt = homogenized_relation(l);
        fam.relations.push_back(lt);
        fam.boxes.push_back(gkz_box(n, lt));
    }
    std::vector<Int> ones(n, Int(1));
    fam.eulers.push_back(euler(n, ones, 0, false) - WeylOperator::constant(n, beta[0]));
    for (std::size_t k = 0; k < b.rows(); ++k)
        fam.eulers.push_back(euler(n, b.row(k), 1, false) - WeylOperator::constant(n, beta[k + 1]));
    return fam;
}

OperatorFamily fl_hat_generators(const IntegerMatrix& b, const std::vector<Rat>& beta) {
    return fl_hat_generators(b, beta, kernel_lattice(b).basis);
}

OperatorFamily fl_hat_generators(const IntegerMatrix& b, const std::vector<Rat>& beta, const IntegerMatrix& kernel) {
    check_beta(b, beta, 1);
    check_kernel(b, kernel);
    OperatorFamily fam;
    std::size_t n = b.cols();
    fam.nvars = n;
    fam.relations = columns(kernel);
    fam.integral_parameters = integral(beta);
    for (const auto& l : fam.relations) fam.boxes.push_back(hat_box(n, l));
    std::vector<Int> ones(n, Int(1));
    WeylOperator z = WeylOperator::z(n);
    fam.eulers.push_back(WeylOperator::thetaz(n) + euler(n, ones, 0, true) - z * beta[0]);
    for (std::size_t k = 0; k < b.rows(); ++k) fam.eulers.push_back(euler(n, b.row(k), 0, true) - z * beta[k + 1]);
    return fam;
}

FLImage fl_substitution(const WeylOperator& op) {
    if (op.nvars() == 0) throw Error("DimensionMismatch", "no lambda_0 variable");
    std::size_t n = op.nvars() - 1;
    std::vector<bool> inv(op.invertible().begin() + 1, op.invertible().end());
    FLImage out{WeylOperator(n, inv), 0, WeylOperator(n, inv)};
    bool first = true;
    for (const auto& t : op.terms()) {
        if (t.mono.theta != 0 || t.mono.z != 0)
            throw Error("NotEliminable", "input already contains z or z^2 d_z");
        if (t.mono.lambda[0] < 0) throw Error("NotEliminable", "negative power of lambda_0");
        Monomial rest = unit(n);
        long dsum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            rest.lambda[i] = t.mono.lambda[i + 1];
            rest.partial[i] = t.mono.partial[i + 1];
            dsum += rest.partial[i];
        }
        WeylOperator img = WeylOperator::thetaz(n, t.mono.lambda[0]) * WeylOperator::z(n, -t.mono.partial[0]) *
                           WeylOperator::monomial(n, t.coeff, rest).with_invertible(inv);
        out.image += img;
        long shift = dsum + t.mono.partial[0];
        if (first || shift > out.z_shift) out.z_shift = shift;
        first = false;
    }
    out.normalized = WeylOperator::z(n, out.z_shift) * out.image;
    return out;
}

WeylOperator star_box(std::size_t nvars, const std::vector<Int>& l) {
    if (l.size() != nvars) throw Error("DimensionMismatch", "relation length");
    WeylOperator lz = WeylOperator(nvars, std::vector<bool>(nvars, true));
    auto f = [&](std::size_t i, long k) { return WeylOperator::lambda(nvars, i, k) * power(zd(nvars, i), k); };
    Monomial ml = unit(nvars);
    for (std::size_t i = 0; i < nvars; ++i) ml.lambda[i] = to_long(l[i]);
    WeylOperator lam = WeylOperator::monomial(nvars, 1, ml).all_invertible();
    return (lz + signed_product(nvars, l, 1, f)) - lam * signed_product(nvars, l, -1, f);
}

WeylOperator tilde_box(std::size_t m, std::size_t c, const std::vector<Int>& l) {
    std::size_t n = m + c;
    if (l.size() != n) throw Error("DimensionMismatch", "relation length");
    auto f = [&](std::size_t i, long k) {
        if (i < m) return WeylOperator::lambda(n, i, k) * power(zd(n, i), k);
        WeylOperator r = WeylOperator::constant(n, 1);
        for (long nu = 1; nu <= k; ++nu) r = r * (zld(n, i) - WeylOperator::z(n) * Rat(nu));
        return r;
    };
    Monomial ml = unit(n);
    for (std::size_t i = 0; i < n; ++i) ml.lambda[i] = to_long(l[i]);
    WeylOperator lam = WeylOperator::monomial(n, 1, ml).all_invertible();
    WeylOperator zero(n, std::vector<bool>(n, true));
    return (zero + signed_product(n, l, 1, f)) - lam * signed_product(n, l, -1, f);
}

OperatorFamily star_n_generators(const IntegerMatrix& aprime, std::size_t m, const std::vector<Rat>& beta) {
    return star_n_generators(aprime, m, beta, kernel_lattice(aprime).basis);
}

OperatorFamily star_n_generators(const IntegerMatrix& aprime, std::size_t m, const std::vector<Rat>& beta,
                                 const IntegerMatrix& kernel) {
    check_beta(aprime, beta, 1);
    check_kernel(aprime, kernel);
    if (m > aprime.cols()) throw Error("DimensionMismatch", "more base variables than columns");
    std::size_t n = aprime.cols(), c = n - m;
    OperatorFamily fam;
    fam.nvars = n;
    fam.relations = columns(kernel);
    fam.integral_parameters = integral(beta);
    for (const auto& l : fam.relations) fam.boxes.push_back(tilde_box(m, c, l));
    std::vector<Int> ones(n, Int(1));
    std::vector<bool> all(n, true);
    WeylOperator z = WeylOperator::z(n);
    fam.eulers.push_back((WeylOperator::thetaz(n) + euler(n, ones, 0, true) - z * beta[0]).with_invertible(all));
    for (std::size_t k = 0; k < aprime.rows(); ++k)
        fam.eulers.push_back((euler(n, aprime.row(k), 0, true) - z * beta[k + 1]).with_invertible(all));
    return fam;
}

ShiftCertificate shift_morphism_factorization(const IntegerMatrix& b, const std::vector<Int>& c1,
                                              const std::vector<Int>& c2) {
    std::size_t n = b.cols();
    if (c1.size() != n || c2.size() != n) throw Error("DimensionMismatch", "exponent vectors");
    for (std::size_t i = 0; i < n; ++i)
        if (c1[i] < 0 || c2[i] < 0) throw Error("DimensionMismatch", "exponents must be nonnegative");
    if (b * c1 != b * c2) throw Error("NotSameImage", "B c1 != B c2");
    ShiftCertificate cert;
    Monomial m1 = unit(n), m2 = unit(n), mg = unit(n);
    for (std::size_t i = 0; i < n; ++i) {
        cert.l.push_back(c1[i] - c2[i]);
        cert.g.push_back(c1[i] < c2[i] ? c1[i] : c2[i]);
        cert.box_relation.push_back(c2[i] - c1[i]);
        m1.partial[i] = to_long(c1[i]);
        m2.partial[i] = to_long(c2[i]);
        mg.partial[i] = to_long(cert.g[i]);
    }
    cert.lhs = WeylOperator::monomial(n, 1, m1) - WeylOperator::monomial(n, 1, m2);
    cert.rhs = WeylOperator::monomial(n, 1, mg) * gkz_box(n, cert.box_relation);
    cert.verified = cert.lhs == cert.rhs;
    return cert;
}

WeylOperator duality_morphism(DualityKind kind, std::size_t m, std::size_t c) {
    switch (kind) {
        case DualityKind::Plain: {
            std::size_t n = m + c + 1;
            WeylOperator r = WeylOperator::partial(n, 0);
            for (std::size_t j = 0; j < c; ++j) r = r * WeylOperator::partial(n, 1 + m + j);
            return r;
        }
        case DualityKind::Hat: {
            std::size_t n = m + c;
            WeylOperator r = WeylOperator::constant(n, 1);
            for (std::size_t j = 0; j < c; ++j) r = r * WeylOperator::partial(n, m + j);
            return r;
        }
        case DualityKind::Tilde: {
            std::size_t n = m + c;
            WeylOperator r = WeylOperator::constant(n, 1).all_invertible();
            for (std::size_t j = 0; j < c; ++j) r = r * zld(n, m + j);
            return r;
        }
    }
    return WeylOperator();
}

WeylOperator psi_operator(std::size_t m, std::size_t c) {
    std::size_t n = m + c;
    WeylOperator r = WeylOperator::z(n, static_cast<long>(c)).all_invertible();
    for (std::size_t j = 0; j < c; ++j) r = r * WeylOperator::lambda(n, m + j);
    return r;
}

WeylOperator QuantumSystem::D_hat(std::size_t i) const {
    WeylOperator d = WeylOperator(r, std::vector<bool>(r, true));
    for (std::size_t a = 0; a < r; ++a)
        d += zld(r, a) * Rat(L(i, a));
    return d;
}

WeylOperator QuantumSystem::L_hat(std::size_t j) const { return -D_hat(m + j); }

WeylOperator QuantumSystem::c_top() const { return c_top_shifted(0); }

WeylOperator QuantumSystem::c_top_shifted(long s) const {
    WeylOperator t = WeylOperator::constant(r, 1).all_invertible();
    for (std::size_t j = 0; j < c; ++j) t = t * (L_hat(j) + WeylOperator::z(r) * Rat(s));
    return t;
}

WeylOperator QuantumSystem::q_power(const std::vector<Int>& l) const {
    auto x = M * l;
    Monomial mq = unit(r);
    for (std::size_t a = 0; a < r; ++a) mq.lambda[a] = to_long(x[a]);
    return WeylOperator::monomial(r, 1, mq).all_invertible();
}

WeylOperator qdm_box(const QuantumSystem& s, const std::vector<Int>& l) {
    if (l.size() != s.m + s.c) throw Error("DimensionMismatch", "relation length");
    for (const auto& x : s.Aprime * l)
        if (x != 0) throw Error("NotARelation", "A' l != 0");
    auto side = [&](int sign) {
        WeylOperator t = WeylOperator::constant(s.r, 1).all_invertible();
        WeylOperator z = WeylOperator::z(s.r);
        for (std::size_t i = 0; i < s.m; ++i) {
            long k = to_long(l[i]) * sign;
            for (long nu = 0; nu < k; ++nu) t = t * (s.D_hat(i) - z * Rat(nu));
        }
        for (std::size_t j = 0; j < s.c; ++j) {
            long k = to_long(l[s.m + j]) * sign;
            for (long nu = 1; nu <= k; ++nu) t = t * (s.L_hat(j) + z * Rat(nu));
        }
        return t;
    };
    return side(1) - s.q_power(l) * side(-1);
}

namespace {

void fill_system(QuantumSystem& s, const Fan& f, const IntegerMatrix& d, const IntegerMatrix& basis_p) {
    s.A = f.ray_matrix();
    s.m = s.A.cols();
    s.n = s.A.rows();
    s.c = d.rows();
    if (s.c > 0 && d.cols() != s.m) throw Error("DimensionMismatch", "bundle rows must have one entry per ray");
    s.Aprime = total_matrix(s.A, d);
    IntegerMatrix la = kernel_lattice(s.A).basis;
    s.r = la.cols();
    if (basis_p.rows() != s.r || basis_p.cols() != s.m)
        throw Error("DimensionMismatch", "basis needs " + std::to_string(s.r) + " divisors on " + std::to_string(s.m) +
                                             " rays");
    s.P = basis_p;
    for (std::size_t a = 0; a < s.r; ++a)
        if (!divisor_is_nef(f, basis_p.row(a))) throw Error("BasisNotNef", "p_" + std::to_string(a) + " is not nef");
    IntegerMatrix g = basis_p * la;
    Int dg = det(g);
    if (dg != 1 && dg != -1) throw Error("BasisConditionFailed", "p is not a lattice basis (det " + to_string(dg) + ")");
    IntegerMatrix ginv = to_integer(inverse(to_rat(g)));
    IntegerMatrix lext(s.m + s.c, s.r);
    for (std::size_t a = 0; a < s.r; ++a) {
        auto col = extend_relation(s.A, la.col(a), d);
        for (std::size_t i = 0; i < s.m + s.c; ++i) lext(i, a) = col[i];
    }
    s.L = lext * ginv;
    for (std::size_t a = 0; a < s.r; ++a) {
        Int sum = 0;
        for (std::size_t i = 0; i < s.m + s.c; ++i) sum += s.L(i, a);
        if (sum < 0)
            throw Error("BasisConditionFailed",
                        "sum of all divisor classes has coordinate " + to_string(sum) + " on p_" + std::to_string(a));
    }
    SectionSystem sec = section_system_with_kernel(s.Aprime, s.L);
    s.C = sec.C;
    s.M = sec.M;
    s.relations = columns(s.L);
    for (const auto& l : s.relations) s.Q.push_back(qdm_box(s, l));
    std::size_t r = s.r;
    WeylOperator e = WeylOperator::thetaz(r).all_invertible();
    for (std::size_t i = 0; i < s.m; ++i) e += s.D_hat(i);
    for (std::size_t j = 0; j < s.c; ++j) e -= s.L_hat(j);
    s.E_hat = e;
}

IntegerMatrix default_basis(const Fan& f) {
    IntegerMatrix a = f.ray_matrix();
    SectionSystem sa = section_system_with_kernel(a, kernel_lattice(a).basis);
    Cone nef = nef_cone_anticones(f, sa.L);
    std::size_t r = sa.L.cols();
    if (!nef.is_pointed() || nef.rays.size() != r)
        throw Error("BasisConditionFailed", "nef cone is not simplicial; pass an explicit basis");
    std::vector<IVec> rays;
    for (const auto& v : nef.rays) rays.push_back(primitive_int(v));
    std::sort(rays.begin(), rays.end());
    IntegerMatrix p(r, a.cols());
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<Int> row(a.cols(), Int(0));
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t i = 0; i < a.cols(); ++i) row[i] += rays[k][b] * sa.M(b, i);
        for (std::size_t i = 0; i < a.cols(); ++i) p(k, i) = row[i];
    }
    return p;
}

}  // namespace

QuantumSystem qdm_generators(const Fan& f, const IntegerMatrix& d) { return qdm_generators(f, d, default_basis(f)); }

QuantumSystem qdm_generators(const Fan& f, const IntegerMatrix& d, const IntegerMatrix& basis_p) {
    QuantumSystem s;
    fill_system(s, f, d, basis_p);
    return s;
}

WeylOperator theta_coordinate_change(const WeylOperator& op, const QuantumSystem& s) {
    std::size_t nv = s.m + s.c, nf = s.n + s.c, N = nf + s.r;
    if (op.nvars() != nv) throw Error("DimensionMismatch", "operator must live on lambda_1..lambda_{m+c}");
    std::vector<bool> inv(N, true);
    std::vector<WeylOperator> logd;
    for (std::size_t i = 0; i < nv; ++i) {
        WeylOperator t(N, inv);
        for (std::size_t j = 0; j < nf; ++j)
            t += (WeylOperator::lambda(N, j) * WeylOperator::partial(N, j)) * Rat(s.C(i, j));
        for (std::size_t a = 0; a < s.r; ++a)
            t += (WeylOperator::lambda(N, nf + a) * WeylOperator::partial(N, nf + a)) * Rat(s.L(i, a));
        logd.push_back(t);
    }
    WeylOperator out(N, inv);
    for (const auto& t : op.terms()) {
        std::vector<Int> gamma(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            long g = t.mono.lambda[i] - t.mono.partial[i];
            if (g < 0 && !op.invertible()[i])
                throw Error("NotLogExpressible", "d_" + std::to_string(i) + " not absorbed by lambda_" + std::to_string(i));
            gamma[i] = g;
        }
        Monomial mono = unit(N);
        mono.z = t.mono.z;
        auto fexp = s.Aprime * gamma;
        auto qexp = s.M * gamma;
        for (std::size_t j = 0; j < nf; ++j) mono.lambda[j] = to_long(fexp[j]);
        for (std::size_t a = 0; a < s.r; ++a) mono.lambda[nf + a] = to_long(qexp[a]);
        Int sgn = 0;
        for (std::size_t j = s.m; j < nv; ++j) sgn += gamma[j];
        Rat coeff = t.coeff * (mpz_odd_p(sgn.get_mpz_t()) ? -1 : 1);
        WeylOperator term = WeylOperator::monomial(N, coeff, mono).with_invertible(inv);
        for (std::size_t i = 0; i < nv; ++i)
            for (long nu = 0; nu < t.mono.partial[i]; ++nu)
                term = term * (logd[i] - WeylOperator::constant(N, nu));
        term = term * WeylOperator::thetaz(N, t.mono.theta);
        out += term;
    }
    return out;
}

WeylOperator restrict_i_theta(const WeylOperator& op, std::size_t nf) {
    if (nf > op.nvars()) throw Error("DimensionMismatch", "restriction");
    std::size_t r = op.nvars() - nf;
    std::vector<bool> inv(op.invertible().begin() + nf, op.invertible().end());
    WeylOperator out(r, inv);
    for (const auto& t : op.terms()) {
        bool killed = false;
        for (std::size_t j = 0; j < nf; ++j)
            if (t.mono.partial[j] > 0) killed = true;
        if (killed) continue;
        Monomial m = unit(r);
        m.z = t.mono.z;
        m.theta = t.mono.theta;
        for (std::size_t a = 0; a < r; ++a) {
            m.lambda[a] = t.mono.lambda[nf + a];
            m.partial[a] = t.mono.partial[nf + a];
        }
        out.add_term(t.coeff, m);
    }
    return out;
}

WeylOperator theta_restricted(const WeylOperator& op, const QuantumSystem& s) {
    return restrict_i_theta(theta_coordinate_change(op, s), s.n + s.c);
}

MembershipResult bounded_ideal_membership(const WeylOperator& p, const std::vector<WeylOperator>& generators,
                                          const MembershipOptions& opt) {
    std::size_t n = p.nvars();
    for (const auto& g : generators) need_same(p, g);
    std::vector<bool> inv = p.invertible();
    for (const auto& g : generators) inv = merge(inv, g.invertible());

    std::vector<Monomial> basis;
    long lo = opt.negative_lambda ? -opt.degree_bound : 0;
    Monomial cur = unit(n);
    std::function<void(std::size_t, long)> rec = [&](std::size_t slot, long used) {
        if (slot == 2 * n + 1) {
            for (long a = opt.z_min; a <= opt.z_max; ++a) {
                Monomial m = cur;
                m.z = a;
                basis.push_back(m);
            }
            return;
        }
        long left = opt.degree_bound - used;
        if (slot < n) {
            long from = (inv[slot] ? lo : 0);
            for (long e = from; e <= left; ++e) {
                cur.lambda[slot] = e;
                rec(slot + 1, used + (e < 0 ? -e : e));
            }
            cur.lambda[slot] = 0;
        } else if (slot < 2 * n) {
            for (long e = 0; e <= left; ++e) {
                cur.partial[slot - n] = e;
                rec(slot + 1, used + e);
            }
            cur.partial[slot - n] = 0;
        } else {
            for (long e = 0; e <= left; ++e) {
                cur.theta = e;
                rec(slot + 1, used + e);
            }
            cur.theta = 0;
        }
    };
    rec(0, 0);

    std::vector<WeylOperator> products;
    std::map<Monomial, std::size_t, MonomialLess> rows;
    for (const auto& g : generators)
        for (const auto& m : basis) {
            WeylOperator pr = WeylOperator::monomial(n, 1, m).with_invertible(inv) * g;
            for (const auto& t : pr.terms()) rows.emplace(t.mono, rows.size());
            products.push_back(pr);
        }
    MembershipResult res;
    res.unknowns = products.size();
    for (const auto& t : p.terms())
        if (!rows.count(t.mono)) return res;
    RatMatrix a(rows.size(), products.size());
    for (std::size_t k = 0; k < products.size(); ++k)
        for (const auto& t : products[k].terms()) a(rows.at(t.mono), k) = t.coeff;
    std::vector<Rat> rhs(rows.size(), Rat(0));
    for (const auto& t : p.terms()) rhs[rows.at(t.mono)] = t.coeff;
    auto x = solve(a, rhs);
    if (!x) return res;
    WeylOperator check(n, inv);
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        WeylOperator coef(n, inv);
        for (std::size_t k = 0; k < basis.size(); ++k) coef.add_term((*x)[gi * basis.size() + k], basis[k]);
        check += coef * generators[gi];
        res.coefficients.push_back(coef);
    }
    res.certified = check == p;
    if (!res.certified) res.coefficients.clear();
    return res;
}

}  // namespace tglab
