#include <catch2/catch_amalgamated.hpp>

#include "tglab/corpus.hpp"
#include "tglab/error.hpp"
#include "tglab/intlinalg.hpp"
#include "tglab/weylops.hpp"

#include <map>
#include <random>

using namespace tglab;
using Catch::Matchers::StartsWith;

namespace {

WeylOperator L(std::size_t n, std::size_t i, long e = 1) { return WeylOperator::lambda(n, i, e); }
WeylOperator D(std::size_t n, std::size_t i, long k = 1) { return WeylOperator::partial(n, i, k); }
WeylOperator Z(std::size_t n, long e = 1) { return WeylOperator::z(n, e); }
WeylOperator T(std::size_t n) { return WeylOperator::thetaz(n); }
WeylOperator K(std::size_t n, long c) { return WeylOperator::constant(n, c); }
WeylOperator zd(std::size_t n, std::size_t i) { return Z(n) * D(n, i); }
WeylOperator zld(std::size_t n, std::size_t i) { return Z(n) * L(n, i) * D(n, i); }

std::vector<Int> iv(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.push_back(x);
    return out;
}

// Functions z^b lambda^gamma; operators act by differentiation.
using Poly = std::map<std::pair<long, std::vector<long>>, Rat>;

Poly act(const WeylOperator& op, const Poly& f) {
    Poly out;
    for (const auto& t : op.terms()) {
        for (const auto& [key, c] : f) {
            auto [b, gamma] = key;
            Rat w = t.coeff * c;
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                w *= falling(Rat(gamma[i]), t.mono.partial[i]);
                gamma[i] += t.mono.lambda[i] - t.mono.partial[i];
            }
            w *= rising(Rat(b), t.mono.theta);
            b += t.mono.theta + t.mono.z;
            if (w == 0) continue;
            out[{b, gamma}] += w;
            if (out[{b, gamma}] == 0) out.erase({b, gamma});
        }
    }
    return out;
}

WeylOperator random_op(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> zd(-1, 1), td(0, 1), ld(-1, 2), dd(0, 2), cd(-3, 3), nt(1, 3);
    WeylOperator op = WeylOperator(n, std::vector<bool>(n, true));
    long terms = nt(rng);
    for (long k = 0; k < terms; ++k) {
        Monomial m;
        m.z = zd(rng);
        m.theta = td(rng);
        long deg = m.theta;
        for (std::size_t i = 0; i < n; ++i) {
            m.lambda.push_back(ld(rng));
            long d = deg < 4 ? std::min<long>(dd(rng), 4 - deg) : 0;
            m.partial.push_back(d);
            deg += d;
        }
        op.add_term(cd(rng), m);
    }
    return op;
}

std::vector<corpus::Example> bundle_examples() {
    return {corpus::p1_o2(), corpus::p2_o1(), corpus::p1xp1_o11(), corpus::f3_anticanonical()};
}

std::vector<corpus::Example> all_examples() {
    auto v = bundle_examples();
    v.push_back(corpus::p1_bare());
    v.push_back(corpus::p2_bare());
    return v;
}

IntegerMatrix aprime_of(const corpus::Example& e) { return total_matrix(e.fan.ray_matrix(), e.bundles); }

}  // namespace

TEST_CASE("normal ordering rules") {
    CHECK(D(1, 0) * L(1, 0) == L(1, 0) * D(1, 0) + K(1, 1));
    CHECK(T(1) * Z(1) == Z(1) * T(1) + Z(1, 2));
    WeylOperator e = L(1, 0) * D(1, 0);
    CHECK(e * e == L(1, 0, 2) * D(1, 0, 2) + e);
    CHECK(normal_order({D(1, 0), L(1, 0)}) == (D(1, 0) * L(1, 0)));
    CHECK(T(1) * Z(1, -1) == Z(1, -1) * T(1) - K(1, 1));
    CHECK((D(2, 0) * L(2, 1)) == (L(2, 1) * D(2, 0)));
    CHECK_THROWS_WITH(L(1, 0, -1).with_invertible({false}), StartsWith("NotInvertible"));
    CHECK(WeylOperator(1).is_zero());
}

TEST_CASE("normal ordering is associative and faithful on monomials") {
    std::mt19937 rng(20261015);
    std::vector<Poly> tests;
    for (long b : {-2, 1, 3})
        for (long g0 : {-1, 0, 2, 5})
        {
            Poly f;
            f[{b, {g0, 3 - g0}}] = 1;
            tests.push_back(f);
        }
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_op(rng, 2), b = random_op(rng, 2), c = random_op(rng, 2);
        REQUIRE((a * b) * c == a * (b * c));
        for (const auto& f : tests) REQUIRE((act(a * b, f) == act(a, act(b, f))));
    }
}

TEST_CASE("term order is deterministic") {
    WeylOperator op = D(2, 0) * D(2, 1) + L(2, 0) + T(2) * D(2, 1) + Z(2, 3) + K(2, 1);
    auto ts = op.terms();
    REQUIRE(ts.size() == 5);
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(monomial_less(ts[i].mono, ts[i - 1].mono));
    CHECK(op.str() == "d0*d1 + T*d1 + l0 + z^3 + 1");
}

TEST_CASE("gkz generators") {
    IntegerMatrix ap = aprime_of(corpus::p1_o2());
    CHECK(gkz_box(3, iv({1, 1, -2})) == D(3, 2, 2) - D(3, 0) * D(3, 1));
    CHECK(gkz_box(3, iv({0, 0, 0})).is_zero());
    auto fam = gkz_generators(ap, {0, 0}, IntegerMatrix{{1}, {1}, {-2}});
    REQUIRE(fam.eulers.size() == 2);
    CHECK(fam.eulers[0] == L(3, 0) * D(3, 0) - L(3, 1) * D(3, 1));
    CHECK(fam.eulers[1] == L(3, 0) * D(3, 0) * Rat(2) + L(3, 2) * D(3, 2));
    CHECK(fam.boxes[0] == D(3, 2, 2) - D(3, 0) * D(3, 1));
    auto shifted = gkz_generators(ap, {1, Rat(1, 2)});
    CHECK_FALSE(shifted.integral_parameters);
    CHECK(shifted.eulers[0] == fam.eulers[0] - K(3, 1));
    CHECK_THROWS_WITH(gkz_generators(ap, {0}), StartsWith("DimensionMismatch"));
}

TEST_CASE("homogenized generators") {
    IntegerMatrix a1 = corpus::p1().ray_matrix();
    auto fam = homogenized_generators(a1, {0, 0}, IntegerMatrix{{1}, {1}});
    CHECK(fam.relations[0] == iv({-2, 1, 1}));
    // Opposite overall sign to the listed form d1 d2 - d0^2.
    CHECK(fam.boxes[0] == -(D(3, 1) * D(3, 2) - D(3, 0, 2)));
    CHECK(fam.eulers[0] == L(3, 0) * D(3, 0) + L(3, 1) * D(3, 1) + L(3, 2) * D(3, 2));
    CHECK(fam.eulers[1] == L(3, 1) * D(3, 1) - L(3, 2) * D(3, 2));

    IntegerMatrix a2 = corpus::p2().ray_matrix();
    auto f2 = homogenized_generators(a2, {0, 0, 0}, IntegerMatrix{{1}, {1}, {1}});
    CHECK(f2.boxes[0] == -(D(4, 1) * D(4, 2) * D(4, 3) - D(4, 0, 3)));

    IntegerMatrix ap = aprime_of(corpus::p1_o2());
    auto f3 = homogenized_generators(ap, {0, 0, 0}, IntegerMatrix{{1}, {1}, {-2}});
    CHECK(f3.relations[0] == iv({0, 1, 1, -2}));
    CHECK(f3.boxes[0] == D(4, 3, 2) - D(4, 1) * D(4, 2));
    CHECK_THROWS_WITH(homogenized_generators(a2, {0, 0}), StartsWith("DimensionMismatch"));
}

TEST_CASE("Fourier-Laplace hat generators") {
    IntegerMatrix ap = aprime_of(corpus::p1_o2());
    auto fam = fl_hat_generators(ap, {0, 0, 0}, IntegerMatrix{{1}, {1}, {-2}});
    CHECK(fam.boxes[0] == zd(3, 2) * zd(3, 2) - zd(3, 0) * zd(3, 1));
    for (std::size_t k = 1; k < fam.eulers.size(); ++k)
        for (const auto& t : fam.eulers[k].terms()) CHECK(t.mono.partial != std::vector<long>(3, 0));
    IntegerMatrix a2 = corpus::p2().ray_matrix();
    auto f2 = fl_hat_generators(a2, {0, 0, 0});
    CHECK(f2.eulers[0] == T(3) + Z(3) * (L(3, 0) * D(3, 0) + L(3, 1) * D(3, 1) + L(3, 2) * D(3, 2)));
    auto f3 = fl_hat_generators(a2, {2, 1, 0});
    CHECK(f3.eulers[0] == f2.eulers[0] - Z(3) * Rat(2));
    CHECK(f3.eulers[1] == f2.eulers[1] - Z(3));
}

TEST_CASE("Fourier-Laplace substitution") {
    auto d0 = fl_substitution(D(1, 0));
    CHECK(d0.image == WeylOperator::z(0, -1));
    CHECK(fl_substitution(L(1, 0)).image == WeylOperator::thetaz(0));

    IntegerMatrix a2 = corpus::p2().ray_matrix();
    auto f2 = homogenized_generators(a2, {0, 0, 0}, IntegerMatrix{{1}, {1}, {1}});
    auto img = fl_substitution(f2.boxes[0]);
    CHECK(img.z_shift == 3);
    CHECK(img.normalized == hat_box(3, iv({1, 1, 1})));
    CHECK(img.normalized == K(3, 1) - zd(3, 0) * zd(3, 1) * zd(3, 2));

    for (long b0 : {0, -1, 3}) {
        auto h = homogenized_generators(a2, {b0, 0, 0});
        auto hat = fl_hat_generators(a2, {b0 + 1, 0, 0});
        auto e = fl_substitution(h.eulers[0]);
        CHECK(e.z_shift == 1);
        CHECK(e.normalized == hat.eulers[0]);
        for (std::size_t k = 1; k < h.eulers.size(); ++k) {
            auto ek = fl_substitution(h.eulers[k]);
            CHECK(ek.normalized == hat.eulers[k]);
        }
    }
    CHECK_THROWS_WITH(fl_substitution(T(2)), StartsWith("NotEliminable"));
    CHECK_THROWS_WITH(fl_substitution(L(2, 0, -1)), StartsWith("NotEliminable"));
}

TEST_CASE("FL of homogenized boxes matches hat boxes for every corpus relation") {
    for (const auto& e : all_examples()) {
        IntegerMatrix ap = aprime_of(e);
        std::vector<Rat> beta(ap.rows() + 1, Rat(0));
        auto h = homogenized_generators(ap, beta);
        auto hat = fl_hat_generators(ap, beta);
        REQUIRE(h.boxes.size() == hat.boxes.size());
        for (std::size_t k = 0; k < h.boxes.size(); ++k) {
            auto img = fl_substitution(h.boxes[k]);
            INFO(e.name << " relation " << k);
            CHECK(img.normalized == hat.boxes[k]);
        }
    }
}

TEST_CASE("star N generators") {
    IntegerMatrix ap = aprime_of(corpus::p1_o2());
    auto fam = star_n_generators(ap, 2, {0, 0, 0}, IntegerMatrix{{1}, {1}, {-2}});
    std::vector<bool> all(3, true);
    WeylOperator lam = WeylOperator::monomial(3, 1, Monomial{0, 0, {1, 1, -2}, {0, 0, 0}});
    WeylOperator expect = L(3, 0) * zd(3, 0) * L(3, 1) * zd(3, 1) -
                          lam * (zld(3, 2) - Z(3)) * (zld(3, 2) - Z(3) * Rat(2));
    CHECK(fam.boxes[0] == expect.with_invertible(all));
    CHECK(fam.eulers[0] == (T(3) + zld(3, 0) + zld(3, 1) + zld(3, 2)).with_invertible(all));

    for (const auto& l : {iv({1, 1, 1}), iv({2, -1, -1}), iv({0, 0, 0})})
        CHECK(tilde_box(3, 0, l) == star_box(3, l));
    // A zero bundle entry contributes no factor.
    CHECK(tilde_box(2, 1, iv({1, -1, 0})) == star_box(3, iv({1, -1, 0})));

    for (const auto& l : {iv({1, 1, -2}), iv({2, -1, 0}), iv({-1, 0, 3})}) {
        Monomial mp{0, 0, {}, {0, 0, 0}};
        for (const auto& x : l) mp.lambda.push_back(x > 0 ? to_long(x) : 0);
        WeylOperator lp = WeylOperator::monomial(3, 1, mp).with_invertible(all);
        CHECK(star_box(3, l) == -(lp * hat_box(3, l)));
    }
}

TEST_CASE("quantum D-module generators") {
    auto p2 = qdm_generators(corpus::p2(), IntegerMatrix(0, 3));
    REQUIRE(p2.r == 1);
    CHECK(p2.L.col(0) == iv({1, 1, 1}));
    WeylOperator p = zld(1, 0).all_invertible();
    CHECK(p2.Q[0] == p * p * p - L(1, 0));
    CHECK(qdm_box(p2, iv({0, 0, 0})).is_zero());

    auto e = corpus::p1_o2();
    auto s = qdm_generators(e.fan, e.bundles);
    REQUIRE(s.L.col(0) == iv({1, 1, -2}));
    CHECK(s.Q[0] == p * p - L(1, 0) * (p * Rat(2) + Z(1)) * (p * Rat(2) + Z(1) * Rat(2)));
    CHECK(s.E_hat == T(1).all_invertible());
    CHECK(s.c_top() == p * Rat(2));
    CHECK((s.M * s.C).is_zero());
    CHECK(s.M * s.L == IntegerMatrix::identity(1));
    CHECK((s.Aprime * s.C) == IntegerMatrix::identity(2));

    CHECK_THROWS_WITH(qdm_generators(corpus::p1(), IntegerMatrix(0, 2), IntegerMatrix{{-1, 0}}), StartsWith("BasisNotNef"));
    CHECK_THROWS_WITH(qdm_generators(corpus::p1(), IntegerMatrix(0, 2), IntegerMatrix{{2, 0}}),
                      StartsWith("BasisConditionFailed"));
    CHECK_THROWS_WITH(qdm_generators(corpus::p1(), IntegerMatrix{{3, 0}}), StartsWith("BasisConditionFailed"));

    auto pp = qdm_generators(corpus::p1xp1(), IntegerMatrix{{1, 0, 1, 0}}, IntegerMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}});
    CHECK(pp.L.col(0) == iv({1, 1, 0, 0, -1}));
    CHECK(pp.L.col(1) == iv({0, 0, 1, 1, -1}));
}

TEST_CASE("shift morphism factorization") {
    IntegerMatrix bt = homogenize(corpus::p1().ray_matrix());
    auto same = shift_morphism_factorization(bt, iv({1, 2, 0}), iv({1, 2, 0}));
    CHECK(same.lhs.is_zero());
    CHECK(same.verified);
    auto cert = shift_morphism_factorization(bt, iv({0, 1, 1}), iv({2, 0, 0}));
    CHECK(cert.verified);
    CHECK(cert.lhs == D(3, 1) * D(3, 2) - D(3, 0, 2));
    CHECK(cert.l == iv({-2, 1, 1}));
    CHECK_THROWS_WITH(shift_morphism_factorization(bt, iv({1, 0, 0}), iv({0, 1, 0})), StartsWith("NotSameImage"));

    IntegerMatrix bo = homogenize(aprime_of(corpus::p1_o2()));
    auto c2 = shift_morphism_factorization(bo, iv({0, 1, 1, 0}), iv({0, 0, 0, 2}));
    CHECK(c2.verified);
    CHECK(c2.rhs == D(4, 1) * D(4, 2) - D(4, 3, 2));

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> small(-2, 2), base(0, 3);
    for (const auto& e : all_examples()) {
        IntegerMatrix b = homogenize(aprime_of(e));
        IntegerMatrix ker = kernel_lattice(b).basis;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Int> k(b.cols(), Int(0));
            for (std::size_t j = 0; j < ker.cols(); ++j) {
                long x = small(rng);
                for (std::size_t i = 0; i < b.cols(); ++i) k[i] += x * ker(i, j);
            }
            std::vector<Int> c1(b.cols()), c2v(b.cols());
            for (std::size_t i = 0; i < b.cols(); ++i) {
                c1[i] = base(rng);
                c2v[i] = c1[i] - k[i];
            }
            Int lo = 0;
            for (const auto& x : c2v) lo = std::min(lo, x);
            for (std::size_t i = 0; i < b.cols(); ++i) {
                c1[i] -= lo;
                c2v[i] -= lo;
            }
            INFO(e.name);
            CHECK(shift_morphism_factorization(b, c1, c2v).verified);
        }
    }
}

TEST_CASE("duality morphisms") {
    CHECK(duality_morphism(DualityKind::Hat, 3, 0) == K(3, 1));
    CHECK(duality_morphism(DualityKind::Tilde, 3, 0) == K(3, 1));
    CHECK(duality_morphism(DualityKind::Tilde, 2, 1) == zld(3, 2));
    CHECK(duality_morphism(DualityKind::Plain, 2, 1) == D(4, 0) * D(4, 3));
    WeylOperator t2 = duality_morphism(DualityKind::Tilde, 2, 2);
    CHECK(t2 == zld(4, 3) * zld(4, 2));
    CHECK(t2 == zld(4, 2) * zld(4, 3));
    for (std::size_t m : {1, 2, 4})
        for (std::size_t c : {0, 1, 2})
            CHECK(duality_morphism(DualityKind::Tilde, m, c) ==
                  psi_operator(m, c) * duality_morphism(DualityKind::Hat, m, c));
}

TEST_CASE("theta coordinate change") {
    for (const auto& e : {corpus::p1_o2(), corpus::p2_o1(), corpus::p1xp1_o11()}) {
        INFO(e.name);
        auto s = qdm_generators(e.fan, e.bundles);
        IntegerMatrix ap = s.Aprime;
        std::size_t nv = s.m + s.c, nf = s.n + s.c;
        std::vector<Rat> beta(ap.rows() + 1, Rat(0));
        auto fam = star_n_generators(ap, s.m, beta, s.L);
        for (std::size_t k = 0; k < fam.boxes.size(); ++k) CHECK(theta_restricted(fam.boxes[k], s) == s.Q[k]);
        CHECK(theta_restricted(fam.eulers[0], s) == s.E_hat);
        for (std::size_t k = 1; k < fam.eulers.size(); ++k) {
            WeylOperator full = theta_coordinate_change(fam.eulers[k], s);
            std::size_t N = nf + s.r;
            CHECK(full == (WeylOperator::z(N) * WeylOperator::lambda(N, k - 1) * WeylOperator::partial(N, k - 1))
                              .all_invertible());
            CHECK(theta_restricted(fam.eulers[k], s).is_zero());
        }
        CHECK(theta_restricted(K(nv, 5), s) == K(s.r, 5).all_invertible());
    }
    auto s = qdm_generators(corpus::p1_o2().fan, corpus::p1_o2().bundles);
    // Relations with a positive bundle entry pick up a sign.
    auto l = iv({-1, -1, 2});
    CHECK(theta_restricted(tilde_box(2, 1, l), s) == qdm_box(s, l));
    CHECK(theta_restricted(tilde_box(2, 1, iv({2, 2, -4})), s) == qdm_box(s, iv({2, 2, -4})));
    CHECK_THROWS_WITH(theta_coordinate_change(D(3, 0), s), StartsWith("NotLogExpressible"));
}

TEST_CASE("bounded ideal membership") {
    IntegerMatrix ap = aprime_of(corpus::p1_o2());
    auto fam = fl_hat_generators(ap, {0, 0, 0});
    auto gens = fam.all();
    MembershipOptions opt;
    opt.degree_bound = 1;
    auto r1 = bounded_ideal_membership(fam.boxes[0], gens, opt);
    CHECK(r1.certified);
    auto r2 = bounded_ideal_membership(L(3, 0) * fam.boxes[0] + fam.eulers[1], gens, opt);
    CHECK(r2.certified);

    auto p2 = qdm_generators(corpus::p2(), IntegerMatrix(0, 3));
    MembershipOptions o3;
    o3.degree_bound = 3;
    o3.z_min = -1;
    o3.z_max = 1;
    o3.negative_lambda = true;
    auto r3 = bounded_ideal_membership(K(1, 1).all_invertible(), {p2.Q[0], p2.E_hat}, o3);
    CHECK_FALSE(r3.certified);
    CHECK(r3.coefficients.empty());

    auto s = qdm_generators(corpus::p1_o2().fan, corpus::p1_o2().bundles);
    WeylOperator p = zld(1, 0).all_invertible();
    WeylOperator p0 = p - (p * Rat(2) - Z(1)) * L(1, 0) * Rat(2);
    CHECK(s.c_top() * p0 == s.Q[0] * Rat(2));
    MembershipOptions o0;
    o0.degree_bound = 0;
    auto r4 = bounded_ideal_membership(s.c_top() * p0, {s.Q[0], s.E_hat}, o0);
    CHECK(r4.certified);
}
