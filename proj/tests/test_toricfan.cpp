#include <catch2/catch_amalgamated.hpp>

#include "tglab/corpus.hpp"
#include "tglab/intlinalg.hpp"
#include "tglab/linalg.hpp"

using namespace tglab;

namespace {

RVec rv(std::initializer_list<long> xs) {
    RVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Fan small_fan(std::vector<std::vector<long>> rays, std::vector<std::vector<std::size_t>> cones) {
    Fan f;
    f.dim = rays[0].size();
    for (const auto& r : rays) f.rays.push_back(to_int_vector(r));
    f.max_cones = std::move(cones);
    return f;
}

}  // namespace

TEST_CASE("validate fan") {
    FanDiagnostics p2 = validate_fan(corpus::p2());
    CHECK(p2.smooth);
    CHECK(p2.complete);
    FanDiagnostics quadrant = validate_fan(small_fan({{1, 0}, {0, 1}}, {{0, 1}}));
    CHECK(quadrant.smooth);
    CHECK_FALSE(quadrant.complete);
    CHECK_FALSE(validate_fan(small_fan({{1, 0}, {1, 2}}, {{0, 1}})).smooth);
    CHECK_THROWS_WITH(validate_fan(small_fan({{2, 0}, {0, 1}}, {{0, 1}})), Catch::Matchers::StartsWith("NonPrimitiveRay"));
    CHECK_THROWS_WITH(validate_fan(small_fan({{1, 0}, {0, 1}}, {{0}})), Catch::Matchers::StartsWith("DimensionMismatch"));
    for (long a : {0L, 1L, 3L}) {
        FanDiagnostics h = validate_fan(corpus::hirzebruch(a));
        CHECK(h.smooth);
        CHECK(h.complete);
    }
    CHECK(validate_fan(corpus::p1xp1()).complete);
    CHECK(validate_fan(corpus::p1()).complete);
}

TEST_CASE("total space fan") {
    Fan t = total_space_fan(corpus::p1(), IntegerMatrix{{2, 0}});
    CHECK(t.dim == 2);
    CHECK(t.rays == std::vector<IVec>{to_int_vector({1, 2}), to_int_vector({-1, 0}), to_int_vector({0, 1})});
    CHECK(t.max_cones == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 2}});
    CHECK(validate_fan(t).smooth);
    Fan same = total_space_fan(corpus::p2(), IntegerMatrix(0, 3));
    CHECK(same.rays == corpus::p2().rays);
    Fan q = total_space_fan(corpus::p1xp1(), IntegerMatrix{{1, 0, 1, 0}});
    CHECK(q.dim == 3);
    CHECK(q.rays.size() == 5);
    CHECK(q.max_cones.size() == 4);
    CHECK(validate_fan(q).smooth);
    CHECK_THROWS_WITH(total_space_fan(corpus::p1(), IntegerMatrix{{-1, 0}}), Catch::Matchers::StartsWith("NegativeCoefficient"));
    CHECK_THROWS_WITH(total_space_fan(small_fan({{1, 0}, {1, 2}}, {{0, 1}}), IntegerMatrix{{1, 0}}),
                      Catch::Matchers::StartsWith("InputNotSmooth"));

    SECTION("cones of Sigma' are exactly the lifts of cones of Sigma") {
        for (const auto& ex : {corpus::p1_o2(), corpus::p2_o1(), corpus::p1xp1_o11()}) {
            Fan tot = total_space_fan(ex.fan, ex.bundles);
            std::size_t m = ex.fan.rays.size();
            for (const auto& c : tot.max_cones) {
                std::vector<std::size_t> proj;
                for (auto i : c)
                    if (i < m) proj.push_back(i);
                CHECK(std::find(ex.fan.max_cones.begin(), ex.fan.max_cones.end(), proj) != ex.fan.max_cones.end());
            }
            CHECK(tot.max_cones.size() == ex.fan.max_cones.size());
        }
    }
}

TEST_CASE("piecewise linear convexity") {
    Convexity ac = pl_is_convex(corpus::p2(), rv({-1, -1, -1}));
    CHECK(ac.convex);
    CHECK(ac.strictly);
    Convexity lin = pl_is_convex(corpus::p2(), rv({2, -3, 1}));
    CHECK(lin.convex);
    CHECK_FALSE(lin.strictly);
    CHECK_FALSE(pl_is_convex(corpus::p1(), rv({1, 0})).convex);
    CHECK_THROWS_WITH(pl_is_convex(small_fan({{1, 0}, {0, 1}}, {{0, 1}}), rv({0, 0})),
                      Catch::Matchers::StartsWith("IncompleteFan"));
    CHECK(divisor_is_nef(corpus::hirzebruch(1), to_int_vector({1, 1, 1, 1})));
    CHECK_FALSE(divisor_is_nef(corpus::hirzebruch(3), to_int_vector({1, 1, 1, 1})));
}

TEST_CASE("nef cone") {
    SECTION("P1xP1 first quadrant") {
        Fan f = corpus::p1xp1();
        IntegerMatrix l = kernel_lattice(f.ray_matrix()).basis;
        auto cls = divisor_classes(l);
        Cone nef = nef_cone_anticones(f, l);
        CHECK(nef.equals(Cone::from_generators(2, {cls[0], cls[2]})));
    }
    SECTION("P2 and P1 are rays") {
        for (const Fan& f : {corpus::p2(), corpus::p1()}) {
            IntegerMatrix l = kernel_lattice(f.ray_matrix()).basis;
            auto cls = divisor_classes(l);
            CHECK(nef_cone_anticones(f, l).equals(Cone::from_generators(1, {cls[0]})));
        }
    }
    SECTION("anticones agree with PL convexity") {
        for (const Fan& f : {corpus::p1(), corpus::p2(), corpus::p1xp1(), corpus::hirzebruch(0), corpus::hirzebruch(1),
                             corpus::hirzebruch(3)}) {
            IntegerMatrix l = kernel_lattice(f.ray_matrix()).basis;
            CHECK(nef_cone_anticones(f, l).equals(nef_cone_pl(f, l)));
        }
    }
    SECTION("non-projective input") {
        Fan f = small_fan({{1, 0}, {0, 1}}, {{0, 1}});
        CHECK_THROWS_WITH(nef_cone_anticones(f), Catch::Matchers::StartsWith("IncompleteFan"));
    }
}

TEST_CASE("pullback and anticanonical consistency") {
    for (const auto& ex : {corpus::p1_o2(), corpus::p2_o1(), corpus::p1xp1_o11()}) {
        INFO(ex.name);
        CHECK(nef_cone_pullback_check(ex.fan, ex.bundles));
        CHECK(anticanonical_consistency(ex.fan, ex.bundles).consistent());
    }
    CHECK(anticanonical_consistency(corpus::p1_o2().fan, corpus::p1_o2().bundles).total_space_nef);
    CHECK_FALSE(anticanonical_consistency(corpus::p1(), IntegerMatrix{{3, 0}}).total_space_nef);
    CHECK(anticanonical_consistency(corpus::p1(), IntegerMatrix{{3, 0}}).consistent());
    CHECK(anticanonical_consistency(corpus::hirzebruch(3), IntegerMatrix{{1, 1, 1, 1}}).consistent());
}

TEST_CASE("convex hull inside the support") {
    CHECK(conv_in_support_check(corpus::p1(), IntegerMatrix{{2, 0}}));
    for (long k = 3; k <= 6; ++k) CHECK(conv_in_support_check(corpus::p1(), IntegerMatrix{{k, 0}}));
    CHECK(conv_in_support_check(corpus::p2(), IntegerMatrix(0, 3)));
    CHECK_THROWS_WITH(conv_in_support_check(corpus::hirzebruch(3), IntegerMatrix{{1, 1, 1, 1}}),
                      Catch::Matchers::StartsWith("BundleNotNef"));
}

TEST_CASE("W set convexity") {
    CHECK(w_set_convexity(corpus::p2(), IntegerMatrix(0, 3)));
    CHECK_FALSE(w_set_convexity(corpus::hirzebruch(3), IntegerMatrix{{1, 1, 1, 1}}));
    for (long k : {-1L, -2L, -3L}) CHECK_FALSE(w_set_convexity(corpus::p1(), IntegerMatrix{{k, 0}}, true));
    WSetReport r = w_set_report(corpus::p1(), IntegerMatrix{{-1, 0}}, true);
    CHECK(r.hull_volume == 3);
    CHECK(r.pieces == 2);
    for (const auto& ex : {corpus::p1_o2(), corpus::p2_o1(), corpus::p1xp1_o11()}) CHECK(w_set_convexity(ex.fan, ex.bundles));
}
