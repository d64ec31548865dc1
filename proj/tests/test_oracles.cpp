#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qgkm/errors.hpp"
#include "qgkm/fixed_points.hpp"
#include "qgkm/fixtures.hpp"
#include "qgkm/oracles.hpp"

using namespace qgkm;

TEST_CASE("finite-field point counts") {
    SUBCASE("projective line") {
        auto inst = make_a2_p1();
        CHECK(count_points_fq(inst, 2).count == 3);
        CHECK(count_points_fq(inst, 3).count == 4);
    }
    SUBCASE("flag fixture") {
        auto fl = make_fl_n(4);
        CHECK(count_points_fq(fl, 2).count == 315);
        CHECK(count_points_fq(fl, 3).count == 2080);
    }
    SUBCASE("enhanced Schubert fixture") {
        CHECK(count_points_fq(make_x3124(), 2).count == 9);
    }
    SUBCASE("budget guard") {
        auto fl = make_fl_n(4);
        CHECK_THROWS_AS(count_points_fq(fl, 2, 100), BudgetExceeded);
    }
    SUBCASE("non-prime fields are rejected") {
        CHECK_THROWS_AS(count_points_fq(make_a2_p1(), 4), PreconditionError);
    }
    SUBCASE("infeasible dimensions count zero") {
        auto inst = make_a2_p1();
        inst.dim = {2, 1};
        CHECK(count_points_fq(inst, 2).count == 0);
    }
}

TEST_CASE("Hom dimensions by triple count") {
    SUBCASE("one string into the other") {
        auto inst = make_a2_p1();
        FixedPoint u{{0, 1}};
        CHECK(hom_dim_triples(inst, u) == 1);
    }
    SUBCASE("the whole forest has an empty quotient") {
        auto inst = make_a2_p1();
        inst.dim = {2, 2};
        FixedPoint u{{0, 1, 2, 3}};
        CHECK(hom_dim_triples(inst, u) == 0);
    }
    SUBCASE("flag fixture is six everywhere") {
        auto fl = make_fl_n(4);
        for (const auto& u : enumerate_fixed_points(fl.quiver, fl.forest, fl.dim))
            CHECK(hom_dim_triples(fl, u) == 6);
    }
}

TEST_CASE("Bruhat order") {
    SUBCASE("identity below everything") {
        std::vector<int> id{1, 2, 3, 4};
        for (const auto& w : all_permutations(4)) CHECK(bruhat_leq(id, w));
    }
    SUBCASE("rank-matrix dominance examples") {
        CHECK(bruhat_leq({2, 1, 3, 4}, {3, 1, 2, 4}));
        CHECK_FALSE(bruhat_leq({4, 3, 2, 1}, {3, 1, 2, 4}));
    }
    SUBCASE("the interval below 3124 has four elements") {
        int count = 0;
        for (const auto& w : all_permutations(4))
            if (bruhat_leq(w, {3, 1, 2, 4})) ++count;
        CHECK(count == 4);
    }
    SUBCASE("partial order axioms on all of S4") {
        auto perms = all_permutations(4);
        for (const auto& v : perms) CHECK(bruhat_leq(v, v));
        for (const auto& v : perms)
            for (const auto& w : perms) {
                if (v == w) continue;
                if (bruhat_leq(v, w) && bruhat_leq(w, v)) CHECK(false);
                if (bruhat_leq(v, w)) CHECK(inversions(v) <= inversions(w));
            }
    }
}

TEST_CASE("subset-filter fixed points") {
    SUBCASE("agrees with enumeration on the fixtures") {
        for (const auto& name : {"fl_4", "x3124", "a2_p1", "no_gkm_sink", "no_gkm_source"}) {
            Instance inst = make_fixture(name);
            CHECK(brute_force_fixed_points(inst.quiver, inst.forest, inst.dim) ==
                  enumerate_fixed_points(inst.quiver, inst.forest, inst.dim));
        }
    }
    SUBCASE("infeasible dimensions give the empty list") {
        auto inst = make_a2_p1();
        inst.dim = {2, 1};
        CHECK(brute_force_fixed_points(inst.quiver, inst.forest, inst.dim).empty());
    }
    SUBCASE("the size guard trips above sixteen basis vectors") {
        auto fl5 = make_fl_n(6);  // 30 basis vectors
        CHECK_THROWS_AS(brute_force_fixed_points(fl5.quiver, fl5.forest, fl5.dim),
                        PreconditionError);
    }
}

TEST_CASE("interval below 3124 matches the fixed points of the Schubert fixture") {
    auto inst = make_x3124();
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    int below = 0;
    for (const auto& w : all_permutations(4))
        if (bruhat_leq(w, {3, 1, 2, 4})) ++below;
    CHECK(static_cast<size_t>(below) == points.size());
}
