#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "qgkm/errors.hpp"
#include "qgkm/fixtures.hpp"
#include "qgkm/grading.hpp"

using namespace qgkm;

TEST_CASE("expanding a constructible grading") {
    auto inst = make_a2_p1();
    SUBCASE("edge weight one, starts 0 and 2") {
        ConstructibleGrading g{{{"a", 1}}, {0, 2}};
        auto wt = expand_grading(g, inst.quiver, inst.forest);
        CHECK(wt == std::vector<long long>{0, 1, 2, 3});
    }
    SUBCASE("all-zero grading") {
        ConstructibleGrading g{{}, {0, 0}};
        auto wt = expand_grading(g, inst.quiver, inst.forest);
        CHECK(wt == std::vector<long long>{0, 0, 0, 0});
    }
    SUBCASE("flag fixture staggered starts give 0..11") {
        auto fl = make_fl_n(4);
        ConstructibleGrading g{{{"a1", 1}, {"a2", 1}}, {0, 3, 6, 9}};
        auto wt = expand_grading(g, fl.quiver, fl.forest);
        std::set<long long> values(wt.begin(), wt.end());
        CHECK(values.size() == 12);
        CHECK(*values.begin() == 0);
        CHECK(*values.rbegin() == 11);
    }
}

TEST_CASE("constructibility detection") {
    auto inst = make_a2_p1();
    SUBCASE("round-trip recovers the edge weights") {
        ConstructibleGrading g{{{"a", 5}}, {3, -2}};
        auto wt = expand_grading(g, inst.quiver, inst.forest);
        auto result = is_constructible(wt, inst.quiver, inst.forest);
        CHECK(result.ok);
        CHECK(result.arrow_weights.at("a") == 5);
    }
    SUBCASE("unequal differences are reported per arrow") {
        std::vector<long long> wt{0, 1, 0, 2};
        auto result = is_constructible(wt, inst.quiver, inst.forest);
        CHECK_FALSE(result.ok);
        REQUIRE(result.violations.size() == 1);
        CHECK(result.violations[0].find("a") != std::string::npos);
    }
    SUBCASE("constant gradings are constructible with zero weights") {
        std::vector<long long> wt{7, 7, 7, 7};
        auto result = is_constructible(wt, inst.quiver, inst.forest);
        CHECK(result.ok);
        CHECK(result.arrow_weights.at("a") == 0);
    }
}

TEST_CASE("distinct-weight cocharacter") {
    SUBCASE("two strings") {
        auto inst = make_a2_p1();
        auto chi = distinct_weight_cocharacter(inst.quiver, inst.forest);
        CHECK(chi.gamma == std::vector<long long>{0, 2});
        CHECK(chi.nu == std::vector<long long>{1});
    }
    SUBCASE("flag fixture weights all distinct") {
        auto fl = make_fl_n(4);
        auto chi = distinct_weight_cocharacter(fl.quiver, fl.forest);
        CHECK(chi.gamma == std::vector<long long>{0, 3, 6, 9});
        auto alignment = attractive_aligned(fl);
        auto wt = cocharacter_weights(chi, fl.forest, alignment.basis);
        std::set<long long> values(wt.begin(), wt.end());
        CHECK(values.size() == static_cast<size_t>(fl.forest.basis_count()));
    }
    SUBCASE("single string") {
        Quiver q({"1"}, {});
        CoefficientForest f({{"b", 0}}, {}, {{0}});
        auto chi = distinct_weight_cocharacter(q, f);
        CHECK(chi.gamma == std::vector<long long>{0});
    }
    SUBCASE("rejects non-straight forests") {
        auto tree = make_x3124();
        CHECK_THROWS_AS(distinct_weight_cocharacter(tree.quiver, tree.forest),
                        PreconditionError);
    }
}

TEST_CASE("attractive alignment on the projective line fixture") {
    auto inst = make_a2_p1();
    auto alignment = attractive_aligned(inst);
    CHECK(alignment.sa1_full);
    CHECK_FALSE(alignment.experimental);
    CHECK(check_ag1(alignment.weights, alignment.basis));
    CHECK(check_ag2(alignment.weights, inst.quiver, inst.forest));
    CHECK(check_sa2(alignment.basis, inst.forest));
    // Both fibers are comparable and the grading is strictly increasing.
    for (int v = 0; v < 2; ++v) CHECK(alignment.basis.fiber[v].size() == 2);
    // Equal strings stack by descending component: the second string below.
    CHECK(inst.forest.component_of(alignment.basis.fiber[0][0]) == 1);
    CHECK(inst.forest.component_of(alignment.basis.fiber[0][1]) == 0);
}

TEST_CASE("attractive alignment on the flag fixture") {
    auto fl = make_fl_n(4);
    auto alignment = attractive_aligned(fl);
    CHECK(alignment.sa1_full);
    CHECK(check_ag1(alignment.weights, alignment.basis));
    CHECK(check_ag2(alignment.weights, fl.quiver, fl.forest));
    CHECK(check_sa2(alignment.basis, fl.forest));
    // Component j sits at fiber index n+1-j everywhere.
    for (int v = 0; v < 3; ++v)
        for (int i = 0; i < 4; ++i)
            CHECK(fl.forest.component_of(alignment.basis.fiber[v][i]) == 3 - i);
}

TEST_CASE("alignment reports SA1 conflicts when strings leave along different arrows") {
    Quiver q({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "1", "3"}});
    CoefficientForest f({{"x1", 0}, {"x2", 1}, {"y1", 0}, {"y2", 2}},
                        {{0, 1, 0}, {2, 3, 1}}, {{0, 1}, {2, 3}});
    Instance inst = make_instance(q, f, {1, 1, 1});
    auto alignment = attractive_aligned(inst);
    CHECK_FALSE(alignment.sa1_full);
    CHECK_FALSE(alignment.sa1_conflicts.empty());
    // The relaxed conditions still hold.
    CHECK(check_ag1(alignment.weights, alignment.basis));
    CHECK(check_sa2(alignment.basis, inst.forest));
    CHECK(check_sa1_sinks_above_movers(alignment.basis, inst.forest));
}

TEST_CASE("tree alignment for the enhanced Schubert fixture") {
    auto inst = make_x3124();
    auto alignment = tree_aligned(inst);
    CHECK(alignment.experimental);
    CHECK(check_ag1(alignment.weights, alignment.basis));
    CHECK(check_ag2(alignment.weights, inst.quiver, inst.forest));
    CHECK(check_sa2(alignment.basis, inst.forest));
    // Stacking: the short string lowest, then the tree summands in
    // descending declaration order.
    CHECK(inst.forest.component_of(alignment.basis.fiber[0][0]) == 2);
    CHECK(inst.forest.component_of(alignment.basis.fiber[0][1]) == 1);
    CHECK(inst.forest.component_of(alignment.basis.fiber[0][2]) == 0);
}

TEST_CASE("pairing") {
    Cocharacter chi{{0, 2}, {1}};
    SUBCASE("dot product") {
        Character alpha{{-1, 1}, {0}};
        CHECK(pairing(chi, alpha) == 2);
    }
    SUBCASE("zero character") {
        Character zero{{0, 0}, {0}};
        CHECK(pairing(chi, zero) == 0);
    }
    SUBCASE("dimension mismatch") {
        Character bad{{1}, {0}};
        CHECK_THROWS_AS(pairing(chi, bad), InfeasibleDimension);
    }
}

TEST_CASE("constructed gradings satisfy AG1 and AG2 on random straight instances") {
    std::mt19937 rng(11);
    for (int round = 0; round < 40; ++round) {
        Instance inst = qgkm::testing::random_straight_instance(rng);
        auto alignment = attractive_aligned(inst);
        CHECK(check_ag1(alignment.weights, alignment.basis));
        CHECK(check_ag2(alignment.weights, inst.quiver, inst.forest));
        CHECK(check_sa2(alignment.basis, inst.forest));
        CHECK(check_sa1_sinks_above_movers(alignment.basis, inst.forest));
        auto cons = is_constructible(alignment.weights, inst.quiver, inst.forest);
        CHECK(cons.ok);
    }
}
