#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qgkm/errors.hpp"
#include "qgkm/fixed_points.hpp"
#include "qgkm/fixtures.hpp"
#include "qgkm/oracles.hpp"
#include "qgkm/reduction.hpp"

using namespace qgkm;

TEST_CASE("flexibility") {
    SUBCASE("flag fixture is flexible everywhere") {
        auto fl = make_fl_n(4);
        for (const auto& [v, flex] : is_flexible(fl)) {
            INFO(v);
            CHECK(flex);
        }
    }
    SUBCASE("e = 0 is inflexible everywhere") {
        auto inst = make_a2_p1();
        inst.dim = {0, 0};
        for (const auto& [v, flex] : is_flexible(inst)) CHECK_FALSE(flex);
    }
    SUBCASE("the sink counterexample is flexible everywhere") {
        auto inst = make_no_gkm_sink();
        for (const auto& [v, flex] : is_flexible(inst)) CHECK(flex);
    }
    SUBCASE("out-of-range dimensions are rejected") {
        auto inst = make_a2_p1();
        inst.dim = {3, 1};
        CHECK_THROWS_AS(is_flexible(inst), InfeasibleDimension);
        inst.dim = {-1, 1};
        CHECK_THROWS_AS(is_flexible(inst), InfeasibleDimension);
    }
}

TEST_CASE("flexible reduction") {
    SUBCASE("a full fiber is removed and downstream dimensions drop") {
        auto inst = make_a2_p1();
        inst.dim = {2, 2};  // e = dim M: a single point
        auto reduced = flexible_reduce(inst);
        CHECK_FALSE(reduced.grassmannian_empty);
        CHECK(reduced.instance.quiver.vertex_count() == 0);
        CHECK(reduced.trace.steps.size() == 2);
        CHECK(reduced.trace.steps[0].kind == "remove_vertex");
    }
    SUBCASE("already-flexible instances are untouched") {
        auto fl = make_fl_n(4);
        auto reduced = flexible_reduce(fl);
        CHECK(reduced.trace.empty());
        CHECK(qgkm::testing::snapshot(reduced.instance) == qgkm::testing::snapshot(fl));
    }
    SUBCASE("empty Grassmannians are flagged") {
        auto inst = make_a2_p1();
        inst.dim = {2, 1};
        auto reduced = flexible_reduce(inst);
        CHECK(reduced.grassmannian_empty);
    }
}

TEST_CASE("identity collapsing") {
    SUBCASE("two-point identity string collapses to one vertex") {
        auto inst = make_a2_p1();  // both fibers full, e = (1,1)
        auto reduced = collapse_identity_arrows(inst);
        REQUIRE(reduced.trace.steps.size() == 1);
        CHECK(reduced.instance.quiver.vertex_count() == 1);
        CHECK(reduced.instance.forest.basis_count() == 2);
        CHECK(reduced.instance.dim == std::vector<int>{1});
    }
    SUBCASE("flag fixture is untouched: dimensions differ along arrows") {
        auto fl = make_fl_n(4);
        auto reduced = collapse_identity_arrows(fl);
        CHECK(reduced.trace.empty());
    }
    SUBCASE("the counterexample is untouched") {
        auto inst = make_no_gkm_sink();
        auto reduced = collapse_identity_arrows(inst);
        CHECK(reduced.trace.empty());
    }
}

TEST_CASE("classification verdicts") {
    SUBCASE("flag fixture is a straight GKM instance") {
        CHECK(classify_gkm(make_fl_n(4)).tag == GkmTag::GkmStraight);
    }
    SUBCASE("two-sink counterexample") {
        auto verdict = classify_gkm(make_no_gkm_sink());
        CHECK(verdict.tag == GkmTag::NoGkm);
        REQUIRE(verdict.witness.has_value());
        CHECK(verdict.witness->kind == "two_sink");
    }
    SUBCASE("two-source counterexample") {
        auto verdict = classify_gkm(make_no_gkm_source());
        CHECK(verdict.tag == GkmTag::NoGkm);
        REQUIRE(verdict.witness.has_value());
        CHECK(verdict.witness->kind == "two_source");
    }
    SUBCASE("point instance") {
        CHECK(classify_gkm(make_point()).tag == GkmTag::PointOrEmpty);
    }
    SUBCASE("empty Grassmannian") {
        auto inst = make_a2_p1();
        inst.dim = {2, 1};
        CHECK(classify_gkm(inst).tag == GkmTag::PointOrEmpty);
    }
    SUBCASE("enhanced Schubert fixture reduces to a straight instance") {
        // The full fiber over the path sink is forced, and removing that
        // vertex straightens both tree summands.
        auto verdict = classify_gkm(make_x3124());
        CHECK(verdict.tag == GkmTag::GkmStraight);
        CHECK_FALSE(verdict.trace.empty());
        CHECK(is_straight(verdict.reduced.forest));
    }
    SUBCASE("the Schubert fixture with a loosened sink also straightens") {
        // e_2 = e_3 with full fibers lets the middle arrow collapse.
        auto inst = make_x3124();
        inst.dim = {1, 2, 2, 1};
        CHECK(classify_gkm(inst).tag == GkmTag::GkmStraight);
    }
    SUBCASE("an irreducible tree stays open") {
        auto verdict = classify_gkm(qgkm::testing::irreducible_tree_instance());
        CHECK(verdict.tag == GkmTag::UnknownTree);
        CHECK(verdict.trace.empty());
    }
}

TEST_CASE("reductions preserve the fixed-point count") {
    std::mt19937 rng(5);
    for (int round = 0; round < 25; ++round) {
        Instance inst = qgkm::testing::random_straight_instance(rng);
        long long before =
            euler_characteristic(inst.quiver, inst.forest, inst.dim);
        auto verdict = classify_gkm(inst);
        long long after = euler_characteristic(verdict.reduced.quiver, verdict.reduced.forest,
                                               verdict.reduced.dim);
        if (verdict.reduced.quiver.vertex_count() == 0) after = 1;  // reduced point
        if (before == 0) continue;  // empty stays empty through the trace
        CHECK(before == after);
    }
    auto x = make_x3124();
    auto verdict = classify_gkm(x);
    CHECK(euler_characteristic(verdict.reduced.quiver, verdict.reduced.forest,
                               verdict.reduced.dim) == 4);
}

TEST_CASE("reductions preserve small finite-field point counts") {
    auto check_counts = [](const Instance& before) {
        auto verdict = classify_gkm(before);
        if (verdict.reduced.quiver.vertex_count() == 0) return;
        for (int p : {2, 3}) {
            auto a = count_points_fq(before, p);
            auto b = count_points_fq(verdict.reduced, p);
            CHECK(a.count == b.count);
        }
    };
    check_counts(make_x3124());
    auto a2 = make_a2_p1();
    check_counts(a2);
    std::mt19937 rng(17);
    for (int round = 0; round < 10; ++round)
        check_counts(qgkm::testing::random_straight_instance(rng, 8, 3));
}

TEST_CASE("reduction fixpoints do not depend on the move order") {
    std::vector<Instance> corpus;
    corpus.push_back(make_x3124());
    corpus.push_back(make_a2_p1());
    {
        auto inst = make_a2_p1();
        inst.dim = {2, 2};
        corpus.push_back(inst);
    }
    std::mt19937 rng(29);
    for (int round = 0; round < 10; ++round)
        corpus.push_back(qgkm::testing::random_straight_instance(rng));

    for (const auto& inst : corpus) {
        auto base_flex = qgkm::testing::snapshot(flexible_reduce(inst, 0).instance);
        auto base_col = qgkm::testing::snapshot(collapse_identity_arrows(inst, 0).instance);
        for (unsigned seed = 1; seed <= 5; ++seed) {
            CHECK(qgkm::testing::snapshot(flexible_reduce(inst, seed).instance) == base_flex);
            CHECK(qgkm::testing::snapshot(collapse_identity_arrows(inst, seed).instance) ==
                  base_col);
        }
    }
}
