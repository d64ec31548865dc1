// Randomized battery over straight instances: the cross-validation net tying
// cells, mutations, gradings, point counts and classes together.
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qgkm/cohomology.hpp"
#include "qgkm/fixtures.hpp"
#include "qgkm/moment_graph.hpp"
#include "qgkm/oracles.hpp"

using namespace qgkm;

namespace {

// The triple count equals the mutation count only when the support quiver is
// acyclic: a string winding a cycle meets itself over a vertex, and the
// resulting Hom triples have no successor-closed cut-and-paste counterpart.
bool support_is_acyclic(const Instance& inst) {
    int nv = inst.quiver.vertex_count();
    std::vector<std::vector<int>> out(nv);
    std::vector<int> indeg(nv, 0);
    for (const auto& a : inst.forest.arrows()) {
        int arrow = a.over;
        out[inst.quiver.arrow_source(arrow)].push_back(inst.quiver.arrow_target(arrow));
        ++indeg[inst.quiver.arrow_target(arrow)];
    }
    std::vector<int> stack;
    for (int v = 0; v < nv; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : out[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return seen == nv;
}

void run_battery(const Instance& inst, bool with_classes) {
    auto alignment = attractive_aligned(inst);
    CHECK(check_ag1(alignment.weights, alignment.basis));
    CHECK(check_ag2(alignment.weights, inst.quiver, inst.forest));

    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    CHECK(points == brute_force_fixed_points(inst.quiver, inst.forest, inst.dim));

    auto g = build_moment_graph(inst, alignment);
    auto out = g.out_degree();
    auto in = g.in_degree();
    auto poincare = poincare_polynomial(inst, alignment);

    bool acyclic = support_is_acyclic(inst);
    long long edge_sum = 0;
    for (size_t i = 0; i < points.size(); ++i) {
        int cell = initial_parameters(inst.forest, alignment.basis, points[i]).dimension;
        CHECK(out[i] == cell);
        int degree = out[i] + in[i];
        CHECK(degree == tangent_dimension(inst, alignment.basis, points[i]));
        if (acyclic) CHECK(degree == hom_dim_triples(inst, points[i]));
        edge_sum += cell;
    }
    CHECK(edge_sum == static_cast<long long>(g.edges.size()));
    CHECK(poincare.derivative_at_one() == static_cast<long long>(g.edges.size()));

    for (const auto& e : g.edges) CHECK(pairing(g.chi, e.label) > 0);

    for (int p : {2, 3}) CHECK(count_points_fq(inst, p).count == poincare.at(p));

    auto strata = hall_strata(inst);
    for (const auto& stratum : strata) {
        int expected = -1;
        for (int i : stratum.members) {
            int dim = tangent_dimension(inst, alignment.basis, points[i]);
            if (expected == -1) expected = dim;
            CHECK(dim == expected);
        }
    }

    if (with_classes) {
        auto basis = kt_basis(g);
        for (size_t i = 0; i < basis.classes.size(); ++i) {
            CHECK(basis.classes[i].degree == out[i]);
            CHECK(verify_gkm_section(g, GkmSection{basis.classes[i].components}).ok);
        }
        if (is_palais_smale(g)) CHECK(basis.unique);
    }
}

}  // namespace

TEST_CASE("battery over the straight fixtures") {
    run_battery(make_fl_n(4), true);
    run_battery(make_fl_n(3), true);
    run_battery(make_a2_p1(), true);
    run_battery(make_point(), true);
}

TEST_CASE("battery over random straight instances") {
    std::mt19937 rng(101);
    for (int round = 0; round < 60; ++round) {
        Instance inst = qgkm::testing::random_straight_instance(rng);
        CAPTURE(qgkm::testing::snapshot(inst));
        run_battery(inst, round % 3 == 0);
    }
}

TEST_CASE("expand/recover round-trip for random constructible gradings") {
    std::mt19937 rng(131);
    std::uniform_int_distribution<long long> weight(-5, 5);
    for (int round = 0; round < 40; ++round) {
        Instance inst = qgkm::testing::random_straight_instance(rng);
        ConstructibleGrading grading;
        for (const auto& a : inst.quiver.arrows()) grading.edge_weights[a.id] = weight(rng);
        for (int c = 0; c < inst.forest.component_count(); ++c)
            grading.initial_weights.push_back(weight(rng));
        auto wt = expand_grading(grading, inst.quiver, inst.forest);
        auto result = is_constructible(wt, inst.quiver, inst.forest);
        CHECK(result.ok);
        for (const auto& [arrow, value] : result.arrow_weights)
            CHECK(value == grading.edge_weights.at(arrow));
    }
}

TEST_CASE("iso types are stable under random relabeling") {
    std::mt19937 rng(151);
    for (int round = 0; round < 20; ++round) {
        Instance inst = qgkm::testing::random_straight_instance(rng);
        auto base = iso_type(inst.quiver, inst.forest);

        std::vector<BasisVertex> basis = inst.forest.basis();
        for (size_t i = 0; i < basis.size(); ++i)
            basis[i].id = "r" + std::to_string(rng()) + "_" + std::to_string(i);
        std::vector<std::vector<int>> comps = inst.forest.components();
        std::shuffle(comps.begin(), comps.end(), rng);
        CoefficientForest shuffled(basis, inst.forest.arrows(), comps);
        CHECK(iso_type(inst.quiver, shuffled) == base);
    }
}
