// Shared test utilities: randomized straight instances and canonical
// instance snapshots for confluence comparisons.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "qgkm/fixed_points.hpp"
#include "qgkm/instance.hpp"

namespace qgkm::testing {

// Random straight instance: a small quiver, components that are random
// forward walks, and a dimension vector read off a random successor-closed
// subset so at least one fixed point exists. total_dim_cap bounds
// sum_v e_v * (m_v - e_v), which caps every cell dimension.
inline Instance random_straight_instance(std::mt19937& rng, int max_basis = 12,
                                         int total_dim_cap = 4) {
    auto randint = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int attempt = 0; attempt < 200; ++attempt) {
        int nv = randint(1, 3);
        std::vector<std::string> vertices;
        for (int v = 0; v < nv; ++v) vertices.push_back("v" + std::to_string(v));
        int na = randint(0, 3);
        std::vector<QuiverArrow> arrows;
        for (int a = 0; a < na; ++a)
            arrows.push_back({"a" + std::to_string(a), vertices[randint(0, nv - 1)],
                              vertices[randint(0, nv - 1)]});
        Quiver q(vertices, arrows);

        std::vector<std::vector<int>> out_arrows(nv);
        for (int a = 0; a < na; ++a) out_arrows[q.arrow_source(a)].push_back(a);

        std::vector<BasisVertex> basis;
        std::vector<CoeffArrow> carrows;
        std::vector<std::vector<int>> components;
        int ncomp = randint(1, 4);
        for (int c = 0; c < ncomp && static_cast<int>(basis.size()) < max_basis; ++c) {
            int at = randint(0, nv - 1);
            int want = randint(0, 3);
            std::vector<int> comp;
            comp.push_back(static_cast<int>(basis.size()));
            basis.push_back({"b" + std::to_string(c) + "_0", at});
            for (int step = 0; step < want && static_cast<int>(basis.size()) < max_basis;
                 ++step) {
                if (out_arrows[at].empty()) break;
                int a = out_arrows[at][randint(0, static_cast<int>(out_arrows[at].size()) - 1)];
                int next = q.arrow_target(a);
                comp.push_back(static_cast<int>(basis.size()));
                basis.push_back(
                    {"b" + std::to_string(c) + "_" + std::to_string(step + 1), next});
                carrows.push_back({comp[step], comp[step + 1], a});
                at = next;
            }
            components.push_back(std::move(comp));
        }
        CoefficientForest f(basis, carrows, components);
        if (!validate_forest(q, f).ok) continue;
        if (!is_straight(f)) continue;

        // Dimension vector from a random suffix of every component.
        std::vector<int> dim(nv, 0);
        for (const auto& comp : components) {
            int cut = randint(0, static_cast<int>(comp.size()));
            for (size_t i = cut; i < comp.size(); ++i) ++dim[basis[comp[i]].over];
        }
        auto m = push_down_dimensions(q, f);
        long long total = 0;
        for (int v = 0; v < nv; ++v) total += static_cast<long long>(dim[v]) * (m[v] - dim[v]);
        if (total > total_dim_cap) continue;

        return make_instance(std::move(q), std::move(f), std::move(dim));
    }
    // Degenerate but valid: one vertex, one vector, e = 1.
    Quiver q({"v0"}, {});
    return make_instance(std::move(q), CoefficientForest({{"b0_0", 0}}, {}, {{0}}), {1});
}

// Two branching tree summands (a degree-three middle vertex) padded by
// singleton strings so that no flexible reduction and no identity collapse
// applies; the classification stays open on this one.
inline Instance irreducible_tree_instance() {
    Quiver q({"1", "2", "3", "4"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "2", "4"}});
    std::vector<BasisVertex> basis{{"r1", 0}, {"s1", 1}, {"u1", 2}, {"v1", 3},
                                   {"r2", 0}, {"s2", 1}, {"u2", 2}, {"v2", 3},
                                   {"c2", 1}, {"c3", 2}, {"c4", 3}};
    std::vector<CoeffArrow> arrows{{0, 1, 0}, {1, 2, 1}, {1, 3, 2},
                                   {4, 5, 0}, {5, 6, 1}, {5, 7, 2}};
    std::vector<std::vector<int>> components{{0, 1, 2, 3}, {4, 5, 6, 7}, {8}, {9}, {10}};
    return make_instance(std::move(q), CoefficientForest(basis, arrows, components),
                         {1, 1, 1, 1});
}

// Canonical snapshot for equality of reduced instances.
inline std::string snapshot(const Instance& inst) {
    std::string s = "V:";
    std::vector<std::string> vs = inst.quiver.vertices();
    std::sort(vs.begin(), vs.end());
    for (const auto& v : vs) s += v + ",";
    s += " A:";
    std::vector<std::string> as;
    for (const auto& a : inst.quiver.arrows()) as.push_back(a.id + ":" + a.source + ">" + a.target);
    std::sort(as.begin(), as.end());
    for (const auto& a : as) s += a + ",";
    s += " B:";
    std::vector<std::string> bs;
    for (const auto& b : inst.forest.basis())
        bs.push_back(b.id + "@" + inst.quiver.vertex_label(b.over));
    std::sort(bs.begin(), bs.end());
    for (const auto& b : bs) s += b + ",";
    s += " C:";
    std::vector<std::string> cs;
    for (const auto& ca : inst.forest.arrows())
        cs.push_back(inst.forest.basis()[ca.src].id + ">" + inst.forest.basis()[ca.tgt].id + "/" +
                     inst.quiver.arrow_id(ca.over));
    std::sort(cs.begin(), cs.end());
    for (const auto& c : cs) s += c + ",";
    s += " E:";
    for (int v = 0; v < inst.quiver.vertex_count(); ++v)
        s += inst.quiver.vertex_label(v) + "=" + std::to_string(inst.dim[v]) + ",";
    return s;
}

}  // namespace qgkm::testing
