#include "qgkm/reduction.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qgkm/errors.hpp"
#include "qgkm/fixed_points.hpp"

namespace qgkm {

std::string to_string(GkmTag tag) {
    switch (tag) {
        case GkmTag::GkmStraight: return "GKM_STRAIGHT";
        case GkmTag::NoGkm: return "NO_GKM";
        case GkmTag::PointOrEmpty: return "POINT_OR_EMPTY";
        case GkmTag::UnknownTree: return "UNKNOWN_TREE";
    }
    return "?";
}

namespace {

void check_dimensions(const Instance& inst) {
    auto m = inst.pushed_down();
    for (int v = 0; v < inst.quiver.vertex_count(); ++v) {
        if (inst.dim[v] < 0)
            throw InfeasibleDimension("negative dimension at vertex " +
                                      inst.quiver.vertex_label(v));
        if (inst.dim[v] > m[v])
            throw InfeasibleDimension("dimension exceeds fiber size at vertex " +
                                      inst.quiver.vertex_label(v));
    }
}

// Fibers that agree across every fixed point; nullopt when there are none.
std::optional<std::vector<std::set<int>>> forced_fibers(const Instance& inst,
                                                        std::vector<bool>* varies) {
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    if (points.empty()) return std::nullopt;
    int nv = inst.quiver.vertex_count();
    std::vector<std::set<int>> first(nv);
    for (int b : points[0].selected) first[inst.forest.basis()[b].over].insert(b);
    if (varies) varies->assign(nv, false);
    for (size_t i = 1; i < points.size(); ++i) {
        std::vector<std::set<int>> cur(nv);
        for (int b : points[i].selected) cur[inst.forest.basis()[b].over].insert(b);
        for (int v = 0; v < nv; ++v)
            if (varies && cur[v] != first[v]) (*varies)[v] = true;
    }
    return first;
}

// Basis vectors reachable from `seed` following arrows forward (descendants)
// or backward (ancestors), seed included.
std::vector<int> closure(const CoefficientForest& f, const std::vector<int>& seed, bool forward) {
    std::vector<char> seen(f.basis_count(), 0);
    std::vector<int> stack = seed;
    for (int b : seed) seen[b] = 1;
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        const auto& arrows = forward ? f.out_arrows(b) : f.in_arrows(b);
        for (int a : arrows) {
            int next = forward ? f.arrows()[a].tgt : f.arrows()[a].src;
            if (!seen[next]) {
                seen[next] = 1;
                stack.push_back(next);
            }
        }
    }
    std::vector<int> out;
    for (int b = 0; b < f.basis_count(); ++b)
        if (seen[b]) out.push_back(b);
    return out;
}

// Rebuild the instance with a vertex removed and a set of basis vectors
// dropped; dimensions at surviving vertices are adjusted by the caller.
Instance drop_vertex(const Instance& inst, int vertex, const std::vector<char>& drop_basis) {
    const auto& q = inst.quiver;
    const auto& f = inst.forest;

    std::vector<std::string> vertices;
    std::vector<int> vmap(q.vertex_count(), -1);
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (v == vertex) continue;
        vmap[v] = static_cast<int>(vertices.size());
        vertices.push_back(q.vertex_label(v));
    }
    std::vector<QuiverArrow> arrows;
    for (const auto& a : q.arrows()) {
        int s = q.vertex_index(a.source), t = q.vertex_index(a.target);
        if (s == vertex || t == vertex) continue;
        arrows.push_back(a);
    }
    Quiver q2(vertices, arrows);

    std::vector<BasisVertex> basis;
    std::vector<int> bmap(f.basis_count(), -1);
    for (int b = 0; b < f.basis_count(); ++b) {
        if (drop_basis[b]) continue;
        bmap[b] = static_cast<int>(basis.size());
        basis.push_back({f.basis()[b].id, vmap[f.basis()[b].over]});
    }
    std::vector<CoeffArrow> carrows;
    for (const auto& a : f.arrows()) {
        if (bmap[a.src] < 0 || bmap[a.tgt] < 0) continue;
        int over = q2.arrow_index(q.arrow_id(a.over));
        if (over < 0)
            throw InternalInvariantBreach("surviving coefficient arrow over a removed arrow");
        carrows.push_back({bmap[a.src], bmap[a.tgt], over});
    }

    // Components: connectivity classes of what is left. The subforest keeps
    // surviving vectors in ascending order, matching bmap.
    std::vector<int> keep;
    for (int b = 0; b < f.basis_count(); ++b)
        if (!drop_basis[b]) keep.push_back(b);
    CoefficientForest f2(std::move(basis), std::move(carrows), subforest(f, keep).components());

    std::vector<int> dim(q2.vertex_count(), 0);
    for (int v = 0; v < q.vertex_count(); ++v)
        if (v != vertex) dim[vmap[v]] = inst.dim[v];

    std::vector<int> order;
    for (int v : inst.vertex_order)
        if (v != vertex) order.push_back(vmap[v]);

    return make_instance(std::move(q2), std::move(f2), std::move(dim), std::move(order));
}

std::vector<int> eligible_order(int count, unsigned move_seed) {
    std::vector<int> order(count);
    for (int i = 0; i < count; ++i) order[i] = i;
    if (move_seed != 0) {
        std::mt19937 rng(move_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

}  // namespace

std::map<std::string, bool> is_flexible(const Instance& inst) {
    check_dimensions(inst);
    std::map<std::string, bool> out;
    std::vector<bool> varies;
    auto forced = forced_fibers(inst, &varies);
    for (int v = 0; v < inst.quiver.vertex_count(); ++v)
        out[inst.quiver.vertex_label(v)] = forced.has_value() && varies[v];
    return out;
}

ReducedInstance flexible_reduce(const Instance& inst, unsigned move_seed) {
    check_dimensions(inst);
    ReducedInstance result{inst, {}, false};

    while (result.instance.quiver.vertex_count() > 0) {
        const Instance& cur = result.instance;
        std::vector<bool> varies;
        auto forced = forced_fibers(cur, &varies);
        if (!forced) {
            result.grassmannian_empty = true;
            return result;
        }
        std::vector<int> inflexible;
        for (int v = 0; v < cur.quiver.vertex_count(); ++v)
            if (!varies[v]) inflexible.push_back(v);
        if (inflexible.empty()) return result;

        int pick = inflexible[eligible_order(static_cast<int>(inflexible.size()), move_seed)[0]];

        // Never-selected vectors over the vertex exclude their ancestors;
        // forced-selected vectors drag their descendants out and lower the
        // downstream dimensions.
        const auto& f = cur.forest;
        std::vector<int> forced_sel(forced->at(pick).begin(), forced->at(pick).end());
        std::vector<int> never;
        for (int b = 0; b < f.basis_count(); ++b)
            if (f.basis()[b].over == pick && !forced->at(pick).count(b)) never.push_back(b);

        std::vector<char> drop(f.basis_count(), 0);
        for (int b : closure(f, never, false)) drop[b] = 1;
        std::vector<int> descendants = closure(f, forced_sel, true);
        ReductionStep step;
        step.kind = "remove_vertex";
        step.subject = cur.quiver.vertex_label(pick);

        std::vector<int> new_dim_delta(cur.quiver.vertex_count(), 0);
        for (int b : descendants) {
            if (drop[b])
                throw InternalInvariantBreach(
                    "forced-selected vector is also an excluded ancestor");
            drop[b] = 1;
            if (f.basis()[b].over != pick) --new_dim_delta[f.basis()[b].over];
        }
        for (int b = 0; b < f.basis_count(); ++b)
            if (drop[b]) step.removed_basis.push_back(f.basis()[b].id);

        Instance next = drop_vertex(cur, pick, drop);
        for (int v = 0; v < cur.quiver.vertex_count(); ++v) {
            if (v == pick || new_dim_delta[v] == 0) continue;
            int nv = next.quiver.vertex_index(cur.quiver.vertex_label(v));
            next.dim[nv] += new_dim_delta[v];
            step.dim_delta[cur.quiver.vertex_label(v)] = new_dim_delta[v];
            if (next.dim[nv] < 0)
                throw MalformedInstance("dimension bookkeeping underflow at vertex " +
                                        cur.quiver.vertex_label(v));
        }
        result.trace.steps.push_back(std::move(step));
        result.instance = std::move(next);
    }
    return result;
}

ReducedInstance collapse_identity_arrows(const Instance& inst, unsigned move_seed) {
    check_dimensions(inst);
    ReducedInstance result{inst, {}, false};

    bool changed = true;
    while (changed) {
        changed = false;
        const Instance& cur = result.instance;
        const auto& q = cur.quiver;
        const auto& f = cur.forest;
        auto m = cur.pushed_down();

        for (int a : eligible_order(q.arrow_count(), move_seed)) {
            int i = q.arrow_source(a), j = q.arrow_target(a);
            if (i == j) continue;
            if (cur.dim[i] != cur.dim[j]) continue;

            // Full-fiber bijection: every vector over i moves along a, every
            // vector over j is hit along a.
            int movers = 0, hit = 0;
            std::vector<int> image(f.basis_count(), -1);
            for (const auto& ca : f.arrows())
                if (ca.over == a) {
                    image[ca.tgt] = ca.src;
                    ++movers;
                }
            for (int b = 0; b < f.basis_count(); ++b)
                if (f.basis()[b].over == j && image[b] >= 0) ++hit;
            if (movers != m[i] || hit != m[j] || m[i] != m[j]) continue;

            // Remove vertex j; arrows at j re-attach at i through the bijection.
            std::vector<std::string> vertices;
            for (int v = 0; v < q.vertex_count(); ++v)
                if (v != j) vertices.push_back(q.vertex_label(v));
            std::vector<QuiverArrow> arrows;
            for (int b = 0; b < q.arrow_count(); ++b) {
                if (b == a) continue;
                auto arrow = q.arrows()[b];
                if (q.arrow_source(b) == j) arrow.source = q.vertex_label(i);
                if (q.arrow_target(b) == j) arrow.target = q.vertex_label(i);
                arrows.push_back(arrow);
            }
            Quiver q2(vertices, arrows);

            std::vector<BasisVertex> basis;
            std::vector<int> bmap(f.basis_count(), -1);
            for (int b = 0; b < f.basis_count(); ++b) {
                if (f.basis()[b].over == j) continue;
                bmap[b] = static_cast<int>(basis.size());
                basis.push_back(
                    {f.basis()[b].id, q2.vertex_index(q.vertex_label(f.basis()[b].over))});
            }
            auto transfer = [&](int b) { return f.basis()[b].over == j ? image[b] : b; };
            std::vector<CoeffArrow> carrows;
            for (const auto& ca : f.arrows()) {
                if (ca.over == a) continue;
                int src = transfer(ca.src), tgt = transfer(ca.tgt);
                if (src < 0 || tgt < 0)
                    throw InternalInvariantBreach("identity collapse lost a coefficient arrow");
                carrows.push_back({bmap[src], bmap[tgt], q2.arrow_index(q.arrow_id(ca.over))});
            }
            std::vector<int> keep;
            for (int b = 0; b < f.basis_count(); ++b)
                if (bmap[b] >= 0) keep.push_back(b);
            // Components from connectivity of the collapsed forest.
            int nb = static_cast<int>(basis.size());
            std::vector<std::vector<int>> adj(nb);
            for (const auto& ca : carrows) {
                adj[ca.src].push_back(ca.tgt);
                adj[ca.tgt].push_back(ca.src);
            }
            std::vector<int> comp_of(nb, -1);
            std::vector<std::vector<int>> components;
            for (int b = 0; b < nb; ++b) {
                if (comp_of[b] != -1) continue;
                std::vector<int> members{b};
                comp_of[b] = static_cast<int>(components.size());
                std::vector<int> stack{b};
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (int y : adj[x])
                        if (comp_of[y] == -1) {
                            comp_of[y] = comp_of[b];
                            members.push_back(y);
                            stack.push_back(y);
                        }
                }
                std::sort(members.begin(), members.end());
                components.push_back(std::move(members));
            }
            CoefficientForest f2(std::move(basis), std::move(carrows), std::move(components));
            if (!validate_forest(q2, f2).ok) continue;  // collapse would break the winding

            std::vector<int> dim(q2.vertex_count(), 0);
            for (int v = 0; v < q.vertex_count(); ++v)
                if (v != j) dim[q2.vertex_index(q.vertex_label(v))] = cur.dim[v];
            std::vector<int> order;
            for (int v : cur.vertex_order)
                if (v != j) order.push_back(q2.vertex_index(q.vertex_label(v)));

            ReductionStep step;
            step.kind = "collapse_arrow";
            step.subject = q.arrow_id(a);
            for (int b = 0; b < f.basis_count(); ++b)
                if (f.basis()[b].over == j) step.removed_basis.push_back(f.basis()[b].id);
            result.trace.steps.push_back(std::move(step));
            result.instance =
                make_instance(std::move(q2), std::move(f2), std::move(dim), std::move(order));
            changed = true;
            break;
        }
    }
    return result;
}

namespace {

std::optional<NoGkmWitness> find_witness(const Instance& inst) {
    const auto& f = inst.forest;
    const auto& q = inst.quiver;
    for (int b = 0; b < f.basis_count(); ++b) {
        if (f.in_arrows(b).size() == 2) {
            int a1 = f.in_arrows(b)[0], a2 = f.in_arrows(b)[1];
            NoGkmWitness w;
            w.kind = "two_sink";
            w.basis_ids = {f.basis()[f.arrows()[a1].src].id, f.basis()[b].id,
                           f.basis()[f.arrows()[a2].src].id};
            w.arrow_ids = {q.arrow_id(f.arrows()[a1].over), q.arrow_id(f.arrows()[a2].over)};
            w.vertex_ids = {q.vertex_label(f.basis()[f.arrows()[a1].src].over),
                            q.vertex_label(f.basis()[b].over),
                            q.vertex_label(f.basis()[f.arrows()[a2].src].over)};
            return w;
        }
        if (f.out_arrows(b).size() == 2) {
            int a1 = f.out_arrows(b)[0], a2 = f.out_arrows(b)[1];
            NoGkmWitness w;
            w.kind = "two_source";
            w.basis_ids = {f.basis()[f.arrows()[a1].tgt].id, f.basis()[b].id,
                           f.basis()[f.arrows()[a2].tgt].id};
            w.arrow_ids = {q.arrow_id(f.arrows()[a1].over), q.arrow_id(f.arrows()[a2].over)};
            w.vertex_ids = {q.vertex_label(f.basis()[f.arrows()[a1].tgt].over),
                            q.vertex_label(f.basis()[b].over),
                            q.vertex_label(f.basis()[f.arrows()[a2].tgt].over)};
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

GkmVerdict classify_gkm(const Instance& inst) {
    check_dimensions(inst);
    GkmVerdict verdict{GkmTag::PointOrEmpty, std::nullopt, {}, inst};

    // Reduce both move kinds to a joint fixpoint.
    bool changed = true;
    bool empty = false;
    while (changed) {
        changed = false;
        auto r1 = flexible_reduce(verdict.reduced);
        for (auto& s : r1.trace.steps) verdict.trace.steps.push_back(std::move(s));
        if (!r1.trace.steps.empty()) changed = true;
        if (r1.grassmannian_empty) {
            empty = true;
            verdict.reduced = std::move(r1.instance);
            break;
        }
        auto r2 = collapse_identity_arrows(r1.instance);
        for (auto& s : r2.trace.steps) verdict.trace.steps.push_back(std::move(s));
        if (!r2.trace.steps.empty()) changed = true;
        verdict.reduced = std::move(r2.instance);
    }

    if (empty || verdict.reduced.quiver.vertex_count() == 0) {
        verdict.tag = GkmTag::PointOrEmpty;
        return verdict;
    }
    if (has_proper_tree_component(verdict.reduced.forest)) {
        verdict.tag = GkmTag::UnknownTree;
        return verdict;
    }
    if (is_straight(verdict.reduced.forest)) {
        verdict.tag = GkmTag::GkmStraight;
        return verdict;
    }
    verdict.tag = GkmTag::NoGkm;
    verdict.witness = find_witness(verdict.reduced);
    return verdict;
}

}  // namespace qgkm
