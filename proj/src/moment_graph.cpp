#include "qgkm/moment_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qgkm/errors.hpp"

namespace qgkm {

namespace {

// The difference set as an induced subquiver must be a single directed chain;
// returns its vertices in walk order, or nothing.
std::optional<std::vector<int>> as_chain(const CoefficientForest& f, const std::vector<int>& diff) {
    if (diff.empty()) return std::nullopt;
    std::set<int> in_diff(diff.begin(), diff.end());
    int start = -1;
    for (int b : diff) {
        int preds_inside = 0, succs_inside = 0;
        for (int p : f.predecessors(b))
            if (in_diff.count(p)) ++preds_inside;
        for (int s : f.successors(b))
            if (in_diff.count(s)) ++succs_inside;
        if (preds_inside > 1 || succs_inside > 1) return std::nullopt;
        if (preds_inside == 0) {
            if (start != -1) return std::nullopt;  // two chain heads: disconnected or branched
            start = b;
        }
    }
    if (start == -1) return std::nullopt;
    std::vector<int> chain{start};
    while (true) {
        int next = -1;
        for (int s : f.successors(chain.back()))
            if (in_diff.count(s)) next = s;
        if (next == -1) break;
        chain.push_back(next);
    }
    if (chain.size() != diff.size()) return std::nullopt;
    return chain;
}

// Quiver arrows under the chain, in walk order.
std::vector<int> chain_arrow_labels(const CoefficientForest& f, const std::vector<int>& chain) {
    std::vector<int> labels;
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        for (int a : f.out_arrows(chain[i]))
            if (f.arrows()[a].tgt == chain[i + 1]) labels.push_back(f.arrows()[a].over);
    return labels;
}

std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct PairCheck {
    bool is_mutation = false;
    bool connected_nonpath = false;
    int vertex = -1;
    int k = 0, l = 0;
};

bool connected_in_forest(const CoefficientForest& f, const std::vector<int>& diff) {
    if (diff.empty()) return false;
    std::set<int> in_diff(diff.begin(), diff.end());
    std::set<int> seen{diff[0]};
    std::vector<int> stack{diff[0]};
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        auto visit = [&](int x) {
            if (in_diff.count(x) && !seen.count(x)) {
                seen.insert(x);
                stack.push_back(x);
            }
        };
        for (int s : f.successors(b)) visit(s);
        for (int p : f.predecessors(b)) visit(p);
    }
    return seen.size() == diff.size();
}

PairCheck check_pair(const CoefficientForest& f, const AlignedBasis& basis, const FixedPoint& s,
                     const FixedPoint& t) {
    PairCheck out;
    auto left = set_difference(s.selected, t.selected);
    auto right = set_difference(t.selected, s.selected);
    if (left.empty() || right.empty()) return out;

    auto lchain = as_chain(f, left);
    auto rchain = as_chain(f, right);
    if (!lchain || !rchain) {
        if (connected_in_forest(f, left) && connected_in_forest(f, right))
            out.connected_nonpath = true;
        return out;
    }
    if (f.basis()[lchain->front()].over != f.basis()[rchain->front()].over) return out;
    if (chain_arrow_labels(f, *lchain) != chain_arrow_labels(f, *rchain)) return out;

    out.is_mutation = true;
    out.vertex = f.basis()[lchain->front()].over;
    out.k = basis.pos_index[lchain->front()];
    out.l = basis.pos_index[rchain->front()];
    return out;
}

}  // namespace

std::vector<Mutation> enumerate_mutations(const Instance& inst, const AlignedBasis& basis,
                                          const FixedPoint& u) {
    std::vector<Mutation> out;
    for (const auto& t : enumerate_fixed_points(inst.quiver, inst.forest, inst.dim)) {
        if (t == u) continue;
        auto pc = check_pair(inst.forest, basis, u, t);
        if (pc.is_mutation) out.push_back({u, t, pc.vertex, pc.k, pc.l});
    }
    return out;
}

FixedPoint apply_mutation(const Instance& inst, const AlignedBasis& basis, const FixedPoint& u,
                          int vertex, int k, int l) {
    for (const auto& m : enumerate_mutations(inst, basis, u))
        if (m.vertex == vertex && m.k == k && m.l == l) return m.target;
    throw InvalidMutation("no mutation with the given triple at this fixed point");
}

Character vertex_character(const CoefficientForest& f, const AlignedBasis& basis, int b) {
    int d = f.component_count();
    int c = static_cast<int>(basis.supp_arrows.size());
    Character alpha{std::vector<long long>(d, 0), std::vector<long long>(c, 0)};
    alpha.eps[f.component_of(b)] = 1;

    // Signed arrow counts along the tree path from the component root.
    int root = f.component_root(f.component_of(b));
    std::vector<int> parent(f.basis_count(), -2);
    std::vector<int> via(f.basis_count(), -1);   // arrow index
    std::vector<int> sign(f.basis_count(), 0);   // +1 forward, -1 backward
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int a : f.out_arrows(x)) {
            int t = f.arrows()[a].tgt;
            if (parent[t] == -2) {
                parent[t] = x;
                via[t] = a;
                sign[t] = 1;
                stack.push_back(t);
            }
        }
        for (int a : f.in_arrows(x)) {
            int s = f.arrows()[a].src;
            if (parent[s] == -2) {
                parent[s] = x;
                via[s] = a;
                sign[s] = -1;
                stack.push_back(s);
            }
        }
    }
    for (int x = b; parent[x] != -1; x = parent[x])
        alpha.delta[basis.arrow_index[f.arrows()[via[x]].over]] += sign[x];
    return alpha;
}

Character edge_character(const CoefficientForest& f, const AlignedBasis& basis,
                         const Mutation& m) {
    int b_k = basis.fiber[m.vertex][m.k - 1];
    int b_l = basis.fiber[m.vertex][m.l - 1];
    return vertex_character(f, basis, b_l) - vertex_character(f, basis, b_k);
}

std::vector<int> MomentGraph::out_degree() const {
    std::vector<int> deg(vertices.size(), 0);
    for (const auto& e : edges) ++deg[e.src];
    return deg;
}

std::vector<int> MomentGraph::in_degree() const {
    std::vector<int> deg(vertices.size(), 0);
    for (const auto& e : edges) ++deg[e.tgt];
    return deg;
}

MomentGraph build_moment_graph(const Instance& inst, const AlignmentResult& alignment) {
    MomentGraph g;
    g.chi = alignment.chi;
    g.experimental = alignment.experimental;
    g.vertices = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);

    const auto& f = inst.forest;
    int n = static_cast<int>(g.vertices.size());
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            auto pc = check_pair(f, alignment.basis, g.vertices[x], g.vertices[y]);
            if (pc.connected_nonpath) g.connected_nonpath_pairs.push_back({x, y});
            if (!pc.is_mutation) continue;
            // Orient along the fundamental direction.
            MomentGraphEdge e;
            if (pc.k < pc.l) {
                e = {x, y, pc.vertex, pc.k, pc.l, {}};
            } else {
                e = {y, x, pc.vertex, pc.l, pc.k, {}};
            }
            Mutation m{g.vertices[e.src], g.vertices[e.tgt], e.vertex, e.k, e.l};
            e.label = edge_character(f, alignment.basis, m);
            if (e.label.is_zero())
                throw GenericityViolation("zero character on a moment graph edge");
            long long p = pairing(g.chi, e.label);
            if (p == 0)
                throw GenericityViolation("cocharacter pairs to zero on an edge character");
            if (p < 0)
                throw InternalInvariantBreach("edge character pairs negatively");
            g.edges.push_back(std::move(e));
        }

    // Fundamental mutations raise the total of selected fiber indices, so the
    // graph must be acyclic; verify by topological sort.
    std::vector<int> indeg(n, 0);
    for (const auto& e : g.edges) ++indeg[e.tgt];
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    std::vector<std::vector<int>> out(n);
    for (const auto& e : g.edges) out[e.src].push_back(e.tgt);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : out[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    if (seen != n) throw InternalInvariantBreach("moment graph contains a directed cycle");

    return g;
}

std::vector<std::vector<bool>> partial_order(const MomentGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    std::vector<std::vector<int>> out(n);
    for (const auto& e : g.edges) out[e.src].push_back(e.tgt);
    for (int x = 0; x < n; ++x) {
        std::vector<int> stack{x};
        reach[x][x] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : out[v])
                if (!reach[x][w]) {
                    reach[x][w] = true;
                    stack.push_back(w);
                }
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && reach[x][y] && reach[y][x])
                throw InternalInvariantBreach("reachability is not antisymmetric");
    return reach;
}

bool is_palais_smale(const MomentGraph& g) {
    auto deg = g.out_degree();
    for (const auto& e : g.edges)
        if (deg[e.src] <= deg[e.tgt]) return false;
    return true;
}

int tangent_dimension(const Instance& inst, const AlignedBasis& basis, const FixedPoint& u) {
    return static_cast<int>(enumerate_mutations(inst, basis, u).size());
}

std::vector<HallStratum> hall_strata(const Instance& inst) {
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    std::map<std::pair<ForestIsoType, ForestIsoType>, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        ForestIsoType sub = iso_type(inst.quiver, subforest(inst.forest, points[i].selected));
        ForestIsoType quot = iso_type(inst.quiver, quotient_forest(inst.forest, points[i].selected));
        groups[{sub, quot}].push_back(i);
    }
    std::vector<HallStratum> out;
    for (auto& [key, members] : groups) out.push_back({key.first, key.second, members});
    std::sort(out.begin(), out.end(),
              [](const HallStratum& a, const HallStratum& b) { return a.members < b.members; });
    return out;
}

}  // namespace qgkm
