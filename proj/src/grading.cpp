#include "qgkm/grading.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "qgkm/errors.hpp"

namespace qgkm {

bool Character::is_zero() const {
    for (long long e : eps)
        if (e != 0) return false;
    for (long long d : delta)
        if (d != 0) return false;
    return true;
}

Character Character::operator-(const Character& other) const {
    Character out = *this;
    for (size_t i = 0; i < out.eps.size(); ++i) out.eps[i] -= other.eps[i];
    for (size_t i = 0; i < out.delta.size(); ++i) out.delta[i] -= other.delta[i];
    return out;
}

long long pairing(const Cocharacter& chi, const Character& alpha) {
    if (chi.gamma.size() != alpha.eps.size() || chi.nu.size() != alpha.delta.size())
        throw InfeasibleDimension("cocharacter/character dimension mismatch");
    long long result = 0;
    for (size_t i = 0; i < chi.gamma.size(); ++i) result += chi.gamma[i] * alpha.eps[i];
    for (size_t i = 0; i < chi.nu.size(); ++i) result += chi.nu[i] * alpha.delta[i];
    return result;
}

namespace {

// Propagate a weight from each component root across the undirected tree,
// adding the arrow weight forward and subtracting it backward.
std::vector<long long> propagate(const CoefficientForest& f,
                                 const std::vector<long long>& initial,
                                 const std::vector<long long>& arrow_weight) {
    std::vector<long long> wt(f.basis_count(), 0);
    std::vector<bool> done(f.basis_count(), false);
    for (int c = 0; c < f.component_count(); ++c) {
        int root = f.component_root(c);
        if (root < 0) continue;
        wt[root] = initial[c];
        done[root] = true;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            for (int a : f.out_arrows(b)) {
                int t = f.arrows()[a].tgt;
                if (done[t]) continue;
                wt[t] = wt[b] + arrow_weight[f.arrows()[a].over];
                done[t] = true;
                stack.push_back(t);
            }
            for (int a : f.in_arrows(b)) {
                int s = f.arrows()[a].src;
                if (done[s]) continue;
                wt[s] = wt[b] - arrow_weight[f.arrows()[a].over];
                done[s] = true;
                stack.push_back(s);
            }
        }
    }
    return wt;
}

std::vector<int> supporting_arrows(const Quiver& q, const CoefficientForest& f) {
    std::vector<bool> used(q.arrow_count(), false);
    for (const auto& a : f.arrows()) used[a.over] = true;
    std::vector<int> supp;
    for (int a = 0; a < q.arrow_count(); ++a)
        if (used[a]) supp.push_back(a);
    return supp;
}

struct PathInfo {
    std::vector<int> depth;      // basis -> arrows from component root
    std::vector<int> dist;       // basis -> arrows to component sink (straight only)
    std::vector<int> comp_len;   // component -> vertex count
    std::vector<int> comp_root;  // component -> root basis
    std::vector<int> comp_sink;  // component -> sink basis (straight only)
};

PathInfo path_info(const CoefficientForest& f, bool straight) {
    PathInfo info;
    info.depth.assign(f.basis_count(), 0);
    info.dist.assign(f.basis_count(), 0);
    info.comp_len.resize(f.component_count());
    info.comp_root.resize(f.component_count());
    info.comp_sink.assign(f.component_count(), -1);
    for (int c = 0; c < f.component_count(); ++c) {
        info.comp_len[c] = static_cast<int>(f.components()[c].size());
        int root = f.component_root(c);
        info.comp_root[c] = root;
        if (straight) {
            int pos = 0;
            int b = root;
            while (true) {
                info.depth[b] = pos;
                if (f.out_arrows(b).empty()) break;
                b = f.arrows()[f.out_arrows(b)[0]].tgt;
                ++pos;
            }
            info.comp_sink[c] = b;
            int len = pos;
            for (int v : f.components()[c]) info.dist[v] = len - info.depth[v];
        } else {
            // Depth in the undirected tree, counting arrows from the root.
            std::vector<int> stack{root};
            std::vector<bool> seen(f.basis_count(), false);
            seen[root] = true;
            while (!stack.empty()) {
                int b = stack.back();
                stack.pop_back();
                for (int a : f.out_arrows(b)) {
                    int t = f.arrows()[a].tgt;
                    if (seen[t]) continue;
                    seen[t] = true;
                    info.depth[t] = info.depth[b] + 1;
                    stack.push_back(t);
                }
                for (int a : f.in_arrows(b)) {
                    int s = f.arrows()[a].src;
                    if (seen[s]) continue;
                    seen[s] = true;
                    info.depth[s] = info.depth[b] + 1;
                    stack.push_back(s);
                }
            }
        }
    }
    return info;
}

AlignedBasis make_aligned(const Instance& inst, const std::vector<std::vector<int>>& fiber) {
    AlignedBasis basis;
    basis.fiber = fiber;
    const auto& f = inst.forest;
    basis.pos_vertex.assign(f.basis_count(), -1);
    basis.pos_index.assign(f.basis_count(), 0);
    for (int v = 0; v < inst.quiver.vertex_count(); ++v)
        for (int i = 0; i < static_cast<int>(fiber[v].size()); ++i) {
            basis.pos_vertex[fiber[v][i]] = v;
            basis.pos_index[fiber[v][i]] = i + 1;
        }
    basis.segment_of.resize(f.basis_count());
    for (int b = 0; b < f.basis_count(); ++b) basis.segment_of[b] = f.component_of(b);
    basis.supp_arrows = supporting_arrows(inst.quiver, f);
    basis.arrow_index.assign(inst.quiver.arrow_count(), -1);
    for (int i = 0; i < static_cast<int>(basis.supp_arrows.size()); ++i)
        basis.arrow_index[basis.supp_arrows[i]] = i;
    return basis;
}

}  // namespace

std::vector<long long> expand_grading(const ConstructibleGrading& g, const Quiver& q,
                                      const CoefficientForest& f) {
    std::vector<long long> arrow_weight(q.arrow_count(), 0);
    for (const auto& [id, w] : g.edge_weights) {
        int a = q.arrow_index(id);
        if (a < 0) throw MalformedInstance("edge weight for unknown arrow: " + id);
        arrow_weight[a] = w;
    }
    std::vector<long long> initial = g.initial_weights;
    initial.resize(f.component_count(), 0);
    return propagate(f, initial, arrow_weight);
}

ConstructibilityResult is_constructible(const std::vector<long long>& wt, const Quiver& q,
                                        const CoefficientForest& f) {
    ConstructibilityResult result;
    std::vector<std::set<long long>> diffs(q.arrow_count());
    for (const auto& a : f.arrows()) diffs[a.over].insert(wt[a.tgt] - wt[a.src]);
    for (int a = 0; a < q.arrow_count(); ++a) {
        if (diffs[a].empty()) continue;
        if (diffs[a].size() == 1) {
            result.arrow_weights[q.arrow_id(a)] = *diffs[a].begin();
        } else {
            result.ok = false;
            std::string seen;
            for (long long d : diffs[a]) seen += (seen.empty() ? "" : ", ") + std::to_string(d);
            result.violations.push_back("arrow " + q.arrow_id(a) +
                                        " has unequal weight differences {" + seen + "}");
        }
    }
    return result;
}

Cocharacter distinct_weight_cocharacter(const Quiver& q, const CoefficientForest& f) {
    if (!is_straight(f)) throw PreconditionError("distinct weights need a straight forest");
    int longest = 0;
    for (const auto& comp : f.components())
        longest = std::max(longest, static_cast<int>(comp.size()));
    Cocharacter chi;
    for (int c = 0; c < f.component_count(); ++c)
        chi.gamma.push_back(static_cast<long long>(c) * longest);
    chi.nu.assign(supporting_arrows(q, f).size(), 1);
    return chi;
}

std::vector<long long> cocharacter_weights(const Cocharacter& chi, const CoefficientForest& f,
                                           const AlignedBasis& basis) {
    std::vector<long long> arrow_weight;
    arrow_weight.assign(basis.arrow_index.size(), 0);
    for (size_t a = 0; a < basis.arrow_index.size(); ++a)
        if (basis.arrow_index[a] >= 0) arrow_weight[a] = chi.nu[basis.arrow_index[a]];
    return propagate(f, chi.gamma, arrow_weight);
}

bool check_ag1(const std::vector<long long>& wt, const AlignedBasis& basis) {
    for (const auto& fiber : basis.fiber)
        for (size_t i = 0; i + 1 < fiber.size(); ++i)
            if (wt[fiber[i + 1]] <= wt[fiber[i]]) return false;
    return true;
}

bool check_ag2(const std::vector<long long>& wt, const Quiver& q, const CoefficientForest& f) {
    return is_constructible(wt, q, f).ok;
}

bool check_sa2(const AlignedBasis& basis, const CoefficientForest& f) {
    // Per quiver arrow, the induced map on fiber indices must be increasing.
    for (size_t v = 0; v < basis.fiber.size(); ++v) {
        const auto& fiber = basis.fiber[v];
        std::map<int, int> last_image;  // quiver arrow -> image index of the previous mover
        for (int b : fiber) {
            for (int a : f.out_arrows(b)) {
                int over = f.arrows()[a].over;
                int image = basis.pos_index[f.arrows()[a].tgt];
                auto it = last_image.find(over);
                if (it != last_image.end() && image <= it->second) return false;
                last_image[over] = image;
            }
        }
    }
    return true;
}

std::vector<Sa1Conflict> sa1_conflicts(const AlignedBasis& basis, const Quiver& q,
                                       const CoefficientForest& f) {
    std::vector<Sa1Conflict> conflicts;
    for (size_t v = 0; v < basis.fiber.size(); ++v) {
        const auto& fiber = basis.fiber[v];
        for (size_t ka = 0; ka < fiber.size(); ++ka) {
            int mover = fiber[ka];
            for (int arr : f.out_arrows(mover)) {
                int over = f.arrows()[arr].over;
                // Everything below the mover must also move along `over`.
                for (size_t lb = 0; lb < ka; ++lb) {
                    int killed = fiber[lb];
                    bool moves = false;
                    for (int arr2 : f.out_arrows(killed))
                        if (f.arrows()[arr2].over == over) moves = true;
                    if (!moves)
                        conflicts.push_back({q.vertex_label(static_cast<int>(v)), q.arrow_id(over),
                                             f.basis()[mover].id, f.basis()[killed].id});
                }
            }
        }
    }
    return conflicts;
}

bool check_sa1_sinks_above_movers(const AlignedBasis& basis, const CoefficientForest& f) {
    for (const auto& fiber : basis.fiber) {
        bool seen_sink = false;
        for (int b : fiber) {
            if (f.out_arrows(b).empty())
                seen_sink = true;
            else if (seen_sink)
                return false;
        }
    }
    return true;
}

namespace {

using ComponentKey = std::tuple<int, int, int, int>;

std::vector<ComponentKey> string_component_keys(const Instance& inst, const PathInfo& info) {
    std::vector<int> vpos(inst.quiver.vertex_count());
    for (int i = 0; i < inst.quiver.vertex_count(); ++i) vpos[inst.vertex_order[i]] = i;
    std::vector<ComponentKey> keys(inst.forest.component_count());
    for (int c = 0; c < inst.forest.component_count(); ++c) {
        int start_v = inst.forest.basis()[info.comp_root[c]].over;
        int end_v = inst.forest.basis()[info.comp_sink[c]].over;
        // Short components first; equal shapes stack by descending index.
        keys[c] = {info.comp_len[c], vpos[start_v], vpos[end_v], -c};
    }
    return keys;
}

std::vector<std::vector<int>> fibers_by(const Instance& inst,
                                        const std::function<bool(int, int)>& less) {
    std::vector<std::vector<int>> fiber(inst.quiver.vertex_count());
    for (int b = 0; b < inst.forest.basis_count(); ++b)
        fiber[inst.forest.basis()[b].over].push_back(b);
    for (auto& fv : fiber) std::sort(fv.begin(), fv.end(), less);
    return fiber;
}

// Longest-path solution of gamma[c'] - gamma[c] >= w constraints. Returns
// nothing when the constraints contain a positive cycle.
std::optional<std::vector<long long>> solve_gamma(
    int d, const std::map<std::pair<int, int>, long long>& constraints) {
    std::vector<long long> gamma(d, 0);
    for (int round = 0; round <= d + 1; ++round) {
        bool changed = false;
        for (const auto& [edge, w] : constraints) {
            long long need = gamma[edge.first] + w;
            if (gamma[edge.second] < need) {
                gamma[edge.second] = need;
                changed = true;
            }
        }
        if (!changed) {
            long long lo = 0;
            for (long long g : gamma) lo = std::min(lo, g);
            for (long long& g : gamma) g -= lo;
            return gamma;
        }
    }
    return std::nullopt;
}

AlignmentResult finish(const Instance& inst, AlignedBasis basis, Cocharacter chi,
                       bool experimental) {
    AlignmentResult result;
    result.weights = cocharacter_weights(chi, inst.forest, basis);
    result.basis = std::move(basis);
    result.chi = std::move(chi);
    result.experimental = experimental;
    if (!check_ag1(result.weights, result.basis))
        throw InternalInvariantBreach("constructed grading violates AG1");
    if (!check_ag2(result.weights, inst.quiver, inst.forest))
        throw InternalInvariantBreach("constructed grading violates AG2");
    if (!check_sa2(result.basis, inst.forest))
        throw InternalInvariantBreach("constructed order violates SA2");
    // Sinks-above-movers holds by construction for strings; tree blocks can
    // legitimately interleave, so it is only reported there.
    if (!experimental && !check_sa1_sinks_above_movers(result.basis, inst.forest))
        throw InternalInvariantBreach("constructed order places a sink below a mover");
    result.sa1_conflicts = sa1_conflicts(result.basis, inst.quiver, inst.forest);
    result.sa1_full = result.sa1_conflicts.empty();
    return result;
}

}  // namespace

AlignmentResult attractive_aligned(const Instance& inst) {
    const auto& f = inst.forest;
    if (!is_straight(f)) throw PreconditionError("attractive alignment needs a straight forest");

    PathInfo info = path_info(f, true);
    auto keys = string_component_keys(inst, info);

    int d = f.component_count();
    std::map<int, int> sinks_over;
    for (int c = 0; c < d; ++c) ++sinks_over[f.basis()[info.comp_sink[c]].over];
    long long step = 2;
    for (auto [v, count] : sinks_over) step = std::max(step, static_cast<long long>(count));
    step = std::max(step, static_cast<long long>(d));

    // Vectors far from their endpoint sit lowest; ties follow the component
    // stacking key.
    auto less = [&](int a, int b) {
        if (info.dist[a] != info.dist[b]) return info.dist[a] > info.dist[b];
        return keys[f.component_of(a)] < keys[f.component_of(b)];
    };
    auto fiber = fibers_by(inst, less);
    AlignedBasis basis = make_aligned(inst, fiber);

    // Realize the fiber orders as strict weight orders: nu uniform, gamma from
    // the induced difference constraints.
    std::map<std::pair<int, int>, long long> constraints;
    bool consistent = true;
    for (const auto& fv : fiber)
        for (size_t i = 0; i + 1 < fv.size(); ++i) {
            int b = fv[i], b2 = fv[i + 1];
            int cb = f.component_of(b), cb2 = f.component_of(b2);
            if (cb == cb2) {
                if (info.depth[b2] <= info.depth[b]) consistent = false;
                continue;
            }
            long long need = step * (info.depth[b] - info.depth[b2]) + 1;
            auto key = std::make_pair(cb, cb2);
            auto it = constraints.find(key);
            if (it == constraints.end() || it->second < need) constraints[key] = need;
        }

    if (consistent) {
        if (auto gamma = solve_gamma(d, constraints)) {
            Cocharacter chi{*gamma, std::vector<long long>(basis.supp_arrows.size(), step)};
            auto wt = cocharacter_weights(chi, f, basis);
            if (check_ag1(wt, basis)) return finish(inst, std::move(basis), std::move(chi), false);
        }
    }

    // Fallback: stack whole components with gaps so large that the fiber
    // orders can simply follow the weights.
    long long span = 1;
    for (int b = 0; b < f.basis_count(); ++b)
        span = std::max(span, step * (info.depth[b] + 1));
    std::vector<int> by_key(d);
    for (int c = 0; c < d; ++c) by_key[c] = c;
    std::sort(by_key.begin(), by_key.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    std::vector<long long> gamma(d, 0);
    for (int rank = 0; rank < d; ++rank) gamma[by_key[rank]] = rank * (2 * span + 1);
    Cocharacter chi{gamma, std::vector<long long>(basis.supp_arrows.size(), step)};
    auto wt = cocharacter_weights(chi, f, basis);
    auto weight_less = [&](int a, int b) { return wt[a] < wt[b]; };
    AlignedBasis basis2 = make_aligned(inst, fibers_by(inst, weight_less));
    return finish(inst, std::move(basis2), std::move(chi), false);
}

AlignmentResult tree_aligned(const Instance& inst) {
    const auto& f = inst.forest;
    PathInfo info = path_info(f, false);

    std::vector<int> vpos(inst.quiver.vertex_count());
    for (int i = 0; i < inst.quiver.vertex_count(); ++i) vpos[inst.vertex_order[i]] = i;
    int d = f.component_count();
    std::vector<ComponentKey> keys(d);
    for (int c = 0; c < d; ++c)
        keys[c] = {info.comp_len[c], vpos[f.basis()[info.comp_root[c]].over], 0, -c};

    auto supp = supporting_arrows(inst.quiver, f);
    std::vector<long long> nu(supp.size());
    for (size_t i = 0; i < supp.size(); ++i) nu[i] = static_cast<long long>(i) + 1;

    // Signed nu-sum within each component, then component blocks far apart.
    std::vector<long long> arrow_weight(inst.quiver.arrow_count(), 0);
    for (size_t i = 0; i < supp.size(); ++i) arrow_weight[supp[i]] = nu[i];
    std::vector<long long> local = propagate(f, std::vector<long long>(d, 0), arrow_weight);
    long long span = 1;
    for (long long w : local) span = std::max(span, std::llabs(w));

    std::vector<int> by_key(d);
    for (int c = 0; c < d; ++c) by_key[c] = c;
    std::sort(by_key.begin(), by_key.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    std::vector<long long> gamma(d, 0);
    for (int rank = 0; rank < d; ++rank) gamma[by_key[rank]] = rank * (2 * span + 1) + span;

    Cocharacter chi{gamma, nu};
    std::vector<std::vector<int>> fiber(inst.quiver.vertex_count());
    for (int b = 0; b < f.basis_count(); ++b) fiber[f.basis()[b].over].push_back(b);
    std::vector<long long> wt(f.basis_count());
    for (int b = 0; b < f.basis_count(); ++b) wt[b] = gamma[f.component_of(b)] + local[b];
    for (auto& fv : fiber)
        std::sort(fv.begin(), fv.end(), [&](int a, int b) {
            if (wt[a] != wt[b]) return wt[a] < wt[b];
            return a < b;
        });
    for (const auto& fv : fiber)
        for (size_t i = 0; i + 1 < fv.size(); ++i)
            if (wt[fv[i]] == wt[fv[i + 1]])
                throw PreconditionError("tree alignment failed: equal weights over vertex " +
                                        inst.quiver.vertex_label(f.basis()[fv[i]].over));

    return finish(inst, make_aligned(inst, fiber), std::move(chi), true);
}

AlignmentResult aligned_for(const Instance& inst) {
    return is_straight(inst.forest) ? attractive_aligned(inst) : tree_aligned(inst);
}

}  // namespace qgkm
