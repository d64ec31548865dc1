#include "qgkm/fixed_points.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qgkm/errors.hpp"

namespace qgkm {

bool FixedPoint::contains(int b) const {
    return std::binary_search(selected.begin(), selected.end(), b);
}

namespace {

// Successor-closed subsets of one component, each with its per-vertex counts.
// Vertices are processed sinks-first so that including a vertex only needs
// its already-decided successors.
struct ComponentChoices {
    std::vector<std::vector<int>> subsets;  // sorted basis indices
    std::vector<std::vector<int>> counts;   // per quiver vertex
};

ComponentChoices component_choices(const Quiver& q, const CoefficientForest& f, int c) {
    const auto& comp = f.components()[c];
    // Reverse topological order: targets before sources.
    std::vector<int> order;
    std::vector<int> pending(f.basis_count(), 0);
    for (int b : comp) pending[b] = static_cast<int>(f.out_arrows(b).size());
    std::vector<int> stack;
    for (int b : comp)
        if (pending[b] == 0) stack.push_back(b);
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        order.push_back(b);
        for (int a : f.in_arrows(b)) {
            int s = f.arrows()[a].src;
            if (--pending[s] == 0) stack.push_back(s);
        }
    }

    ComponentChoices out;
    std::vector<int> chosen;
    std::vector<char> in_set(f.basis_count(), 0);
    std::function<void(size_t)> walk = [&](size_t i) {
        if (i == order.size()) {
            std::vector<int> subset = chosen;
            std::sort(subset.begin(), subset.end());
            std::vector<int> count(q.vertex_count(), 0);
            for (int b : subset) ++count[f.basis()[b].over];
            out.subsets.push_back(std::move(subset));
            out.counts.push_back(std::move(count));
            return;
        }
        int b = order[i];
        walk(i + 1);
        bool closed = true;
        for (int a : f.out_arrows(b))
            if (!in_set[f.arrows()[a].tgt]) closed = false;
        if (closed) {
            in_set[b] = 1;
            chosen.push_back(b);
            walk(i + 1);
            chosen.pop_back();
            in_set[b] = 0;
        }
    };
    walk(0);
    return out;
}

}  // namespace

std::vector<FixedPoint> enumerate_fixed_points(const Quiver& q, const CoefficientForest& f,
                                               const std::vector<int>& e) {
    for (int v = 0; v < q.vertex_count(); ++v)
        if (e[v] < 0) return {};

    std::vector<ComponentChoices> choices;
    choices.reserve(f.component_count());
    for (int c = 0; c < f.component_count(); ++c) choices.push_back(component_choices(q, f, c));

    // Per-vertex capacity still available from the remaining components.
    int nc = f.component_count();
    std::vector<std::vector<int>> max_rest(nc + 1, std::vector<int>(q.vertex_count(), 0));
    for (int c = nc - 1; c >= 0; --c) {
        max_rest[c] = max_rest[c + 1];
        for (int b : f.components()[c]) ++max_rest[c][f.basis()[b].over];
    }

    std::vector<FixedPoint> result;
    std::vector<int> partial(q.vertex_count(), 0);
    std::vector<int> acc;
    std::function<void(int)> walk = [&](int c) {
        for (int v = 0; v < q.vertex_count(); ++v) {
            if (partial[v] > e[v]) return;
            if (partial[v] + max_rest[c][v] < e[v]) return;
        }
        if (c == nc) {
            std::vector<int> sel = acc;
            std::sort(sel.begin(), sel.end());
            result.push_back(FixedPoint{std::move(sel)});
            return;
        }
        const auto& ch = choices[c];
        for (size_t i = 0; i < ch.subsets.size(); ++i) {
            for (int v = 0; v < q.vertex_count(); ++v) partial[v] += ch.counts[i][v];
            size_t base = acc.size();
            acc.insert(acc.end(), ch.subsets[i].begin(), ch.subsets[i].end());
            walk(c + 1);
            acc.resize(base);
            for (int v = 0; v < q.vertex_count(); ++v) partial[v] -= ch.counts[i][v];
        }
    };
    walk(0);
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<std::vector<int>> fixed_point_fibers(const FixedPoint& u, const AlignedBasis& basis,
                                                 int vertex_count) {
    std::vector<std::vector<int>> fibers(vertex_count);
    for (int b : u.selected) fibers[basis.pos_vertex[b]].push_back(basis.pos_index[b]);
    for (auto& k : fibers) std::sort(k.begin(), k.end());
    return fibers;
}

namespace {

// Forward segment of b: every iterated successor, in walk order.
std::vector<int> forward_segment(const CoefficientForest& f, int b) {
    std::vector<int> out;
    std::vector<int> stack{b};
    std::vector<char> seen(f.basis_count(), 0);
    seen[b] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int a : f.out_arrows(x)) {
            int t = f.arrows()[a].tgt;
            if (!seen[t]) {
                seen[t] = 1;
                out.push_back(t);
                stack.push_back(t);
            }
        }
    }
    return out;
}

}  // namespace

CellData initial_parameters(const CoefficientForest& f, const AlignedBasis& basis,
                            const FixedPoint& u) {
    CellData cell;
    cell.point = u;
    for (int k : u.selected) {
        // Condition on k: no predecessor inside the subquiver.
        bool pred_selected = false;
        for (int p : f.predecessors(k))
            if (u.contains(p)) pred_selected = true;
        if (pred_selected) continue;

        int v = basis.pos_vertex[k];
        int kidx = basis.pos_index[k];
        std::vector<char> k_covers(basis.fiber.size(), 0);
        for (int s : forward_segment(f, k)) k_covers[basis.pos_vertex[s]] = 1;
        for (int j : basis.fiber[v]) {
            if (basis.pos_index[j] <= kidx || u.contains(j)) continue;
            // Every non-selected successor of j needs a successor of k over
            // the same vertex.
            bool covered = true;
            for (int s : forward_segment(f, j)) {
                if (u.contains(s)) continue;
                if (!k_covers[basis.pos_vertex[s]]) {
                    covered = false;
                    break;
                }
            }
            if (covered) cell.initial_params.push_back({j, k});
        }
    }
    std::sort(cell.initial_params.begin(), cell.initial_params.end());
    cell.dimension = static_cast<int>(cell.initial_params.size());
    return cell;
}

long long PoincareResult::at(long long qval) const {
    long long value = 0, power = 1;
    for (long long c : coefficients) {
        value += c * power;
        power *= qval;
    }
    return value;
}

long long PoincareResult::derivative_at_one() const {
    long long value = 0;
    for (size_t k = 1; k < coefficients.size(); ++k)
        value += static_cast<long long>(k) * coefficients[k];
    return value;
}

PoincareResult poincare_polynomial(const Instance& inst, const AlignmentResult& alignment) {
    PoincareResult result;
    result.experimental = alignment.experimental;
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    for (const auto& u : points) {
        int dim = initial_parameters(inst.forest, alignment.basis, u).dimension;
        if (dim >= static_cast<int>(result.coefficients.size()))
            result.coefficients.resize(dim + 1, 0);
        ++result.coefficients[dim];
    }
    if (result.coefficients.empty()) result.coefficients.push_back(0);
    return result;
}

long long euler_characteristic(const Quiver& q, const CoefficientForest& f,
                               const std::vector<int>& e) {
    return static_cast<long long>(enumerate_fixed_points(q, f, e).size());
}

bool is_fl_n_shape(const Instance& inst, int* n_out, std::vector<int>* path_order) {
    const auto& q = inst.quiver;
    const auto& f = inst.forest;
    int nv = q.vertex_count();
    if (nv < 1) return false;
    int n = nv + 1;
    if (f.component_count() != n) return false;
    if (q.arrow_count() != nv - 1) return false;

    // Arrows must chain the vertices into one path.
    std::vector<int> out_deg(nv, 0), in_deg(nv, 0);
    for (int a = 0; a < q.arrow_count(); ++a) {
        ++out_deg[q.arrow_source(a)];
        ++in_deg[q.arrow_target(a)];
    }
    int source = -1;
    for (int v = 0; v < nv; ++v) {
        if (out_deg[v] > 1 || in_deg[v] > 1) return false;
        if (in_deg[v] == 0) {
            if (source != -1) return false;
            source = v;
        }
    }
    if (source == -1) return false;
    std::vector<int> order{source};
    std::vector<int> next(nv, -1);
    for (int a = 0; a < q.arrow_count(); ++a) next[q.arrow_source(a)] = q.arrow_target(a);
    while (next[order.back()] != -1) order.push_back(next[order.back()]);
    if (static_cast<int>(order.size()) != nv) return false;

    // Every component covers the path once, and e is the staircase.
    for (int c = 0; c < n; ++c) {
        const auto& comp = f.components()[c];
        if (static_cast<int>(comp.size()) != nv) return false;
        if (!component_is_directed_path(f, c)) return false;
        int b = f.component_root(c);
        for (int i = 0; i < nv; ++i) {
            if (f.basis()[b].over != order[i]) return false;
            if (!f.out_arrows(b).empty()) b = f.arrows()[f.out_arrows(b)[0]].tgt;
        }
    }
    for (int i = 0; i < nv; ++i)
        if (inst.dim[order[i]] != i + 1) return false;

    if (n_out) *n_out = n;
    if (path_order) *path_order = order;
    return true;
}

std::vector<int> permutation_of_fixed_point(const Instance& inst, const FixedPoint& u) {
    int n = 0;
    std::vector<int> order;
    if (!is_fl_n_shape(inst, &n, &order))
        throw PreconditionError("permutation reading needs the full-flag instance shape");

    const auto& f = inst.forest;
    std::vector<int> vertex_pos(inst.quiver.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(order.size()); ++i) vertex_pos[order[i]] = i;

    std::vector<int> perm(n, 0);
    for (int c = 0; c < n; ++c) {
        int start = n;  // empty component: its segment starts past the path
        for (int b : f.components()[c])
            if (u.contains(b)) start = std::min(start, vertex_pos[f.basis()[b].over] + 1);
        if (perm[start - 1] != 0)
            throw InternalInvariantBreach("fixed point is not a staircase");
        perm[start - 1] = c + 1;
    }
    return perm;
}

}  // namespace qgkm
