#include "qgkm/forest.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "qgkm/errors.hpp"

namespace qgkm {

CoefficientForest::CoefficientForest(std::vector<BasisVertex> basis, std::vector<CoeffArrow> arrows,
                                     std::vector<std::vector<int>> components)
    : basis_(std::move(basis)), arrows_(std::move(arrows)), components_(std::move(components)) {
    component_of_.assign(basis_.size(), -1);
    for (int c = 0; c < static_cast<int>(components_.size()); ++c)
        for (int b : components_[c]) {
            if (b < 0 || b >= static_cast<int>(basis_.size()))
                throw MalformedInstance("component references unknown basis index");
            if (component_of_[b] != -1)
                throw MalformedInstance("basis vector " + basis_[b].id + " listed in two components");
            component_of_[b] = c;
        }
    for (int b = 0; b < static_cast<int>(basis_.size()); ++b)
        if (component_of_[b] == -1)
            throw MalformedInstance("basis vector " + basis_[b].id + " not listed in any component");
    out_of_.assign(basis_.size(), {});
    in_of_.assign(basis_.size(), {});
    for (int a = 0; a < static_cast<int>(arrows_.size()); ++a) {
        const auto& ar = arrows_[a];
        if (ar.src < 0 || ar.src >= basis_count() || ar.tgt < 0 || ar.tgt >= basis_count())
            throw MalformedInstance("coefficient arrow endpoint out of range");
        out_of_[ar.src].push_back(a);
        in_of_[ar.tgt].push_back(a);
    }
}

int CoefficientForest::basis_index(const std::string& id) const {
    for (int b = 0; b < basis_count(); ++b)
        if (basis_[b].id == id) return b;
    return -1;
}

std::vector<int> CoefficientForest::successors(int b) const {
    std::vector<int> out;
    for (int a : out_of_[b]) out.push_back(arrows_[a].tgt);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> CoefficientForest::predecessors(int b) const {
    std::vector<int> out;
    for (int a : in_of_[b]) out.push_back(arrows_[a].src);
    std::sort(out.begin(), out.end());
    return out;
}

int CoefficientForest::component_root(int c) const {
    for (int b : components_[c])
        if (in_of_[b].empty()) return b;
    return components_[c].empty() ? -1 : components_[c][0];
}

ValidationReport validate_forest(const Quiver& q, const CoefficientForest& f) {
    ValidationReport report;

    std::set<std::string> seen_ids;
    for (const auto& b : f.basis()) {
        if (!seen_ids.insert(b.id).second)
            report.fail("duplicate-basis-id", "basis id " + b.id + " appears twice");
        if (b.over < 0 || b.over >= q.vertex_count())
            report.fail("unknown-vertex", "basis id " + b.id + " lies over no declared vertex");
    }

    for (const auto& a : f.arrows()) {
        if (a.over < 0 || a.over >= q.arrow_count()) {
            report.fail("unknown-arrow", "coefficient arrow " + f.basis()[a.src].id + " -> " +
                                             f.basis()[a.tgt].id + " lies over no declared arrow");
            continue;
        }
        if (f.component_of(a.src) != f.component_of(a.tgt))
            report.fail("cross-component-arrow", "coefficient arrow " + f.basis()[a.src].id +
                                                     " -> " + f.basis()[a.tgt].id +
                                                     " connects two components");
        // Arrow compatibility: endpoints lie over the quiver arrow's endpoints.
        if (f.basis()[a.src].over != q.arrow_source(a.over) ||
            f.basis()[a.tgt].over != q.arrow_target(a.over))
            report.fail("arrow-compatibility",
                        "coefficient arrow " + f.basis()[a.src].id + " -> " + f.basis()[a.tgt].id +
                            " over " + q.arrow_id(a.over) + " does not match its endpoints");
    }

    // Winding: no two in-arrows and no two out-arrows over the same quiver
    // arrow at one basis vector.
    for (int b = 0; b < f.basis_count(); ++b) {
        std::map<int, int> out_over, in_over;
        for (int a : f.out_arrows(b)) ++out_over[f.arrows()[a].over];
        for (int a : f.in_arrows(b)) ++in_over[f.arrows()[a].over];
        for (auto [arrow, count] : out_over)
            if (count > 1)
                report.fail("winding", "basis id " + f.basis()[b].id + " has " +
                                           std::to_string(count) + " outgoing arrows over " +
                                           q.arrow_id(arrow));
        for (auto [arrow, count] : in_over)
            if (count > 1)
                report.fail("winding", "basis id " + f.basis()[b].id + " has " +
                                           std::to_string(count) + " incoming arrows over " +
                                           q.arrow_id(arrow));
    }

    // Each component must be a tree: connected and acyclic as an undirected
    // graph. With |arrows| = |vertices| - 1, connectedness implies both.
    for (int c = 0; c < f.component_count(); ++c) {
        const auto& comp = f.components()[c];
        int internal_arrows = 0;
        for (const auto& a : f.arrows())
            if (f.component_of(a.src) == c && f.component_of(a.tgt) == c) ++internal_arrows;
        if (internal_arrows != static_cast<int>(comp.size()) - 1) {
            report.fail("not-a-tree", "component " + std::to_string(c) + " has " +
                                          std::to_string(internal_arrows) + " arrows on " +
                                          std::to_string(comp.size()) + " vertices");
            continue;
        }
        if (comp.empty()) continue;
        std::set<int> reached{comp[0]};
        std::vector<int> stack{comp[0]};
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            auto visit = [&](int nb) {
                if (reached.insert(nb).second) stack.push_back(nb);
            };
            for (int a : f.out_arrows(b)) visit(f.arrows()[a].tgt);
            for (int a : f.in_arrows(b)) visit(f.arrows()[a].src);
        }
        if (reached.size() != comp.size())
            report.fail("not-connected", "component " + std::to_string(c) + " is not connected");
    }

    return report;
}

std::vector<int> push_down_dimensions(const Quiver& q, const CoefficientForest& f) {
    std::vector<int> m(q.vertex_count(), 0);
    for (const auto& b : f.basis()) ++m[b.over];
    return m;
}

bool component_is_directed_path(const CoefficientForest& f, int c) {
    const auto& comp = f.components()[c];
    int sources = 0;
    for (int b : comp) {
        if (f.out_arrows(b).size() > 1 || f.in_arrows(b).size() > 1) return false;
        if (f.in_arrows(b).empty()) ++sources;
    }
    // In/out degree at most one plus connectedness leaves a single chain.
    return sources == 1 || comp.size() == 1;
}

bool component_is_string(const CoefficientForest& f, int c) {
    for (int b : f.components()[c])
        if (f.out_arrows(b).size() + f.in_arrows(b).size() > 2) return false;
    return true;
}

bool is_straight(const CoefficientForest& f) {
    for (int c = 0; c < f.component_count(); ++c)
        if (!component_is_directed_path(f, c)) return false;
    return true;
}

bool has_proper_tree_component(const CoefficientForest& f) {
    for (int c = 0; c < f.component_count(); ++c)
        if (!component_is_string(f, c)) return true;
    return false;
}

bool is_successor_closed(const CoefficientForest& f, const std::vector<int>& selected) {
    for (int b : selected)
        for (int a : f.out_arrows(b))
            if (!std::binary_search(selected.begin(), selected.end(), f.arrows()[a].tgt))
                return false;
    return true;
}

CoefficientForest subforest(const CoefficientForest& f, const std::vector<int>& keep) {
    std::vector<int> new_index(f.basis_count(), -1);
    std::vector<BasisVertex> basis;
    basis.reserve(keep.size());
    for (int b : keep) {
        new_index[b] = static_cast<int>(basis.size());
        basis.push_back(f.basis()[b]);
    }
    std::vector<CoeffArrow> arrows;
    for (const auto& a : f.arrows())
        if (new_index[a.src] != -1 && new_index[a.tgt] != -1)
            arrows.push_back({new_index[a.src], new_index[a.tgt], a.over});

    // Weak connectivity classes in the induced graph, in order of smallest member.
    int n = static_cast<int>(basis.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& a : arrows) {
        adj[a.src].push_back(a.tgt);
        adj[a.tgt].push_back(a.src);
    }
    std::vector<int> comp_of(n, -1);
    std::vector<std::vector<int>> components;
    for (int b = 0; b < n; ++b) {
        if (comp_of[b] != -1) continue;
        std::vector<int> members;
        std::vector<int> stack{b};
        comp_of[b] = static_cast<int>(components.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int w : adj[v])
                if (comp_of[w] == -1) {
                    comp_of[w] = comp_of[b];
                    stack.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    return CoefficientForest(std::move(basis), std::move(arrows), std::move(components));
}

CoefficientForest quotient_forest(const CoefficientForest& f, const std::vector<int>& selected) {
    if (!is_successor_closed(f, selected))
        throw PreconditionError("quotient requires a successor-closed subset");
    std::vector<int> keep;
    keep.reserve(f.basis_count() - selected.size());
    for (int b = 0; b < f.basis_count(); ++b)
        if (!std::binary_search(selected.begin(), selected.end(), b)) keep.push_back(b);
    return subforest(f, keep);
}

namespace {

// Canonical encoding of a component as an unordered tree with labeled,
// directed edges. Encoding from a fixed root is unique up to relabeling;
// taking the minimum over all roots makes it relabeling-invariant.
std::string encode_from(const Quiver& q, const CoefficientForest& f, int root, int parent) {
    std::string s = "(" + q.vertex_label(f.basis()[root].over);
    std::vector<std::string> children;
    for (int a : f.out_arrows(root)) {
        int child = f.arrows()[a].tgt;
        if (child == parent) continue;
        children.push_back(">" + q.arrow_id(f.arrows()[a].over) + encode_from(q, f, child, root));
    }
    for (int a : f.in_arrows(root)) {
        int child = f.arrows()[a].src;
        if (child == parent) continue;
        children.push_back("<" + q.arrow_id(f.arrows()[a].over) + encode_from(q, f, child, root));
    }
    std::sort(children.begin(), children.end());
    for (auto& c : children) s += c;
    s += ")";
    return s;
}

// A tree edge can connect two vertices that are each other's parent only when
// the component has exactly two vertices joined by parallel arrows; the
// winding condition forbids that, so parent tracking by vertex is sound
// except for a two-vertex component with one arrow, where it is also sound.

}  // namespace

ForestIsoType iso_type(const Quiver& q, const CoefficientForest& f) {
    ForestIsoType shapes;
    for (int c = 0; c < f.component_count(); ++c) {
        std::string best;
        for (int root : f.components()[c]) {
            std::string enc = encode_from(q, f, root, -1);
            if (best.empty() || enc < best) best = std::move(enc);
        }
        shapes.push_back(std::move(best));
    }
    std::sort(shapes.begin(), shapes.end());
    return shapes;
}

}  // namespace qgkm
