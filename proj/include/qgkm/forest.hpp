// Coefficient forests: winding data presenting a representation as a direct
// sum of coefficient trees. Basis vectors sit over quiver vertices, coefficient
// arrows over quiver arrows.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgkm/quiver.hpp"

namespace qgkm {

struct BasisVertex {
    std::string id;
    int over = -1;  // quiver vertex index
};

struct CoeffArrow {
    int src = -1;  // basis index
    int tgt = -1;  // basis index
    int over = -1;  // quiver arrow index
};

class CoefficientForest {
public:
    CoefficientForest() = default;
    CoefficientForest(std::vector<BasisVertex> basis, std::vector<CoeffArrow> arrows,
                      std::vector<std::vector<int>> components);

    const std::vector<BasisVertex>& basis() const { return basis_; }
    const std::vector<CoeffArrow>& arrows() const { return arrows_; }
    const std::vector<std::vector<int>>& components() const { return components_; }

    int basis_count() const { return static_cast<int>(basis_.size()); }
    int component_count() const { return static_cast<int>(components_.size()); }
    int component_of(int b) const { return component_of_[b]; }

    int basis_index(const std::string& id) const;

    // Arrow indices incident to a basis vector.
    const std::vector<int>& out_arrows(int b) const { return out_of_[b]; }
    const std::vector<int>& in_arrows(int b) const { return in_of_[b]; }

    // Direct successors / predecessors in the coefficient quiver.
    std::vector<int> successors(int b) const;
    std::vector<int> predecessors(int b) const;

    // Unique source of a component when it has exactly one; first source
    // in basis order otherwise. Every tree component has at least one.
    int component_root(int c) const;

private:
    std::vector<BasisVertex> basis_;
    std::vector<CoeffArrow> arrows_;
    std::vector<std::vector<int>> components_;
    std::vector<int> component_of_;
    std::vector<std::vector<int>> out_of_;
    std::vector<std::vector<int>> in_of_;
};

struct ValidationItem {
    std::string code;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationItem> items;

    void fail(std::string code, std::string message) {
        ok = false;
        items.push_back({std::move(code), std::move(message)});
    }
};

// Checks tree-ness, arrow compatibility, the winding condition and global
// uniqueness of basis ids. Report-valued; never throws.
ValidationReport validate_forest(const Quiver& q, const CoefficientForest& f);

// Number of basis vectors over each quiver vertex (the dimension of the
// pushed-down representation).
std::vector<int> push_down_dimensions(const Quiver& q, const CoefficientForest& f);

// Component shape predicates.
bool component_is_directed_path(const CoefficientForest& f, int c);
bool component_is_string(const CoefficientForest& f, int c);  // underlying graph is a path
bool is_straight(const CoefficientForest& f);                 // all components directed paths
bool has_proper_tree_component(const CoefficientForest& f);   // some component branches

// True when following any coefficient arrow out of `selected` stays inside.
// `selected` must be sorted basis indices.
bool is_successor_closed(const CoefficientForest& f, const std::vector<int>& selected);

// Induced forest on a subset of basis indices (sorted). Components are the
// weak connectivity classes, ordered by smallest original basis index.
CoefficientForest subforest(const CoefficientForest& f, const std::vector<int>& keep);

// Forest on the complement of a successor-closed subset. Throws
// PreconditionError when `selected` is not successor-closed.
CoefficientForest quotient_forest(const CoefficientForest& f, const std::vector<int>& selected);

// Canonical multiset of component shapes. Two forests get equal iso types
// exactly when they are isomorphic as direct sums of labeled trees.
using ForestIsoType = std::vector<std::string>;
ForestIsoType iso_type(const Quiver& q, const CoefficientForest& f);

}  // namespace qgkm
