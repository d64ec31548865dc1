// Gradings and torus data: constructible gradings, aligned bases, attractive
// cocharacters, characters of the acting torus and their pairing.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgkm/instance.hpp"

namespace qgkm {

// Character of the torus (C*)^(d+c) in the eps/delta basis: eps indexed by
// component, delta by supporting arrow.
struct Character {
    std::vector<long long> eps;
    std::vector<long long> delta;

    bool is_zero() const;
    Character operator-(const Character& other) const;
    bool operator==(const Character& other) const = default;
};

// Cocharacter gamma (per component) and nu (per supporting arrow); induces the
// grading wt(b) = gamma[component] + signed nu-sum along the root path.
struct Cocharacter {
    std::vector<long long> gamma;
    std::vector<long long> nu;
};

// gamma . eps + nu . delta. Throws InfeasibleDimension on length mismatch.
long long pairing(const Cocharacter& chi, const Character& alpha);

// Edge weights per quiver arrow plus one initial weight per component.
struct ConstructibleGrading {
    std::map<std::string, long long> edge_weights;  // quiver arrow id -> wt(a)
    std::vector<long long> initial_weights;         // per component, at its root
};

// Propagates wt(b') = wt(b) + wt(a) from each component root. Trees make the
// propagation consistent; missing edge weights default to zero.
std::vector<long long> expand_grading(const ConstructibleGrading& g, const Quiver& q,
                                      const CoefficientForest& f);

struct ConstructibilityResult {
    bool ok = true;
    // Weight per quiver arrow id, for arrows carrying at least one
    // coefficient arrow.
    std::map<std::string, long long> arrow_weights;
    std::vector<std::string> violations;
};

// True when every coefficient arrow over one quiver arrow has the same
// weight difference; returns those differences.
ConstructibilityResult is_constructible(const std::vector<long long>& wt, const Quiver& q,
                                        const CoefficientForest& f);

// wt(a) = 1 everywhere, component starts staggered by the longest component
// length; the expanded grading is injective on the whole basis. Requires a
// straight forest.
Cocharacter distinct_weight_cocharacter(const Quiver& q, const CoefficientForest& f);

// Fiber orders (1-based index per vertex), component of each basis vector and
// the indexing of supporting arrows.
struct AlignedBasis {
    std::vector<std::vector<int>> fiber;  // per vertex: basis indices, lowest first
    std::vector<int> pos_vertex;          // basis -> vertex
    std::vector<int> pos_index;           // basis -> 1-based fiber index
    std::vector<int> segment_of;          // basis -> component
    std::vector<int> arrow_index;         // quiver arrow -> [0,c) or -1 off support
    std::vector<int> supp_arrows;         // supporting arrow indices in order
    int fiber_index(int b) const { return pos_index[b]; }
};

struct Sa1Conflict {
    std::string vertex;
    std::string arrow_of_mover;
    std::string mover;   // basis id with a successor over arrow_of_mover
    std::string killed;  // basis id without one, placed below the mover
};

struct AlignmentResult {
    AlignedBasis basis;
    Cocharacter chi;
    std::vector<long long> weights;  // expanded grading of chi
    bool sa1_full = true;            // false when only the per-arrow relaxation holds
    std::vector<Sa1Conflict> sa1_conflicts;
    bool experimental = false;  // tree mode
};

// Aligned basis plus attractive cocharacter for a straight forest. SA1 may be
// unsatisfiable when two strings leave one vertex along different arrows; the
// conflicts are reported and SA1 drops to sinks-above-movers per arrow.
// Throws PreconditionError on non-straight input.
AlignmentResult attractive_aligned(const Instance& inst);

// Experimental variant for forests with tree components: component-blocked
// fiber orders with a block-separated cocharacter.
AlignmentResult tree_aligned(const Instance& inst);

// attractive_aligned for straight forests, tree_aligned otherwise.
AlignmentResult aligned_for(const Instance& inst);

// Expanded grading of a cocharacter: gamma at the component root, nu added
// along forward arrows and subtracted along backward ones.
std::vector<long long> cocharacter_weights(const Cocharacter& chi, const CoefficientForest& f,
                                           const AlignedBasis& basis);

// Literal checks used both by construction and by the test suites.
bool check_ag1(const std::vector<long long>& wt, const AlignedBasis& basis);
bool check_ag2(const std::vector<long long>& wt, const Quiver& q, const CoefficientForest& f);
bool check_sa2(const AlignedBasis& basis, const CoefficientForest& f);
std::vector<Sa1Conflict> sa1_conflicts(const AlignedBasis& basis, const Quiver& q,
                                       const CoefficientForest& f);
// Relaxed SA1: vectors with no successor at all sit above every mover.
bool check_sa1_sinks_above_movers(const AlignedBasis& basis, const CoefficientForest& f);

}  // namespace qgkm
