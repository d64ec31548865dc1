// Mutations of successor-closed subquivers, character labels and the moment
// graph, its partial order, Palais-Smale test, tangent dimensions and Hall
// strata.
#pragma once

#include <optional>
#include <vector>

#include "qgkm/fixed_points.hpp"
#include "qgkm/grading.hpp"
#include "qgkm/instance.hpp"

namespace qgkm {

// Cut-and-paste move between two fixed points: the exchanged pieces are
// connected, path-shaped and lie over the same quiver path. k and l are the
// fiber indices of the piece starting vertices; fundamental when k < l.
struct Mutation {
    FixedPoint base;
    FixedPoint target;
    int vertex = -1;  // quiver vertex under the starting pair
    int k = 0;
    int l = 0;
    bool fundamental() const { return k < l; }
};

// All mutations based at u, fundamental and inverse. Experimental for trees.
std::vector<Mutation> enumerate_mutations(const Instance& inst, const AlignedBasis& basis,
                                          const FixedPoint& u);

// Target of the mutation with the given triple. Throws InvalidMutation when
// no mutation of u matches.
FixedPoint apply_mutation(const Instance& inst, const AlignedBasis& basis, const FixedPoint& u,
                          int vertex, int k, int l);

// eps at the component of b plus delta counts along the path from the
// component root to b (signed on backward tree arrows).
Character vertex_character(const CoefficientForest& f, const AlignedBasis& basis, int b);

// Character of the l-side start minus the k-side start.
Character edge_character(const CoefficientForest& f, const AlignedBasis& basis, const Mutation& m);

struct MomentGraphEdge {
    int src = -1;  // index into vertices
    int tgt = -1;
    int vertex = -1;
    int k = 0;
    int l = 0;
    Character label;
};

struct MomentGraph {
    std::vector<FixedPoint> vertices;
    std::vector<MomentGraphEdge> edges;
    Cocharacter chi;
    bool experimental = false;
    // Fixed-point pairs whose differences are connected but not path-shaped;
    // only possible for tree components.
    std::vector<std::pair<int, int>> connected_nonpath_pairs;

    std::vector<int> out_degree() const;
    std::vector<int> in_degree() const;
};

// Vertices are all fixed points, one edge per fundamental mutation, labels by
// edge_character. Asserts pairing positivity against the cocharacter and
// acyclicity. Throws GenericityViolation on a zero or negative pairing.
MomentGraph build_moment_graph(const Instance& inst, const AlignmentResult& alignment);

// reach[x][y]: directed path (possibly empty) from x to y.
std::vector<std::vector<bool>> partial_order(const MomentGraph& g);

// Every edge strictly drops the out-degree.
bool is_palais_smale(const MomentGraph& g);

// Number of mutations based at u; the dimension of Hom out of the subquiver
// into the quotient, and the degree of u in the moment graph.
int tangent_dimension(const Instance& inst, const AlignedBasis& basis, const FixedPoint& u);

struct HallStratum {
    ForestIsoType sub_type;
    ForestIsoType quot_type;
    std::vector<int> members;  // indices into the fixed-point list
};

// Groups fixed points by the isomorphism types of the subrepresentation and
// its quotient.
std::vector<HallStratum> hall_strata(const Instance& inst);

}  // namespace qgkm
