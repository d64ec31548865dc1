// Torus fixed points of the quiver Grassmannian: successor-closed subquivers
// of the coefficient forest with prescribed fiber sizes, their attracting-cell
// dimensions and the Poincare polynomial of the paving.
#pragma once

#include <vector>

#include "qgkm/grading.hpp"
#include "qgkm/instance.hpp"

namespace qgkm {

struct FixedPoint {
    std::vector<int> selected;  // sorted basis indices

    bool operator==(const FixedPoint& other) const = default;
    bool operator<(const FixedPoint& other) const { return selected < other.selected; }
    bool contains(int b) const;
};

// All e-dimensional successor-closed subquivers, sorted by selected set.
// Works for arbitrary forests; possibly empty.
std::vector<FixedPoint> enumerate_fixed_points(const Quiver& q, const CoefficientForest& f,
                                               const std::vector<int>& e);

// Fiber index sets K_i (1-based positions in the aligned order), per vertex.
std::vector<std::vector<int>> fixed_point_fibers(const FixedPoint& u, const AlignedBasis& basis,
                                                 int vertex_count);

struct CellData {
    FixedPoint point;
    // Pairs (j, k): j outside the subquiver, k inside, over one vertex, with
    // j above k in the fiber order.
    std::vector<std::pair<int, int>> initial_params;
    int dimension = 0;
};

// A parameter (j, k) is initial when k has no selected predecessor and every
// non-selected successor of j is covered by a successor of k over the same
// vertex. Successors are taken along whole forward segments.
CellData initial_parameters(const CoefficientForest& f, const AlignedBasis& basis,
                            const FixedPoint& u);

struct PoincareResult {
    std::vector<long long> coefficients;  // index = cell dimension
    bool experimental = false;

    long long at(long long qval) const;
    long long derivative_at_one() const;
};

// Coefficient c_k = number of fixed points with k initial parameters.
PoincareResult poincare_polynomial(const Instance& inst, const AlignmentResult& alignment);

// Number of fixed points; equals the Poincare polynomial at 1 when defined.
long long euler_characteristic(const Quiver& q, const CoefficientForest& f,
                               const std::vector<int>& e);

// True when the instance is n equal full strings over an equioriented path
// with the staircase dimension vector. path_order receives the vertex indices
// source-to-sink.
bool is_fl_n_shape(const Instance& inst, int* n_out = nullptr,
                   std::vector<int>* path_order = nullptr);

// One-line permutation: letter i is the component (1-based, stacked in
// declaration order) whose selected suffix starts over the i-th path vertex;
// the unselected component supplies the last letter. Throws PreconditionError
// off the flag-variety shape.
std::vector<int> permutation_of_fixed_point(const Instance& inst, const FixedPoint& u);

}  // namespace qgkm
