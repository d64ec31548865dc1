// Independent brute-force ground truth: finite-field point counts by subspace
// enumeration, Hom dimensions by triple counting, Bruhat order by rank-matrix
// dominance, fixed points by subset filtering. Deliberately naive.
#pragma once

#include <vector>

#include "qgkm/fixed_points.hpp"
#include "qgkm/instance.hpp"

namespace qgkm {

struct FqCountResult {
    int p = 0;
    long long count = 0;
    long long enumerated = 0;  // candidate tuples inspected
};

// Counts the points of the quiver Grassmannian over the prime field F_p by
// enumerating all subspace tuples in reduced row-echelon form and filtering
// by the arrow conditions. Throws BudgetExceeded when the tuple count would
// pass the budget, PreconditionError for non-prime p.
FqCountResult count_points_fq(const Instance& inst, int p, long long budget = 10000000);

// dim Hom out of the coordinate subrepresentation into its quotient, counted
// as triples (S', mu, T'): S' a connected in-closed subquiver on the selected
// side, T' a connected out-closed subquiver of the quotient, mu a
// label-preserving isomorphism.
long long hom_dim_triples(const Instance& inst, const FixedPoint& u);

// Bruhat order on one-line permutations via rank-matrix dominance.
bool bruhat_leq(const std::vector<int>& v, const std::vector<int>& w);

long long inversions(const std::vector<int>& perm);

std::vector<std::vector<int>> all_permutations(int n);

// Filters every subset of the basis by successor closure and fiber sizes.
// Guarded to at most 16 basis vectors.
std::vector<FixedPoint> brute_force_fixed_points(const Quiver& q, const CoefficientForest& f,
                                                 const std::vector<int>& e);

}  // namespace qgkm
