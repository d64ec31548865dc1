// Equivariant-cohomology structure algebra over the moment graph: section
// verification against the edge congruences and Knutson-Tao classes with
// exact rational coefficients.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgkm/moment_graph.hpp"
#include "qgkm/polynomial.hpp"

namespace qgkm {

// Assignment fixed point -> polynomial; absent entries are zero.
struct GkmSection {
    std::map<int, Polynomial> values;

    Polynomial at(int vertex, int nvars) const;
};

struct SectionCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

// For every edge (x, y, alpha): f_x - f_y must be divisible by alpha.
SectionCheck verify_gkm_section(const MomentGraph& g, const GkmSection& s);

struct KTClass {
    int base = -1;
    std::map<int, Polynomial> components;  // fixed point index -> polynomial
    int degree = 0;
    bool unique_solution = true;  // every congruence system was determined
    bool global_solve_used = false;
};

// Knutson-Tao class of a fixed point: base component is the product of its
// outgoing edge characters, support lies in the up-set, every component is
// homogeneous of the base degree and all edge congruences hold. Components
// are solved one vertex at a time along the order, free coordinates zero in
// graded-lex; a stalled greedy pass falls back to one global solve (which
// cannot be infeasible when a class exists). Throws InfeasibleSystem
// otherwise.
KTClass kt_class(const MomentGraph& g, int x);

struct KTBasis {
    std::vector<KTClass> classes;  // one per fixed point, in vertex order
    bool unique = true;
};

// One class per fixed point; asserts upper-triangularity of the evaluation
// matrix.
KTBasis kt_basis(const MomentGraph& g);

}  // namespace qgkm
