// Built-in problem instances used by the CLI and the test suites.
#pragma once

#include <string>
#include <vector>

#include "qgkm/instance.hpp"

namespace qgkm {

// n equal full strings over the equioriented A_{n-1} path, e = (1,...,n-1).
// Its quiver Grassmannian is the complete flag variety on n letters.
Instance make_fl_n(int n);

// Enhanced-quiver realization of the Schubert variety X_(3124): two tree
// summands branching at the middle vertex plus one plain string.
Instance make_x3124();

// Two strings over 1 -> 2 with e = (1,1); the Grassmannian is a projective line.
Instance make_a2_p1();

// Three identity strings over 1 -> 2 <- 3 with e = (1,2,1).
Instance make_no_gkm_sink();

// Three identity strings over 1 <- 2 -> 3 with e = (2,1,2).
Instance make_no_gkm_source();

// One basis vector over one vertex with e = 0; the Grassmannian is a point.
Instance make_point();

// Dispatch by fixture name: fl_n (uses n), x3124, a2_p1, no_gkm_sink,
// no_gkm_source, point. Also accepts fl_<k> shorthand. Throws
// PreconditionError for unknown names.
Instance make_fixture(const std::string& name, int n = 4);

std::vector<std::string> fixture_names();

}  // namespace qgkm
