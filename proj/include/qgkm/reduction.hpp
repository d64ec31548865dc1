// Instance normalization (flexible reduction, identity-arrow collapsing) and
// the GKM classification verdict.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgkm/instance.hpp"

namespace qgkm {

enum class GkmTag { GkmStraight, NoGkm, PointOrEmpty, UnknownTree };

std::string to_string(GkmTag tag);

// Three basis vectors u -> m <- w (two_sink) or u <- m -> w (two_source)
// witnessing a non-equioriented string component.
struct NoGkmWitness {
    std::string kind;  // "two_sink" or "two_source"
    std::vector<std::string> basis_ids;   // outer, middle, outer
    std::vector<std::string> arrow_ids;   // the two quiver arrows involved
    std::vector<std::string> vertex_ids;  // quiver vertices under the triple
};

struct ReductionStep {
    std::string kind;  // "remove_vertex" or "collapse_arrow"
    std::string subject;
    std::vector<std::string> removed_basis;
    std::map<std::string, int> dim_delta;
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    bool empty() const { return steps.empty(); }
};

struct ReducedInstance {
    Instance instance;
    ReductionTrace trace;
    bool grassmannian_empty = false;
};

// Per-vertex flexibility: a vertex is flexible when the fixed-point fiber
// over it takes at least two values. Throws InfeasibleDimension when some
// e_i is negative or exceeds m_i.
std::map<std::string, bool> is_flexible(const Instance& inst);

// Removes inflexible vertices until all remaining vertices are flexible or
// the instance is trivial. The forced fiber is deleted together with its
// descendants (lowering downstream dimensions); basis vectors that can never
// be selected are deleted together with their ancestors. move_seed permutes
// the order of eligible moves; the fixpoint does not depend on it.
ReducedInstance flexible_reduce(const Instance& inst, unsigned move_seed = 0);

// Collapses arrows whose map is a bijection of full fibers when the two
// dimensions agree: the target vertex is removed and its other arrows are
// re-attached across the bijection.
ReducedInstance collapse_identity_arrows(const Instance& inst, unsigned move_seed = 0);

struct GkmVerdict {
    GkmTag tag;
    std::optional<NoGkmWitness> witness;
    ReductionTrace trace;
    Instance reduced;
};

// Reduces to a fixpoint of both moves, then reads the verdict off the
// component shapes of what remains.
GkmVerdict classify_gkm(const Instance& inst);

}  // namespace qgkm
