// Problem instances: a quiver, a coefficient forest, a dimension vector and
// an optional vertex order used for tie-breaking.
#pragma once

#include <string>
#include <vector>

#include "qgkm/forest.hpp"
#include "qgkm/quiver.hpp"

namespace qgkm {

struct Instance {
    Quiver quiver;
    CoefficientForest forest;
    std::vector<int> dim;           // per quiver vertex index
    std::vector<int> vertex_order;  // permutation of vertex indices

    std::vector<int> pushed_down() const { return push_down_dimensions(quiver, forest); }
};

// Builds an instance and checks basic shape: dimension vector entries present
// for every vertex, vertex_order a permutation. Forest validation is separate
// and report-valued.
Instance make_instance(Quiver q, CoefficientForest f, std::vector<int> dim,
                       std::vector<int> vertex_order = {});

// JSON document I/O. Field names are normative:
//   quiver.vertices, quiver.arrows[{id,source,target}],
//   forest.components[{vertices[{id,over}], arrows[{source,target,over}]}],
//   dimension_vector, vertex_order.
// load_instance throws MalformedInstance with field context on bad documents
// and rejects forests that fail validation.
Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& text);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace qgkm
