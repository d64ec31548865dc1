#include "qgkm/quiver.hpp"

#include "qgkm/errors.hpp"

namespace qgkm {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<QuiverArrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
        auto [it, fresh] = vertex_by_label_.emplace(vertices_[v], v);
        (void)it;
        if (!fresh) throw MalformedInstance("duplicate vertex label: " + vertices_[v]);
    }
    arrow_source_.reserve(arrows_.size());
    arrow_target_.reserve(arrows_.size());
    for (int a = 0; a < static_cast<int>(arrows_.size()); ++a) {
        const auto& ar = arrows_[a];
        auto [it, fresh] = arrow_by_id_.emplace(ar.id, a);
        (void)it;
        if (!fresh) throw MalformedInstance("duplicate arrow id: " + ar.id);
        int s = vertex_index(ar.source);
        int t = vertex_index(ar.target);
        if (s < 0) throw MalformedInstance("arrow " + ar.id + " has undeclared source " + ar.source);
        if (t < 0) throw MalformedInstance("arrow " + ar.id + " has undeclared target " + ar.target);
        arrow_source_.push_back(s);
        arrow_target_.push_back(t);
    }
}

int Quiver::vertex_index(const std::string& label) const {
    auto it = vertex_by_label_.find(label);
    return it == vertex_by_label_.end() ? -1 : it->second;
}

int Quiver::arrow_index(const std::string& id) const {
    auto it = arrow_by_id_.find(id);
    return it == arrow_by_id_.end() ? -1 : it->second;
}

}  // namespace qgkm
