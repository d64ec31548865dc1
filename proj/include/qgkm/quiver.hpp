// Quivers: finite directed graphs with labeled vertices and arrows.
// Loops, parallel arrows and cycles are allowed.
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace qgkm {

struct QuiverArrow {
    std::string id;
    std::string source;
    std::string target;
};

class Quiver {
public:
    Quiver() = default;

    // Throws MalformedInstance on duplicate labels or undeclared endpoints.
    Quiver(std::vector<std::string> vertices, std::vector<QuiverArrow> arrows);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<QuiverArrow>& arrows() const { return arrows_; }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }

    // -1 when the label is unknown.
    int vertex_index(const std::string& label) const;
    int arrow_index(const std::string& id) const;

    int arrow_source(int a) const { return arrow_source_[a]; }
    int arrow_target(int a) const { return arrow_target_[a]; }

    const std::string& vertex_label(int v) const { return vertices_[v]; }
    const std::string& arrow_id(int a) const { return arrows_[a].id; }

private:
    std::vector<std::string> vertices_;
    std::vector<QuiverArrow> arrows_;
    std::vector<int> arrow_source_;
    std::vector<int> arrow_target_;
    std::unordered_map<std::string, int> vertex_by_label_;
    std::unordered_map<std::string, int> arrow_by_id_;
};

}  // namespace qgkm
