#include "qgkm/instance.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qgkm/errors.hpp"

namespace qgkm {

using nlohmann::json;

Instance make_instance(Quiver q, CoefficientForest f, std::vector<int> dim,
                       std::vector<int> vertex_order) {
    if (static_cast<int>(dim.size()) != q.vertex_count())
        throw MalformedInstance("dimension vector does not cover the vertex set");
    if (vertex_order.empty()) {
        vertex_order.resize(q.vertex_count());
        std::iota(vertex_order.begin(), vertex_order.end(), 0);
    }
    if (static_cast<int>(vertex_order.size()) != q.vertex_count())
        throw MalformedInstance("vertex_order must list every vertex exactly once");
    std::vector<bool> seen(q.vertex_count(), false);
    for (int v : vertex_order) {
        if (v < 0 || v >= q.vertex_count() || seen[v])
            throw MalformedInstance("vertex_order must be a permutation of the vertices");
        seen[v] = true;
    }
    return Instance{std::move(q), std::move(f), std::move(dim), std::move(vertex_order)};
}

namespace {

std::string context(const char* where, const std::string& detail) {
    return std::string(where) + ": " + detail;
}

Instance from_json(const json& doc) {
    if (!doc.is_object()) throw MalformedInstance("top level must be an object");
    if (!doc.contains("quiver")) throw MalformedInstance("missing field: quiver");
    if (!doc.contains("forest")) throw MalformedInstance("missing field: forest");
    if (!doc.contains("dimension_vector"))
        throw MalformedInstance("missing field: dimension_vector");

    const json& jq = doc["quiver"];
    std::vector<std::string> vertices;
    for (const auto& v : jq.value("vertices", json::array()))
        vertices.push_back(v.get<std::string>());
    std::vector<QuiverArrow> arrows;
    for (const auto& a : jq.value("arrows", json::array())) {
        if (!a.contains("id") || !a.contains("source") || !a.contains("target"))
            throw MalformedInstance(context("quiver.arrows", "entries need id, source, target"));
        arrows.push_back({a["id"].get<std::string>(), a["source"].get<std::string>(),
                          a["target"].get<std::string>()});
    }
    Quiver quiver(std::move(vertices), std::move(arrows));

    std::vector<BasisVertex> basis;
    std::vector<CoeffArrow> carrows;
    std::vector<std::vector<int>> components;
    const json& jf = doc["forest"];
    for (const auto& comp : jf.value("components", json::array())) {
        std::vector<int> members;
        for (const auto& v : comp.value("vertices", json::array())) {
            if (!v.contains("id") || !v.contains("over"))
                throw MalformedInstance(context("forest.components", "vertices need id and over"));
            std::string over = v["over"].get<std::string>();
            int vi = quiver.vertex_index(over);
            if (vi < 0)
                throw MalformedInstance(context("forest.components", "unknown vertex: " + over));
            members.push_back(static_cast<int>(basis.size()));
            basis.push_back({v["id"].get<std::string>(), vi});
        }
        components.push_back(std::move(members));
        for (const auto& a : comp.value("arrows", json::array())) {
            if (!a.contains("source") || !a.contains("target") || !a.contains("over"))
                throw MalformedInstance(
                    context("forest.components", "arrows need source, target, over"));
            std::string src = a["source"].get<std::string>();
            std::string tgt = a["target"].get<std::string>();
            std::string over = a["over"].get<std::string>();
            int si = -1, ti = -1;
            for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
                if (basis[b].id == src) si = b;
                if (basis[b].id == tgt) ti = b;
            }
            if (si < 0) throw MalformedInstance(context("forest.arrows", "unknown source: " + src));
            if (ti < 0) throw MalformedInstance(context("forest.arrows", "unknown target: " + tgt));
            int ai = quiver.arrow_index(over);
            if (ai < 0) throw MalformedInstance(context("forest.arrows", "unknown arrow: " + over));
            carrows.push_back({si, ti, ai});
        }
    }
    CoefficientForest forest(std::move(basis), std::move(carrows), std::move(components));

    std::vector<int> dim(quiver.vertex_count(), 0);
    std::vector<bool> have(quiver.vertex_count(), false);
    for (const auto& [key, value] : doc["dimension_vector"].items()) {
        int vi = quiver.vertex_index(key);
        if (vi < 0) throw MalformedInstance(context("dimension_vector", "unknown vertex: " + key));
        if (!value.is_number_integer())
            throw MalformedInstance(context("dimension_vector", "entry for " + key +
                                                                    " is not an integer"));
        dim[vi] = value.get<int>();
        have[vi] = true;
    }
    for (int v = 0; v < quiver.vertex_count(); ++v)
        if (!have[v])
            throw MalformedInstance(
                context("dimension_vector", "missing entry for vertex " + quiver.vertex_label(v)));

    std::vector<int> order;
    if (doc.contains("vertex_order")) {
        for (const auto& v : doc["vertex_order"]) {
            int vi = quiver.vertex_index(v.get<std::string>());
            if (vi < 0)
                throw MalformedInstance(
                    context("vertex_order", "unknown vertex: " + v.get<std::string>()));
            order.push_back(vi);
        }
    }

    Instance inst = make_instance(std::move(quiver), std::move(forest), std::move(dim),
                                  std::move(order));
    ValidationReport report = validate_forest(inst.quiver, inst.forest);
    if (!report.ok) {
        std::string msg = "forest validation failed:";
        for (const auto& item : report.items) msg += "\n  [" + item.code + "] " + item.message;
        throw MalformedInstance(msg);
    }
    return inst;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedInstance(std::string("parse error: ") + e.what());
    }
    return from_json(doc);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInstance("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string instance_to_json(const Instance& inst) {
    json doc;
    doc["quiver"]["vertices"] = inst.quiver.vertices();
    json jarrows = json::array();
    for (const auto& a : inst.quiver.arrows())
        jarrows.push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}});
    doc["quiver"]["arrows"] = jarrows;

    json jcomponents = json::array();
    for (int c = 0; c < inst.forest.component_count(); ++c) {
        json jcomp;
        json jverts = json::array();
        for (int b : inst.forest.components()[c])
            jverts.push_back({{"id", inst.forest.basis()[b].id},
                              {"over", inst.quiver.vertex_label(inst.forest.basis()[b].over)}});
        json jcarrows = json::array();
        for (const auto& a : inst.forest.arrows()) {
            if (inst.forest.component_of(a.src) != c) continue;
            jcarrows.push_back({{"source", inst.forest.basis()[a.src].id},
                                {"target", inst.forest.basis()[a.tgt].id},
                                {"over", inst.quiver.arrow_id(a.over)}});
        }
        jcomp["vertices"] = jverts;
        jcomp["arrows"] = jcarrows;
        jcomponents.push_back(jcomp);
    }
    doc["forest"]["components"] = jcomponents;

    json jdim = json::object();
    for (int v = 0; v < inst.quiver.vertex_count(); ++v)
        jdim[inst.quiver.vertex_label(v)] = inst.dim[v];
    doc["dimension_vector"] = jdim;

    json jorder = json::array();
    for (int v : inst.vertex_order) jorder.push_back(inst.quiver.vertex_label(v));
    doc["vertex_order"] = jorder;

    return doc.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MalformedInstance("cannot open file for writing: " + path);
    out << instance_to_json(inst);
}

}  // namespace qgkm
