#include "qgkm/fixtures.hpp"

#include "qgkm/errors.hpp"

namespace qgkm {

Instance make_fl_n(int n) {
    if (n < 2) throw PreconditionError("fl_n needs n >= 2");
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    for (int i = 1; i <= n - 1; ++i) vertices.push_back(std::to_string(i));
    for (int i = 1; i <= n - 2; ++i)
        arrows.push_back({"a" + std::to_string(i), std::to_string(i), std::to_string(i + 1)});
    Quiver q(vertices, arrows);

    std::vector<BasisVertex> basis;
    std::vector<CoeffArrow> carrows;
    std::vector<std::vector<int>> components;
    for (int j = 1; j <= n; ++j) {
        std::vector<int> comp;
        for (int i = 1; i <= n - 1; ++i) {
            comp.push_back(static_cast<int>(basis.size()));
            basis.push_back({"b" + std::to_string(j) + "_" + std::to_string(i), i - 1});
        }
        for (int i = 0; i + 1 < n - 1; ++i)
            carrows.push_back({comp[i], comp[i + 1], i});
        components.push_back(std::move(comp));
    }
    std::vector<int> dim;
    for (int i = 1; i <= n - 1; ++i) dim.push_back(i);
    return make_instance(std::move(q),
                         CoefficientForest(std::move(basis), std::move(carrows),
                                           std::move(components)),
                         std::move(dim));
}

Instance make_x3124() {
    Quiver q({"1", "2", "3", "4"}, {{"a12", "1", "2"}, {"a23", "2", "3"}, {"a24", "2", "4"}});

    std::vector<BasisVertex> basis;
    std::vector<CoeffArrow> carrows;
    std::vector<std::vector<int>> components;
    // Two branching tree summands over the full enhanced quiver.
    for (int j = 1; j <= 2; ++j) {
        std::string prefix = "t" + std::to_string(j) + "_";
        int v1 = static_cast<int>(basis.size());
        basis.push_back({prefix + "1", 0});
        basis.push_back({prefix + "2", 1});
        basis.push_back({prefix + "3", 2});
        basis.push_back({prefix + "4", 3});
        carrows.push_back({v1, v1 + 1, q.arrow_index("a12")});
        carrows.push_back({v1 + 1, v1 + 2, q.arrow_index("a23")});
        carrows.push_back({v1 + 1, v1 + 3, q.arrow_index("a24")});
        components.push_back({v1, v1 + 1, v1 + 2, v1 + 3});
    }
    // One plain string over 1 -> 2 -> 3.
    int s1 = static_cast<int>(basis.size());
    basis.push_back({"s_1", 0});
    basis.push_back({"s_2", 1});
    basis.push_back({"s_3", 2});
    carrows.push_back({s1, s1 + 1, q.arrow_index("a12")});
    carrows.push_back({s1 + 1, s1 + 2, q.arrow_index("a23")});
    components.push_back({s1, s1 + 1, s1 + 2});

    return make_instance(std::move(q),
                         CoefficientForest(std::move(basis), std::move(carrows),
                                           std::move(components)),
                         {1, 2, 3, 1});
}

Instance make_a2_p1() {
    Quiver q({"1", "2"}, {{"a", "1", "2"}});
    std::vector<BasisVertex> basis{{"x1", 0}, {"x2", 1}, {"y1", 0}, {"y2", 1}};
    std::vector<CoeffArrow> carrows{{0, 1, 0}, {2, 3, 0}};
    std::vector<std::vector<int>> components{{0, 1}, {2, 3}};
    return make_instance(std::move(q),
                         CoefficientForest(std::move(basis), std::move(carrows),
                                           std::move(components)),
                         {1, 1});
}

namespace {

Instance three_identity_strings(bool two_sink) {
    // two_sink: 1 -> 2 <- 3 with e = (1,2,1); otherwise 1 <- 2 -> 3 with (2,1,2).
    std::vector<QuiverArrow> arrows;
    if (two_sink)
        arrows = {{"a", "1", "2"}, {"b", "3", "2"}};
    else
        arrows = {{"a", "2", "1"}, {"b", "2", "3"}};
    Quiver q({"1", "2", "3"}, arrows);

    std::vector<BasisVertex> basis;
    std::vector<CoeffArrow> carrows;
    std::vector<std::vector<int>> components;
    for (int k = 1; k <= 3; ++k) {
        std::string suffix = "_" + std::to_string(k);
        int x = static_cast<int>(basis.size());
        basis.push_back({"x" + suffix, 0});
        basis.push_back({"y" + suffix, 1});
        basis.push_back({"z" + suffix, 2});
        if (two_sink) {
            carrows.push_back({x, x + 1, 0});      // x -> y over a
            carrows.push_back({x + 2, x + 1, 1});  // z -> y over b
        } else {
            carrows.push_back({x + 1, x, 0});      // y -> x over a
            carrows.push_back({x + 1, x + 2, 1});  // y -> z over b
        }
        components.push_back({x, x + 1, x + 2});
    }
    std::vector<int> dim = two_sink ? std::vector<int>{1, 2, 1} : std::vector<int>{2, 1, 2};
    return make_instance(std::move(q),
                         CoefficientForest(std::move(basis), std::move(carrows),
                                           std::move(components)),
                         std::move(dim));
}

}  // namespace

Instance make_no_gkm_sink() { return three_identity_strings(true); }

Instance make_no_gkm_source() { return three_identity_strings(false); }

Instance make_point() {
    Quiver q({"1"}, {});
    CoefficientForest f({{"b", 0}}, {}, {{0}});
    return make_instance(std::move(q), std::move(f), {0});
}

Instance make_fixture(const std::string& name, int n) {
    if (name == "fl_n") return make_fl_n(n);
    if (name.rfind("fl_", 0) == 0) {
        try {
            return make_fl_n(std::stoi(name.substr(3)));
        } catch (const std::invalid_argument&) {
        }
    }
    if (name == "x3124") return make_x3124();
    if (name == "a2_p1") return make_a2_p1();
    if (name == "no_gkm_sink") return make_no_gkm_sink();
    if (name == "no_gkm_source") return make_no_gkm_source();
    if (name == "point") return make_point();
    throw PreconditionError("unknown fixture: " + name);
}

std::vector<std::string> fixture_names() {
    return {"fl_n", "x3124", "a2_p1", "no_gkm_sink", "no_gkm_source", "point"};
}

}  // namespace qgkm
