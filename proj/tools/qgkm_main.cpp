// Command-line front end: loads one instance document per invocation and runs
// one pipeline stage. Output is deterministic byte for byte.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgkm/cohomology.hpp"
#include "qgkm/errors.hpp"
#include "qgkm/fixed_points.hpp"
#include "qgkm/fixtures.hpp"
#include "qgkm/instance.hpp"
#include "qgkm/moment_graph.hpp"
#include "qgkm/oracles.hpp"
#include "qgkm/polynomial.hpp"
#include "qgkm/reduction.hpp"

using namespace qgkm;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoGkm = 2;
constexpr int kExitUnknownTree = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitInternal = 5;

std::string fixed_point_name(const Instance& inst, const FixedPoint& u) {
    if (is_fl_n_shape(inst)) {
        auto perm = permutation_of_fixed_point(inst, u);
        std::string s;
        for (int x : perm) s += std::to_string(x);
        return s;
    }
    std::string s = "{";
    for (size_t i = 0; i < u.selected.size(); ++i) {
        if (i) s += ",";
        s += inst.forest.basis()[u.selected[i]].id;
    }
    return s + "}";
}

std::string fiber_string(const Instance& inst, const AlignedBasis& basis, const FixedPoint& u) {
    auto fibers = fixed_point_fibers(u, basis, inst.quiver.vertex_count());
    std::string s;
    for (int v = 0; v < inst.quiver.vertex_count(); ++v) {
        if (v) s += " ";
        s += inst.quiver.vertex_label(v) + ":{";
        for (size_t i = 0; i < fibers[v].size(); ++i) {
            if (i) s += ",";
            s += std::to_string(fibers[v][i]);
        }
        s += "}";
    }
    return s;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw MalformedInstance("cannot open output file: " + path);
    out << text;
}

AlignmentResult alignment_or_fail(const Instance& inst) {
    if (is_straight(inst.forest)) return attractive_aligned(inst);
    if (has_proper_tree_component(inst.forest)) return tree_aligned(inst);
    throw PreconditionError(
        "instance is a non-straight string representation; no paving is available");
}

int run_classify(const Instance& inst) {
    GkmVerdict verdict = classify_gkm(inst);
    std::cout << "verdict: " << to_string(verdict.tag) << "\n";
    if (verdict.witness) {
        const auto& w = *verdict.witness;
        std::cout << "witness: " << w.kind << " basis(" << w.basis_ids[0] << " " << w.basis_ids[1]
                  << " " << w.basis_ids[2] << ") arrows(" << w.arrow_ids[0] << " "
                  << w.arrow_ids[1] << ") vertices(" << w.vertex_ids[0] << " " << w.vertex_ids[1]
                  << " " << w.vertex_ids[2] << ")\n";
    }
    for (const auto& step : verdict.trace.steps) {
        std::cout << "reduction: " << step.kind << " " << step.subject;
        if (!step.removed_basis.empty()) {
            std::cout << " removed";
            for (const auto& id : step.removed_basis) std::cout << " " << id;
        }
        std::cout << "\n";
    }
    switch (verdict.tag) {
        case GkmTag::NoGkm: return kExitNoGkm;
        case GkmTag::UnknownTree: return kExitUnknownTree;
        default: return kExitOk;
    }
}

int run_grading(const Instance& inst, const std::string& check_path) {
    AlignmentResult alignment = alignment_or_fail(inst);
    if (alignment.experimental) std::cout << "# experimental: tree components present\n";
    std::cout << "gamma:";
    for (long long g : alignment.chi.gamma) std::cout << " " << g;
    std::cout << "\nnu:";
    for (size_t i = 0; i < alignment.chi.nu.size(); ++i)
        std::cout << " " << inst.quiver.arrow_id(alignment.basis.supp_arrows[i]) << "="
                  << alignment.chi.nu[i];
    std::cout << "\n";
    if (!alignment.sa1_full) {
        for (const auto& c : alignment.sa1_conflicts)
            std::cout << "alignment-infeasible: vertex " << c.vertex << " arrow "
                      << c.arrow_of_mover << " mover " << c.mover << " killed " << c.killed
                      << "\n";
    }
    std::cout << "weights:\n";
    for (int v = 0; v < inst.quiver.vertex_count(); ++v)
        for (int b : alignment.basis.fiber[v])
            std::cout << "  " << inst.forest.basis()[b].id << " over "
                      << inst.quiver.vertex_label(v) << " index "
                      << alignment.basis.pos_index[b] << " wt " << alignment.weights[b] << "\n";

    if (!check_path.empty()) {
        std::ifstream in(check_path);
        if (!in) throw MalformedInstance("cannot open grading file: " + check_path);
        json doc = json::parse(in, nullptr, true);
        std::vector<long long> wt(inst.forest.basis_count(), 0);
        for (const auto& [id, value] : doc.at("weights").items()) {
            int b = inst.forest.basis_index(id);
            if (b < 0) throw MalformedInstance("grading names unknown basis id: " + id);
            wt[b] = value.get<long long>();
        }
        auto cons = is_constructible(wt, inst.quiver, inst.forest);
        std::cout << "check: constructible " << (cons.ok ? "yes" : "no") << "\n";
        for (const auto& viol : cons.violations) std::cout << "  " << viol << "\n";
        bool ag1 = check_ag1(wt, alignment.basis);
        std::cout << "check: attractive(AG1 in the computed order) " << (ag1 ? "yes" : "no")
                  << "\n";
    }
    return kExitOk;
}

int run_fixed_points(const Instance& inst) {
    AlignmentResult alignment = alignment_or_fail(inst);
    if (alignment.experimental) std::cout << "# experimental: tree components present\n";
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    bool flag = is_fl_n_shape(inst);
    std::cout << "count: " << points.size() << "\n";
    for (size_t i = 0; i < points.size(); ++i) {
        auto cell = initial_parameters(inst.forest, alignment.basis, points[i]);
        std::cout << "u" << i << " dim " << cell.dimension << " fibers "
                  << fiber_string(inst, alignment.basis, points[i]);
        if (flag) std::cout << " perm " << fixed_point_name(inst, points[i]);
        std::cout << "\n";
    }
    return kExitOk;
}

int run_poincare(const Instance& inst, long long at, bool has_at) {
    AlignmentResult alignment = alignment_or_fail(inst);
    auto poly = poincare_polynomial(inst, alignment);
    if (poly.experimental) std::cout << "# experimental: tree components present\n";
    if (has_at) {
        std::cout << poly.at(at) << "\n";
    } else {
        std::cout << "[";
        for (size_t i = 0; i < poly.coefficients.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << poly.coefficients[i];
        }
        std::cout << "]\n";
    }
    return kExitOk;
}

int run_moment_graph(const Instance& inst, const std::string& dot_path,
                     const std::string& data_path) {
    AlignmentResult alignment = alignment_or_fail(inst);
    MomentGraph g = build_moment_graph(inst, alignment);

    std::ostringstream out;
    if (!dot_path.empty()) {
        out << "digraph moment_graph {\n";
        for (size_t i = 0; i < g.vertices.size(); ++i)
            out << "  n" << i << " [label=\"" << fixed_point_name(inst, g.vertices[i])
                << "\"];\n";
        for (const auto& e : g.edges)
            out << "  n" << e.src << " -> n" << e.tgt << " [label=\""
                << render_character(e.label, inst.quiver, alignment.basis) << "\"];\n";
        out << "}\n";
        write_output(dot_path, out.str());
        return kExitOk;
    }
    if (g.experimental) out << "# experimental: tree components present\n";
    out << "vertices: " << g.vertices.size() << "\n";
    for (size_t i = 0; i < g.vertices.size(); ++i)
        out << "v" << i << " " << fixed_point_name(inst, g.vertices[i]) << "\n";
    out << "edges: " << g.edges.size() << "\n";
    for (const auto& e : g.edges)
        out << "v" << e.src << " -> v" << e.tgt << " at " << inst.quiver.vertex_label(e.vertex)
            << " (k=" << e.k << ",l=" << e.l << ") label "
            << render_character(e.label, inst.quiver, alignment.basis) << "\n";
    out << "palais_smale: " << (is_palais_smale(g) ? "true" : "false") << "\n";
    if (!g.connected_nonpath_pairs.empty()) {
        out << "connected-nonpath-pairs:";
        for (auto [a, b] : g.connected_nonpath_pairs) out << " (v" << a << ",v" << b << ")";
        out << "\n";
    }
    write_output(data_path, out.str());
    return kExitOk;
}

json polynomial_to_json(const Polynomial& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json term;
        term["exponents"] = m;
        term["coefficient"] = c.str();
        terms.push_back(term);
    }
    return terms;
}

Polynomial polynomial_from_json(const json& terms, int nvars) {
    Polynomial p(nvars);
    for (const auto& term : terms) {
        Monomial m = term.at("exponents").get<Monomial>();
        Rational c(term.at("coefficient").get<std::string>());
        p.set_coefficient(m, c);
    }
    return p;
}

int run_kt_basis(const Instance& inst, const std::string& out_path,
                 const std::string& verify_path) {
    AlignmentResult alignment = alignment_or_fail(inst);
    MomentGraph g = build_moment_graph(inst, alignment);
    int nvars = static_cast<int>(g.chi.gamma.size() + g.chi.nu.size());
    auto names = character_variable_names(inst.quiver, alignment.basis);

    if (!verify_path.empty()) {
        std::ifstream in(verify_path);
        if (!in) throw MalformedInstance("cannot open basis file: " + verify_path);
        json doc = json::parse(in, nullptr, true);
        bool all_ok = true;
        for (const auto& jcls : doc.at("classes")) {
            int base = jcls.at("base").get<int>();
            GkmSection section;
            for (const auto& [key, terms] : jcls.at("components").items())
                section.values[std::stoi(key)] = polynomial_from_json(terms, nvars);
            Polynomial expected = Polynomial::constant(nvars, 1);
            for (const auto& e : g.edges)
                if (e.src == base) expected = expected * character_polynomial(e.label);
            bool ok = section.at(base, nvars) == expected;
            auto check = verify_gkm_section(g, section);
            if (!check.ok) ok = false;
            std::cout << "class " << base << ": " << (ok ? "ok" : "violated") << "\n";
            for (const auto& v : check.violations) std::cout << "  " << v << "\n";
            if (!ok) all_ok = false;
        }
        std::cout << (all_ok ? "verified" : "verification failed") << "\n";
        return all_ok ? kExitOk : kExitPrecondition;
    }

    KTBasis basis = kt_basis(g);
    if (g.experimental) std::cout << "# experimental: tree components present\n";
    json doc;
    doc["unique"] = basis.unique;
    json classes = json::array();
    for (const auto& cls : basis.classes) {
        json jcls;
        jcls["base"] = cls.base;
        jcls["base_name"] = fixed_point_name(inst, g.vertices[cls.base]);
        jcls["degree"] = cls.degree;
        jcls["unique"] = cls.unique_solution;
        json comps = json::object();
        json rendered = json::object();
        for (const auto& [y, p] : cls.components) {
            if (p.is_zero()) continue;
            comps[std::to_string(y)] = polynomial_to_json(p);
            rendered[std::to_string(y)] = p.render(names);
        }
        jcls["components"] = comps;
        jcls["rendered"] = rendered;
        classes.push_back(jcls);
    }
    doc["classes"] = classes;
    std::cout << "classes: " << basis.classes.size() << " unique: "
              << (basis.unique ? "true" : "false") << "\n";
    for (const auto& cls : basis.classes)
        std::cout << "p[" << fixed_point_name(inst, g.vertices[cls.base]) << "] degree "
                  << cls.degree << "\n";
    if (!out_path.empty()) write_output(out_path, doc.dump(2) + "\n");
    return kExitOk;
}

int run_tangent(const Instance& inst) {
    AlignmentResult alignment = alignment_or_fail(inst);
    if (alignment.experimental) std::cout << "# experimental: tree components present\n";
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    for (size_t i = 0; i < points.size(); ++i)
        std::cout << "u" << i << " " << fixed_point_name(inst, points[i]) << " tangent "
                  << tangent_dimension(inst, alignment.basis, points[i]) << "\n";
    return kExitOk;
}

int run_hall_strata(const Instance& inst) {
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    auto strata = hall_strata(inst);
    std::cout << "strata: " << strata.size() << "\n";
    for (size_t s = 0; s < strata.size(); ++s) {
        std::cout << "stratum " << s << " size " << strata[s].members.size() << ":";
        for (int i : strata[s].members) std::cout << " " << fixed_point_name(inst, points[i]);
        std::cout << "\n";
    }
    return kExitOk;
}

int run_oracle_count_points(const Instance& inst, int p, long long budget) {
    auto result = count_points_fq(inst, p, budget);
    std::cout << "p: " << result.p << "\ncount: " << result.count
              << "\nenumerated: " << result.enumerated << "\n";
    return kExitOk;
}

int run_oracle_hom_dim(const Instance& inst) {
    auto points = enumerate_fixed_points(inst.quiver, inst.forest, inst.dim);
    for (size_t i = 0; i < points.size(); ++i)
        std::cout << "u" << i << " " << fixed_point_name(inst, points[i]) << " hom_dim "
                  << hom_dim_triples(inst, points[i]) << "\n";
    return kExitOk;
}

int run_oracle_fixed_points(const Instance& inst) {
    auto points = brute_force_fixed_points(inst.quiver, inst.forest, inst.dim);
    std::cout << "count: " << points.size() << "\n";
    for (size_t i = 0; i < points.size(); ++i)
        std::cout << "u" << i << " " << fixed_point_name(inst, points[i]) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GKM structures on quiver Grassmannians of forest representations"};
    app.require_subcommand(1);

    std::string path, check_path, dot_path, data_path, out_path, verify_path, fixture_name;
    long long at_value = 0;
    int field_p = 2, fl_n = 4;
    long long budget = 10000000;

    auto add_instance_arg = [&](CLI::App* cmd) {
        cmd->add_option("instance", path, "instance document")->required();
    };

    auto* classify = app.add_subcommand("classify", "GKM classification verdict");
    add_instance_arg(classify);
    auto* grading = app.add_subcommand("grading", "attractive cocharacter and weight table");
    add_instance_arg(grading);
    grading->add_option("--check", check_path, "verify a user-supplied grading");
    auto* fixed = app.add_subcommand("fixed-points", "fixed point table");
    add_instance_arg(fixed);
    auto* poincare = app.add_subcommand("poincare", "Poincare polynomial of the paving");
    add_instance_arg(poincare);
    auto* at_opt = poincare->add_option("--at", at_value, "evaluate at an integer");
    auto* moment = app.add_subcommand("moment-graph", "moment graph output");
    add_instance_arg(moment);
    moment->add_option("--dot", dot_path, "write DOT to file");
    moment->add_option("--data", data_path, "write structured data to file (default stdout)");
    auto* kt = app.add_subcommand("kt-basis", "Knutson-Tao basis");
    add_instance_arg(kt);
    kt->add_option("--out", out_path, "write the basis as JSON");
    kt->add_option("--verify", verify_path, "re-check a stored basis");
    auto* tangent = app.add_subcommand("tangent", "tangent dimensions at fixed points");
    add_instance_arg(tangent);
    auto* hall = app.add_subcommand("hall-strata", "Hall strata of fixed points");
    add_instance_arg(hall);

    auto* oracle = app.add_subcommand("oracle", "brute-force oracles");
    oracle->require_subcommand(1);
    auto* ocount = oracle->add_subcommand("count-points", "point count over a prime field");
    add_instance_arg(ocount);
    ocount->add_option("--p", field_p, "prime field size")->required();
    ocount->add_option("--budget", budget, "tuple budget");
    auto* ohom = oracle->add_subcommand("hom-dim", "Hom dimension by triple count");
    add_instance_arg(ohom);
    auto* ofixed = oracle->add_subcommand("fixed-points", "fixed points by subset filter");
    add_instance_arg(ofixed);

    auto* fixture = app.add_subcommand("fixture", "generate a built-in instance document");
    fixture->add_option("name", fixture_name, "fixture name")->required();
    fixture->add_option("--n", fl_n, "flag size for fl_n");
    fixture->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fixture->parsed()) {
            Instance inst = make_fixture(fixture_name, fl_n);
            write_output(out_path, instance_to_json(inst));
            return kExitOk;
        }
        Instance inst = load_instance(path);
        if (classify->parsed()) return run_classify(inst);
        if (grading->parsed()) return run_grading(inst, check_path);
        if (fixed->parsed()) return run_fixed_points(inst);
        if (poincare->parsed()) return run_poincare(inst, at_value, at_opt->count() > 0);
        if (moment->parsed()) return run_moment_graph(inst, dot_path, data_path);
        if (kt->parsed()) return run_kt_basis(inst, out_path, verify_path);
        if (tangent->parsed()) return run_tangent(inst);
        if (hall->parsed()) return run_hall_strata(inst);
        if (ocount->parsed()) return run_oracle_count_points(inst, field_p, budget);
        if (ohom->parsed()) return run_oracle_hom_dim(inst);
        if (ofixed->parsed()) return run_oracle_fixed_points(inst);
        return kExitUsage;
    } catch (const MalformedInstance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InternalInvariantBreach& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
}
