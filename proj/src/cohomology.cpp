#include "qgkm/cohomology.hpp"

#include <algorithm>

#include "qgkm/errors.hpp"

namespace qgkm {

Polynomial GkmSection::at(int vertex, int nvars) const {
    auto it = values.find(vertex);
    return it == values.end() ? Polynomial(nvars) : it->second;
}

SectionCheck verify_gkm_section(const MomentGraph& g, const GkmSection& s) {
    SectionCheck check;
    int nvars = static_cast<int>(g.chi.gamma.size() + g.chi.nu.size());
    for (const auto& e : g.edges) {
        Polynomial alpha = character_polynomial(e.label);
        Polynomial diff = s.at(e.src, nvars) - s.at(e.tgt, nvars);
        if (!normal_form_mod_linear(diff, alpha).is_zero()) {
            check.ok = false;
            check.violations.push_back("edge " + std::to_string(e.src) + " -> " +
                                       std::to_string(e.tgt) +
                                       ": difference not divisible by the label");
        }
    }
    return check;
}

namespace {

struct LinearSolution {
    bool feasible = true;
    bool unique = true;
    std::vector<Rational> values;
};

// Gauss-Jordan over the rationals; free columns are set to zero. Columns are
// expected in graded-lex order of the unknowns.
LinearSolution solve_linear(std::vector<std::vector<Rational>> rows, int ncols) {
    LinearSolution out;
    out.values.assign(ncols, Rational(0));
    std::vector<int> pivot_of_col(ncols, -1);
    int rank = 0;
    for (int col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == -1) continue;
        std::swap(rows[rank], rows[pivot]);
        Rational lead = rows[rank][col];
        for (int c = col; c <= ncols; ++c) rows[rank][c] /= lead;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational factor = rows[r][col];
            for (int c = col; c <= ncols; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (rows[r][ncols] != 0) {
            out.feasible = false;
            return out;
        }
    for (int col = 0; col < ncols; ++col) {
        if (pivot_of_col[col] == -1) {
            out.unique = false;  // free coordinate, kept at zero
        } else {
            out.values[col] = rows[pivot_of_col[col]][ncols];
        }
    }
    return out;
}

Polynomial from_coefficients(int nvars, const std::vector<Monomial>& monomials,
                             const std::vector<Rational>& coeffs) {
    Polynomial p(nvars);
    for (size_t i = 0; i < monomials.size(); ++i) p.set_coefficient(monomials[i], coeffs[i]);
    return p;
}

// Equations "p(unknown at y) congruent to known mod alpha" appended as rows.
void append_congruence_rows(std::vector<std::vector<Rational>>& rows, int offset, int total_cols,
                            const std::vector<Monomial>& monomials,
                            const std::vector<Polynomial>& nf_of_monomial,
                            const Polynomial& nf_known, int sign_known) {
    std::map<Monomial, int, GrlexLess> row_of;
    auto row_for = [&](const Monomial& m) -> std::vector<Rational>& {
        auto it = row_of.find(m);
        if (it == row_of.end()) {
            row_of.emplace(m, static_cast<int>(rows.size()));
            rows.emplace_back(total_cols + 1, Rational(0));
            return rows.back();
        }
        return rows[it->second];
    };
    for (size_t t = 0; t < monomials.size(); ++t)
        for (const auto& [m, c] : nf_of_monomial[t].terms()) row_for(m)[offset + t] += c;
    for (const auto& [m, c] : nf_known.terms()) row_for(m)[total_cols] += sign_known * c;
}

KTClass kt_class_impl(const MomentGraph& g, int x, const std::vector<std::vector<bool>>& reach) {
    int n = static_cast<int>(g.vertices.size());
    int nvars = static_cast<int>(g.chi.gamma.size() + g.chi.nu.size());

    KTClass cls;
    cls.base = x;

    Polynomial top = Polynomial::constant(nvars, 1);
    int degree = 0;
    for (const auto& e : g.edges)
        if (e.src == x) {
            top = top * character_polynomial(e.label);
            ++degree;
        }
    cls.degree = degree;
    cls.components[x] = top;

    // Support: vertices that reach x.
    std::vector<int> upset;
    for (int y = 0; y < n; ++y)
        if (y != x && reach[y][x]) upset.push_back(y);

    // Process after all out-neighbours inside the up-set; x itself and
    // vertices off the up-set are already final.
    std::vector<int> remaining_out(n, 0);
    for (const auto& e : g.edges)
        if (e.src != x && reach[e.src][x] && e.tgt != x && reach[e.tgt][x])
            ++remaining_out[e.src];
    std::vector<int> order;
    std::vector<int> stack;
    for (int y : upset)
        if (remaining_out[y] == 0) stack.push_back(y);
    std::sort(stack.begin(), stack.end());
    while (!stack.empty()) {
        int y = stack.back();
        stack.pop_back();
        order.push_back(y);
        for (const auto& e : g.edges)
            if (e.tgt == y && e.src != x && reach[e.src][x] && --remaining_out[e.src] == 0)
                stack.push_back(e.src);
    }
    if (order.size() != upset.size())
        throw InternalInvariantBreach("up-set traversal incomplete");

    auto monomials = monomials_of_degree(nvars, degree);
    int ncols = static_cast<int>(monomials.size());

    // Cache normal forms of the unknown monomials per edge label.
    std::map<std::vector<long long>, std::vector<Polynomial>> nf_cache;
    auto nf_monomials = [&](const Character& label) -> const std::vector<Polynomial>& {
        std::vector<long long> key;
        key.insert(key.end(), label.eps.begin(), label.eps.end());
        key.insert(key.end(), label.delta.begin(), label.delta.end());
        auto it = nf_cache.find(key);
        if (it != nf_cache.end()) return it->second;
        Polynomial alpha = character_polynomial(label);
        std::vector<Polynomial> images;
        images.reserve(monomials.size());
        for (const auto& m : monomials) {
            Polynomial mono(nvars);
            mono.set_coefficient(m, 1);
            images.push_back(normal_form_mod_linear(mono, alpha));
        }
        return nf_cache.emplace(std::move(key), std::move(images)).first->second;
    };

    bool greedy_ok = true;
    for (int y : order) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& e : g.edges) {
            if (e.src != y) continue;
            Polynomial alpha = character_polynomial(e.label);
            Polynomial known = cls.components.count(e.tgt) ? cls.components[e.tgt]
                                                           : Polynomial(nvars);
            append_congruence_rows(rows, 0, ncols, monomials, nf_monomials(e.label),
                                   normal_form_mod_linear(known, alpha), +1);
        }
        auto sol = solve_linear(std::move(rows), ncols);
        if (!sol.feasible) {
            greedy_ok = false;
            break;
        }
        if (!sol.unique) cls.unique_solution = false;
        Polynomial p = from_coefficients(nvars, monomials, sol.values);
        if (!p.is_zero()) cls.components[y] = p;
    }

    if (!greedy_ok) {
        // One joint system over all undetermined vertices. A Knutson-Tao
        // class exists, so this cannot be infeasible for a valid graph.
        cls.global_solve_used = true;
        cls.unique_solution = true;
        cls.components.clear();
        cls.components[x] = top;
        std::map<int, int> offset;
        for (size_t i = 0; i < order.size(); ++i)
            offset[order[i]] = static_cast<int>(i) * ncols;
        int total = static_cast<int>(order.size()) * ncols;
        std::vector<std::vector<Rational>> rows;
        for (const auto& e : g.edges) {
            bool src_unknown = offset.count(e.src), tgt_unknown = offset.count(e.tgt);
            if (!src_unknown && !tgt_unknown) continue;
            Polynomial alpha = character_polynomial(e.label);
            const auto& images = nf_monomials(e.label);
            if (src_unknown && tgt_unknown) {
                std::map<Monomial, int, GrlexLess> row_of;
                auto row_for = [&](const Monomial& m) -> std::vector<Rational>& {
                    auto it = row_of.find(m);
                    if (it == row_of.end()) {
                        row_of.emplace(m, static_cast<int>(rows.size()));
                        rows.emplace_back(total + 1, Rational(0));
                        return rows.back();
                    }
                    return rows[it->second];
                };
                for (int t = 0; t < ncols; ++t)
                    for (const auto& [m, c] : images[t].terms()) {
                        row_for(m)[offset[e.src] + t] += c;
                        row_for(m)[offset[e.tgt] + t] -= c;
                    }
            } else {
                int uy = src_unknown ? e.src : e.tgt;
                int ky = src_unknown ? e.tgt : e.src;
                Polynomial known = cls.components.count(ky) ? cls.components[ky]
                                                            : Polynomial(nvars);
                append_congruence_rows(rows, offset[uy], total, monomials, images,
                                       normal_form_mod_linear(known, alpha), +1);
            }
        }
        auto sol = solve_linear(std::move(rows), total);
        if (!sol.feasible)
            throw InfeasibleSystem("no class satisfies the congruences at base " +
                                   std::to_string(x));
        cls.unique_solution = sol.unique;
        for (size_t i = 0; i < order.size(); ++i) {
            std::vector<Rational> coeffs(sol.values.begin() + offset[order[i]],
                                         sol.values.begin() + offset[order[i]] + ncols);
            Polynomial p = from_coefficients(nvars, monomials, coeffs);
            if (!p.is_zero()) cls.components[order[i]] = p;
        }
    }

    // Re-verify everything before returning.
    for (const auto& [y, p] : cls.components) {
        if (p.is_zero()) continue;
        if (!(reach[y][x]))
            throw InternalInvariantBreach("class supported outside the up-set");
        if (!p.is_homogeneous() || p.degree() != degree)
            throw InternalInvariantBreach("class component of wrong degree");
    }
    GkmSection section{cls.components};
    if (!verify_gkm_section(g, section).ok)
        throw InternalInvariantBreach("constructed class violates an edge congruence");
    return cls;
}

}  // namespace

KTClass kt_class(const MomentGraph& g, int x) {
    auto reach = partial_order(g);
    return kt_class_impl(g, x, reach);
}

KTBasis kt_basis(const MomentGraph& g) {
    KTBasis basis;
    auto reach = partial_order(g);
    int n = static_cast<int>(g.vertices.size());
    int nvars = static_cast<int>(g.chi.gamma.size() + g.chi.nu.size());
    for (int x = 0; x < n; ++x) {
        KTClass cls = kt_class_impl(g, x, reach);
        if (!cls.unique_solution) basis.unique = false;
        basis.classes.push_back(std::move(cls));
    }
    // Upper-triangularity: nonzero on the diagonal, zero off the up-set.
    for (int x = 0; x < n; ++x) {
        const auto& cls = basis.classes[x];
        auto it = cls.components.find(x);
        if (it == cls.components.end() || it->second.is_zero())
            throw InternalInvariantBreach("class vanishes at its own base");
        for (int y = 0; y < n; ++y)
            if (!reach[y][x] && !GkmSection{cls.components}.at(y, nvars).is_zero())
                throw InternalInvariantBreach("evaluation matrix is not triangular");
    }
    return basis;
}

}  // namespace qgkm
