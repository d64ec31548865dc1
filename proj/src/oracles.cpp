#include "qgkm/oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "qgkm/errors.hpp"

namespace qgkm {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Number of e-dimensional subspaces of F_p^m (Gaussian binomial), saturating.
long long subspace_count(int m, int e, int p, long long cap) {
    if (e < 0 || e > m) return 0;
    // Product formula (p^m - p^i) / (p^e - p^i), computed exactly via the
    // q-binomial recursion to stay in integers.
    std::vector<std::vector<long long>> binom(m + 1, std::vector<long long>(m + 1, 0));
    for (int i = 0; i <= m; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j) {
            long long pj = 1;
            for (int t = 0; t < j; ++t) {
                pj *= p;
                if (pj > cap) {
                    pj = cap;
                    break;
                }
            }
            binom[i][j] = binom[i - 1][j - 1] + pj * (i - 1 >= j ? binom[i - 1][j] : 0);
            binom[i][j] = std::min(binom[i][j], cap);
        }
    }
    return binom[m][e];
}

using Row = std::vector<int>;  // coefficients mod p

struct Subspace {
    std::vector<Row> rows;       // reduced row echelon basis
    std::vector<int> pivot_col;  // pivot column per row
};

// All e-dimensional subspaces of F_p^m in reduced row-echelon form.
std::vector<Subspace> enumerate_subspaces(int m, int e, int p) {
    std::vector<Subspace> out;
    if (e == 0) {
        out.push_back({});
        return out;
    }
    if (e > m) return out;
    std::vector<int> pivots(e);
    std::function<void(int, int)> choose = [&](int index, int from) {
        if (index == e) {
            // Free entries: row r, column c with c > pivots[r], c not a pivot.
            std::vector<std::pair<int, int>> free_cells;
            std::set<int> pivot_set(pivots.begin(), pivots.end());
            for (int r = 0; r < e; ++r)
                for (int c = pivots[r] + 1; c < m; ++c)
                    if (!pivot_set.count(c)) free_cells.push_back({r, c});
            std::vector<int> values(free_cells.size(), 0);
            while (true) {
                Subspace s;
                s.pivot_col = pivots;
                s.rows.assign(e, Row(m, 0));
                for (int r = 0; r < e; ++r) s.rows[r][pivots[r]] = 1;
                for (size_t i = 0; i < free_cells.size(); ++i)
                    s.rows[free_cells[i].first][free_cells[i].second] = values[i];
                out.push_back(std::move(s));
                size_t i = 0;
                while (i < values.size() && ++values[i] == p) values[i++] = 0;
                if (i == values.size()) break;
            }
            return;
        }
        for (int c = from; c <= m - (e - index); ++c) {
            pivots[index] = c;
            choose(index + 1, c + 1);
        }
    };
    choose(0, 0);
    return out;
}

// Reduce a vector against an RREF basis; true when it lies in the span.
bool in_span(const Subspace& s, Row v, int p) {
    for (size_t r = 0; r < s.rows.size(); ++r) {
        int c = s.pivot_col[r];
        int factor = v[c] % p;
        if (factor != 0)
            for (int i = 0; i < static_cast<int>(v.size()); ++i)
                v[i] = ((v[i] - factor * s.rows[r][i]) % p + p) % p;
    }
    for (int x : v)
        if (x % p != 0) return false;
    return true;
}

}  // namespace

FqCountResult count_points_fq(const Instance& inst, int p, long long budget) {
    if (!is_prime(p)) throw PreconditionError("field size must be prime");
    const auto& q = inst.quiver;
    const auto& f = inst.forest;
    auto m = inst.pushed_down();

    long long product = 1;
    for (int v = 0; v < q.vertex_count(); ++v) {
        long long count = subspace_count(m[v], inst.dim[v], p, budget + 1);
        product = std::min(product * std::max(count, 1LL), budget + 1);
        if (count == 0) product = 0;
        if (product == 0) break;
    }
    if (product > budget)
        throw BudgetExceeded("subspace tuple count " + std::to_string(product) +
                             " exceeds budget " + std::to_string(budget));

    // Basis positions per vertex fiber, in declaration order.
    std::vector<std::vector<int>> fiber(q.vertex_count());
    for (int b = 0; b < f.basis_count(); ++b) fiber[f.basis()[b].over].push_back(b);
    std::vector<int> slot(f.basis_count(), -1);
    for (int v = 0; v < q.vertex_count(); ++v)
        for (int i = 0; i < static_cast<int>(fiber[v].size()); ++i) slot[fiber[v][i]] = i;

    // Arrow matrices act basis vector to basis vector with coefficient one.
    std::vector<std::vector<std::pair<int, int>>> arrow_moves(q.arrow_count());
    for (const auto& ca : f.arrows())
        arrow_moves[ca.over].push_back({slot[ca.src], slot[ca.tgt]});

    std::vector<std::vector<Subspace>> spaces(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v) {
        spaces[v] = enumerate_subspaces(m[v], inst.dim[v], p);
        if (spaces[v].empty()) return {p, 0, 0};
    }

    FqCountResult result{p, 0, 0};
    std::vector<int> choice(q.vertex_count(), 0);
    while (true) {
        ++result.enumerated;
        bool good = true;
        for (int a = 0; a < q.arrow_count() && good; ++a) {
            const Subspace& src = spaces[q.arrow_source(a)][choice[q.arrow_source(a)]];
            const Subspace& tgt = spaces[q.arrow_target(a)][choice[q.arrow_target(a)]];
            for (const auto& row : src.rows) {
                Row image(m[q.arrow_target(a)], 0);
                for (const auto& [from, to] : arrow_moves[a]) image[to] = row[from];
                if (!in_span(tgt, image, p)) {
                    good = false;
                    break;
                }
            }
        }
        if (good) ++result.count;
        int v = 0;
        while (v < q.vertex_count() && ++choice[v] == static_cast<int>(spaces[v].size()))
            choice[v++] = 0;
        if (v == q.vertex_count()) break;
        if (q.vertex_count() == 0) break;
    }
    return result;
}

namespace {

// Connected subquivers of one component that are closed under incoming
// arrows (on the sub side) or outgoing arrows (on the quotient side).
std::vector<std::vector<int>> closed_connected_subsets(const CoefficientForest& f, int comp,
                                                       bool in_closed) {
    const auto& members = f.components()[comp];
    std::vector<std::vector<int>> out;
    int sz = static_cast<int>(members.size());
    for (int mask = 1; mask < (1 << sz); ++mask) {
        std::vector<int> subset;
        std::set<int> chosen;
        for (int i = 0; i < sz; ++i)
            if (mask & (1 << i)) {
                subset.push_back(members[i]);
                chosen.insert(members[i]);
            }
        bool closed = true;
        for (int b : subset) {
            const auto& arrows = in_closed ? f.in_arrows(b) : f.out_arrows(b);
            for (int a : arrows) {
                int other = in_closed ? f.arrows()[a].src : f.arrows()[a].tgt;
                if (!chosen.count(other)) closed = false;
            }
        }
        if (!closed) continue;
        // Connectivity within the subset.
        std::set<int> seen{subset[0]};
        std::vector<int> stack{subset[0]};
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            auto visit = [&](int x) {
                if (chosen.count(x) && !seen.count(x)) {
                    seen.insert(x);
                    stack.push_back(x);
                }
            };
            for (int s : f.successors(b)) visit(s);
            for (int pr : f.predecessors(b)) visit(pr);
        }
        if (seen.size() == subset.size()) out.push_back(subset);
    }
    return out;
}

// Extend v0 -> w0 to a label-preserving isomorphism; windings make the
// extension unique when it exists. Returns the image set on success.
std::optional<std::set<int>> grow_iso(const CoefficientForest& sub, const CoefficientForest& quot,
                                      const std::vector<int>& s_prime, int v0, int w0) {
    if (sub.basis()[v0].over != quot.basis()[w0].over) return std::nullopt;
    std::set<int> in_sprime(s_prime.begin(), s_prime.end());
    std::map<int, int> image{{v0, w0}};
    std::vector<int> stack{v0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int w = image[v];
        auto match = [&](int a, bool forward) -> bool {
            int v_next = forward ? sub.arrows()[a].tgt : sub.arrows()[a].src;
            if (!in_sprime.count(v_next)) return true;  // arrow leaves S'
            int over = sub.arrows()[a].over;
            int w_next = -1;
            const auto& warrows = forward ? quot.out_arrows(w) : quot.in_arrows(w);
            for (int wa : warrows)
                if (quot.arrows()[wa].over == over)
                    w_next = forward ? quot.arrows()[wa].tgt : quot.arrows()[wa].src;
            if (w_next < 0) return false;
            auto it = image.find(v_next);
            if (it != image.end()) return it->second == w_next;
            if (quot.basis()[w_next].over != sub.basis()[v_next].over) return false;
            image[v_next] = w_next;
            stack.push_back(v_next);
            return true;
        };
        for (int a : sub.out_arrows(v))
            if (!match(a, true)) return std::nullopt;
        for (int a : sub.in_arrows(v))
            if (!match(a, false)) return std::nullopt;
    }
    if (image.size() != s_prime.size()) return std::nullopt;
    std::set<int> target;
    for (const auto& [v, w] : image) target.insert(w);
    if (target.size() != s_prime.size()) return std::nullopt;
    return target;
}

}  // namespace

long long hom_dim_triples(const Instance& inst, const FixedPoint& u) {
    CoefficientForest sub = subforest(inst.forest, u.selected);
    CoefficientForest quot = quotient_forest(inst.forest, u.selected);

    long long triples = 0;
    for (int sc = 0; sc < sub.component_count(); ++sc) {
        for (const auto& s_prime : closed_connected_subsets(sub, sc, /*in_closed=*/true)) {
            int v0 = s_prime[0];
            for (int w0 = 0; w0 < quot.basis_count(); ++w0) {
                auto target = grow_iso(sub, quot, s_prime, v0, w0);
                if (!target) continue;
                // T' must be closed under outgoing arrows of the quotient.
                bool out_closed = true;
                for (int w : *target)
                    for (int a : quot.out_arrows(w))
                        if (!target->count(quot.arrows()[a].tgt)) out_closed = false;
                if (out_closed) ++triples;
            }
        }
    }
    return triples;
}

bool bruhat_leq(const std::vector<int>& v, const std::vector<int>& w) {
    if (v.size() != w.size()) throw PreconditionError("permutations must have equal length");
    int n = static_cast<int>(v.size());
    // r(i,j) = #{k <= i : perm(k) <= j}; v <= w iff r_v >= r_w everywhere.
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            int rv = 0, rw = 0;
            for (int k = 0; k < i; ++k) {
                if (v[k] <= j) ++rv;
                if (w[k] <= j) ++rw;
            }
            if (rv < rw) return false;
        }
    }
    return true;
}

long long inversions(const std::vector<int>& perm) {
    long long count = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++count;
    return count;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

std::vector<FixedPoint> brute_force_fixed_points(const Quiver& q, const CoefficientForest& f,
                                                 const std::vector<int>& e) {
    if (f.basis_count() > 16)
        throw PreconditionError("subset filter is guarded to 16 basis vectors");
    std::vector<FixedPoint> out;
    int n = f.basis_count();
    for (long long mask = 0; mask < (1LL << n); ++mask) {
        std::vector<int> selected;
        for (int b = 0; b < n; ++b)
            if (mask & (1LL << b)) selected.push_back(b);
        if (!is_successor_closed(f, selected)) continue;
        std::vector<int> count(q.vertex_count(), 0);
        for (int b : selected) ++count[f.basis()[b].over];
        if (count != e) continue;
        out.push_back(FixedPoint{std::move(selected)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qgkm
