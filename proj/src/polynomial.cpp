#include "qgkm/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "qgkm/errors.hpp"

namespace qgkm {

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

Polynomial Polynomial::constant(int nvars, const Rational& value) {
    Polynomial p(nvars);
    if (value != 0) p.terms_[Monomial(nvars, 0)] = value;
    return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
    Polynomial p(nvars);
    Monomial m(nvars, 0);
    m[index] = 1;
    p.terms_[m] = 1;
    return p;
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    const Monomial& top = terms_.rbegin()->first;
    return std::accumulate(top.begin(), top.end(), 0);
}

bool Polynomial::is_homogeneous() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int dm = std::accumulate(m.begin(), m.end(), 0);
        if (d == -1) d = dm;
        if (dm != d) return false;
    }
    return true;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::set_coefficient(const Monomial& m, const Rational& value) {
    if (value == 0)
        terms_.erase(m);
    else
        terms_[m] = value;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    for (const auto& [m, c] : other.terms_) {
        Rational sum = out.coefficient(m) + c;
        out.set_coefficient(m, sum);
    }
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    return *this + other.scaled(-1);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out(nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_) {
            Monomial m(nvars_);
            for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            out.set_coefficient(m, out.coefficient(m) + ca * cb);
        }
    return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
    Polynomial out(nvars_);
    if (factor == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_[m] = c * factor;
    return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
}

std::string Polynomial::render(const std::vector<std::string>& variable_names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string vars;
        for (int i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += variable_names[i];
            if (m[i] > 1) vars += "^" + std::to_string(m[i]);
        }
        if (vars.empty())
            out += a.str();
        else if (a == 1)
            out += vars;
        else
            out += a.str() + "*" + vars;
    }
    return out;
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (degree == 0) out.push_back({});
        return out;
    }
    Monomial current(nvars, 0);
    std::function<void(int, int)> place = [&](int var, int remaining) {
        if (var == nvars - 1) {
            current[var] = remaining;
            out.push_back(current);
            current[var] = 0;
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            current[var] = k;
            place(var + 1, remaining - k);
        }
        current[var] = 0;
    };
    place(0, degree);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

namespace {

int linear_pivot(const Polynomial& alpha) {
    if (alpha.is_zero() || alpha.degree() != 1 || !alpha.is_homogeneous())
        throw PreconditionError("divisor must be a nonzero linear form");
    for (const auto& [m, c] : alpha.terms())
        for (int i = 0; i < alpha.nvars(); ++i)
            if (m[i] == 1) return i;
    throw PreconditionError("divisor must be a nonzero linear form");
}

}  // namespace

Polynomial normal_form_mod_linear(const Polynomial& p, const Polynomial& alpha) {
    int pivot = linear_pivot(alpha);
    Monomial pm(alpha.nvars(), 0);
    pm[pivot] = 1;
    Rational lead = alpha.coefficient(pm);

    // pivot variable == -(alpha - lead*pivot)/lead in the quotient ring
    Polynomial substitute(alpha.nvars());
    for (const auto& [m, c] : alpha.terms()) {
        if (m == pm) continue;
        substitute.set_coefficient(m, -c / lead);
    }

    Polynomial out(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(p.nvars(), c);
        Monomial rest = m;
        int power = rest[pivot];
        rest[pivot] = 0;
        Polynomial rest_poly(p.nvars());
        rest_poly.set_coefficient(rest, 1);
        term = term * rest_poly;
        for (int i = 0; i < power; ++i) term = term * substitute;
        out = out + term;
    }
    return out;
}

std::optional<Polynomial> linear_divide(const Polynomial& p, const Polynomial& alpha) {
    int pivot = linear_pivot(alpha);
    if (p.is_zero()) return Polynomial(p.nvars());
    if (!normal_form_mod_linear(p, alpha).is_zero()) return std::nullopt;

    // Synthetic division by eliminating the pivot variable degree by degree.
    Monomial pm(alpha.nvars(), 0);
    pm[pivot] = 1;
    Rational lead = alpha.coefficient(pm);
    Polynomial remainder = p;
    Polynomial quotient(p.nvars());
    while (!remainder.is_zero()) {
        // Eliminate the highest pivot-degree term; each step lowers it.
        const Monomial* best = nullptr;
        for (const auto& [mono, coeff] : remainder.terms()) {
            (void)coeff;
            if (!best || mono[pivot] > (*best)[pivot] ||
                (mono[pivot] == (*best)[pivot] && GrlexLess{}(*best, mono)))
                best = &mono;
        }
        Monomial m = *best;
        Rational c = remainder.coefficient(m);
        if (m[pivot] == 0) return std::nullopt;  // not divisible after all
        Monomial qm = m;
        --qm[pivot];
        Polynomial step(p.nvars());
        step.set_coefficient(qm, c / lead);
        quotient = quotient + step;
        remainder = remainder - step * alpha;
    }
    return quotient;
}

Polynomial character_polynomial(const Character& alpha) {
    int d = static_cast<int>(alpha.eps.size());
    int c = static_cast<int>(alpha.delta.size());
    Polynomial p(d + c);
    for (int i = 0; i < d; ++i)
        if (alpha.eps[i] != 0) {
            Monomial m(d + c, 0);
            m[i] = 1;
            p.set_coefficient(m, Rational(alpha.eps[i]));
        }
    for (int i = 0; i < c; ++i)
        if (alpha.delta[i] != 0) {
            Monomial m(d + c, 0);
            m[d + i] = 1;
            p.set_coefficient(m, Rational(alpha.delta[i]));
        }
    return p;
}

std::vector<std::string> character_variable_names(const Quiver& q, const AlignedBasis& basis) {
    std::vector<std::string> names;
    int d = 0;
    for (int s : basis.segment_of) d = std::max(d, s + 1);
    for (int j = 0; j < d; ++j) names.push_back("e" + std::to_string(j + 1));
    for (int a : basis.supp_arrows) names.push_back("d[" + q.arrow_id(a) + "]");
    return names;
}

std::string render_character(const Character& alpha, const Quiver& q, const AlignedBasis& basis) {
    std::string out;
    auto append = [&](long long coeff, const std::string& name) {
        if (coeff == 0) return;
        if (!out.empty()) out += " ";
        out += coeff > 0 ? "+" : "-";
        long long mag = coeff > 0 ? coeff : -coeff;
        if (mag != 1) out += std::to_string(mag);
        out += name;
    };
    for (size_t i = 0; i < alpha.eps.size(); ++i)
        append(alpha.eps[i], "e" + std::to_string(i + 1));
    for (size_t i = 0; i < alpha.delta.size(); ++i)
        append(alpha.delta[i], "d[" + q.arrow_id(basis.supp_arrows[i]) + "]");
    return out.empty() ? "0" : out;
}

}  // namespace qgkm
