// Sparse multivariate polynomials with exact rational coefficients, in the
// variables eps_1..eps_d, delta_1..delta_c. No floating point anywhere.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qgkm/grading.hpp"

namespace qgkm {

using Rational = boost::multiprecision::cpp_rational;

using Monomial = std::vector<int>;  // exponent per variable

// Graded order: total degree first, then lexicographic on exponents.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& value);
    static Polynomial variable(int nvars, int index);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero polynomial
    bool is_homogeneous() const;
    const std::map<Monomial, Rational, GrlexLess>& terms() const { return terms_; }

    Rational coefficient(const Monomial& m) const;
    void set_coefficient(const Monomial& m, const Rational& value);

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(const Rational& factor) const;
    bool operator==(const Polynomial& other) const;

    // Deterministic rendering, terms in graded-lex order.
    std::string render(const std::vector<std::string>& variable_names) const;

private:
    int nvars_ = 0;
    std::map<Monomial, Rational, GrlexLess> terms_;  // no zero coefficients stored
};

// All exponent vectors of the given total degree, in graded-lex order.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

// Image of p in the quotient by a nonzero linear form: the pivot variable is
// substituted away. p is divisible by alpha exactly when the image vanishes.
Polynomial normal_form_mod_linear(const Polynomial& p, const Polynomial& alpha);

// Exact quotient p / alpha for linear alpha, or nothing when not divisible.
// Throws PreconditionError when alpha is zero or not of degree one.
std::optional<Polynomial> linear_divide(const Polynomial& p, const Polynomial& alpha);

// Degree-one polynomial of a torus character (variables: eps then delta).
Polynomial character_polynomial(const Character& alpha);

// Variable names e1..ed, d[arrow id] in supporting-arrow order.
std::vector<std::string> character_variable_names(const Quiver& q, const AlignedBasis& basis);

// Renders a character as a signed term list, e.g. "+e2 -e1 +2d[a]".
std::string render_character(const Character& alpha, const Quiver& q, const AlignedBasis& basis);

}  // namespace qgkm
