#pragma once

#include "arith/interval.hpp"
#include "arith/rational.hpp"

#include <map>
#include <span>
#include <vector>

namespace arith {

using Monomial = std::vector<unsigned>; // exponent per variable

// Multivariate polynomial with exact rational coefficients.
struct Polynomial {
    int nvars = 0;
    std::map<Monomial, Rat> terms; // zero coefficients are never stored

    static Polynomial zero(int nvars);
    static Polynomial constant(int nvars, Rat c);
    static Polynomial var(int nvars, int j, unsigned power = 1);

    Polynomial& add_term(Monomial mono, Rat c);

    Rat eval(std::span<const Rat> x) const;
    double eval(std::span<const double> x) const;
    Interval eval(std::span<const Interval> x) const;

    Polynomial derivative(int axis) const;
    Polynomial derivative(const Monomial& multi) const;

    long total_degree() const; // -1 for the zero polynomial
    bool is_zero() const { return terms.empty(); }
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Rat& s, const Polynomial& a);

// f : R^d -> R^n with an attached curvature order l.
struct PolynomialMap {
    int domain_dim = 0;   // d
    int codomain_dim = 0; // n
    int curvature_order = 1; // l
    std::vector<Polynomial> comps;

    std::vector<Rat> eval(std::span<const Rat> x) const;
    std::vector<double> eval(std::span<const double> x) const;
    std::vector<Rat> value_at_origin() const;
};

// Multi-indices j with 1 <= |j| <= max_order, in graded lex order.
std::vector<Monomial> multi_indices_up_to(int d, int max_order);

} // namespace arith
