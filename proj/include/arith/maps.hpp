#pragma once

#include "arith/interval.hpp"
#include "arith/polynomial.hpp"
#include "arith/rational.hpp"

#include <span>
#include <vector>

namespace arith {

struct CurvatureResult {
    bool is_curved = false;
    // basis rows of V = span{ d^j f(x) : 1 <= |j| <= l }, exact
    std::vector<std::vector<Rat>> V_basis;
    int rank_derivatives = 0; // rank of the spanning set above
    int rank_with_value = 0;  // same set augmented with f(x) itself
};

// f is l-curved at x iff every coefficient vector of y -> f(y) - f(x)
// lies in V. All linear algebra is exact rational elimination.
CurvatureResult curvature_check(const PolynomialMap& f, std::span<const Rat> x, int l);

struct DerivativeBounds {
    double m = 0.0; // certified lower bound on |d^l_{x_i} f| over K, every axis i
    double M = 0.0; // certified upper bound on |d^beta f| over K, |beta| <= l
    Box region;
};

struct BoundOptions {
    double tol = 1e-6;      // relative gap target for the brackets
    long long max_boxes = 200'000;
};

// Scalar polynomial only (a PolynomialMap overload below requires n == 1).
// Throws CertificationError when the lower bound cannot be certified,
// distinguishing a detected sign change from an exhausted subdivision.
DerivativeBounds derivative_bounds(const Polynomial& f, const Box& K, int l,
                                   const BoundOptions& opts = {});
DerivativeBounds derivative_bounds(const PolynomialMap& f, const Box& K, int l,
                                   const BoundOptions& opts = {});

// C = d l (l+1) ((M/m)(l+1)(2 l^l + 1))^{1/l}
double km_constant(int d, int l, double m, double M);

// Certified kappa with f(x) in B(f(0), kappa |x|) for |x| <= r, via interval
// Jacobian bounds over the enclosing hypercube.
double lipschitz_bound(const PolynomialMap& f, double r);

} // namespace arith
