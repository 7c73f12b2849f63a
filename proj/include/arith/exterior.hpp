#pragma once

#include <map>
#include <span>
#include <vector>

namespace arith {

// Element of the exterior algebra over R^m, stored as coefficients on the
// canonical basis of strictly increasing index tuples (1-based indices).
// Degree-0 elements use the empty tuple.
struct PolyVector {
    int ambient = 0;
    int degree = 0;
    std::map<std::vector<int>, double> coeff;

    static PolyVector scalar(int m, double v);
    static PolyVector basis(int m, std::vector<int> tuple);
    static PolyVector from_coords(int m, std::span<const double> x);

    PolyVector& add_term(std::vector<int> tuple, double c);
    double at(const std::vector<int>& tuple) const;
    void prune(double tol = 0.0);
    // Z/2Z sign quotient: flips the sign so the first nonzero coefficient
    // (lexicographic tuple order) is positive.
    PolyVector canonical_sign() const;
};

PolyVector operator+(const PolyVector& a, const PolyVector& b);
PolyVector operator*(double s, const PolyVector& a);

PolyVector wedge(const PolyVector& u, const PolyVector& v);
PolyVector hodge_star(const PolyVector& u);
double inner(const PolyVector& u, const PolyVector& v);
double pv_norm(const PolyVector& u);

// Rank-r discrete subgroup of R^m given by basis rows.
struct DiscreteSubgroup {
    int ambient = 0;
    int rank = 0;
    std::vector<std::vector<double>> basis; // rank rows, each of length ambient

    static DiscreteSubgroup from_rows(std::vector<std::vector<double>> rows);
};

// sqrt of the Gram determinant of the basis rows; switches to the wedge
// expansion for small rank*ambient where it is exact in the same sense.
double subgroup_norm(const DiscreteSubgroup& g);
// Wedge-expansion route, kept as the independent oracle.
double subgroup_norm_wedge(const DiscreteSubgroup& g);
PolyVector basis_wedge(const DiscreteSubgroup& g);

// ||h_t(x)Gamma|| closed form: sqrt(e^{-2rt} + e^{2(n-r+1)t} |pi_G(fx)|^2) * ||G||,
// where fx is the map value at x and pi_G the orthogonal projection onto
// span(Gamma). Gamma lives in R^n, the image in R^{n+1}.
double ht_subgroup_norm_value(std::span<const double> fx, double t, const DiscreteSubgroup& g);

// Brute-force route: build the image rows e^{-t} u_i + e^{nt}(u_i, fx) e_{n+1},
// wedge them and take the norm.
double ht_subgroup_norm_bruteforce(std::span<const double> fx, double t, const DiscreteSubgroup& g);

} // namespace arith
