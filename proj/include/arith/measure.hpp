#pragma once

#include "arith/classes.hpp"
#include "arith/interval.hpp"
#include "arith/maps.hpp"
#include "arith/polynomial.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace arith {

enum class VolumeMethod { Grid, MonteCarlo };

struct VolumeEstimate {
    double value = 0.0;
    double error = 0.0; // absolute; 95% confidence for MC, rigorous for grid
    VolumeMethod method = VolumeMethod::MonteCarlo;
    long long samples = 0;
    uint64_t seed = 0;
};

// Sampling / integration region: an axis-aligned box or a euclidean ball.
struct Region {
    enum class Kind { Box, Ball } kind = Kind::Box;
    Box box;                    // valid for Kind::Box
    std::vector<double> center; // valid for Kind::Ball
    double radius = 0.0;

    static Region of_box(Box b);
    static Region ball(std::vector<double> center, double radius);
    size_t dim() const;
    double volume() const;
    Box bounding_box() const;
    bool contains(std::span<const double> x) const;
};

double unit_ball_volume(int d);

// Vol{x in K : |g(x)| <= eps}. The grid method uses interval arithmetic per
// cell and returns a rigorous enclosure; Monte-Carlo uses counter-based
// randomness (deterministic for fixed seed, any thread count).
VolumeEstimate sublevel_volume(const Polynomial& g, const Region& K, double eps,
                               VolumeMethod method, long long budget, uint64_t seed,
                               int threads = 1);
VolumeEstimate sublevel_volume(const std::function<double(std::span<const double>)>& g,
                               const Region& K, double eps, long long budget, uint64_t seed,
                               int threads = 1);

struct SupBracket {
    double lo = 0.0; // achieved by a sample point
    double hi = 0.0; // certified upper bound
};
SupBracket sup_norm(const Polynomial& g, const Region& K, long long budget = 200'000);

struct BoundReport {
    std::string id;
    enum class Status { Satisfied, Violated, Skipped } status = Status::Skipped;
    double lhs = 0.0, lhs_err = 0.0, rhs = 0.0, margin = 0.0;
    bool satisfied() const { return status == Status::Satisfied; }
};

// For each eps: Vol{|g| <= eps} <= C (eps/||g||_K)^tau Vol(K), with the
// estimator error credited to the left side.
std::vector<BoundReport> ctau_check(const Polynomial& g, const Region& K, double C, double tau,
                                    std::span<const double> eps_grid, VolumeMethod method,
                                    long long budget, uint64_t seed, int threads = 1);

// Vol{x in B(0,r) : |(f(x), band.i)| <= band.halfwidth}
VolumeEstimate band_preimage_volume(const PolynomialMap& f, const Band& band, double r,
                                    VolumeMethod method, long long budget, uint64_t seed,
                                    int threads = 1);

struct DensityPoint {
    double r = 0.0;
    double density_lb = 0.0; // 1 - union-bound estimate of the excluded measure
    double err = 0.0;        // 95% confidence half-width of that estimate
    long long bands_considered = 0;
    double truncation_tail = 0.0;
};

struct DensityCurve {
    std::vector<DensityPoint> points;
    ClassVerdict precondition; // membership of f(0) in C(a) up to K_cutoff
};

struct DensityParams {
    int n = 0, d = 0, l = 0;
    std::vector<double> radii;
    int K_cutoff = 0;
    long long samples = 1000;
    uint64_t seed = 1;
    int threads = 1;
    double tail_constant = 1.0; // the existential Prop constant, caller-supplied
    SigmaOptions sigma;
};

// Certified-semantics density lower bound of f^{-1}(C_K(a')) at 0: per
// radius, 1 minus a Monte-Carlo estimate of the union bound over candidate
// band preimages (subadditive, hence a lower bound on the density of the
// K-truncated class), with the dyadic tail of the excluded-measure series
// reported separately.
DensityCurve density_curve(const PolynomialMap& f, const DecreasingSequence& a,
                           const DensityParams& params);

// Prop-style bound check: Vol{x in B(0,r): |(f(x),i)| <= a} against
// C (a |i|^n)^{1/(dl(n+1))} r^{-1/d} Vol(B(0,r)), guarded by the side
// conditions (a |i|^n)^{1/(n+1)} <= A r^l and a <= |i|.
BoundReport km_bound_check(const PolynomialMap& f, const IntVec& i, double a, double r,
                           double fitted_C, double A, VolumeMethod method, long long budget,
                           uint64_t seed, int threads = 1);

// ||h_t(x) Gamma|| for a polynomial map, evaluated at x.
double ht_subgroup_norm(const PolynomialMap& f, std::span<const double> x, double t,
                        const DiscreteSubgroup& gamma);

struct GrowthFit {
    double A_fit = 0.0;
    double l_fit = 0.0;
};

// Fits log s(r) ~ log A + l log r where s(r) is the sampled oscillation of
// x -> ||h_t(x) Gamma|| over B(0,r).
GrowthFit growth_exponent_fit(const PolynomialMap& f, const DiscreteSubgroup& gamma, double t,
                              std::span<const double> radii, long long budget, uint64_t seed);

} // namespace arith
