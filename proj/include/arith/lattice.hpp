#pragma once

#include "arith/exterior.hpp"
#include "arith/interval.hpp"
#include "arith/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arith {

using IntVec = std::vector<Int>;

// Exact rational target vector with a floating shadow for display.
struct TargetVector {
    std::vector<Rat> coords;
    std::vector<double> shadow;

    static TargetVector of(std::vector<Rat> coords);
    static TargetVector parse(const std::vector<std::string>& entries);
    int dim() const { return static_cast<int>(coords.size()); }
    TargetVector scaled(const Rat& lambda) const;
};

// Exact |(alpha, i)|.
Rat dot_abs(const TargetVector& alpha, const IntVec& i);

// Visits one canonical representative (first nonzero coordinate positive)
// of each antipodal pair {i, -i} with 0 < |i| <= R.
void enumerate_ball(int n, double R, const std::function<void(std::span<const long long>)>& visit);
std::vector<IntVec> enumerate_ball(int n, double R);

enum class SigmaEngine { Auto, Exhaustive, BranchAndBound };

// Exploration toggle only: the sup norm changes the meaning of the ball
// |i| <= 2^k and is served by the exhaustive engine alone. Everything
// downstream (classes, acceptance runs) uses the euclidean default.
enum class NormKind { Euclidean, Sup };

struct SigmaOptions {
    SigmaEngine engine = SigmaEngine::Auto;
    NormKind norm = NormKind::Euclidean;
    // exhaustive when (2*2^k+1)^n <= this
    long long exhaustive_budget = 100'000'000;
    long long node_budget = 1'000'000'000;
};

struct SigmaResult {
    Rat value;
    IntVec witness;
};

struct SigmaEntry {
    int k = 0;
    Rat value;
    IntVec witness;
};

// sigma(alpha)_k = min |(alpha,i)| over 0 != i in Z^n, |i| <= 2^k. Exact.
SigmaResult sigma(const TargetVector& alpha, int k, const SigmaOptions& opts = {});
std::vector<SigmaEntry> sigma_profile(const TargetVector& alpha, int K, const SigmaOptions& opts = {});

// Rank-n subgroup of R^{n+1} with rows (e_j, alpha_j).
DiscreteSubgroup schmidt_embedding(const TargetVector& alpha);
std::vector<std::vector<Rat>> schmidt_embedding_exact(const TargetVector& alpha);

// Volume-preserving diagonal scaling (e^{-t}, ..., e^{-t}, e^{nt}) on R^{n+1}.
struct DiagonalFlow {
    double t = 0.0;
    int n = 1;
    std::vector<double> diagonal() const;
    std::vector<double> apply(std::span<const double> v) const;
    DiscreteSubgroup apply(const DiscreteSubgroup& g) const;
    double det() const;
};
DiagonalFlow g_flow(double t, int n);

struct DeltaResult {
    double lo = 0.0;
    double hi = 0.0;
    bool certified = false;
    std::vector<long long> coeffs; // coefficients of the minimizer in the given basis
    double value() const { return hi; }
};

// Shortest nonzero vector of the subgroup: LLL reduction followed by
// Fincke-Pohst enumeration; the enumeration runs in interval arithmetic
// so the reported [lo,hi] is a certified enclosure unless `certified` is
// false (degenerate Gram data), in which case the result is heuristic.
DeltaResult delta(const DiscreteSubgroup& g, long long node_budget = 10'000'000);

struct LemmaPair {
    double eps = 0.0;
    double t = 0.0;
};

// eps = sqrt(2) (a |i|^n)^{1/(n+1)}, t = log(|i|/a)/(n+1). Requires
// 0 < a <= |i|.
LemmaPair lemma_eps_t(double a, const IntVec& i, int n);

} // namespace arith
