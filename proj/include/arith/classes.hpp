#pragma once

#include "arith/lattice.hpp"
#include "arith/rational.hpp"

#include <optional>
#include <vector>

namespace arith {

// Positive nonincreasing sequence a_k, either a geometric family
// C * 2^{-tau k} or an explicit table. Construction enforces a_0 <= 1 by
// rescaling C (resp. rejecting tables), since every estimate downstream
// assumes it; `normalized` records that a rescale happened.
class DecreasingSequence {
  public:
    static DecreasingSequence geometric(Rat C, long tau);
    static DecreasingSequence table(std::vector<Rat> values);

    Rat at(long k) const;
    long k_max() const; // inclusive; LONG_MAX-ish for geometric families
    bool is_geometric() const { return geometric_; }
    Rat geometric_C() const { return C_; }
    long geometric_tau() const { return tau_; }
    bool was_normalized() const { return normalized_; }

  private:
    bool geometric_ = true;
    Rat C_;
    long tau_ = 0;
    std::vector<Rat> values_;
    bool normalized_ = false;
};

// exp(i) = floor(log2 |i|) + 1, computed exactly from |i|^2 by comparing
// against powers of 4. Guarantees |i| <= 2^{exp(i)}.
int exp_index(const IntVec& i);
int exp_index_norm2(const Int& n2);

// a'_k = 2^{-kn - kl(n+1) - (n+1)^2 kdl} a_k^{(n+1)l}
DecreasingSequence derived_sequence(const DecreasingSequence& a, int n, int d, int l);

struct RhoSequence {
    DecreasingSequence seq;
    // smallest N with rho_k < 1/2 for all k >= N (within the table domain);
    // absent when no such index exists there.
    std::optional<long> N;
};
// rho_k = 2^{-kn - kl(n+1) - (n+1)^2 kdl} a_k^{(n+1)l - 1}, so a'_k = rho_k a_k.
RhoSequence rho_sequence(const DecreasingSequence& a, int n, int d, int l);

struct ClassVerdict {
    enum class Status { InClassUpTo, Violated };
    Status status = Status::InClassUpTo;
    int K = 0;        // cutoff the query ran to
    // Violated payload: first failing profile index k, sigma witness, value.
    // For k >= 1 the witness i also satisfies exp_index(i) == k; k == 0 is
    // witnessed by a unit-shell vector (exp_index 1), see docs.
    int k = -1;
    IntVec witness;
    Rat value;
    bool in_class() const { return status == Status::InClassUpTo; }
};

// alpha in C(a) up to cutoff K: sigma(alpha)_k >= a_k exactly for all k <= K.
ClassVerdict membership(const TargetVector& alpha, const DecreasingSequence& a, int K,
                        const SigmaOptions& opts = {});

struct Band {
    IntVec i;
    int k = 0;             // exp_index(i)
    Rat halfwidth;         // scalar-product bound rho_k a_k
    double dist_halfwidth; // rho_k a_k / |i|
};

// Bands in Z^n that can meet a ball of radius r around a point of C(a):
// shell k is admitted iff a_k/2^{k+1} < r and (1 - rho_k) a_k / 2^k < r;
// one antipodal representative per band. Throws BudgetExceeded past `cap`.
std::vector<Band> candidate_bands(int n, const DecreasingSequence& a,
                                  const DecreasingSequence& rho, double r, int K,
                                  size_t cap = 5'000'000);

// Shells admitted by the same test, without materializing the bands.
std::vector<int> candidate_shells(const DecreasingSequence& a, const DecreasingSequence& rho,
                                  double r, int K);

// Exact cardinality of {i in Z^n \ 0 : exp_index(i) = k} (both antipodes).
long long shell_count(int n, int k, long long budget = 2'000'000'000);

// Partial sum over exp_index(i) <= K of 2^{-exp(i)(n+1)}, exact.
Rat tail_sum(int n, int K);

} // namespace arith
