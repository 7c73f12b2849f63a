#include "arith/classes.hpp"

#include "arith/errors.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace arith {

DecreasingSequence DecreasingSequence::geometric(Rat C, long tau) {
    if (C <= 0) throw std::invalid_argument("geometric sequence needs C > 0");
    if (tau < 0) throw std::invalid_argument("geometric sequence needs tau >= 0");
    DecreasingSequence s;
    s.geometric_ = true;
    s.tau_ = tau;
    if (C > 1) {
        std::cerr << "[arith] geometric sequence C=" << rat_str(C)
                  << " exceeds 1; rescaling so a_0 = 1\n";
        s.C_ = 1;
        s.normalized_ = true;
    } else {
        s.C_ = std::move(C);
    }
    return s;
}

DecreasingSequence DecreasingSequence::table(std::vector<Rat> values) {
    if (values.empty()) throw std::invalid_argument("table sequence needs at least one value");
    for (size_t k = 0; k < values.size(); ++k) {
        if (values[k] <= 0) throw std::invalid_argument("table sequence must be positive");
        if (k > 0 && values[k] > values[k - 1])
            throw std::invalid_argument("table sequence must be nonincreasing");
    }
    if (values[0] > 1) throw std::invalid_argument("table sequence must start at a_0 <= 1");
    DecreasingSequence s;
    s.geometric_ = false;
    s.values_ = std::move(values);
    return s;
}

Rat DecreasingSequence::at(long k) const {
    if (k < 0) throw std::invalid_argument("sequence index must be >= 0");
    if (geometric_) return C_ * pow2(-tau_ * k);
    if (k >= static_cast<long>(values_.size()))
        throw std::out_of_range("table sequence evaluated beyond its domain");
    return values_[static_cast<size_t>(k)];
}

long DecreasingSequence::k_max() const {
    return geometric_ ? std::numeric_limits<long>::max() / 2
                      : static_cast<long>(values_.size()) - 1;
}

int exp_index_norm2(const Int& n2) {
    if (n2 == 0) throw std::invalid_argument("exp_index: zero vector");
    // smallest e with n2 < 4^{e+1}; result is e+1
    int e = 0;
    Int p = 4;
    while (p <= n2) {
        p <<= 2;
        ++e;
    }
    return e + 1;
}

int exp_index(const IntVec& i) { return exp_index_norm2(norm2(i)); }

namespace {

long exponent_shift(int n, int d, int l, long k) {
    // kn + kl(n+1) + (n+1)^2 kdl
    return k * (static_cast<long>(n) + static_cast<long>(l) * (n + 1) +
                static_cast<long>(n + 1) * (n + 1) * d * l);
}

} // namespace

DecreasingSequence derived_sequence(const DecreasingSequence& a, int n, int d, int l) {
    if (n < 1 || d < 1 || l < 1) throw std::invalid_argument("derived_sequence: n,d,l >= 1");
    unsigned long p = static_cast<unsigned long>(n + 1) * static_cast<unsigned long>(l);
    long shift_per_k = exponent_shift(n, d, l, 1);
    if (a.is_geometric()) {
        // a'_k = C^{(n+1)l} 2^{-(shift + tau (n+1)l) k}
        return DecreasingSequence::geometric(rat_pow(a.geometric_C(), p),
                                             shift_per_k + a.geometric_tau() * static_cast<long>(p));
    }
    std::vector<Rat> vals;
    for (long k = 0; k <= a.k_max(); ++k)
        vals.push_back(pow2(-shift_per_k * k) * rat_pow(a.at(k), p));
    return DecreasingSequence::table(std::move(vals));
}

RhoSequence rho_sequence(const DecreasingSequence& a, int n, int d, int l) {
    if (n < 1 || d < 1 || l < 1) throw std::invalid_argument("rho_sequence: n,d,l >= 1");
    unsigned long p = static_cast<unsigned long>(n + 1) * static_cast<unsigned long>(l) - 1;
    long shift_per_k = exponent_shift(n, d, l, 1);
    RhoSequence out;
    Rat half(1, 2);
    if (a.is_geometric()) {
        long tau_rho = shift_per_k + a.geometric_tau() * static_cast<long>(p);
        out.seq = DecreasingSequence::geometric(rat_pow(a.geometric_C(), p), tau_rho);
        if (tau_rho == 0) {
            if (out.seq.geometric_C() < half) out.N = 0;
            // else: never drops below 1/2, leave N absent
        } else {
            long k = 0;
            while (out.seq.at(k) >= half) ++k; // strictly decreasing, terminates
            out.N = k;
        }
        return out;
    }
    std::vector<Rat> vals;
    for (long k = 0; k <= a.k_max(); ++k)
        vals.push_back(pow2(-shift_per_k * k) * rat_pow(a.at(k), p));
    out.seq = DecreasingSequence::table(std::move(vals));
    std::optional<long> N;
    for (long k = out.seq.k_max(); k >= 0; --k) {
        if (out.seq.at(k) < half)
            N = k;
        else
            break;
    }
    out.N = N;
    return out;
}

ClassVerdict membership(const TargetVector& alpha, const DecreasingSequence& a, int K,
                        const SigmaOptions& opts) {
    if (K < 0) throw std::invalid_argument("membership: K >= 0 required");
    if (K > a.k_max()) throw std::out_of_range("membership: K beyond sequence domain");
    auto profile = sigma_profile(alpha, K, opts);
    ClassVerdict v;
    v.K = K;
    for (const auto& e : profile) {
        if (e.value >= a.at(e.k)) continue;
        v.status = ClassVerdict::Status::Violated;
        v.k = e.k;
        v.witness = e.witness;
        v.value = e.value;
        return v;
    }
    v.status = ClassVerdict::Status::InClassUpTo;
    return v;
}

std::vector<int> candidate_shells(const DecreasingSequence& a, const DecreasingSequence& rho,
                                  double r, int K) {
    if (r <= 0) throw std::invalid_argument("candidate_bands: r > 0 required");
    if (K > a.k_max() || K > rho.k_max())
        throw std::out_of_range("candidate_bands: K beyond sequence domain");
    // r enters exactly: every double is a dyadic rational
    Rat rr(r);
    std::vector<int> shells;
    for (int k = 1; k <= K; ++k) {
        Rat ak = a.at(k);
        Rat rk = rho.at(k);
        if (!(ak < rr * pow2(k + 1))) continue;        // I_r membership
        if (!((1 - rk) * ak < rr * pow2(k))) continue; // distance exclusion
        shells.push_back(k);
    }
    return shells;
}

std::vector<Band> candidate_bands(int n, const DecreasingSequence& a,
                                  const DecreasingSequence& rho, double r, int K, size_t cap) {
    if (n < 1) throw std::invalid_argument("candidate_bands: n >= 1 required");
    auto shells = candidate_shells(a, rho, r, K);
    std::vector<Band> out;
    for (int k : shells) {
        Rat halfwidth = rho.at(k) * a.at(k);
        double hw = halfwidth.get_d();
        long long lo2 = 1;
        for (int j = 0; j < k - 1; ++j) lo2 <<= 2; // 4^{k-1}
        long long hi2 = lo2 << 2;
        enumerate_ball(n, std::pow(2.0, k), [&](std::span<const long long> v) {
            long long n2 = 0;
            for (long long c : v) n2 += c * c;
            if (n2 < lo2 || n2 >= hi2) return;
            if (out.size() >= cap) throw BudgetExceeded("candidate_bands: band cap exceeded");
            Band b;
            b.i.reserve(v.size());
            for (long long c : v) b.i.push_back(static_cast<long>(c));
            b.k = k;
            b.halfwidth = halfwidth;
            b.dist_halfwidth = hw / std::sqrt(static_cast<double>(n2));
            out.push_back(std::move(b));
        });
    }
    return out;
}

long long shell_count(int n, int k, long long budget) {
    if (n < 1 || k < 1) throw std::invalid_argument("shell_count: n,k >= 1 required");
    long double side = 2.0L * std::pow(2.0L, k) + 1.0L;
    long double tot = 1.0L;
    for (int j = 0; j < n; ++j) tot *= side;
    if (tot > static_cast<long double>(budget))
        throw BudgetExceeded("shell_count: enumeration budget exceeded");
    long long lo2 = 1;
    for (int j = 0; j < k - 1; ++j) lo2 <<= 2; // 4^{k-1}
    long long hi2 = lo2 << 2;                  // 4^k
    long long count = 0;
    enumerate_ball(n, std::pow(2.0, k), [&](std::span<const long long> v) {
        long long n2 = 0;
        for (long long c : v) n2 += c * c;
        // exp(i) = k  <=>  4^{k-1} <= n2 < 4^k
        if (n2 >= lo2 && n2 < hi2) ++count;
    });
    return 2 * count; // enumeration is antipodal-deduplicated
}

Rat tail_sum(int n, int K) {
    Rat s = 0;
    for (int k = 1; k <= K; ++k)
        s += Rat(static_cast<long>(shell_count(n, k))) * pow2(-static_cast<long>(k) * (n + 1));
    return s;
}

} // namespace arith
