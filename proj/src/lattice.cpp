#include "arith/lattice.hpp"

#include "arith/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arith {

TargetVector TargetVector::of(std::vector<Rat> coords) {
    if (coords.empty()) throw std::invalid_argument("TargetVector needs n >= 1");
    TargetVector v;
    v.coords = std::move(coords);
    v.shadow.reserve(v.coords.size());
    for (const auto& c : v.coords) v.shadow.push_back(c.get_d());
    return v;
}

TargetVector TargetVector::parse(const std::vector<std::string>& entries) {
    std::vector<Rat> coords;
    coords.reserve(entries.size());
    for (const auto& e : entries) coords.push_back(parse_rational(e));
    return of(std::move(coords));
}

TargetVector TargetVector::scaled(const Rat& lambda) const {
    std::vector<Rat> c = coords;
    for (auto& x : c) x *= lambda;
    return of(std::move(c));
}

Rat dot_abs(const TargetVector& alpha, const IntVec& i) {
    Rat s = dot(alpha.coords, i);
    return s < 0 ? Rat(-s) : s;
}

// ---------------------------------------------------------------------------
// ball enumeration

namespace {

void enumerate_rec(int n, long long r2_budget, int pos, bool lead_zero,
                   std::vector<long long>& cur,
                   const std::function<void(std::span<const long long>)>& visit) {
    if (pos == n) {
        if (!lead_zero) visit(cur);
        return;
    }
    long long cap = static_cast<long long>(std::sqrt(static_cast<double>(r2_budget))) + 2;
    while (cap * cap > r2_budget) --cap;
    // canonical representative: first nonzero coordinate positive
    long long from = lead_zero ? 0 : -cap;
    for (long long v = from; v <= cap; ++v) {
        cur[pos] = v;
        enumerate_rec(n, r2_budget - v * v, pos + 1, lead_zero && v == 0, cur, visit);
    }
    cur[pos] = 0;
}

} // namespace

void enumerate_ball(int n, double R, const std::function<void(std::span<const long long>)>& visit) {
    if (n < 1) throw std::invalid_argument("enumerate_ball: n >= 1 required");
    if (R < 1.0) return;
    double r2 = R * R;
    long long r2i = static_cast<long long>(r2);
    while (static_cast<double>(r2i + 1) <= r2) ++r2i;
    while (static_cast<double>(r2i) > r2) --r2i;
    std::vector<long long> cur(n, 0);
    enumerate_rec(n, r2i, 0, true, cur, visit);
}

namespace {

// sup-norm counterpart: canonical representatives of the box |i|_inf <= R
void enumerate_box(int n, double R, const std::function<void(std::span<const long long>)>& visit) {
    if (R < 1.0) return;
    long long cap = static_cast<long long>(R);
    std::vector<long long> cur(n, 0);
    std::function<void(int, bool)> rec = [&](int pos, bool lead_zero) {
        if (pos == n) {
            if (!lead_zero) visit(cur);
            return;
        }
        for (long long v = lead_zero ? 0 : -cap; v <= cap; ++v) {
            cur[pos] = v;
            rec(pos + 1, lead_zero && v == 0);
        }
        cur[pos] = 0;
    };
    rec(0, true);
}

} // namespace

std::vector<IntVec> enumerate_ball(int n, double R) {
    std::vector<IntVec> out;
    enumerate_ball(n, R, [&](std::span<const long long> v) {
        IntVec iv(v.size());
        for (size_t j = 0; j < v.size(); ++j) iv[j] = static_cast<long>(v[j]);
        out.push_back(std::move(iv));
    });
    return out;
}

// ---------------------------------------------------------------------------
// sigma, exhaustive engine
//
// One pass over the ball of radius 2^K computes the whole profile: bucket j
// holds the minimum over vectors whose smallest enclosing dyadic radius is
// 2^j, so sigma_k = min over buckets j <= k.

namespace {

// smallest k >= 0 with |i|^2 <= 4^k
int bucket_of_norm2(long long n2) {
    int k = 0;
    long long p = 1;
    while (p < n2) {
        if (p > (1ll << 61)) break;
        p <<= 2;
        ++k;
    }
    return k;
}

struct BucketMin {
    bool set = false;
    Rat value;
    std::vector<long long> witness;
};

// fast-path bucket: numerators over a common denominator, compared as integers
struct BucketMinI128 {
    bool set = false;
    __int128 num = 0;
    std::vector<long long> witness;
};

Int int128_to_mpz(__int128 s) {
    bool neg = s < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-s) : static_cast<unsigned __int128>(s);
    Int out;
    mpz_set_ui(out.get_mpz_t(), static_cast<unsigned long>(u >> 64));
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    if (neg) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
    return out;
}

bool exhaustive_feasible(int n, int k, long long budget) {
    // (2*2^k + 1)^n <= budget, computed without overflow
    long double side = 2.0L * std::pow(2.0L, k) + 1.0L;
    long double tot = 1.0L;
    for (int j = 0; j < n; ++j) {
        tot *= side;
        if (tot > static_cast<long double>(budget)) return false;
    }
    return true;
}

std::vector<BucketMin> exhaustive_buckets(const TargetVector& alpha, int K, bool sup_norm) {
    int n = alpha.dim();
    std::vector<BucketMin> buckets(K + 1);
    auto enumerate = [&](const std::function<void(std::span<const long long>)>& visit) {
        if (sup_norm)
            enumerate_box(n, std::pow(2.0, K), visit);
        else
            enumerate_ball(n, std::pow(2.0, K), visit);
    };
    auto block_norm2 = [&](std::span<const long long> v) {
        long long m = 0;
        if (sup_norm) {
            for (long long c : v) m = std::max(m, c < 0 ? -c : c);
            return m * m;
        }
        for (long long c : v) m += c * c;
        return m;
    };

    // fast path: numerators over the common denominator fit in int64
    Int den = 1;
    for (const auto& c : alpha.coords) {
        Int d = c.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        den = den / g * d;
    }
    std::vector<Int> nums(n);
    bool fits = true;
    for (int j = 0; j < n; ++j) {
        nums[j] = alpha.coords[j].get_num() * (den / alpha.coords[j].get_den());
        if (!nums[j].fits_slong_p()) fits = false;
    }
    if (fits) {
        std::vector<long long> numl(n);
        for (int j = 0; j < n; ++j) numl[j] = mpz_get_si(nums[j].get_mpz_t());
        std::vector<BucketMinI128> fast(K + 1);
        enumerate([&](std::span<const long long> v) {
            __int128 s = 0;
            for (int j = 0; j < n; ++j) s += static_cast<__int128>(numl[j]) * v[j];
            if (s < 0) s = -s;
            int b = bucket_of_norm2(block_norm2(v));
            if (b > K) return;
            auto& bk = fast[b];
            if (!bk.set || s < bk.num) {
                bk.set = true;
                bk.num = s;
                bk.witness.assign(v.begin(), v.end());
            }
        });
        for (int b = 0; b <= K; ++b) {
            if (!fast[b].set) continue;
            buckets[b].set = true;
            buckets[b].value = Rat(int128_to_mpz(fast[b].num), den);
            buckets[b].value.canonicalize();
            buckets[b].witness = std::move(fast[b].witness);
        }
    } else {
        std::vector<Int> best_num(K + 1); // same denominator everywhere
        Int acc;
        enumerate([&](std::span<const long long> v) {
            mpz_set_ui(acc.get_mpz_t(), 0);
            for (int j = 0; j < n; ++j) {
                if (v[j] > 0)
                    mpz_addmul_ui(acc.get_mpz_t(), nums[j].get_mpz_t(), static_cast<unsigned long>(v[j]));
                else if (v[j] < 0)
                    mpz_submul_ui(acc.get_mpz_t(), nums[j].get_mpz_t(), static_cast<unsigned long>(-v[j]));
            }
            mpz_abs(acc.get_mpz_t(), acc.get_mpz_t());
            int b = bucket_of_norm2(block_norm2(v));
            if (b > K) return;
            auto& bk = buckets[b];
            if (!bk.set || mpz_cmp(acc.get_mpz_t(), best_num[b].get_mpz_t()) < 0) {
                bk.set = true;
                best_num[b] = acc;
                bk.witness.assign(v.begin(), v.end());
            }
        });
        for (int b = 0; b <= K; ++b) {
            if (!buckets[b].set) continue;
            buckets[b].value = Rat(best_num[b], den);
            buckets[b].value.canonicalize();
        }
    }
    return buckets;
}

IntVec to_intvec(std::span<const long long> v) {
    IntVec out(v.size());
    for (size_t j = 0; j < v.size(); ++j) out[j] = static_cast<long>(v[j]);
    return out;
}

// ---------------------------------------------------------------------------
// Certified Fincke-Pohst enumeration over an interval Gram matrix.
//
// Visits every integer coefficient vector c != 0 whose quadratic form value
// can possibly be <= bound (outward-rounded bounds guarantee completeness).
// The visitor may shrink the bound. Only representatives with the last
// nonzero coefficient positive are visited.

struct QfEnumerator {
    std::vector<std::vector<Interval>> mu; // GSO coefficients
    std::vector<Interval> bstar2;          // |b*_i|^2
    int dim = 0;
    bool ok = false;

    explicit QfEnumerator(const std::vector<std::vector<Interval>>& gram) {
        dim = static_cast<int>(gram.size());
        mu.assign(dim, std::vector<Interval>(dim, Interval(0.0)));
        bstar2.assign(dim, Interval(0.0));
        // interval Gram-Schmidt on the quadratic form:
        //   bstar2_i = g_ii - sum_{k<i} mu_ik^2 bstar2_k
        //   mu_ij = (g_ij - sum_{k<j} mu_ik mu_jk bstar2_k)/bstar2_j
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < i; ++j) {
                Interval s = gram[i][j];
                for (int k = 0; k < j; ++k) s = s - mu[i][k] * mu[j][k] * bstar2[k];
                if (bstar2[j].lo <= 0.0) return; // degenerate
                Interval inv(Interval::dn(1.0 / bstar2[j].hi), Interval::up(1.0 / bstar2[j].lo));
                mu[i][j] = s * inv;
            }
            Interval s = gram[i][i];
            for (int k = 0; k < i; ++k) s = s - sqr(mu[i][k]) * bstar2[k];
            bstar2[i] = s;
            if (bstar2[i].lo <= 0.0) return;
        }
        ok = true;
    }

    // visit(c) -> possibly updated bound (must be <= previous bound)
    bool enumerate(double bound, long long node_budget,
                   const std::function<double(std::span<const long long>, double)>& visit) const {
        std::vector<long long> c(dim, 0);
        std::vector<Interval> center(dim, Interval(0.0));
        std::vector<Interval> partial(dim + 1, Interval(0.0)); // qf of levels > i
        long long nodes = 0;
        double cur_bound = bound;
        bool all_zero_above = true;
        std::function<bool(int)> rec = [&](int i) -> bool {
            if (++nodes > node_budget) return false;
            if (i < 0) {
                bool nonzero = false;
                for (auto v : c)
                    if (v != 0) { nonzero = true; break; }
                if (nonzero) cur_bound = std::min(cur_bound, visit(c, cur_bound));
                return true;
            }
            // center_i = -sum_{j>i} mu_ji c_j
            Interval z(0.0);
            for (int j = i + 1; j < dim; ++j) z = z - Interval(double(c[j])) * mu[j][i];
            double rem = cur_bound - partial[i + 1].lo;
            if (rem < 0) return true;
            double radius = std::sqrt(std::max(0.0, rem) / bstar2[i].lo);
            radius = Interval::up(Interval::up(radius)); // outward slack
            long long from = static_cast<long long>(std::floor(z.lo - radius));
            long long to = static_cast<long long>(std::ceil(z.hi + radius));
            bool zero_above = true;
            for (int j = i + 1; j < dim; ++j)
                if (c[j] != 0) { zero_above = false; break; }
            // antipodal dedup: if everything above is zero, only c_i >= 0
            if (zero_above && from < 0) from = 0;
            for (long long v = from; v <= to; ++v) {
                c[i] = v;
                Interval d = Interval(double(v)) - z;
                partial[i] = partial[i + 1] + sqr(d) * bstar2[i];
                if (partial[i].lo > cur_bound) continue;
                if (!rec(i - 1)) return false;
            }
            c[i] = 0;
            return true;
        };
        (void)all_zero_above;
        return rec(dim - 1);
    }
};

// ---------------------------------------------------------------------------
// sigma, branch-and-bound engine.
//
// Enumerates the quadratic form Q_W(i) = W^2 (alpha,i)^2 + |i|^2 on Z^n,
// whose sublevel set {Q_W <= W^2 B^2 + R^2} contains every i with
// |(alpha,i)| <= B and |i| <= R. Candidates are filtered exactly, the
// bound shrinks as better values are found, and a final clean pass proves
// optimality. The Gram matrix is LLL-reduced first so the enumeration tree
// stays small even for R = 2^k with large k.

struct I64Mat {
    std::vector<std::vector<long long>> m;
};

// LLL on an explicit real Gram matrix (double precision); returns the
// unimodular transform U such that the reduced basis is U * (implicit rows).
std::vector<std::vector<long long>> lll_on_gram(std::vector<std::vector<double>> G, double delta = 0.99) {
    int n = static_cast<int>(G.size());
    std::vector<std::vector<long long>> U(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) U[i][i] = 1;

    auto dotG = [&](const std::vector<long long>& a, const std::vector<long long>& b) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            double t = 0.0;
            for (int j = 0; j < n; ++j)
                if (b[j] != 0) t += G[i][j] * double(b[j]);
            s += double(a[i]) * t;
        }
        return s;
    };

    // iterative LLL with on-the-fly GSO recomputation (n is tiny here)
    auto gso = [&](std::vector<double>& B2, std::vector<std::vector<double>>& Mu) {
        B2.assign(n, 0.0);
        Mu.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            B2[i] = dotG(U[i], U[i]);
            for (int j = 0; j < i; ++j) {
                double s = dotG(U[i], U[j]);
                for (int k = 0; k < j; ++k) s -= Mu[i][k] * Mu[j][k] * B2[k];
                Mu[i][j] = B2[j] > 0 ? s / B2[j] : 0.0;
            }
            for (int j = 0; j < i; ++j) B2[i] -= Mu[i][j] * Mu[i][j] * B2[j];
        }
    };

    std::vector<double> B2;
    std::vector<std::vector<double>> Mu;
    gso(B2, Mu);
    int k = 1;
    int guard = 0;
    const int guard_max = 10000;
    while (k < n && ++guard < guard_max) {
        for (int j = k - 1; j >= 0; --j) {
            double r = std::round(Mu[k][j]);
            if (r != 0.0 && std::fabs(r) < 9.0e18) {
                long long ri = static_cast<long long>(r);
                for (int t = 0; t < n; ++t) U[k][t] -= ri * U[j][t];
                gso(B2, Mu);
            }
        }
        if (B2[k] >= (delta - Mu[k][k - 1] * Mu[k][k - 1]) * B2[k - 1]) {
            ++k;
        } else {
            std::swap(U[k], U[k - 1]);
            gso(B2, Mu);
            k = std::max(k - 1, 1);
        }
    }
    return U;
}

SigmaResult sigma_branch_bound(const TargetVector& alpha, int k, const SigmaOptions& opts) {
    int n = alpha.dim();
    double R = std::pow(2.0, k);
    Rat R2 = pow2(2 * k); // exact 4^k

    // initial achieved bound: unit vectors
    Rat best;
    IntVec best_wit;
    for (int j = 0; j < n; ++j) {
        Rat v = alpha.coords[j] < 0 ? Rat(-alpha.coords[j]) : alpha.coords[j];
        if (j == 0 || v < best) {
            best = v;
            best_wit.assign(n, Int(0));
            best_wit[j] = 1;
        }
    }
    if (best == 0) return {best, best_wit};

    long long nodes_used = 0;
    bool proven = false;
    int gso_failures = 0;
    for (int round = 0; round < 64 && !proven; ++round) {
        double Bd = std::max(Interval::up(best.get_d()), 1e-300);
        double W = R / Bd * (1.0 + gso_failures * 3e-3);
        // Gram of Q_W: G = I + W^2 alpha alpha^T (double precision is fine,
        // correctness comes from the exact candidate filter + interval bounds)
        std::vector<std::vector<double>> G(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                G[i][j] = (i == j ? 1.0 : 0.0) + W * W * alpha.shadow[i] * alpha.shadow[j];
        auto U = lll_on_gram(G);

        // interval Gram of the reduced basis: Gr = U G U^T, built from exact alpha
        std::vector<Interval> ua(n); // (U alpha) entries as intervals
        std::vector<std::vector<Interval>> Gr(n, std::vector<Interval>(n, Interval(0.0)));
        Interval W2 = sqr(Interval(W));
        for (int i = 0; i < n; ++i) {
            Interval s(0.0);
            for (int j = 0; j < n; ++j)
                if (U[i][j] != 0) s = s + Interval(double(U[i][j])) * Interval::of_rat(alpha.coords[j]);
            ua[i] = s;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Interval dotu(0.0);
                for (int t = 0; t < n; ++t) dotu = dotu + Interval(double(U[i][t]) * double(U[j][t]));
                Gr[i][j] = dotu + W2 * ua[i] * ua[j];
            }

        QfEnumerator qe(Gr);
        if (!qe.ok) {
            if (++gso_failures > 8)
                throw BudgetExceeded("sigma branch-and-bound: interval GSO degenerate");
            continue;
        }
        Rat best_before = best;
        auto qf_bound = [&](double b) {
            return Interval::up(Interval::up(W * W * b * b + R * R) * (1.0 + 1e-7));
        };
        double bound = qf_bound(Bd);

        bool complete = qe.enumerate(bound, opts.node_budget - nodes_used,
            [&](std::span<const long long> c, double cur) -> double {
                // candidate i = c^T U
                std::vector<long long> iv(n, 0);
                for (int t = 0; t < n; ++t) {
                    long long s = 0;
                    for (int u = 0; u < n; ++u) s += c[u] * U[u][t];
                    iv[t] = s;
                }
                bool zero = true;
                for (int t = 0; t < n; ++t)
                    if (iv[t] != 0) { zero = false; break; }
                if (zero) return cur;
                IntVec i_cand(n);
                Rat n2r(0);
                for (int t = 0; t < n; ++t) {
                    i_cand[t] = static_cast<long>(iv[t]);
                    n2r += Rat(i_cand[t]) * Rat(i_cand[t]);
                }
                if (n2r > R2) return cur;
                Rat v = dot_abs(alpha, i_cand);
                if (v < best) {
                    best = v;
                    best_wit = i_cand;
                    if (best == 0) return 0.0;
                    return qf_bound(Interval::up(best.get_d()));
                }
                return cur;
            });
        if (!complete) throw BudgetExceeded("sigma branch-and-bound node budget exceeded");
        if (best == best_before || best == 0) proven = true; // clean pass
    }
    if (!proven)
        throw BudgetExceeded("sigma branch-and-bound: no clean pass within round limit");
    return {best, best_wit};
}

} // namespace

SigmaResult sigma(const TargetVector& alpha, int k, const SigmaOptions& opts) {
    if (k < 0) throw std::invalid_argument("sigma: k >= 0 required");
    int n = alpha.dim();
    if (opts.norm == NormKind::Sup && opts.engine == SigmaEngine::BranchAndBound)
        throw std::invalid_argument("sigma: the sup-norm toggle is exhaustive-only");
    bool exhaustive;
    switch (opts.engine) {
        case SigmaEngine::Exhaustive:
            if (!exhaustive_feasible(n, k, opts.exhaustive_budget))
                throw BudgetExceeded("sigma: exhaustive enumeration budget exceeded");
            exhaustive = true;
            break;
        case SigmaEngine::BranchAndBound: exhaustive = false; break;
        default:
            exhaustive = opts.norm == NormKind::Sup ||
                         exhaustive_feasible(n, k, opts.exhaustive_budget);
            break;
    }
    if (opts.norm == NormKind::Sup && !exhaustive_feasible(n, k, opts.exhaustive_budget))
        throw BudgetExceeded("sigma: sup-norm enumeration budget exceeded");
    if (exhaustive) {
        auto buckets = exhaustive_buckets(alpha, k, opts.norm == NormKind::Sup);
        SigmaResult out;
        bool any = false;
        for (int j = 0; j <= k; ++j) {
            if (!buckets[j].set) continue;
            if (!any || buckets[j].value < out.value) {
                out.value = buckets[j].value;
                out.witness = to_intvec(buckets[j].witness);
                any = true;
            }
        }
        if (!any) throw std::logic_error("sigma: empty ball");
        return out;
    }
    return sigma_branch_bound(alpha, k, opts);
}

std::vector<SigmaEntry> sigma_profile(const TargetVector& alpha, int K, const SigmaOptions& opts) {
    if (K < 0) throw std::invalid_argument("sigma_profile: K >= 0 required");
    int n = alpha.dim();
    std::vector<SigmaEntry> out;
    out.reserve(K + 1);

    if (opts.norm == NormKind::Sup && opts.engine == SigmaEngine::BranchAndBound)
        throw std::invalid_argument("sigma_profile: the sup-norm toggle is exhaustive-only");
    int k_exh = -1;
    if (opts.engine != SigmaEngine::BranchAndBound) {
        for (int k = 0; k <= K; ++k)
            if (exhaustive_feasible(n, k, opts.exhaustive_budget)) k_exh = k;
        if ((opts.engine == SigmaEngine::Exhaustive || opts.norm == NormKind::Sup) && k_exh < K)
            throw BudgetExceeded("sigma_profile: exhaustive budget exceeded");
    }

    if (k_exh >= 0) {
        auto buckets = exhaustive_buckets(alpha, k_exh, opts.norm == NormKind::Sup);
        Rat cur;
        IntVec wit;
        bool any = false;
        for (int k = 0; k <= k_exh; ++k) {
            if (buckets[k].set && (!any || buckets[k].value < cur)) {
                cur = buckets[k].value;
                wit = to_intvec(buckets[k].witness);
                any = true;
            }
            out.push_back({k, cur, wit});
        }
    }
    for (int k = k_exh + 1; k <= K; ++k) {
        auto r = sigma_branch_bound(alpha, k, opts);
        out.push_back({k, r.value, r.witness});
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Rat>> schmidt_embedding_exact(const TargetVector& alpha) {
    int n = alpha.dim();
    std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(n + 1, Rat(0)));
    for (int j = 0; j < n; ++j) {
        rows[j][j] = 1;
        rows[j][n] = alpha.coords[j];
    }
    return rows;
}

DiscreteSubgroup schmidt_embedding(const TargetVector& alpha) {
    int n = alpha.dim();
    std::vector<std::vector<double>> rows(n, std::vector<double>(n + 1, 0.0));
    for (int j = 0; j < n; ++j) {
        rows[j][j] = 1.0;
        rows[j][n] = alpha.shadow[j];
    }
    return DiscreteSubgroup::from_rows(std::move(rows));
}

std::vector<double> DiagonalFlow::diagonal() const {
    std::vector<double> d(n + 1, std::exp(-t));
    d[n] = std::exp(double(n) * t);
    return d;
}

std::vector<double> DiagonalFlow::apply(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != n + 1)
        throw std::invalid_argument("g_flow: vector must live in R^{n+1}");
    auto d = diagonal();
    std::vector<double> out(v.size());
    for (size_t j = 0; j < v.size(); ++j) out[j] = d[j] * v[j];
    return out;
}

DiscreteSubgroup DiagonalFlow::apply(const DiscreteSubgroup& g) const {
    if (g.ambient != n + 1)
        throw std::invalid_argument("g_flow: subgroup must live in R^{n+1}");
    auto d = diagonal();
    std::vector<std::vector<double>> rows = g.basis;
    for (auto& row : rows)
        for (size_t j = 0; j < row.size(); ++j) row[j] *= d[j];
    return DiscreteSubgroup::from_rows(std::move(rows));
}

double DiagonalFlow::det() const {
    auto d = diagonal();
    double p = 1.0;
    for (double x : d) p *= x;
    return p;
}

DiagonalFlow g_flow(double t, int n) {
    if (n < 1) throw std::invalid_argument("g_flow: n >= 1 required");
    return DiagonalFlow{t, n};
}

// ---------------------------------------------------------------------------
// delta: certified shortest vector

DeltaResult delta(const DiscreteSubgroup& g, long long node_budget) {
    int r = g.rank, m = g.ambient;
    if (r < 1) throw std::invalid_argument("delta: rank >= 1 required");

    std::vector<std::vector<double>> G(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            double s = 0.0;
            for (int t = 0; t < m; ++t) s += g.basis[i][t] * g.basis[j][t];
            G[i][j] = s;
        }
    auto U = lll_on_gram(G);

    // interval Gram of the reduced basis (rows are exact doubles)
    std::vector<std::vector<Interval>> rows(r, std::vector<Interval>(m));
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < m; ++t) {
            // exact accumulation error is below 1 ulp per op; widen generously
            Interval s(0.0);
            for (int u = 0; u < r; ++u)
                if (U[i][u] != 0) s = s + Interval(double(U[i][u])) * Interval(g.basis[u][t]);
            rows[i][t] = s;
        }
    std::vector<std::vector<Interval>> Gr(r, std::vector<Interval>(r, Interval(0.0)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Interval s(0.0);
            for (int t = 0; t < m; ++t) s = s + rows[i][t] * rows[j][t];
            Gr[i][j] = s;
        }

    double init = Gr[0][0].hi;
    for (int i = 1; i < r; ++i) init = std::min(init, Gr[i][i].hi);

    DeltaResult out;
    QfEnumerator qe(Gr);
    if (!qe.ok) {
        // distinguish a genuinely dependent basis from interval-GSO failure
        double scale = 0.0;
        for (int i = 0; i < r; ++i) scale = std::max(scale, Gr[i][i].hi);
        for (int i = 0; i < r; ++i)
            if (Gr[i][i].hi <= 1e-20 * scale)
                throw std::invalid_argument("delta: rank-deficient basis");
        // heuristic fallback: report the shortest reduced row, uncertified
        int bi = 0;
        for (int i = 1; i < r; ++i)
            if (Gr[i][i].hi < Gr[bi][bi].hi) bi = i;
        out.lo = 0.0;
        out.hi = std::sqrt(Gr[bi][bi].hi);
        out.certified = false;
        out.coeffs.assign(r, 0);
        for (int u = 0; u < r; ++u) out.coeffs[u] = U[bi][u];
        return out;
    }

    double best_hi = Interval::up(init);
    double global_lo = init; // min of q.lo over every visited candidate
    std::vector<long long> best_c;
    bool complete = qe.enumerate(best_hi, node_budget,
        [&](std::span<const long long> c, double cur) -> double {
            // |sum c_i b_i|^2 via the interval Gram
            Interval q(0.0);
            for (int i = 0; i < r; ++i) {
                if (c[i] == 0) continue;
                for (int j = 0; j < r; ++j) {
                    if (c[j] == 0) continue;
                    q = q + Interval(double(c[i]) * double(c[j])) * Gr[i][j];
                }
            }
            global_lo = std::min(global_lo, std::max(q.lo, 0.0));
            if (q.hi < best_hi) {
                best_hi = q.hi;
                best_c.assign(c.begin(), c.end());
                return best_hi;
            }
            return cur;
        });

    out.certified = complete;
    if (best_c.empty()) {
        // one of the reduced rows was already minimal
        int bi = 0;
        for (int i = 1; i < r; ++i)
            if (Gr[i][i].hi < Gr[bi][bi].hi) bi = i;
        best_c.assign(r, 0);
        best_c[bi] = 1;
        best_hi = Gr[bi][bi].hi;
        global_lo = std::min(global_lo, std::max(Gr[bi][bi].lo, 0.0));
    }
    out.lo = std::sqrt(std::max(0.0, global_lo));
    out.hi = Interval::up(std::sqrt(best_hi));
    out.coeffs.assign(r, 0);
    for (int t = 0; t < r; ++t) {
        long long s = 0;
        for (int u = 0; u < r; ++u) s += best_c[u] * U[u][t];
        out.coeffs[t] = s;
    }
    return out;
}

// ---------------------------------------------------------------------------

LemmaPair lemma_eps_t(double a, const IntVec& i, int n) {
    if (a <= 0) throw std::invalid_argument("lemma_eps_t: a > 0 required");
    Int n2 = norm2(i);
    if (n2 == 0) throw std::invalid_argument("lemma_eps_t: i != 0 required");
    double norm_i = std::sqrt(n2.get_d());
    if (a > norm_i) throw std::invalid_argument("lemma_eps_t: a <= |i| required (t would be negative)");
    LemmaPair out;
    out.t = std::log(norm_i / a) / double(n + 1);
    out.eps = std::sqrt(2.0) * std::pow(a * std::pow(norm_i, double(n)), 1.0 / double(n + 1));
    return out;
}

} // namespace arith
