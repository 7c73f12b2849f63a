#include "arith/measure.hpp"

#include "arith/errors.hpp"
#include "arith/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace arith {

// ---------------------------------------------------------------------------
// regions

Region Region::of_box(Box b) {
    Region r;
    r.kind = Kind::Box;
    r.box = std::move(b);
    return r;
}

Region Region::ball(std::vector<double> center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
    Region r;
    r.kind = Kind::Ball;
    r.center = std::move(center);
    r.radius = radius;
    return r;
}

size_t Region::dim() const { return kind == Kind::Box ? box.dim() : center.size(); }

double unit_ball_volume(int d) {
    // V_d = V_{d-2} * 2 pi / d, V_0 = 1, V_1 = 2
    double v_prev = 1.0, v = 2.0;
    if (d == 0) return 1.0;
    for (int k = 2; k <= d; ++k) {
        double next = v_prev * 2.0 * M_PI / double(k);
        v_prev = v;
        v = next;
    }
    return v;
}

double Region::volume() const {
    if (kind == Kind::Box) return box.volume();
    return unit_ball_volume(static_cast<int>(center.size())) *
           std::pow(radius, double(center.size()));
}

Box Region::bounding_box() const {
    if (kind == Kind::Box) return box;
    Box b;
    b.lo.resize(center.size());
    b.hi.resize(center.size());
    for (size_t j = 0; j < center.size(); ++j) {
        b.lo[j] = center[j] - radius;
        b.hi[j] = center[j] + radius;
    }
    return b;
}

bool Region::contains(std::span<const double> x) const {
    if (kind == Kind::Box) {
        for (size_t j = 0; j < box.dim(); ++j)
            if (x[j] < box.lo[j] || x[j] > box.hi[j]) return false;
        return true;
    }
    double s = 0.0;
    for (size_t j = 0; j < center.size(); ++j) {
        double d = x[j] - center[j];
        s += d * d;
    }
    return s <= radius * radius;
}

// ---------------------------------------------------------------------------
// internals

namespace {

// dense double-coefficient copy of a polynomial for hot loops
struct CompiledPoly {
    struct Term {
        double c;
        std::vector<unsigned> e;
    };
    int nvars = 0;
    std::vector<Term> terms;

    static CompiledPoly of(const Polynomial& p) {
        CompiledPoly out;
        out.nvars = p.nvars;
        out.terms.reserve(p.terms.size());
        for (const auto& [m, c] : p.terms) out.terms.push_back({c.get_d(), m});
        return out;
    }
    double eval(const double* x) const {
        double s = 0.0;
        for (const auto& t : terms) {
            double v = t.c;
            for (int j = 0; j < nvars; ++j)
                for (unsigned k = 0; k < t.e[j]; ++k) v *= x[j];
            s += v;
        }
        return s;
    }
};

struct CompiledMap {
    std::vector<CompiledPoly> comps;
    static CompiledMap of(const PolynomialMap& f) {
        CompiledMap out;
        for (const auto& c : f.comps) out.comps.push_back(CompiledPoly::of(c));
        return out;
    }
    void eval(const double* x, double* out) const {
        for (size_t c = 0; c < comps.size(); ++c) out[c] = comps[c].eval(x);
    }
};

// Deterministic point in the region for sample index `idx`.
void sample_point(const Region& K, uint64_t seed, uint64_t stream, long long idx, double* out) {
    size_t d = K.dim();
    Box bb = K.bounding_box();
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 1024) throw std::logic_error("ball rejection sampling failed");
        uint64_t ctr = static_cast<uint64_t>(idx) * 1024ULL + static_cast<uint64_t>(attempt);
        for (size_t j = 0; j < d; ++j) {
            double u = rng::uniform(seed, stream * 64 + j, ctr);
            out[j] = bb.lo[j] + u * (bb.hi[j] - bb.lo[j]);
        }
        if (K.contains(std::span<const double>(out, d))) return;
    }
}

// Partition [0, n) into contiguous ranges and run fn(worker, begin, end);
// results must be merged with order-independent exact reductions.
void parallel_ranges(long long n, int threads,
                     const std::function<void(int, long long, long long)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    long long chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        long long b = std::min<long long>(n, w * chunk);
        long long e = std::min<long long>(n, b + chunk);
        pool.emplace_back(fn, w, b, e);
    }
    for (auto& t : pool) t.join();
}

double mc_error95(long long hits, long long n, double scale) {
    double p = double(hits) / double(n);
    double err = 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) / double(n));
    err = std::max(err, 3.0 / double(n)); // rule-of-three floor
    return err * scale;
}

VolumeEstimate mc_sublevel(const std::function<double(const double*)>& absval, const Region& K,
                           double eps, long long budget, uint64_t seed, int threads) {
    if (budget < 1000) throw BudgetExceeded("Monte-Carlo budget below 1000 samples");
    size_t d = K.dim();
    std::vector<long long> hits(static_cast<size_t>(std::max(1, threads)), 0);
    parallel_ranges(budget, threads, [&](int w, long long b, long long e) {
        std::vector<double> x(d);
        long long h = 0;
        for (long long s = b; s < e; ++s) {
            sample_point(K, seed, 0, s, x.data());
            if (absval(x.data()) <= eps) ++h;
        }
        hits[static_cast<size_t>(w)] = h;
    });
    long long total = std::accumulate(hits.begin(), hits.end(), 0ll);
    VolumeEstimate est;
    est.method = VolumeMethod::MonteCarlo;
    est.samples = budget;
    est.seed = seed;
    est.value = double(total) / double(budget) * K.volume();
    est.error = mc_error95(total, budget, K.volume());
    return est;
}

VolumeEstimate grid_sublevel(const Polynomial& g, const Region& K, double eps, long long budget,
                             uint64_t seed) {
    if (budget < 1000) throw BudgetExceeded("grid budget below 1000 cells");
    size_t d = K.dim();
    long long per_dim = std::max<long long>(1, static_cast<long long>(std::floor(
                                                   std::pow(double(budget), 1.0 / double(d)))));
    Box bb = K.bounding_box();
    std::vector<double> step(d);
    for (size_t j = 0; j < d; ++j) step[j] = (bb.hi[j] - bb.lo[j]) / double(per_dim);

    double inside = 0.0, boundary = 0.0;
    std::vector<long long> idx(d, 0);
    std::vector<Interval> cell(d);
    bool done = false;
    while (!done) {
        double cell_vol = 1.0;
        for (size_t j = 0; j < d; ++j) {
            double lo = bb.lo[j] + step[j] * double(idx[j]);
            cell[j] = Interval(lo, lo + step[j]);
            cell_vol *= step[j];
        }
        // region membership of the cell
        int region_state = 1; // 0 outside, 1 crossing, 2 inside
        if (K.kind == Region::Kind::Ball) {
            double min2 = 0.0, max2 = 0.0;
            for (size_t j = 0; j < d; ++j) {
                double lo = cell[j].lo - K.center[j], hi = cell[j].hi - K.center[j];
                double nearest = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::fabs(lo), std::fabs(hi));
                double farthest = std::max(std::fabs(lo), std::fabs(hi));
                min2 += nearest * nearest;
                max2 += farthest * farthest;
            }
            double r2 = K.radius * K.radius;
            region_state = (min2 > r2) ? 0 : (max2 <= r2 ? 2 : 1);
        } else {
            region_state = 2;
        }
        if (region_state != 0) {
            Interval gv = g.eval(std::span<const Interval>(cell));
            if (gv.mag() <= eps && region_state == 2)
                inside += cell_vol;
            else if (gv.mig() > eps)
                ; // certainly outside the sublevel set
            else
                boundary += cell_vol;
        }
        // advance the multi-index
        done = true;
        for (size_t j = 0; j < d; ++j) {
            if (++idx[j] < per_dim) { done = false; break; }
            idx[j] = 0;
        }
    }
    VolumeEstimate est;
    est.method = VolumeMethod::Grid;
    est.samples = 1;
    for (size_t j = 0; j < d; ++j) est.samples *= per_dim;
    est.seed = seed;
    est.value = inside + 0.5 * boundary;
    est.error = 0.5 * boundary;
    return est;
}

} // namespace

VolumeEstimate sublevel_volume(const Polynomial& g, const Region& K, double eps,
                               VolumeMethod method, long long budget, uint64_t seed,
                               int threads) {
    if (eps < 0) throw std::invalid_argument("sublevel_volume: eps >= 0 required");
    if (method == VolumeMethod::Grid) return grid_sublevel(g, K, eps, budget, seed);
    CompiledPoly cp = CompiledPoly::of(g);
    return mc_sublevel([&](const double* x) { return std::fabs(cp.eval(x)); }, K, eps, budget,
                       seed, threads);
}

VolumeEstimate sublevel_volume(const std::function<double(std::span<const double>)>& g,
                               const Region& K, double eps, long long budget, uint64_t seed,
                               int threads) {
    size_t d = K.dim();
    return mc_sublevel([&](const double* x) { return std::fabs(g(std::span<const double>(x, d))); },
                       K, eps, budget, seed, threads);
}

SupBracket sup_norm(const Polynomial& g, const Region& K, long long budget) {
    struct Node {
        Box b;
        double hi;
    };
    auto mag_over = [&](const Box& b) {
        auto ivs = b.intervals();
        return g.eval(std::span<const Interval>(ivs)).mag();
    };
    auto sample_mid = [&](const Box& b) {
        std::vector<double> mid(b.dim());
        for (size_t j = 0; j < b.dim(); ++j) mid[j] = 0.5 * (b.lo[j] + b.hi[j]);
        if (!K.contains(std::span<const double>(mid))) return 0.0;
        return std::fabs(g.eval(std::span<const double>(mid)));
    };
    auto outside_region = [&](const Box& b) {
        if (K.kind == Region::Kind::Box) return false;
        double min2 = 0.0;
        for (size_t j = 0; j < b.dim(); ++j) {
            double lo = b.lo[j] - K.center[j], hi = b.hi[j] - K.center[j];
            double nearest = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::fabs(lo), std::fabs(hi));
            min2 += nearest * nearest;
        }
        return min2 > K.radius * K.radius;
    };

    Box root = K.bounding_box();
    std::vector<Node> active{{root, mag_over(root)}};
    double achieved = sample_mid(root);
    long long processed = 0;
    while (processed < budget) {
        size_t worst = 0;
        for (size_t i = 1; i < active.size(); ++i)
            if (active[i].hi > active[worst].hi) worst = i;
        if (active[worst].hi <= achieved * (1.0 + 1e-9) || active[worst].hi == 0.0) break;
        Box b = active[worst].b;
        active.erase(active.begin() + static_cast<long>(worst));
        size_t axis = 0;
        b.widest_side(axis);
        Box left = b, right = b;
        left.hi[axis] = right.lo[axis] = 0.5 * (b.lo[axis] + b.hi[axis]);
        for (const Box& nb : {left, right}) {
            if (outside_region(nb)) continue;
            active.push_back({nb, mag_over(nb)});
            achieved = std::max(achieved, sample_mid(nb));
        }
        processed += 2;
    }
    SupBracket out;
    out.lo = achieved;
    out.hi = 0.0;
    for (const auto& nd : active) out.hi = std::max(out.hi, nd.hi);
    out.hi = std::max(out.hi, out.lo);
    return out;
}

std::vector<BoundReport> ctau_check(const Polynomial& g, const Region& K, double C, double tau,
                                    std::span<const double> eps_grid, VolumeMethod method,
                                    long long budget, uint64_t seed, int threads) {
    SupBracket sup = sup_norm(g, K);
    std::vector<BoundReport> out;
    for (size_t j = 0; j < eps_grid.size(); ++j) {
        double eps = eps_grid[j];
        BoundReport rep;
        rep.id = "ctau_eps_" + std::to_string(j);
        VolumeEstimate lhs = sublevel_volume(g, K, eps, method, budget, seed + j, threads);
        // the certified upper bracket of ||g|| makes the right side smaller,
        // so a Satisfied verdict is sound
        double rhs = C * std::pow(eps / sup.hi, tau) * K.volume();
        rep.lhs = lhs.value;
        rep.lhs_err = lhs.error;
        rep.rhs = rhs;
        rep.margin = rhs - lhs.value;
        rep.status = (lhs.value - lhs.error <= rhs) ? BoundReport::Status::Satisfied
                                                    : BoundReport::Status::Violated;
        out.push_back(rep);
    }
    return out;
}

VolumeEstimate band_preimage_volume(const PolynomialMap& f, const Band& band, double r,
                                    VolumeMethod method, long long budget, uint64_t seed,
                                    int threads) {
    if (r <= 0) throw std::invalid_argument("band_preimage_volume: r > 0 required");
    if (static_cast<int>(band.i.size()) != f.codomain_dim)
        throw std::invalid_argument("band_preimage_volume: band/map dimension mismatch");
    // g(x) = (f(x), i), exact rational coefficients
    Polynomial g = Polynomial::zero(f.domain_dim);
    for (int c = 0; c < f.codomain_dim; ++c) g = g + Rat(band.i[c]) * f.comps[c];
    Region ball = Region::ball(std::vector<double>(f.domain_dim, 0.0), r);
    double w = band.halfwidth.get_d();
    if (w <= 0.0) {
        VolumeEstimate z;
        z.method = method;
        z.samples = 0;
        z.seed = seed;
        return z; // strict inequality with zero halfwidth: measure zero
    }
    return sublevel_volume(g, ball, w, method, budget, seed, threads);
}

// ---------------------------------------------------------------------------
// density curve

namespace {

struct RetainedBand {
    std::vector<double> coords;
    double threshold; // a'_k
};

} // namespace

DensityCurve density_curve(const PolynomialMap& f, const DecreasingSequence& a,
                           const DensityParams& params) {
    const int n = params.n, d = params.d, l = params.l;
    if (f.codomain_dim != n || f.domain_dim != d)
        throw std::invalid_argument("density_curve: map dimensions disagree with params");
    for (size_t j = 1; j < params.radii.size(); ++j)
        if (!(params.radii[j] < params.radii[j - 1]))
            throw std::invalid_argument("density_curve: radii must be strictly decreasing");

    DensityCurve out;

    auto alpha_exact = f.value_at_origin();
    TargetVector alpha = TargetVector::of(alpha_exact);
    out.precondition = membership(alpha, a, params.K_cutoff, params.sigma);
    if (!out.precondition.in_class()) return out;

    std::vector<Rat> origin(d, Rat(0));
    auto curv = curvature_check(f, origin, l);
    if (!curv.is_curved)
        throw std::invalid_argument("density_curve: map is not l-curved at the origin");

    auto aprime = derived_sequence(a, n, d, l);
    auto rho = rho_sequence(a, n, d, l);

    // Dyadic block of a vector: smallest k with |i| <= 2^k. This matches the
    // ball structure of the sigma profile, so "sample excluded" agrees
    // exactly with membership(f(x), a', K) being Violated. (It differs from
    // exp_index only when |i| is an exact power of two, where it is the
    // conservative choice.)
    auto block_of = [](long long n2) {
        int k = 0;
        long long p = 1;
        while (p < n2) { p <<= 2; ++k; }
        return k;
    };

    // per-block thresholds a'_k as doubles (slightly inflated, conservative)
    const int K = params.K_cutoff;
    std::vector<double> thr(static_cast<size_t>(K) + 1, 0.0);
    for (int k = 0; k <= K; ++k)
        thr[static_cast<size_t>(k)] = Interval::up(Interval::up(aprime.at(k).get_d()));

    CompiledMap cf = CompiledMap::of(f);
    std::vector<double> alpha_d = alpha.shadow;

    double tail = params.tail_constant * std::pow(2.0, 1.0 / double(d)) *
                  std::pow(2.0, double(n + 1 - K));

    for (size_t ri = 0; ri < params.radii.size(); ++ri) {
        double r = params.radii[ri];
        double kappa = lipschitz_bound(f, r);
        double kr = kappa * r;

        // admitted blocks: a_k/2^{k+1} < kappa r and (1-rho_k) a_k/2^k < kappa r
        Rat krr(kr);
        std::vector<char> admitted(static_cast<size_t>(K) + 1, 0);
        for (int k = 0; k <= K; ++k) {
            if (!(a.at(k) < krr * pow2(k + 1))) continue;
            if (!((1 - rho.seq.at(k)) * a.at(k) < krr * pow2(k))) continue;
            admitted[static_cast<size_t>(k)] = 1;
        }

        // A block is resolvable only if its threshold exceeds the rounding
        // noise of the double-precision dot products the sampler computes.
        // Bands below that cannot be measured by sampling at all; their true
        // measure is transversal slivers many orders below the rule-of-three
        // error floor reported with the estimate.
        double beta_mag = 1.0;
        for (double c : alpha_d) beta_mag = std::max(beta_mag, std::fabs(c));
        beta_mag += kr;
        std::vector<char> scanned(static_cast<size_t>(K) + 1, 0);
        int Kp = -1;
        for (int k = 0; k <= K; ++k) {
            double res = 64.0 * std::numeric_limits<double>::epsilon() * beta_mag *
                         std::pow(2.0, double(k)) * double(n);
            if (admitted[static_cast<size_t>(k)] && thr[static_cast<size_t>(k)] >= res) {
                scanned[static_cast<size_t>(k)] = 1;
                Kp = k;
            }
        }

        // retain bands whose preimage can meet B(0,r): |(alpha,i)| < a'_k + kr |i|
        auto scan_bands = [&](bool scanned_only,
                              const std::function<void(std::span<const long long>, int)>& keep) {
            for (int k = 0; k <= K; ++k) {
                if (!admitted[static_cast<size_t>(k)]) continue;
                if (scanned_only && !scanned[static_cast<size_t>(k)]) continue;
                long long hi2 = 1ll << (2 * k); // 4^k
                long long lo2 = k == 0 ? 0 : (hi2 >> 2);
                enumerate_ball(n, std::pow(2.0, k), [&](std::span<const long long> v) {
                    long long n2 = 0;
                    for (long long c : v) n2 += c * c;
                    if (n2 <= lo2 || n2 > hi2) return; // block k: 4^{k-1} < n2 <= 4^k
                    double dotv = 0.0;
                    for (int c = 0; c < n; ++c)
                        dotv += alpha_d[static_cast<size_t>(c)] * double(v[c]);
                    double norm = std::sqrt(double(n2));
                    double margin = 1e-7 * (1.0 + norm);
                    if (std::fabs(dotv) >= thr[static_cast<size_t>(k)] + kr * norm + margin) return;
                    keep(v, k);
                });
            }
        };
        long long considered = 0, in_scan = 0;
        scan_bands(false, [&](std::span<const long long>, int k) {
            ++considered;
            if (scanned[static_cast<size_t>(k)]) ++in_scan;
        });

        // per-sample strategy: loop the retained list, or (n == 2) scan the
        // slab along the pivot coordinate when the list is large
        long long Rk = Kp >= 0 ? (1ll << Kp) : 0;
        bool pivot_scan = (n == 2) && in_scan > 2 * Rk;
        std::vector<RetainedBand> retained;
        if (!pivot_scan && in_scan > 0) {
            if (in_scan > 5'000'000)
                throw BudgetExceeded("density_curve: candidate band set too large");
            retained.reserve(static_cast<size_t>(in_scan));
            scan_bands(true, [&](std::span<const long long> v, int k) {
                RetainedBand b;
                b.coords.assign(v.begin(), v.end());
                b.threshold = thr[static_cast<size_t>(k)];
                retained.push_back(std::move(b));
            });
        }

        const long long N = params.samples;
        int workers = std::max(1, params.threads);
        std::vector<long long> mult_sum(static_cast<size_t>(workers), 0);
        std::vector<long long> mult_sq(static_cast<size_t>(workers), 0);
        if (in_scan > 0) parallel_ranges(N, workers, [&](int w, long long b, long long e) {
            std::vector<double> x(static_cast<size_t>(d));
            std::vector<double> beta(static_cast<size_t>(n));
            Region ball = Region::ball(std::vector<double>(static_cast<size_t>(d), 0.0), r);
            long long s_mult = 0, s_sq = 0;
            for (long long s = b; s < e; ++s) {
                sample_point(ball, params.seed, 1 + ri, s, x.data());
                cf.eval(x.data(), beta.data());
                long long mult = 0;
                if (!pivot_scan) {
                    for (const auto& band : retained) {
                        double dotv = 0.0;
                        for (int c = 0; c < n; ++c)
                            dotv += beta[static_cast<size_t>(c)] * band.coords[static_cast<size_t>(c)];
                        if (std::fabs(dotv) < band.threshold) ++mult;
                    }
                } else {
                    // hits require |beta_p i_p + beta_o i_o| < thr[block(i)];
                    // over each value of the non-pivot coordinate the pivot
                    // coordinate is pinned to the nearest integers.
                    int p = std::fabs(beta[0]) >= std::fabs(beta[1]) ? 0 : 1;
                    int o = 1 - p;
                    double bp = beta[static_cast<size_t>(p)], bo = beta[static_cast<size_t>(o)];
                    double wmax = 0.0;
                    for (int k = 0; k <= K; ++k)
                        if (scanned[static_cast<size_t>(k)]) { wmax = thr[static_cast<size_t>(k)]; break; }
                    if (std::fabs(bp) < 1e-9) {
                        // degenerate direction: brute-force the scanned blocks
                        for (long long i0 = 0; i0 <= Rk; ++i0) {
                            for (long long i1 = (i0 == 0 ? 1 : -Rk); i1 <= Rk; ++i1) {
                                long long n2 = i0 * i0 + i1 * i1;
                                if (n2 == 0 || n2 > Rk * Rk) continue;
                                int k = block_of(n2);
                                if (!scanned[static_cast<size_t>(k)]) continue;
                                double dotv = beta[0] * double(i0) + beta[1] * double(i1);
                                if (std::fabs(dotv) < thr[static_cast<size_t>(k)]) ++mult;
                            }
                        }
                    } else {
                        for (long long io = -Rk; io <= Rk; ++io) {
                            double center = -bo * double(io) / bp;
                            double spread = (wmax / std::fabs(bp)) + 1e-12;
                            long long from = static_cast<long long>(std::floor(center - spread));
                            long long to = static_cast<long long>(std::ceil(center + spread));
                            for (long long ip = from; ip <= to; ++ip) {
                                long long i0 = (p == 0) ? ip : io;
                                long long i1 = (p == 0) ? io : ip;
                                if (i0 == 0 && i1 == 0) continue;
                                // canonical representative only
                                if (i0 < 0 || (i0 == 0 && i1 < 0)) continue;
                                long long n2 = i0 * i0 + i1 * i1;
                                if (n2 > Rk * Rk) continue;
                                int k = block_of(n2); // <= Kp since n2 <= 4^Kp
                                if (!scanned[static_cast<size_t>(k)]) continue;
                                double dotv = bp * double(ip) + bo * double(io);
                                if (std::fabs(dotv) < thr[static_cast<size_t>(k)]) ++mult;
                            }
                        }
                    }
                }
                s_mult += mult;
                s_sq += mult * mult;
            }
            mult_sum[static_cast<size_t>(w)] = s_mult;
            mult_sq[static_cast<size_t>(w)] = s_sq;
        });

        long long total = std::accumulate(mult_sum.begin(), mult_sum.end(), 0ll);
        long long total_sq = std::accumulate(mult_sq.begin(), mult_sq.end(), 0ll);
        double mean = double(total) / double(N);
        double var = std::max(0.0, double(total_sq) / double(N) - mean * mean);
        double err = 1.96 * std::sqrt(var / double(N));
        err = std::max(err, 3.0 / double(N));

        DensityPoint pt;
        pt.r = r;
        pt.density_lb = std::max(0.0, 1.0 - mean);
        pt.err = err;
        pt.bands_considered = considered;
        pt.truncation_tail = tail;
        out.points.push_back(pt);
    }
    return out;
}

// ---------------------------------------------------------------------------

BoundReport km_bound_check(const PolynomialMap& f, const IntVec& i, double a, double r,
                           double fitted_C, double A, VolumeMethod method, long long budget,
                           uint64_t seed, int threads) {
    const int n = f.codomain_dim, d = f.domain_dim, l = f.curvature_order;
    BoundReport rep;
    rep.id = "km_bound";
    Int n2 = norm2(i);
    double norm_i = std::sqrt(n2.get_d());
    // side conditions: (a |i|^n)^{1/(n+1)} <= A r^l and a <= |i|
    double lhs_side = std::pow(a * std::pow(norm_i, double(n)), 1.0 / double(n + 1));
    if (!(lhs_side <= A * std::pow(r, double(l))) || !(a <= norm_i)) {
        rep.status = BoundReport::Status::Skipped;
        return rep;
    }
    Band band;
    band.i = i;
    band.k = exp_index(i);
    band.halfwidth = Rat(a);
    band.dist_halfwidth = a / norm_i;
    VolumeEstimate lhs = band_preimage_volume(f, band, r, method, budget, seed, threads);
    double ball_vol = unit_ball_volume(d) * std::pow(r, double(d));
    double rhs = fitted_C * std::pow(a * std::pow(norm_i, double(n)), 1.0 / double(d * l * (n + 1))) *
                 std::pow(r, -1.0 / double(d)) * ball_vol;
    rep.lhs = lhs.value;
    rep.lhs_err = lhs.error;
    rep.rhs = rhs;
    rep.margin = rhs - lhs.value;
    rep.status = (lhs.value - lhs.error <= rhs) ? BoundReport::Status::Satisfied
                                                : BoundReport::Status::Violated;
    return rep;
}

double ht_subgroup_norm(const PolynomialMap& f, std::span<const double> x, double t,
                        const DiscreteSubgroup& gamma) {
    auto fx = f.eval(x);
    return ht_subgroup_norm_value(fx, t, gamma);
}

GrowthFit growth_exponent_fit(const PolynomialMap& f, const DiscreteSubgroup& gamma, double t,
                              std::span<const double> radii, long long budget, uint64_t seed) {
    if (radii.size() < 3) throw std::invalid_argument("growth_exponent_fit: need >= 3 radii");
    const int d = f.domain_dim;
    long long per_radius = std::max<long long>(64, budget / static_cast<long long>(radii.size()));
    std::vector<double> xs, ys;
    CompiledMap cf = CompiledMap::of(f);
    std::vector<double> x(static_cast<size_t>(d));
    std::vector<double> fx(static_cast<size_t>(f.codomain_dim));
    for (size_t ri = 0; ri < radii.size(); ++ri) {
        double r = radii[ri];
        Region ball = Region::ball(std::vector<double>(static_cast<size_t>(d), 0.0), r);
        double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
        for (long long s = 0; s < per_radius; ++s) {
            sample_point(ball, seed, 100 + ri, s, x.data());
            cf.eval(x.data(), fx.data());
            double v = ht_subgroup_norm_value(fx, t, gamma);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
        double osc = vmax - vmin;
        if (osc > 0.0) {
            xs.push_back(std::log(r));
            ys.push_back(std::log(osc));
        }
    }
    if (xs.size() < 3) throw std::invalid_argument("growth_exponent_fit: degenerate fit");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t j = 0; j < xs.size(); ++j) {
        sx += xs[j];
        sy += ys[j];
        sxx += xs[j] * xs[j];
        sxy += xs[j] * ys[j];
    }
    double nn = double(xs.size());
    double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    double intercept = (sy - slope * sx) / nn;
    GrowthFit out;
    out.l_fit = slope;
    out.A_fit = std::exp(intercept);
    return out;
}

} // namespace arith
