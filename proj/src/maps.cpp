#include "arith/maps.hpp"

#include "arith/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace arith {

namespace {

// Exact rank via Gaussian elimination over Q; rows are modified in place.
int rat_rank(std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    int rank = 0;
    size_t rr = 0;
    for (size_t c = 0; c < cols && rr < rows.size(); ++c) {
        size_t piv = rr;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rr]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rr || rows[i][c] == 0) continue;
            Rat f = rows[i][c] / rows[rr][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rr][j];
        }
        ++rank;
        ++rr;
    }
    return rank;
}

// Does `v` lie in the row space of the (already echelonized) rows?
bool in_row_space(std::vector<std::vector<Rat>> rows, const std::vector<Rat>& v) {
    int r0 = rat_rank(rows);
    rows.push_back(v);
    return rat_rank(rows) == r0;
}

} // namespace

CurvatureResult curvature_check(const PolynomialMap& f, std::span<const Rat> x, int l) {
    if (l < 1) throw std::invalid_argument("curvature_check: l >= 1 required");
    int d = f.domain_dim, n = f.codomain_dim;
    if (static_cast<int>(x.size()) != d) throw std::invalid_argument("curvature_check: point arity");

    CurvatureResult out;
    std::vector<std::vector<Rat>> span_rows;
    for (const auto& j : multi_indices_up_to(d, l)) {
        std::vector<Rat> row(n);
        for (int c = 0; c < n; ++c) row[c] = f.comps[c].derivative(j).eval(x);
        span_rows.push_back(std::move(row));
    }
    auto ech = span_rows;
    out.rank_derivatives = rat_rank(ech);
    // keep the first rank_derivatives echelon rows as the basis of V
    for (const auto& row : ech) {
        bool nonzero = false;
        for (const auto& c : row)
            if (c != 0) { nonzero = true; break; }
        if (nonzero) out.V_basis.push_back(row);
    }

    {
        auto aug = span_rows;
        std::vector<Rat> fx(n);
        for (int c = 0; c < n; ++c) fx[c] = f.comps[c].eval(x);
        aug.push_back(fx);
        out.rank_with_value = rat_rank(aug);
    }

    // coefficient vectors of y -> f(y) - f(x): every monomial coefficient of
    // f, with the constant replaced by f(0-term) - f(x) ... assembled per
    // monomial across components.
    std::map<Monomial, std::vector<Rat>> coeffs;
    for (int c = 0; c < n; ++c)
        for (const auto& [m, q] : f.comps[c].terms) {
            auto it = coeffs.find(m);
            if (it == coeffs.end()) it = coeffs.emplace(m, std::vector<Rat>(n, Rat(0))).first;
            it->second[c] = q;
        }
    Monomial constant(d, 0u);
    {
        auto it = coeffs.find(constant);
        if (it == coeffs.end()) it = coeffs.emplace(constant, std::vector<Rat>(n, Rat(0))).first;
        for (int c = 0; c < n; ++c) it->second[c] -= f.comps[c].eval(x);
    }

    out.is_curved = true;
    for (const auto& [m, vec] : coeffs) {
        bool zero = true;
        for (const auto& q : vec)
            if (q != 0) { zero = false; break; }
        if (zero) continue;
        if (!in_row_space(out.V_basis, vec)) {
            out.is_curved = false;
            break;
        }
    }
    return out;
}

namespace {

struct MinCert {
    double lower = 0.0;
    bool ok = false;
    bool sign_change = false;
};

// Certify inf |p| > 0 over K by subdivision; upper bounds from midpoints.
MinCert certify_min_abs(const Polynomial& p, const Box& K, const BoundOptions& opts) {
    MinCert out;
    std::deque<Box> queue{K};
    double upper = std::numeric_limits<double>::infinity(); // achieved |p(midpoint)|
    double sign_seen = 0.0;
    long long processed = 0;
    std::vector<Box> leaves;

    auto midpoint_value = [&](const Box& b) {
        std::vector<double> mid(b.dim());
        for (size_t j = 0; j < b.dim(); ++j) mid[j] = 0.5 * (b.lo[j] + b.hi[j]);
        return p.eval(std::span<const double>(mid));
    };

    while (!queue.empty()) {
        if (++processed > opts.max_boxes)
            throw CertificationError(CertificationError::Kind::ToleranceTooCoarse,
                                     "derivative bound: subdivision budget exhausted");
        Box b = queue.front();
        queue.pop_front();
        double mv = midpoint_value(b);
        if (mv == 0.0) {
            throw CertificationError(CertificationError::Kind::HypothesisFails,
                                     "derivative vanishes inside the region");
        }
        if (sign_seen == 0.0)
            sign_seen = mv > 0 ? 1.0 : -1.0;
        else if ((mv > 0 ? 1.0 : -1.0) != sign_seen)
            throw CertificationError(CertificationError::Kind::HypothesisFails,
                                     "derivative changes sign inside the region");
        upper = std::min(upper, std::fabs(mv));

        auto ivs = b.intervals();
        Interval range = p.eval(std::span<const Interval>(ivs));
        double lo_abs = range.mig();
        if (lo_abs >= upper * (1.0 - opts.tol) && lo_abs > 0.0) {
            leaves.push_back(b); // tight enough
            continue;
        }
        size_t axis = 0;
        double w = b.widest_side(axis);
        if (range.contains_zero() && w < opts.tol * 1e-3) {
            throw CertificationError(CertificationError::Kind::ToleranceTooCoarse,
                                     "derivative bound: interval straddles zero at minimal width");
        }
        Box left = b, right = b;
        left.hi[axis] = right.lo[axis] = 0.5 * (b.lo[axis] + b.hi[axis]);
        queue.push_back(left);
        queue.push_back(right);
    }
    double lower = std::numeric_limits<double>::infinity();
    for (const auto& b : leaves) {
        auto ivs = b.intervals();
        lower = std::min(lower, p.eval(std::span<const Interval>(ivs)).mig());
    }
    out.lower = lower;
    out.ok = lower > 0.0;
    return out;
}

// Certified sup |p| over K, refined by subdivision down to tol.
double certified_sup_abs(const Polynomial& p, const Box& K, const BoundOptions& opts) {
    struct Node {
        Box b;
        double hi;
    };
    auto range_of = [&](const Box& b) {
        auto ivs = b.intervals();
        return p.eval(std::span<const Interval>(ivs)).mag();
    };
    auto sample = [&](const Box& b) {
        std::vector<double> mid(b.dim());
        for (size_t j = 0; j < b.dim(); ++j) mid[j] = 0.5 * (b.lo[j] + b.hi[j]);
        return std::fabs(p.eval(std::span<const double>(mid)));
    };
    std::vector<Node> active{{K, range_of(K)}};
    double achieved = sample(K);
    long long processed = 0;
    while (processed < opts.max_boxes) {
        // find the box with the largest upper bound
        size_t worst = 0;
        for (size_t i = 1; i < active.size(); ++i)
            if (active[i].hi > active[worst].hi) worst = i;
        double global_hi = active[worst].hi;
        if (global_hi <= achieved * (1.0 + opts.tol) || global_hi == 0.0) break;
        Box b = active[worst].b;
        active.erase(active.begin() + static_cast<long>(worst));
        size_t axis = 0;
        b.widest_side(axis);
        Box left = b, right = b;
        left.hi[axis] = right.lo[axis] = 0.5 * (b.lo[axis] + b.hi[axis]);
        for (const Box& nb : {left, right}) {
            active.push_back({nb, range_of(nb)});
            achieved = std::max(achieved, sample(nb));
        }
        processed += 2;
    }
    double hi = 0.0;
    for (const auto& nd : active) hi = std::max(hi, nd.hi);
    return hi;
}

} // namespace

DerivativeBounds derivative_bounds(const Polynomial& f, const Box& K, int l,
                                   const BoundOptions& opts) {
    if (l < 1) throw std::invalid_argument("derivative_bounds: l >= 1 required");
    int d = f.nvars;
    if (static_cast<int>(K.dim()) != d) throw std::invalid_argument("derivative_bounds: box arity");

    DerivativeBounds out;
    out.region = K;

    double m = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < d; ++axis) {
        Monomial pure(d, 0u);
        pure[axis] = static_cast<unsigned>(l);
        Polynomial p = f.derivative(pure);
        if (p.is_zero())
            throw CertificationError(CertificationError::Kind::HypothesisFails,
                                     "pure l-th derivative is identically zero");
        auto cert = certify_min_abs(p, K, opts);
        m = std::min(m, cert.lower);
    }

    double M = 0.0;
    {
        // |beta| <= l includes beta = 0
        Monomial zero(d, 0u);
        M = std::max(M, certified_sup_abs(f, K, opts));
        for (const auto& j : multi_indices_up_to(d, l)) {
            Polynomial p = f.derivative(j);
            if (p.is_zero()) continue;
            M = std::max(M, certified_sup_abs(p, K, opts));
        }
    }
    out.m = m;
    out.M = M;
    if (!(out.m > 0.0) || out.m > out.M)
        throw CertificationError(CertificationError::Kind::ToleranceTooCoarse,
                                 "derivative_bounds: inconsistent certified bounds");
    return out;
}

DerivativeBounds derivative_bounds(const PolynomialMap& f, const Box& K, int l,
                                   const BoundOptions& opts) {
    if (f.codomain_dim != 1)
        throw std::invalid_argument("derivative_bounds: scalar maps only (n == 1)");
    return derivative_bounds(f.comps[0], K, l, opts);
}

double km_constant(int d, int l, double m, double M) {
    if (m <= 0.0) throw std::invalid_argument("km_constant: m > 0 required");
    double inner = (M / m) * double(l + 1) * (2.0 * std::pow(double(l), double(l)) + 1.0);
    return double(d) * double(l) * double(l + 1) * std::pow(inner, 1.0 / double(l));
}

double lipschitz_bound(const PolynomialMap& f, double r) {
    if (r <= 0.0) throw std::invalid_argument("lipschitz_bound: r > 0 required");
    int d = f.domain_dim, n = f.codomain_dim;
    Box cube = Box::cube(static_cast<size_t>(d), -r, r);
    auto ivs = cube.intervals();
    // sup |J_{ci}| over the cube, per entry
    std::vector<std::vector<double>> J(n, std::vector<double>(d, 0.0));
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < d; ++i)
            J[c][i] = f.comps[c].derivative(i).eval(std::span<const Interval>(ivs)).mag();
    // two classical operator-norm upper bounds; take the smaller
    double frob2 = 0.0;
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < d; ++i) frob2 += J[c][i] * J[c][i];
    double norm1 = 0.0; // max column abs sum
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += J[c][i];
        norm1 = std::max(norm1, s);
    }
    double norminf = 0.0; // max row abs sum
    for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += J[c][i];
        norminf = std::max(norminf, s);
    }
    double schur = std::sqrt(norm1 * norminf);
    double bound = std::min(std::sqrt(frob2), schur);
    return bound == 0.0 ? 0.0 : Interval::up(bound);
}

} // namespace arith
