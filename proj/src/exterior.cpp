#include "arith/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arith {

PolyVector PolyVector::scalar(int m, double v) {
    PolyVector p;
    p.ambient = m;
    p.degree = 0;
    if (v != 0.0) p.coeff[{}] = v;
    return p;
}

PolyVector PolyVector::basis(int m, std::vector<int> tuple) {
    PolyVector p;
    p.ambient = m;
    p.degree = static_cast<int>(tuple.size());
    for (size_t j = 0; j < tuple.size(); ++j) {
        if (tuple[j] < 1 || tuple[j] > m) throw std::invalid_argument("basis index out of range");
        if (j + 1 < tuple.size() && tuple[j] >= tuple[j + 1])
            throw std::invalid_argument("basis tuple not strictly increasing");
    }
    p.coeff[std::move(tuple)] = 1.0;
    return p;
}

PolyVector PolyVector::from_coords(int m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m) throw std::invalid_argument("coordinate count != ambient");
    PolyVector p;
    p.ambient = m;
    p.degree = 1;
    for (int j = 0; j < m; ++j)
        if (x[j] != 0.0) p.coeff[{j + 1}] = x[j];
    return p;
}

PolyVector& PolyVector::add_term(std::vector<int> tuple, double c) {
    if (static_cast<int>(tuple.size()) != degree) throw std::invalid_argument("tuple length != degree");
    coeff[std::move(tuple)] += c;
    return *this;
}

double PolyVector::at(const std::vector<int>& tuple) const {
    auto it = coeff.find(tuple);
    return it == coeff.end() ? 0.0 : it->second;
}

void PolyVector::prune(double tol) {
    for (auto it = coeff.begin(); it != coeff.end();)
        it = std::fabs(it->second) <= tol ? coeff.erase(it) : std::next(it);
}

PolyVector PolyVector::canonical_sign() const {
    for (const auto& [t, c] : coeff) {
        if (c == 0.0) continue;
        if (c < 0.0) return -1.0 * (*this);
        break;
    }
    return *this;
}

PolyVector operator+(const PolyVector& a, const PolyVector& b) {
    if (a.ambient != b.ambient || a.degree != b.degree)
        throw std::invalid_argument("PolyVector addition shape mismatch");
    PolyVector out = a;
    for (const auto& [t, c] : b.coeff) out.coeff[t] += c;
    return out;
}

PolyVector operator*(double s, const PolyVector& a) {
    PolyVector out = a;
    for (auto& [t, c] : out.coeff) c *= s;
    return out;
}

namespace {

// Merge two strictly increasing tuples; returns false if they share an
// index. `sign` picks up (-1)^{number of transpositions}.
bool merge_tuples(const std::vector<int>& a, const std::vector<int>& b,
                  std::vector<int>& out, int& sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int swaps = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining a-entries
            swaps += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    sign = (swaps % 2 == 0) ? 1 : -1;
    return true;
}

// Sign of the permutation (tuple, complement-of-tuple appended) ... rather:
// sign of the permutation taking (comp, tuple) to (1..m). Used by the Hodge
// star so that (*e_S) ^ e_S = e_1 ^ ... ^ e_m.
int star_sign(const std::vector<int>& tuple, const std::vector<int>& comp) {
    std::vector<int> perm = comp;
    perm.insert(perm.end(), tuple.begin(), tuple.end());
    int inversions = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

} // namespace

PolyVector wedge(const PolyVector& u, const PolyVector& v) {
    if (u.ambient != v.ambient) throw std::invalid_argument("wedge: ambient dimension mismatch");
    if (u.degree + v.degree > u.ambient) throw std::invalid_argument("wedge: degree overflow");
    PolyVector out;
    out.ambient = u.ambient;
    out.degree = u.degree + v.degree;
    std::vector<int> merged;
    for (const auto& [ta, ca] : u.coeff) {
        for (const auto& [tb, cb] : v.coeff) {
            int sign = 1;
            if (!merge_tuples(ta, tb, merged, sign)) continue;
            out.coeff[merged] += sign * ca * cb;
        }
    }
    out.prune();
    return out;
}

PolyVector hodge_star(const PolyVector& u) {
    PolyVector out;
    out.ambient = u.ambient;
    out.degree = u.ambient - u.degree;
    for (const auto& [t, c] : u.coeff) {
        std::vector<int> comp;
        comp.reserve(out.degree);
        size_t p = 0;
        for (int j = 1; j <= u.ambient; ++j) {
            if (p < t.size() && t[p] == j) { ++p; continue; }
            comp.push_back(j);
        }
        out.coeff[comp] += star_sign(t, comp) * c;
    }
    out.prune();
    return out;
}

double inner(const PolyVector& u, const PolyVector& v) {
    if (u.ambient != v.ambient || u.degree != v.degree)
        throw std::invalid_argument("inner: shape mismatch");
    double s = 0.0;
    for (const auto& [t, c] : u.coeff) {
        auto it = v.coeff.find(t);
        if (it != v.coeff.end()) s += c * it->second;
    }
    return s;
}

double pv_norm(const PolyVector& u) { return std::sqrt(inner(u, u)); }

DiscreteSubgroup DiscreteSubgroup::from_rows(std::vector<std::vector<double>> rows) {
    DiscreteSubgroup g;
    g.rank = static_cast<int>(rows.size());
    g.ambient = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != g.ambient)
            throw std::invalid_argument("ragged basis rows");
    if (g.rank > g.ambient) throw std::invalid_argument("rank exceeds ambient dimension");
    g.basis = std::move(rows);
    return g;
}

namespace {

double gram_det(const DiscreteSubgroup& g) {
    int r = g.rank;
    std::vector<std::vector<double>> G(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            double s = 0.0;
            for (int t = 0; t < g.ambient; ++t) s += g.basis[i][t] * g.basis[j][t];
            G[i][j] = G[j][i] = s;
        }
    // LU with partial pivoting
    double det = 1.0;
    for (int c = 0; c < r; ++c) {
        int piv = c;
        for (int i = c + 1; i < r; ++i)
            if (std::fabs(G[i][c]) > std::fabs(G[piv][c])) piv = i;
        if (G[piv][c] == 0.0) return 0.0;
        if (piv != c) { std::swap(G[piv], G[c]); det = -det; }
        det *= G[c][c];
        for (int i = c + 1; i < r; ++i) {
            double f = G[i][c] / G[c][c];
            for (int j = c; j < r; ++j) G[i][j] -= f * G[c][j];
        }
    }
    return det;
}

} // namespace

PolyVector basis_wedge(const DiscreteSubgroup& g) {
    PolyVector w = PolyVector::scalar(g.ambient, 1.0);
    for (const auto& row : g.basis)
        w = wedge(w, PolyVector::from_coords(g.ambient, row));
    return w.canonical_sign();
}

double subgroup_norm_wedge(const DiscreteSubgroup& g) {
    return pv_norm(basis_wedge(g));
}

double subgroup_norm(const DiscreteSubgroup& g) {
    if (g.rank == 0) return 1.0;
    if (g.rank * g.ambient <= 12) {
        double w = subgroup_norm_wedge(g);
        if (w == 0.0) throw std::invalid_argument("subgroup_norm: rank-deficient basis");
        return w;
    }
    double d = gram_det(g);
    if (d <= 0.0) throw std::invalid_argument("subgroup_norm: rank-deficient basis");
    return std::sqrt(d);
}

double ht_subgroup_norm_value(std::span<const double> fx, double t, const DiscreteSubgroup& g) {
    int n = g.ambient;
    int r = g.rank;
    if (static_cast<int>(fx.size()) != n)
        throw std::invalid_argument("ht_subgroup_norm: f(x) has wrong dimension");

    // pi_G(fx): solve Gram * c = B fx, projection = B^T c.
    std::vector<std::vector<double>> G(r, std::vector<double>(r + 1, 0.0));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += g.basis[i][k] * g.basis[j][k];
            G[i][j] = s;
        }
        double b = 0.0;
        for (int k = 0; k < n; ++k) b += g.basis[i][k] * fx[k];
        G[i][r] = b;
    }
    for (int c = 0; c < r; ++c) {
        int piv = c;
        for (int i = c + 1; i < r; ++i)
            if (std::fabs(G[i][c]) > std::fabs(G[piv][c])) piv = i;
        if (G[piv][c] == 0.0) throw std::invalid_argument("ht_subgroup_norm: rank-deficient basis");
        std::swap(G[piv], G[c]);
        for (int i = 0; i < r; ++i) {
            if (i == c) continue;
            double f = G[i][c] / G[c][c];
            for (int j = c; j <= r; ++j) G[i][j] -= f * G[c][j];
        }
    }
    double proj2 = 0.0;
    for (int k = 0; k < n; ++k) {
        double pk = 0.0;
        for (int i = 0; i < r; ++i) pk += (G[i][r] / G[i][i]) * g.basis[i][k];
        proj2 += pk * pk;
    }

    double norm_g = subgroup_norm(g);
    double a = std::exp(-2.0 * r * t);
    double b = std::exp(2.0 * (n - r + 1) * t);
    return std::sqrt(a + b * proj2) * norm_g;
}

double ht_subgroup_norm_bruteforce(std::span<const double> fx, double t, const DiscreteSubgroup& g) {
    int n = g.ambient;
    double emt = std::exp(-t);
    double ent = std::exp(double(n) * t);
    std::vector<std::vector<double>> rows;
    rows.reserve(g.rank);
    for (const auto& u : g.basis) {
        std::vector<double> img(n + 1, 0.0);
        double d = 0.0;
        for (int k = 0; k < n; ++k) {
            img[k] = emt * u[k];
            d += u[k] * fx[k];
        }
        img[n] = ent * d;
        rows.push_back(std::move(img));
    }
    return subgroup_norm_wedge(DiscreteSubgroup::from_rows(std::move(rows)));
}

} // namespace arith
