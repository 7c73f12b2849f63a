#include "arith/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace arith {

Polynomial Polynomial::zero(int nvars) {
    Polynomial p;
    p.nvars = nvars;
    return p;
}

Polynomial Polynomial::constant(int nvars, Rat c) {
    Polynomial p = zero(nvars);
    if (c != 0) p.terms[Monomial(nvars, 0u)] = std::move(c);
    return p;
}

Polynomial Polynomial::var(int nvars, int j, unsigned power) {
    if (j < 0 || j >= nvars) throw std::invalid_argument("var index out of range");
    Polynomial p = zero(nvars);
    Monomial m(nvars, 0u);
    m[j] = power;
    p.terms[std::move(m)] = 1;
    return p;
}

Polynomial& Polynomial::add_term(Monomial mono, Rat c) {
    if (static_cast<int>(mono.size()) != nvars) throw std::invalid_argument("monomial arity mismatch");
    auto it = terms.find(mono);
    if (it == terms.end()) {
        if (c != 0) terms.emplace(std::move(mono), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
    return *this;
}

Rat Polynomial::eval(std::span<const Rat> x) const {
    if (static_cast<int>(x.size()) != nvars) throw std::invalid_argument("eval arity mismatch");
    Rat s = 0;
    for (const auto& [m, c] : terms) {
        Rat t = c;
        for (int j = 0; j < nvars; ++j)
            if (m[j] > 0) t *= rat_pow(x[j], m[j]);
        s += t;
    }
    return s;
}

double Polynomial::eval(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& [m, c] : terms) {
        double t = c.get_d();
        for (int j = 0; j < nvars; ++j)
            for (unsigned e = 0; e < m[j]; ++e) t *= x[j];
        s += t;
    }
    return s;
}

Interval Polynomial::eval(std::span<const Interval> x) const {
    Interval s(0.0);
    for (const auto& [m, c] : terms) {
        Interval t = Interval::of_rat(c);
        for (int j = 0; j < nvars; ++j)
            if (m[j] > 0) t = t * pow_int(x[j], m[j]);
        s = s + t;
    }
    return s;
}

Polynomial Polynomial::derivative(int axis) const {
    if (axis < 0 || axis >= nvars) throw std::invalid_argument("derivative axis out of range");
    Polynomial out = zero(nvars);
    for (const auto& [m, c] : terms) {
        if (m[axis] == 0) continue;
        Monomial d = m;
        d[axis] -= 1;
        out.add_term(std::move(d), c * Rat(static_cast<long>(m[axis])));
    }
    return out;
}

Polynomial Polynomial::derivative(const Monomial& multi) const {
    if (static_cast<int>(multi.size()) != nvars) throw std::invalid_argument("multi-index arity mismatch");
    Polynomial out = *this;
    for (int j = 0; j < nvars; ++j)
        for (unsigned e = 0; e < multi[j]; ++e) out = out.derivative(j);
    return out;
}

long Polynomial::total_degree() const {
    long d = -1;
    for (const auto& [m, c] : terms) {
        long t = 0;
        for (unsigned e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, c);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, -c);
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial out = Polynomial::zero(a.nvars);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            Monomial m = ma;
            for (int j = 0; j < a.nvars; ++j) m[j] += mb[j];
            out.add_term(std::move(m), ca * cb);
        }
    return out;
}

Polynomial operator*(const Rat& s, const Polynomial& a) {
    Polynomial out = Polynomial::zero(a.nvars);
    if (s == 0) return out;
    for (const auto& [m, c] : a.terms) out.terms[m] = s * c;
    return out;
}

std::vector<Rat> PolynomialMap::eval(std::span<const Rat> x) const {
    std::vector<Rat> out;
    out.reserve(comps.size());
    for (const auto& p : comps) out.push_back(p.eval(x));
    return out;
}

std::vector<double> PolynomialMap::eval(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(comps.size());
    for (const auto& p : comps) out.push_back(p.eval(x));
    return out;
}

std::vector<Rat> PolynomialMap::value_at_origin() const {
    std::vector<Rat> zero(domain_dim, Rat(0));
    return eval(zero);
}

std::vector<Monomial> multi_indices_up_to(int d, int max_order) {
    std::vector<Monomial> out;
    Monomial cur(d, 0u);
    // enumerate all exponent vectors with 1 <= |j| <= max_order
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == d) {
            long s = 0;
            for (unsigned e : cur) s += e;
            if (s >= 1) out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[pos] = static_cast<unsigned>(e);
            rec(pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    rec(0, max_order);
    // graded lex: sort by |j| then lex
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        long sa = 0, sb = 0;
        for (unsigned e : a) sa += e;
        for (unsigned e : b) sb += e;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

} // namespace arith
