#pragma once

#include "arith/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace arith {

// Outward-rounded interval arithmetic on doubles. Every operation widens
// its result by one ulp per side, so enclosures are valid regardless of
// the FPU rounding mode.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    static double dn(double x) {
        return std::nextafter(x, -std::numeric_limits<double>::infinity());
    }
    static double up(double x) {
        return std::nextafter(x, std::numeric_limits<double>::infinity());
    }

    static Interval of_rat(const Rat& q) {
        double d = q.get_d();
        return Interval(dn(d), up(d));
    }

    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    double width() const { return hi - lo; }
    // Largest absolute value over the interval.
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    // Smallest absolute value over the interval (0 if it straddles 0).
    double mig() const {
        if (contains_zero()) return 0.0;
        return std::min(std::fabs(lo), std::fabs(hi));
    }
    Interval abs() const { return Interval(mig(), mag()); }
};

inline Interval operator+(Interval a, Interval b) {
    return Interval(Interval::dn(a.lo + b.lo), Interval::up(a.hi + b.hi));
}
inline Interval operator-(Interval a, Interval b) {
    return Interval(Interval::dn(a.lo - b.hi), Interval::up(a.hi - b.lo));
}
inline Interval operator-(Interval a) { return Interval(-a.hi, -a.lo); }
inline Interval operator*(Interval a, Interval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    double l = std::min(std::min(p1, p2), std::min(p3, p4));
    double h = std::max(std::max(p1, p2), std::max(p3, p4));
    return Interval(Interval::dn(l), Interval::up(h));
}
inline Interval operator*(double s, Interval a) { return Interval(s) * a; }

inline Interval sqr(Interval a) {
    double m = a.mig(), M = a.mag();
    return Interval(Interval::dn(m * m), Interval::up(M * M));
}

inline Interval pow_int(Interval a, unsigned e) {
    if (e == 0) return Interval(1.0);
    Interval acc(1.0);
    Interval base = a;
    unsigned k = e;
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        base = (k > 1) ? sqr(base) : base;
        k >>= 1u;
    }
    return acc;
}

inline Interval sqrt_iv(Interval a) {
    double l = a.lo < 0 ? 0.0 : a.lo;
    return Interval(Interval::dn(std::sqrt(l)), Interval::up(std::sqrt(a.hi)));
}

// x^{1/m} for x >= 0.
inline Interval root_iv(Interval a, unsigned m) {
    double l = a.lo < 0 ? 0.0 : a.lo;
    double rl = std::pow(l, 1.0 / double(m));
    double rh = std::pow(a.hi, 1.0 / double(m));
    return Interval(Interval::dn(Interval::dn(rl)), Interval::up(Interval::up(rh)));
}

inline Interval hull(Interval a, Interval b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// Axis-aligned box, the region type used by all certified bounds.
struct Box {
    std::vector<double> lo, hi;
    size_t dim() const { return lo.size(); }
    double volume() const {
        double v = 1.0;
        for (size_t j = 0; j < lo.size(); ++j) v *= (hi[j] - lo[j]);
        return v;
    }
    double widest_side(size_t& axis) const {
        double w = -1.0;
        axis = 0;
        for (size_t j = 0; j < lo.size(); ++j)
            if (hi[j] - lo[j] > w) { w = hi[j] - lo[j]; axis = j; }
        return w;
    }
    std::vector<Interval> intervals() const {
        std::vector<Interval> out(lo.size());
        for (size_t j = 0; j < lo.size(); ++j) out[j] = Interval(lo[j], hi[j]);
        return out;
    }
    static Box cube(size_t d, double lo_, double hi_) {
        Box b;
        b.lo.assign(d, lo_);
        b.hi.assign(d, hi_);
        return b;
    }
};

} // namespace arith
