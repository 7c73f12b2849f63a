#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arith/errors.hpp"
#include "arith/maps.hpp"
#include "arith/rng.hpp"

#include <cmath>

using namespace arith;

namespace {

// f(x) = (x, x^2) in one variable
PolynomialMap moment_map() {
    PolynomialMap f;
    f.domain_dim = 1;
    f.codomain_dim = 2;
    f.curvature_order = 2;
    f.comps.push_back(Polynomial::var(1, 0));
    f.comps.push_back(Polynomial::var(1, 0, 2));
    return f;
}

PolynomialMap shifted_moment_map(Rat a1, Rat a2) {
    auto f = moment_map();
    f.comps[0] = f.comps[0] + Polynomial::constant(1, std::move(a1));
    f.comps[1] = f.comps[1] + Polynomial::constant(1, std::move(a2));
    return f;
}

Polynomial random_poly_1d(uint64_t seed, int deg) {
    Polynomial p = Polynomial::zero(1);
    for (int e = 0; e <= deg; ++e) {
        long num = static_cast<long>(rng::at(seed, 7, e) % 41) - 20;
        if (num) {
            Rat c(num, 7);
            c.canonicalize();
            p.add_term({static_cast<unsigned>(e)}, c);
        }
    }
    return p;
}

// independent evaluation order for the oracle
Rat horner_eval(const Polynomial& p, const Rat& x) {
    long deg = p.total_degree();
    Rat acc = 0;
    for (long e = deg; e >= 0; --e) {
        acc *= x;
        auto it = p.terms.find({static_cast<unsigned>(e)});
        if (it != p.terms.end()) acc += it->second;
    }
    return acc;
}

} // namespace

TEST_CASE("eval: moment map examples") {
    auto f = moment_map();
    std::vector<Rat> half{Rat(1, 2)};
    auto v = f.eval(half);
    CHECK(v[0] == Rat(1, 2));
    CHECK(v[1] == Rat(1, 4));

    auto g = shifted_moment_map(Rat(1), Rat(3, 2));
    auto at0 = g.value_at_origin();
    CHECK(at0[0] == Rat(1));
    CHECK(at0[1] == Rat(3, 2));
}

TEST_CASE("eval: random polynomials match the Horner oracle exactly") {
    for (uint64_t s = 0; s < 30; ++s) {
        auto p = random_poly_1d(100 + s, 6);
        Rat x(static_cast<long>(rng::at(3, s, 0) % 2001) - 1000, 331);
        x.canonicalize();
        std::vector<Rat> xs{x};
        CHECK(p.eval(xs) == horner_eval(p, x));
    }
}

TEST_CASE("eval: rational and double paths agree on tame inputs") {
    for (uint64_t s = 0; s < 20; ++s) {
        auto p = random_poly_1d(200 + s, 5);
        Rat x(static_cast<long>(rng::at(5, s, 0) % 200) - 100, 101);
        x.canonicalize();
        std::vector<Rat> xs{x};
        std::vector<double> xd{x.get_d()};
        double exact = p.eval(xs).get_d();
        double approx = p.eval(xd);
        CHECK(approx == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("derivative: formal differentiation") {
    auto x2 = Polynomial::var(1, 0, 2);
    auto d2 = x2.derivative(Monomial{2});
    REQUIRE(d2.terms.size() == 1);
    CHECK(d2.terms.begin()->second == Rat(2));

    // d^{(1,1)} (x1 x2^2) = 2 x2
    Polynomial p = Polynomial::var(2, 0) * Polynomial::var(2, 1, 2);
    auto d = p.derivative(Monomial{1, 1});
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms.begin()->first == Monomial{0, 1});
    CHECK(d.terms.begin()->second == Rat(2));

    // vanishing beyond the degree
    CHECK(x2.derivative(Monomial{3}).is_zero());
}

TEST_CASE("derivative vs central finite differences") {
    for (uint64_t s = 0; s < 15; ++s) {
        auto p = random_poly_1d(300 + s, 5);
        double x = rng::uniform(7, s, 0) * 2.0 - 1.0;
        double h = 1e-5;
        std::vector<double> xp{x + h}, xm{x - h}, x0{x};
        double fd = (p.eval(std::span<const double>(xp)) - p.eval(std::span<const double>(xm))) / (2 * h);
        double exact = p.derivative(0).eval(std::span<const double>(x0));
        // error constant from the third-derivative bound on [-1.1, 1.1]
        Box box = Box::cube(1, -1.1, 1.1);
        auto ivs = box.intervals();
        double c3 = p.derivative(0).derivative(0).derivative(0).eval(std::span<const Interval>(ivs)).mag();
        CHECK(std::fabs(fd - exact) <= c3 / 6.0 * h * h + 1e-9);
    }
}

TEST_CASE("curvature: moment map cases") {
    auto f = moment_map();
    std::vector<Rat> zero{Rat(0)};

    auto c2 = curvature_check(f, zero, 2);
    CHECK(c2.is_curved);
    CHECK(c2.rank_derivatives == 2); // V = R^2

    auto c1 = curvature_check(f, zero, 1);
    CHECK_FALSE(c1.is_curved); // derivatives span only the (1,0) line
    CHECK(c1.rank_derivatives == 1);

    // f(x) = (x, x): image lies in f(0) + span{(1,1)}
    PolynomialMap diag;
    diag.domain_dim = 1;
    diag.codomain_dim = 2;
    diag.curvature_order = 1;
    diag.comps = {Polynomial::var(1, 0), Polynomial::var(1, 0)};
    auto cd = curvature_check(diag, zero, 1);
    CHECK(cd.is_curved);
    CHECK(cd.rank_derivatives == 1);
}

TEST_CASE("curvature: rank bookkeeping with and without the value") {
    // f(x) = (1 + x, 2 + x): V is the diagonal line, f(0) is not in V
    PolynomialMap f;
    f.domain_dim = 1;
    f.codomain_dim = 2;
    f.curvature_order = 1;
    f.comps = {Polynomial::var(1, 0) + Polynomial::constant(1, Rat(1)),
               Polynomial::var(1, 0) + Polynomial::constant(1, Rat(2))};
    std::vector<Rat> zero{Rat(0)};
    auto c = curvature_check(f, zero, 1);
    CHECK(c.is_curved); // f(y) - f(0) = (y, y) lies in V
    CHECK(c.rank_derivatives == 1);
    CHECK(c.rank_with_value == 2);
}

TEST_CASE("curvature is invariant under linear reparametrization") {
    auto f = shifted_moment_map(Rat(1), Rat(1, 2));
    std::vector<Rat> zero{Rat(0)};
    for (long anum : {1, -2, 3, 7}) {
        // precompose with x -> a x
        PolynomialMap g = f;
        for (auto& comp : g.comps) {
            Polynomial out = Polynomial::zero(1);
            for (const auto& [m, c] : comp.terms)
                out.add_term(m, c * rat_pow(Rat(anum, 5), m[0]));
            comp = out;
        }
        for (int l = 1; l <= 2; ++l)
            CHECK(curvature_check(g, zero, l).is_curved ==
                  curvature_check(f, zero, l).is_curved);
    }
}

TEST_CASE("derivative bounds: certified examples") {
    auto x = Polynomial::var(1, 0);
    auto b1 = derivative_bounds(x, Box::cube(1, -1, 1), 1);
    CHECK(b1.m == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b1.M == doctest::Approx(1.0).epsilon(1e-6));

    auto x2 = Polynomial::var(1, 0, 2);
    auto b2 = derivative_bounds(x2, Box::cube(1, 1, 2), 1);
    CHECK(b2.m == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(b2.M == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(b2.m <= 2.0); // certified side
    CHECK(b2.M >= 4.0);

    CHECK_THROWS_AS((void)derivative_bounds(x2, Box::cube(1, -1, 1), 1), CertificationError);
    try {
        (void)derivative_bounds(x2, Box::cube(1, -1, 1), 1);
    } catch (const CertificationError& e) {
        CHECK(e.kind == CertificationError::Kind::HypothesisFails);
    }
}

TEST_CASE("derivative bounds: certification holds on sampled points") {
    for (uint64_t s = 0; s < 8; ++s) {
        Polynomial p = random_poly_1d(400 + s, 4);
        // force a nonvanishing first derivative on [2, 3] by adding a slope
        p.add_term({1}, Rat(50));
        Box box = Box::cube(1, 2, 3);
        DerivativeBounds b;
        try {
            b = derivative_bounds(p, box, 1);
        } catch (const CertificationError&) {
            continue; // genuinely vanishing derivative, not this property's target
        }
        auto dp = p.derivative(0);
        for (int j = 0; j < 1000; ++j) {
            double xv = 2.0 + rng::uniform(11, s, j);
            std::vector<double> xs{xv};
            CHECK(std::fabs(p.eval(std::span<const double>(xs))) <= b.M * (1 + 1e-9));
            CHECK(std::fabs(dp.eval(std::span<const double>(xs))) <= b.M * (1 + 1e-9));
            CHECK(std::fabs(dp.eval(std::span<const double>(xs))) >= b.m * (1 - 1e-9));
        }
    }
}

TEST_CASE("km constant: direct evaluations and scaling") {
    CHECK(km_constant(1, 1, 1.0, 1.0) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(km_constant(2, 1, 1.0, 1.0) == doctest::Approx(24.0).epsilon(1e-12));
    for (int l : {1, 2, 3}) {
        double c1 = km_constant(1, l, 1.0, 1.0);
        double c2 = km_constant(1, l, 1.0, 2.0);
        CHECK(c2 / c1 == doctest::Approx(std::pow(2.0, 1.0 / l)).epsilon(1e-12));
    }
    CHECK_THROWS((void)km_constant(1, 1, 0.0, 1.0));
}

TEST_CASE("lipschitz bound: certified and tight enough") {
    auto f = shifted_moment_map(Rat(1), Rat(1, 2));
    double r = 0.1;
    double kappa = lipschitz_bound(f, r);
    double supj = std::sqrt(1.0 + 4.0 * r * r); // sup |Df| on [-r, r]
    CHECK(kappa >= supj * (1 - 1e-12));
    CHECK(kappa <= supj * 1.001);
    // verified by sampling: f(x) stays within B(f(0), kappa |x|)
    auto f0 = f.eval(std::vector<double>{0.0});
    for (int j = 0; j < 2000; ++j) {
        double xv = (rng::uniform(13, 0, j) * 2.0 - 1.0) * r;
        auto fx = f.eval(std::vector<double>{xv});
        double dist = std::hypot(fx[0] - f0[0], fx[1] - f0[1]);
        CHECK(dist <= kappa * std::fabs(xv) + 1e-12);
    }

    // linear map: the identity has kappa = 1
    PolynomialMap id;
    id.domain_dim = 2;
    id.codomain_dim = 2;
    id.curvature_order = 1;
    id.comps = {Polynomial::var(2, 0), Polynomial::var(2, 1)};
    CHECK(lipschitz_bound(id, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

    // constant map: kappa = 0
    PolynomialMap c;
    c.domain_dim = 1;
    c.codomain_dim = 2;
    c.curvature_order = 1;
    c.comps = {Polynomial::constant(1, Rat(3)), Polynomial::constant(1, Rat(-1))};
    CHECK(lipschitz_bound(c, 0.5) == 0.0);
}

namespace {

// substitute x_j -> sum_k A[j][k] y_k into every component
PolynomialMap compose_linear(const PolynomialMap& f, const std::vector<std::vector<Rat>>& A) {
    int d = f.domain_dim;
    std::vector<Polynomial> images;
    for (int j = 0; j < d; ++j) {
        Polynomial row = Polynomial::zero(d);
        for (int k = 0; k < d; ++k) row = row + A[static_cast<size_t>(j)][static_cast<size_t>(k)] *
                                              Polynomial::var(d, k);
        images.push_back(row);
    }
    PolynomialMap out = f;
    for (auto& comp : out.comps) {
        Polynomial acc = Polynomial::zero(d);
        for (const auto& [m, c] : comp.terms) {
            Polynomial term = Polynomial::constant(d, c);
            for (int j = 0; j < d; ++j)
                for (unsigned e = 0; e < m[static_cast<size_t>(j)]; ++e)
                    term = term * images[static_cast<size_t>(j)];
            acc = acc + term;
        }
        comp = acc;
    }
    return out;
}

} // namespace

TEST_CASE("curvature invariance under multivariate reparametrization") {
    // f(x, y) = (x, y, x^2 + y^2): 2-curved at 0, not 1-curved
    PolynomialMap f;
    f.domain_dim = 2;
    f.codomain_dim = 3;
    f.curvature_order = 2;
    f.comps = {Polynomial::var(2, 0), Polynomial::var(2, 1),
               Polynomial::var(2, 0, 2) + Polynomial::var(2, 1, 2)};
    std::vector<Rat> zero{Rat(0), Rat(0)};
    REQUIRE(curvature_check(f, zero, 2).is_curved);
    REQUIRE_FALSE(curvature_check(f, zero, 1).is_curved);

    std::vector<std::vector<std::vector<Rat>>> mats = {
        {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}},
        {{Rat(2), Rat(1)}, {Rat(1), Rat(1)}},
        {{Rat(1, 2), Rat(-3)}, {Rat(0), Rat(4)}},
    };
    for (const auto& A : mats) {
        auto g = compose_linear(f, A);
        for (int l = 1; l <= 2; ++l)
            CHECK(curvature_check(g, zero, l).is_curved == curvature_check(f, zero, l).is_curved);
    }
}
