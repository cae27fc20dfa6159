#include <catch_amalgamated.hpp>

#include <random>

#include "hillbands/lyapunov.hpp"

using namespace hillbands;
using Catch::Approx;

namespace {
PotentialSpec mathieu() { return PotentialSpec::lambda_independent(FourierProfile{0.0, {2.0}, {}}); }

// Monodromy of -y'' + V y = l y by products of exact transfer matrices on
// uniform steps with V frozen at the step midpoint; Richardson on h, h/2.
cplx transfer_delta(const PotentialSpec& s, cplx l, int steps) {
    auto run = [&](int n) {
        double h = 1.0 / n;
        cplx m00 = 1, m01 = 0, m10 = 0, m11 = 1;
        for (int i = 0; i < n; ++i) {
            cplx mu = l - eval_V(s, (i + 0.5) * h, l);
            FreePair f = free_pair(mu, h);
            // [y; y'] -> [[C, S], [-mu S, C]] [y; y']
            cplx a = f.c, b = f.s, c = f.dc, d = f.ds;
            cplx n00 = a * m00 + b * m10, n01 = a * m01 + b * m11;
            cplx n10 = c * m00 + d * m10, n11 = c * m01 + d * m11;
            m00 = n00; m01 = n01; m10 = n10; m11 = n11;
        }
        return (m00 + m11) / 2.0;
    };
    cplx d1 = run(steps), d2 = run(2 * steps);
    return (4.0 * d2 - d1) / 3.0;
}
}  // namespace

TEST_CASE("discriminant closed forms", "[lyapunov]") {
    CHECK(std::abs(discriminant(PotentialSpec::zero(), pi * pi / 4).delta) < 1e-15);
    CHECK(discriminant(PotentialSpec::constant(1), 1 + pi * pi).delta.real() == Approx(-1.0));
}

TEST_CASE("discriminant matches the transfer-matrix oracle", "[lyapunov]") {
    auto s = mathieu();
    cplx oracle = transfer_delta(s, 10.0, 10000);
    CHECK(std::abs(discriminant(s, 10.0).delta - oracle) < 1e-6);
    auto e = PotentialSpec::exp_family({{0.5, FourierProfile{0.1, {0.3}, {0.2}}}});
    cplx l(40.0, 0.7);
    CHECK(std::abs(discriminant(e, l).delta - transfer_delta(e, l, 10000)) < 1e-6);
}

TEST_CASE("discriminant identity and conjugation", "[lyapunov]") {
    auto s = PotentialSpec::rational(FourierProfile{0.0, {0.5}, {}}, 1.0);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(1, 1000), im(-1, 1);
    for (int i = 0; i < 20; ++i) {
        cplx l(re(rng), im(rng));
        auto d = discriminant(s, l);
        CHECK(d.identity_residual() < 1e-9);
        auto dc = discriminant(s, std::conj(l));
        CHECK(std::abs(dc.delta - std::conj(d.delta)) < 1e-9);
    }
}

TEST_CASE("delta1", "[lyapunov]") {
    CHECK(delta1(mathieu(), 17.0) == cplx(0));
    CHECK(std::abs(delta1(PotentialSpec::constant(1), pi * pi)) < 1e-15);
    CHECK(delta1(PotentialSpec::constant(1), pi * pi / 4).real() == Approx(1 / pi));
}

TEST_CASE("delta2 against the shifted cosine", "[lyapunov]") {
    CHECK(delta2(PotentialSpec::zero(), 9.0) == cplx(0));
    // constant c: Delta = cos sqrt(l - c); expansion in c gives
    // Delta_2 = c^2 (sin z/(8 z^3) - cos z/(8 z^2))
    double c = 0.7;
    for (double l : {3.0, 50.0, 400.0}) {
        double z = std::sqrt(l);
        double expect = c * c * (std::sin(z) / (8 * z * z * z) - std::cos(z) / (8 * z * z));
        CHECK(std::abs(delta2(PotentialSpec::constant(c), l) - expect) < 1e-12);
    }
    // small |lambda| uses the entire form; check continuity across 0.5
    auto s = mathieu();
    CHECK(std::abs(delta2(s, 0.4999) - delta2(s, 0.5001)) < 1e-3);
}

TEST_CASE("envelope checks", "[lyapunov]") {
    for (int o : {1, 2, 3}) {
        auto z = envelope_check(PotentialSpec::zero(), 77.0, o);
        CHECK(z.residual < 1e-14);
        CHECK(z.ok);
        CHECK(envelope_check(PotentialSpec::constant(1), 100.0, o).ok);
        auto e = PotentialSpec::exp_family({{0.05, FourierProfile{0.0, {0.1}, {}}}});
        CHECK(envelope_check(e, 200.0, o).ok);
    }
    auto r = envelope_check(mathieu(), 36 * pi * pi, 3);
    CHECK(r.ok);
    CHECK_THROWS_AS(envelope_check(mathieu(), 3.0, 4), ConfigError);
}
