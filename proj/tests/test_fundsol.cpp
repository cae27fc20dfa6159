#include <catch_amalgamated.hpp>

#include <random>

#include "hillbands/fundsol.hpp"

using namespace hillbands;
using Catch::Approx;

namespace {
PotentialSpec mathieu() { return PotentialSpec::lambda_independent(FourierProfile{0.0, {2.0}, {}}); }
PotentialSpec exp01() { return PotentialSpec::exp_family({{0.5, FourierProfile{0.0, {0.06}, {0.04}}}}); }
PotentialSpec rational() { return PotentialSpec::rational(FourierProfile{0.0, {0.5}, {}}, 1.0); }
}  // namespace

TEST_CASE("free fundamental solutions", "[fundsol]") {
    auto fd = integrate_fundamental(PotentialSpec::zero(), pi * pi);
    CHECK(fd.theta1.real() == Approx(-1.0));
    CHECK(std::abs(fd.phi1) < 1e-14);
    CHECK(fd.dphi1.real() == Approx(-1.0));
    auto f0 = integrate_fundamental(PotentialSpec::zero(), 0.0);
    CHECK(f0.theta1 == cplx(1));
    CHECK(f0.phi1 == cplx(1));
    CHECK(f0.dtheta1 == cplx(0));
    CHECK(f0.dphi1 == cplx(1));
    auto fc = integrate_fundamental(PotentialSpec::constant(2), 2.0);
    CHECK(fc.theta1.real() == Approx(1.0));
    CHECK(fc.phi1.real() == Approx(1.0));
}

TEST_CASE("RK path reproduces a constant potential through the ODE", "[fundsol]") {
    // c + 0*cos forces the general integrator
    auto s = PotentialSpec::lambda_independent(FourierProfile{2.0, {0.0}, {}});
    for (cplx l : {cplx(2.0), cplx(30.0, 1.0), cplx(-3.0, 0.5)}) {
        auto fd = integrate_fundamental(s, l);
        auto ex = integrate_fundamental(PotentialSpec::constant(2.0), l);
        CHECK(std::abs(fd.theta1 - ex.theta1) < 1e-8);
        CHECK(std::abs(fd.phi1 - ex.phi1) < 1e-8);
        CHECK(std::abs(fd.lam_derivs.theta1 - ex.lam_derivs.theta1) < 1e-7);
        CHECK(std::abs(fd.lam_derivs.dtheta1 - ex.lam_derivs.dtheta1) < 1e-7);
    }
}

TEST_CASE("wronskian conservation", "[fundsol]") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(-5, 2000), im(-3, 3);
    std::vector<PotentialSpec> specs{mathieu(), exp01(), rational(),
                                     PotentialSpec::cos_family({{1.0, FourierProfile{0.0, {0.1}, {}}}})};
    IntegratorConfig cfg;
    for (int i = 0; i < 40; ++i) {
        const auto& s = specs[i % specs.size()];
        cplx l(re(rng), im(rng));
        auto fd = integrate_fundamental(s, l, 1.0, cfg);
        CHECK(wronskian_defect(fd) <= 10 * cfg.rel_tol);
    }
}

TEST_CASE("wronskian defect of a perturbed sample", "[fundsol]") {
    FundamentalData fd;
    fd.theta1 = 1;
    fd.phi1 = 0;
    fd.dphi1 = 1.0 + 1e-6;
    CHECK(wronskian_defect(fd) == Approx(1e-6));
}

TEST_CASE("lambda derivatives match central differences", "[fundsol]") {
    for (auto s : {mathieu(), exp01(), rational()}) {
        cplx l(37.0, 0.3);
        auto fd = integrate_fundamental(s, l);
        double h = 1e-4;
        auto fp = integrate_fundamental(s, l + h), fm = integrate_fundamental(s, l - h);
        CHECK(std::abs((fp.theta1 - fm.theta1) / (2 * h) - fd.lam_derivs.theta1) < 1e-6);
        CHECK(std::abs((fp.phi1 - fm.phi1) / (2 * h) - fd.lam_derivs.phi1) < 1e-6);
        CHECK(std::abs((fp.dtheta1 - fm.dtheta1) / (2 * h) - fd.lam_derivs.dtheta1) < 1e-5);
        CHECK(std::abs((fp.dphi1 - fm.dphi1) / (2 * h) - fd.lam_derivs.dphi1) < 1e-6);
    }
}

TEST_CASE("Cauchy-Riemann residual of theta(1, .)", "[fundsol]") {
    auto s = exp01();
    cplx l0(20.0, 0.5);
    double h = 1e-4;
    auto f = [&](cplx l) { return integrate_fundamental(s, l).theta1; };
    cplx dx = (f(l0 + h) - f(l0 - h)) / (2 * h);
    cplx dy = (f(l0 + cplx(0, h)) - f(l0 - cplx(0, h))) / (2 * h);
    // analytic: d/dy = i d/dx
    CHECK(std::abs(dy - I * dx) < 1e-6);
}

TEST_CASE("Picard N=0 is the unperturbed pair", "[fundsol]") {
    auto s = mathieu();
    cplx l(30.0, 2.0);
    auto p = picard_fundamental(s, l, 0);
    ZNorm zn(l);
    CHECK(std::abs(p.theta1 - std::cos(zn.z)) < 1e-13);
    CHECK(std::abs(p.phi1 - std::sin(zn.z) / zn.z) < 1e-13);
    double nv = potential_norm(s, l);
    CHECK(p.err_bound == Approx(nv * std::exp(std::abs(zn.z.imag()) + nv / zn.z1) / zn.z1));
    auto pz = picard_fundamental(PotentialSpec::zero(), l, 3);
    CHECK(pz.err_bound == 0.0);
}

TEST_CASE("Picard agrees with RK within the bound", "[fundsol]") {
    auto s = mathieu();
    cplx l = 16 * pi * pi;
    auto p = picard_fundamental(s, l, 6);
    auto rk = integrate_fundamental(s, l);
    ZNorm zn(l);
    double b = p.err_bound + 1e-9;
    CHECK(std::abs(p.theta1 - rk.theta1) <= b);
    CHECK(zn.z1 * std::abs(p.phi1 - rk.phi1) <= b);
    CHECK(std::abs(p.dphi1 - rk.dphi1) <= b);
    CHECK(std::abs(p.dtheta1 - rk.dtheta1) / zn.z1 <= b);
    // the partial sums converge: at large N Picard is an independent oracle
    auto p12 = picard_fundamental(s, l, 12);
    CHECK(std::abs(p12.theta1 - rk.theta1) < 1e-8);
}

TEST_CASE("error envelope", "[fundsol]") {
    CHECK(error_envelope(PotentialSpec::zero(), cplx(4.0, 3.0), 1) == 0.0);
    CHECK(error_envelope(PotentialSpec::zero(), cplx(-4.0, 0.0), 0) == Approx(std::exp(2.0)));
    // a constant potential of modulus 1 has norm 1
    auto one = PotentialSpec::constant(1.0);
    CHECK(error_envelope(one, 4 * pi * pi, 1) == Approx(std::exp(1 / (2 * pi)) / (2 * pi)));
    CHECK(error_envelope(one, 0.25, 1) == Approx(std::exp(1.0)));
    CHECK(error_envelope(one, 4 * pi * pi, 1) == Approx(0.18662).epsilon(1e-4));
}

TEST_CASE("sampled solutions match endpoint integration", "[fundsol]") {
    auto s = exp01();
    cplx l(50.0, 1.0);
    std::vector<double> mesh{0.0, 0.25, 0.5, 1.0};
    auto smp = sample_fundamental(s, l, mesh);
    REQUIRE(smp.size() == 4);
    auto fd = integrate_fundamental(s, l);
    CHECK(std::abs(smp[3].theta - fd.theta1) < 1e-8);
    CHECK(std::abs(smp[3].dphi - fd.dphi1) < 1e-8);
    CHECK(smp[0].theta == cplx(1));
}
