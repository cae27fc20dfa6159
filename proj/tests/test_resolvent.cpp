#include <catch_amalgamated.hpp>

#include <random>

#include "hillbands/resolvent.hpp"

using namespace hillbands;
using Catch::Approx;

namespace {
// Free quasi-periodic kernel as a symmetric Fourier partial sum.
cplx free_quasi_series(double k, cplx l, double x, double s, int N) {
    cplx g = 0;
    for (int n = -N; n <= N; ++n) {
        double kn = k + 2 * pi * n;
        g += std::exp(I * kn * (x - s)) / (kn * kn - l);
    }
    return g;
}

// -u'' - l u = 1 with u(1) = w u(0), u'(1) = w u'(0), V = 0: solve for the
// homogeneous coefficients directly.
cplx free_quasi_constant_forcing(double k, cplx l, double x) {
    cplx z = std::sqrt(l), w = std::exp(I * k);
    // u = -1/l + A cos zx + B sin zx / z
    cplx c = std::cos(z), sn = std::sin(z);
    cplx a11 = c - w, a12 = sn / z, a21 = -z * sn, a22 = c - w;
    cplx r1 = -1.0 / l * (w - 1.0), r2 = 0;  // u(1) - w u(0) = 0
    cplx det = a11 * a22 - a12 * a21;
    cplx A = (r1 * a22 - a12 * r2) / det, B = (a11 * r2 - a21 * r1) / det;
    return -1.0 / l + A * std::cos(z * x) + B * std::sin(z * x) / z;
}

std::vector<PotentialSpec> fixtures() {
    return {PotentialSpec::zero(), PotentialSpec::constant(1.5),
            PotentialSpec::lambda_independent(FourierProfile{0.0, {2.0}, {}}),
            PotentialSpec::exp_family({{0.5, FourierProfile{0.0, {0.06}, {0.04}}}}),
            PotentialSpec::rational(FourierProfile{0.0, {0.5}, {}}, 1.0)};
}
}  // namespace

TEST_CASE("free Dirichlet kernel", "[resolvent]") {
    auto K = green_dirichlet(PotentialSpec::zero(), -1.0);
    for (double x : {0.1, 0.4, 0.77})
        for (double s : {0.05, 0.5, 0.9}) {
            double lo = std::min(x, s), hi = std::max(x, s);
            double ref = std::sinh(lo) * std::sinh(1 - hi) / std::sinh(1.0);
            CHECK(std::abs((*K)(x, s) - ref) < 1e-10);
            CHECK(std::abs((*K)(x, s) - (*K)(s, x)) < 1e-14);
        }
    CHECK((*K)(0.0, 0.3) == cplx(0));
    CHECK((*K)(1.0, 0.3) == cplx(0));
    CHECK((*K)(0.3, 1.0) == cplx(0));
    auto f = [](double x) { return cplx(std::sin(pi * x)); };
    for (double x : {0.2, 0.5, 0.9}) CHECK(std::abs(apply_kernel(*K, f, x) - std::sin(pi * x) / (pi * pi + 1)) < 1e-10);
    CHECK(resolvent_residual(*K, f) <= 1e-6);
}

TEST_CASE("free quasi-periodic kernel", "[resolvent]") {
    auto K = green_quasi(PotentialSpec::zero(), pi / 2, 1.0);
    for (double x : {0.15, 0.6})
        for (double s : {0.3, 0.85}) CHECK(std::abs((*K)(x, s) - free_quasi_series(pi / 2, 1.0, x, s, 200000)) < 1e-5);
    auto one = [](double) { return cplx(1); };
    for (double x : {0.0, 0.35, 0.8, 1.0})
        CHECK(std::abs(apply_kernel(*K, one, x) - free_quasi_constant_forcing(pi / 2, 1.0, x)) < 1e-10);
    CHECK(resolvent_residual(*K, one) <= 1e-6);
}

TEST_CASE("k -> 2pi - k symmetry", "[resolvent]") {
    auto s = PotentialSpec::lambda_independent(FourierProfile{0.0, {2.0}, {}});
    double k = 1.1;
    GreenKernelQuasi a(s, k, 7.3), b(s, 2 * pi - k, 7.3);
    CHECK(std::abs(a.m_plus() - b.m_minus()) < 1e-12);
    CHECK(std::abs(a.m_minus() - b.m_plus()) < 1e-12);
    for (double x : {0.2, 0.7})
        for (double t : {0.1, 0.9}) CHECK(std::abs(a(x, t) - std::conj(b(x, t))) < 1e-10);
}

TEST_CASE("spectral points are refused", "[resolvent]") {
    CHECK_THROWS_AS(green_dirichlet(PotentialSpec::zero(), pi * pi), SpectralPointError);
    CHECK_THROWS_AS(green_quasi(PotentialSpec::zero(), pi / 2, pi * pi / 4), SpectralPointError);
    // phi(1) = 0 away from the quasi-periodic spectrum: kernel fine, m_+- undefined
    GreenKernelQuasi K(PotentialSpec::zero(), pi / 2, pi * pi);
    CHECK_THROWS_AS(K.m_plus(), SpectralPointError);
    auto f = [](double x) { return cplx(std::cos(3 * x), x); };
    CHECK(resolvent_residual(K, f) <= 1e-5);
}

TEST_CASE("residuals for the fixtures", "[resolvent]") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(2, 150), im(-3, 3), kk(0.1, 2 * pi - 0.1);
    auto f = [](double x) { return cplx(1 + x * x, std::sin(2 * x)); };
    for (auto& s : fixtures())
        for (int i = 0; i < 3; ++i) {
            cplx l(re(rng), im(rng));
            CHECK(resolvent_residual(GreenKernelQuasi(s, kk(rng), l), f) <= 1e-5);
            CHECK(resolvent_residual(GreenKernelDirichlet(s, l), f) <= 1e-5);
        }
}

TEST_CASE("pole growth near an eigenvalue", "[resolvent]") {
    double k = pi / 2, star = pi * pi / 4;
    std::vector<double> ratio;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        GreenKernelQuasi K(PotentialSpec::zero(), k, star + eps);
        ratio.push_back(kernel_sup(K) * std::abs(K.delta() - std::cos(k)));
    }
    for (double r : ratio) {
        CHECK(r / ratio[0] < 2);
        CHECK(r / ratio[0] > 0.5);
    }
}
