#include <catch_amalgamated.hpp>

#include "hillbands/reality.hpp"
#include "hillbands/spectra.hpp"

using namespace hillbands;
using Catch::Approx;

namespace {
FourierProfile cos_amp(double a) { return FourierProfile{0.0, {a}, {}}; }
const double golden_phi = 2 - std::sqrt(3.0);
}  // namespace

TEST_CASE("eta", "[reality]") {
    auto e = PotentialSpec::exp_family({{1.0, FourierProfile{1.0, {}, {}}}});
    CHECK(eta(e, 0.3, 2.5) == 0.0);
    CHECK(eta(PotentialSpec::constant(4), 0.1, cplx(1, 2)) == Approx(-2));
    CHECK(eta(e, 0.7, cplx(0, 1)) == Approx(-std::sin(1.0) - 1).epsilon(1e-12));
}

TEST_CASE("xi functional", "[reality]") {
    CHECK(xi_functional(PotentialSpec::zero(), DomainSpec::half_plane(0)) == 0);
    auto e = PotentialSpec::exp_family({{0.5, cos_amp(0.06)}, {1.5, FourierProfile{0.04, {}, {}}}});
    CHECK(xi_functional(e, DomainSpec::half_plane(0)) == Approx(0.1).epsilon(1e-12));
    auto c = PotentialSpec::cos_family({{1.0, cos_amp(0.1)}});
    CHECK(xi_functional(c, DomainSpec::half_strip(0, 1)) == Approx(0.1 * std::sinh(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(xi_functional(c, DomainSpec::half_plane(0)), UnsupportedRegion);
    auto r = PotentialSpec::rational(cos_amp(0.5), 1.0);
    CHECK(xi_functional(r, DomainSpec::half_plane(1)) == Approx(0.25));
    CHECK_THROWS_AS(xi_functional(r, DomainSpec::half_plane(-2)), DomainError);

    // monotone under inclusion; bounded regions go through the grid alone
    auto t = PotentialSpec::exp_family({{1.0, FourierProfile{0.2, {0.3}, {0.1}}}});
    double small = xi_functional(t, DomainSpec::rect(1, 2, 0.5));
    double mid = xi_functional(t, DomainSpec::rect(0.5, 3, 1.0));
    double big = xi_functional(t, DomainSpec::half_plane(0));
    CHECK(small <= mid);
    CHECK(mid <= big);
    // never below the true supremum |Im e^{-lambda}| * max|q| on the rectangle
    double exact = 0;
    for (int i = 0; i <= 400; ++i)
        for (int j = 0; j <= 400; ++j) {
            cplx l(1 + i / 400.0, -0.5 + j / 400.0);
            exact = std::max(exact, std::abs(std::exp(-l).imag()));
        }
    CHECK(small >= exact * (0.2 + std::sqrt(0.1)) - 1e-9);
}

TEST_CASE("dQ/dnu bounds and the derivative certificate", "[reality]") {
    CHECK(dQ_dnu_sup(PotentialSpec::zero(), 0, 10) == 0);
    CHECK(dQ_dnu_sup(PotentialSpec::constant(3), 0, 10) == 0);
    auto e = PotentialSpec::exp_family({{2.0, FourierProfile{0.3, {}, {}}}});
    double d = dQ_dnu_sup(e, 0, 10);
    CHECK(d <= 0.6 + 1e-12);
    CHECK(d == Approx(0.6));
    auto c = certify_derivative_strip(e, 0, 10);
    CHECK(c.certified);
    CHECK(c.margin == Approx(0.4));
    auto big = PotentialSpec::exp_family({{2.0, FourierProfile{0.8, {}, {}}}});
    CHECK_FALSE(certify_derivative_strip(big, 0, 10).certified);
    CHECK(certify_derivative_strip(big, 1, 10).certified);
}

TEST_CASE("half-plane thresholds", "[reality]") {
    auto z = certify_halfplane(PotentialSpec::zero(), 3.0);
    CHECK(z.certified);
    CHECK(z.threshold == 3.0);
    auto e = PotentialSpec::exp_family({{0.5, cos_amp(0.06)}, {1.5, FourierProfile{0.04, {}, {}}}});
    auto ce = certify_halfplane(e, 0.0);
    CHECK(ce.certified);
    CHECK(ce.threshold == Approx(0.37321).epsilon(1e-4));
    auto c = PotentialSpec::cos_family({{1.0, cos_amp(0.1)}});
    auto cc = certify_halfplane(c, 0.0, 1.0);
    CHECK(cc.certified);
    CHECK(cc.threshold == Approx(0.43861).epsilon(1e-4));
    CHECK(cc.margin == Approx(1 - 0.43861).epsilon(1e-4));
    // the strip leaves the half-strip domain
    auto strong = PotentialSpec::cos_family({{1.0, cos_amp(3.0)}});
    auto cs = certify_halfplane(strong, 0.0, 1.0);
    CHECK_FALSE(cs.certified);
    CHECK_FALSE(cs.reason.empty());
    // constant is configurable
    RealityConfig half;
    half.phi = 0.5;
    CHECK(certify_halfplane(e, 0.0, {}, half).threshold == Approx(0.2));
}

TEST_CASE("strip certificates", "[reality]") {
    auto z = certify_strip(PotentialSpec::zero(), 0, 10, 1, 0.3);
    CHECK(z.certified);
    CHECK(z.real_lo == 1);
    CHECK(z.real_hi == 9);
    double phi = golden_phi;
    CHECK((1 - phi) * (1 - phi) / 2 == Approx(phi).epsilon(1e-14));
    auto e = PotentialSpec::exp_family({{1.0, FourierProfile{0.05, {}, {}}}});
    auto c = certify_strip(e, 0, 10, 1, 0.5);
    CHECK(c.certified);
    CHECK(c.margin >= 0.125 - 0.05 - 1e-12);
    auto hs = certify_strip(e, 0, std::numeric_limits<double>::infinity(), 1, 0.5);
    CHECK(hs.kind == RealityCertificate::Kind::HalfStrip);
    CHECK(hs.certified);
    CHECK_THROWS_AS(certify_strip(e, 0, 1.5, 1, 0.5), ConfigError);
}

TEST_CASE("Poisson derivative bound", "[reality]") {
    CHECK(poisson_derivative_bound(3.0, 2.0, 0.0) == Approx(3.0));
    double r = 1.7, phi = golden_phi;
    CHECK(poisson_derivative_bound(r * (1 - phi) * (1 - phi) / 2, r, phi * r) == Approx(1.0).epsilon(1e-14));
    CHECK(poisson_derivative_bound(0.0, 1.0, 0.5) == 0.0);
    CHECK_THROWS_AS(poisson_derivative_bound(1.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("certified regions hold real eigenvalues", "[reality]") {
    auto e = PotentialSpec::exp_family({{0.5, cos_amp(0.06)}, {1.5, FourierProfile{0.04, {}, {}}}});
    auto cert = certify_interval(e, 0.5);
    REQUIRE(cert.certified);
    CHECK(cert.threshold <= 0.5);
    SpectrumOptions o;
    o.mode = SpectrumOptions::Mode::Complex;
    auto m = make_model(e);
    auto d = dirichlet_spectrum(m, {0.5, 60, 1.0}, o);
    REQUIRE(d.size() == 2);
    for (auto& ev : d) {
        CHECK(std::abs(ev.lambda.imag()) <= 1e-8);
        CHECK(std::abs(ev.lambda.imag()) <= xi_disc(e, ev.lambda, 1e-3) + 1e-8);
    }
}

TEST_CASE("eigenvalues respect the vertical sup bound", "[reality]") {
    // strong coupling at low energy produces complex eigenvalues
    auto s = PotentialSpec::exp_family({{1.0, FourierProfile{0.0, {3.0}, {2.0}}}});
    SpectrumOptions o;
    o.mode = SpectrumOptions::Mode::Complex;
    auto ev = dirichlet_spectrum(make_model(s), {-3, 30, 3.0}, o);
    REQUIRE_FALSE(ev.empty());
    for (auto& e : ev) CHECK(std::abs(e.lambda.imag()) <= xi_disc(s, e.lambda, 1e-3) + 1e-8);
}
