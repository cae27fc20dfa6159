#include <catch_amalgamated.hpp>

#include <random>

#include "hillbands/potentials.hpp"

using namespace hillbands;
using Catch::Approx;

namespace {
FourierProfile cos1(double amp = 1.0) { return FourierProfile{0.0, {amp}, {}}; }
}  // namespace

TEST_CASE("eval_V basic families", "[potentials]") {
    CHECK(eval_V(PotentialSpec::zero(), 0.3, {4, 1}) == cplx(0));
    CHECK(eval_V(PotentialSpec::constant(1), 0.3, {5, 2}) == cplx(1));
    auto e = PotentialSpec::exp_family({{1.0, cos1()}});
    cplx v = eval_V(e, 0.0, cplx(0, pi));
    CHECK(v.real() == Approx(-1.0));
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("eval_V real on the real axis", "[potentials]") {
    auto e = PotentialSpec::exp_family({{0.5, cos1(0.2)}, {1.5, FourierProfile{0.1, {}, {0.3}}}});
    auto c = PotentialSpec::cos_family({{1.0, cos1(0.3)}});
    auto r = PotentialSpec::rational(cos1(0.5), 1.0);
    for (auto* s : {&e, &c, &r})
        for (double l : {0.1, 3.0, 77.0}) CHECK(eval_V(*s, 0.37, l).imag() == 0.0);
}

TEST_CASE("eval_dV closed forms", "[potentials]") {
    CHECK(eval_dV(PotentialSpec::zero(), 0.2, 3.0) == cplx(0));
    auto r = PotentialSpec::rational(FourierProfile{2.0, {}, {}}, 1.0);
    CHECK(eval_dV(r, 0.4, 0.0).real() == Approx(-2.0));
    double kappa = 0.7;
    auto e = PotentialSpec::exp_family({{kappa, cos1()}});
    cplx l(2.0, 0.5);
    cplx expect = -kappa * std::cos(2 * pi * 0.1) * std::exp(-kappa * l);
    CHECK(std::abs(eval_dV(e, 0.1, l) - expect) < 1e-14);
}

TEST_CASE("rational domain violation", "[potentials]") {
    auto r = PotentialSpec::rational(cos1(), 1.0);
    CHECK_THROWS_AS(eval_V(r, 0.1, -2.0), DomainError);
}

TEST_CASE("kappa ordering enforced", "[potentials]") {
    CHECK_THROWS_AS(PotentialSpec::exp_family({{1.0, cos1()}, {0.5, cos1()}}), ConfigError);
    CHECK_THROWS_AS(PotentialSpec::cos_family({{0.0, cos1()}}), ConfigError);
}

TEST_CASE("potential_norm", "[potentials]") {
    CHECK(potential_norm(PotentialSpec::zero(), 1.0) == 0.0);
    CHECK(potential_norm(PotentialSpec::constant(-3), cplx(2, 1)) == Approx(3.0));
    auto li = PotentialSpec::lambda_independent(cos1());
    CHECK(potential_norm(li, 1.0) == Approx(2 / pi).epsilon(1e-10));
    CHECK(potential_norm(li, cplx(50, 3)) == Approx(potential_norm(li, 2.0)).epsilon(1e-14));
}

TEST_CASE("mean_V", "[potentials]") {
    CHECK(mean_V(PotentialSpec::lambda_independent(FourierProfile{5.0, {1.0}, {}}), 3.0).real() == Approx(5.0));
    CHECK(mean_V(PotentialSpec::constant(2.5), cplx(1, 1)).real() == Approx(2.5));
    auto e = PotentialSpec::exp_family({{2.0, FourierProfile{1.0, {0.3}, {}}}});
    CHECK(mean_V(e, 1.0).real() == Approx(std::exp(-2.0)));
}

TEST_CASE("periodicity and conjugation symmetry", "[potentials]") {
    auto e = PotentialSpec::exp_family({{0.3, FourierProfile{0.1, {0.2, -0.1}, {0.05}}}});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0, 1), re(-2, 50), im(-5, 5);
    for (int i = 0; i < 20; ++i) {
        double x = u(rng);
        cplx l(re(rng), im(rng));
        CHECK(std::abs(eval_V(e, x, l) - eval_V(e, x + 1, l)) < 1e-12);
        CHECK(std::abs(eval_V(e, x, std::conj(l)) - std::conj(eval_V(e, x, l))) < 1e-15);
    }
}

TEST_CASE("derivative consistency with central differences", "[potentials]") {
    auto c = PotentialSpec::cos_family({{0.8, FourierProfile{0.1, {0.3}, {0.2}}}});
    auto r = PotentialSpec::rational(FourierProfile{0.2, {0.5}, {}}, 1.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0, 1), re(0, 10), im(-2, 2);
    for (auto* s : {&c, &r})
        for (int i = 0; i < 20; ++i) {
            double x = u(rng);
            cplx l(re(rng), im(rng));
            cplx d = eval_dV(*s, x, l);
            for (double h : {1e-3, 1e-4}) {
                cplx fd = (eval_V(*s, x, l + h) - eval_V(*s, x, l - h)) / (2 * h);
                CHECK(std::abs(fd - d) < 10 * h * h + 1e-10);
            }
        }
}

TEST_CASE("tabulated barycentric interpolation", "[potentials]") {
    auto t = std::make_shared<TabulatedData>();
    t->lambda0 = 4.0;
    t->x = TabulatedData::nodes(33);
    for (double x : t->x) {
        t->v.push_back(std::cos(2 * pi * x) + 0.5 * std::sin(4 * pi * x));
        t->dv.push_back(0.1 * x);
    }
    t->init_weights();
    auto s = PotentialSpec::tabulated(t);
    for (double x : {0.0, 0.123, 0.5, 0.77, 1.0}) {
        CHECK(std::abs(eval_V(s, x, 4.0) - (std::cos(2 * pi * x) + 0.5 * std::sin(4 * pi * x))) < 1e-12);
        CHECK(std::abs(eval_V(s, x, 5.0) - eval_V(s, x, 4.0) - 0.1 * x) < 1e-12);
    }
    CHECK_FALSE(s.real_analytic());
}
