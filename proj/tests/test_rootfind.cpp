#include <catch_amalgamated.hpp>

#include "hillbands/rootfind.hpp"

using namespace hillbands;
using Catch::Approx;

namespace {
// cos sqrt(l) and sin sqrt(l)/sqrt(l) with derivatives, entire in l
std::pair<cplx, cplx> cos_sqrt(cplx l) {
    FreePair f = free_pair(l, 1.0);
    return {f.c, -f.s / 2.0};
}
std::pair<cplx, cplx> sinc_sqrt(cplx l) {
    FreePair f = free_pair(l, 1.0);
    cplx d = std::abs(l) < 1e-8 ? cplx(-1.0 / 6) : (f.c - f.s) / (2.0 * l);
    return {f.s, d};
}
AnalyticFn shift(std::pair<cplx, cplx> (*g)(cplx), cplx c) {
    return [g, c](cplx l) {
        auto [f, d] = g(l);
        return std::pair<cplx, cplx>{f - c, d};
    };
}
RealFn real_of(AnalyticFn F) {
    return [F](double x) {
        auto [f, d] = F(x);
        return std::pair<double, double>{f.real(), d.real()};
    };
}
}  // namespace

TEST_CASE("count_zeros examples", "[rootfind]") {
    CHECK(count_zeros(shift(cos_sqrt, 1.0), {4 * pi * pi, 5, 5}) == 2);
    CHECK(count_zeros(cos_sqrt, {pi * pi / 4, 0.5, 0.5}) == 1);
    CHECK(count_zeros(sinc_sqrt, {pi * pi, 1, 1}) == 1);
    CHECK(count_zeros(sinc_sqrt, {cplx(100, 0), 95, 3}) == 4);
}

TEST_CASE("count_zeros dilates away from boundary zeros", "[rootfind]") {
    // zero at pi^2 exactly on the left edge
    Rect r{cplx(pi * pi + 1, 0), 1, 1};
    Rect used;
    int n = count_zeros(sinc_sqrt, r, &used);
    CHECK(used.half_width > r.half_width);
    CHECK(n == 1);
}

TEST_CASE("isolate_zeros", "[rootfind]") {
    AnalyticFn two = [](cplx l) { return std::pair<cplx, cplx>{(l - 1.0) * (l - 2.0), 2.0 * l - 3.0}; };
    auto c = isolate_zeros(two, {cplx(1.5, 0.1), 2, 1}, 0.1);
    REQUIRE(c.size() == 2);
    CHECK(c[0].second == 1);
    CHECK(c[1].second == 1);
    CHECK(c[0].first.contains(1.0));
    auto d = isolate_zeros(shift(cos_sqrt, 1.0), {4 * pi * pi, 5, 5}, 0.01);
    REQUIRE(d.size() == 1);
    CHECK(d[0].second == 2);
    auto e = isolate_zeros(sinc_sqrt, {cplx(102.5, 0), 97.5, 2}, 1.0);
    int total = 0;
    for (auto& [r, n] : e) total += n;
    CHECK(total == 4);
    CHECK(e.size() == 4);
}

TEST_CASE("refine_newton", "[rootfind]") {
    auto z = refine_newton(shift(cos_sqrt, 1.0), 39.0, 2);
    CHECK(z.lambda.real() == Approx(4 * pi * pi).epsilon(1e-7));
    auto s = refine_newton(sinc_sqrt, 9.5, 1);
    CHECK(s.newton_converged);
    CHECK(s.lambda.real() == Approx(pi * pi).epsilon(1e-13));
    auto [f, fp] = sinc_sqrt(s.lambda);
    CHECK(std::abs(f) <= 1e-9 * std::max(1.0, std::abs(fp) * std::abs(s.lambda)));
}

TEST_CASE("real_scan examples", "[rootfind]") {
    auto z = real_scan(real_of(shift(cos_sqrt, 0.0)), 0.0, 50.0);
    REQUIRE(z.size() == 2);
    CHECK(z[0].lambda.real() == Approx(pi * pi / 4).epsilon(1e-12));
    CHECK(z[1].lambda.real() == Approx(9 * pi * pi / 4).epsilon(1e-12));
    auto t = real_scan(real_of(shift(cos_sqrt, -1.0)), 5.0, 50.0);
    REQUIRE(t.size() == 1);
    CHECK(t[0].multiplicity == 2);
    CHECK(t[0].lambda.real() == Approx(pi * pi).epsilon(1e-7));
    auto d = real_scan(real_of(sinc_sqrt), 5.0, 120.0);
    REQUIRE(d.size() == 3);
    for (int n = 1; n <= 3; ++n) CHECK(d[n - 1].lambda.real() == Approx(n * n * pi * pi).epsilon(1e-12));
    CHECK(real_scan(real_of(sinc_sqrt), 10.0, 30.0).empty());
}

TEST_CASE("rectangle count equals real scan count", "[rootfind]") {
    auto F = shift(cos_sqrt, 1.0);
    auto rz = real_scan(real_of(F), 1.0, 200.0);
    int s = 0;
    for (auto& z : rz) s += z.multiplicity;
    CHECK(count_zeros(F, Rect::from_bounds(1.0, 200.0, -1.0, 1.3)) == s);
}

TEST_CASE("locate_zeros combines isolation and the real line", "[rootfind]") {
    auto F = shift(cos_sqrt, 1.0);
    RealFn Fr = real_of(F);
    auto z = locate_zeros(F, &Fr, Rect::from_bounds(20.0, 200.0, -1.0, 1.1), 0.5);
    REQUIRE(z.size() == 2);
    CHECK(z[0].multiplicity == 2);
    CHECK(z[0].lambda.real() == Approx(4 * pi * pi).epsilon(1e-8));
    CHECK(z[1].lambda.real() == Approx(16 * pi * pi).epsilon(1e-8));
    AnalyticFn cx = [](cplx l) { return std::pair<cplx, cplx>{l * l + 1.0, 2.0 * l}; };
    auto w = locate_zeros(cx, nullptr, Rect::from_bounds(-1.0, 1.2, -2.0, 2.1), 0.1);
    REQUIRE(w.size() == 2);
    CHECK(std::abs(w[0].lambda - cplx(0, -1)) < 1e-12);
}
