#include <catch_amalgamated.hpp>

#include "hillbands/io.hpp"

using namespace hillbands;

namespace {
std::string fixture(const std::string& name) { return std::string(HILLBANDS_FIXTURES) + "/" + name; }
}  // namespace

TEST_CASE("shipped fixtures load", "[io]") {
    for (auto name : {"zero", "constant", "mathieu", "exp01", "cos01", "rational", "cos_strong"}) {
        INFO(name);
        CHECK_NOTHROW(load_potential(fixture(std::string(name) + ".json")));
    }
    auto e = load_potential(fixture("exp01.json"));
    CHECK(e.family == Family::Exp);
    CHECK(e.terms.size() == 2);
    auto r = load_potential(fixture("rational.json"));
    CHECK(r.shift == 1.0);
    CHECK(r.q.cos_coeffs == std::vector<double>{0.5});
    auto c = load_coeffs(fixture("pq.json"));
    CHECK(c.p.cos_coeffs == std::vector<double>{0.1});
    CHECK(c.q.sin_coeffs == std::vector<double>{0.05});
}

TEST_CASE("potential round trip", "[io]") {
    std::vector<PotentialSpec> specs{
        PotentialSpec::zero(),
        PotentialSpec::constant(-1.25),
        PotentialSpec::lambda_independent({0.1, {2.0, 0.3}, {0.0, -0.7}}),
        PotentialSpec::exp_family({{0.5, {0.0, {0.06}, {}}}, {1.5, {0.04, {}, {}}}}),
        PotentialSpec::cos_family({{1.0, {0.0, {0.1}, {0.2}}}}),
        PotentialSpec::rational({0.0, {0.5}, {}}, 1.0),
    };
    auto red = reduce_to_hill(ThirdOrderCoeffs{{0, {0.1}, {}}, {}}, 900.0, {});
    specs.push_back(red.spec);
    for (auto& s : specs) {
        json j = to_json(s);
        auto back = potential_from_json(parse_json_text(j.dump(), "mem"));
        CHECK(to_json(back) == j);
        for (double x : {0.0, 0.13, 0.5, 0.97}) {
            cplx l(7.5, 0.25);
            CHECK(eval_V(back, x, l) == eval_V(s, x, l));
            CHECK(eval_dV(back, x, l) == eval_dV(s, x, l));
        }
    }
}

TEST_CASE("malformed and unknown input is rejected", "[io]") {
    CHECK_THROWS_AS(parse_json_text("{\"family\": \"zero\",", "mem"), ParseError);
    auto bad = [](const char* text) { return potential_from_json(json::parse(text)); };
    CHECK_THROWS_AS(bad(R"({"family": "zero", "extra": 1})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"family": "bessel"})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"family": "constant"})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"family": "constant", "c": "two"})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"family": "exp", "terms": [{"kappa": 1, "q": {"a0": 1, "tan": [1]}}]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"family": "exp", "terms": []})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"family": "cos", "terms": [{"kappa": 2, "q": {}}, {"kappa": 1, "q": {}}]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"family": "lambda_independent"})"), ParseError);
    CHECK_THROWS_AS(coeffs_from_json(json::parse(R"({"p": {}, "r": {}})")), ParseError);
    CHECK_THROWS_AS(integrator_from_json(json::parse(R"({"rel_tol": -1})")), ParseError);
    CHECK_THROWS_AS(load_potential(fixture("does_not_exist.json")), ParseError);
    try {
        bad(R"({"family": "rational", "q": {"a0": 1}, "shift": 1, "scale": 2})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("scale") != std::string::npos);
    }
}

TEST_CASE("output records", "[io]") {
    Eigenvalue e;
    e.lambda = {9.8696, 0};
    e.problem = Problem::Dirichlet;
    e.index = 1;
    auto j = to_json(e);
    CHECK(j["problem"] == problem_name(Problem::Dirichlet));
    CHECK(j["re"] == 9.8696);
    CHECK(j["index"] == 1);
    RealityCertificate c;
    c.region = DomainSpec::half_plane(0);
    auto cj = to_json(c);
    for (auto k : {"kind", "region", "xi", "threshold", "certified", "margin"}) CHECK(cj.contains(k));
    CHECK(cj["real_hi"] == "inf");
    IntegratorConfig ic;
    ic.rel_tol = 1e-9;
    CHECK(integrator_from_json(to_json(ic)).rel_tol == 1e-9);
}
