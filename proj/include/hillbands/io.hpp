#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "boussinesq.hpp"
#include "reality.hpp"
#include "spectra.hpp"

namespace hillbands {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};

namespace detail {

inline void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto& [k, v] : j.items())
        if (!ok.count(k)) throw ParseError(where + ": unknown field '" + k + "'");
}

template <class T>
T field(const json& j, const char* name, const std::string& where) {
    if (!j.contains(name)) throw ParseError(where + ": missing field '" + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + "." + name + ": " + e.what());
    }
}

template <class T>
T field_or(const json& j, const char* name, T dflt, const std::string& where) {
    return j.contains(name) ? field<T>(j, name, where) : dflt;
}

inline json complex_list(const std::vector<cplx>& v) {
    json re = json::array(), im = json::array();
    for (auto c : v) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return {{"re", re}, {"im", im}};
}

inline std::vector<cplx> complex_list(const json& j, const std::string& where) {
    only_fields(j, {"re", "im"}, where);
    auto re = field<std::vector<double>>(j, "re", where);
    auto im = field_or<std::vector<double>>(j, "im", std::vector<double>(re.size(), 0.0), where);
    if (re.size() != im.size()) throw ParseError(where + ": re/im length mismatch");
    std::vector<cplx> out(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------- Fourier

inline json to_json(const FourierProfile& f) { return {{"a0", f.a0}, {"cos", f.cos_coeffs}, {"sin", f.sin_coeffs}}; }

inline FourierProfile profile_from_json(const json& j, const std::string& where = "profile") {
    detail::only_fields(j, {"a0", "cos", "sin"}, where);
    FourierProfile f;
    f.a0 = detail::field_or<double>(j, "a0", 0.0, where);
    f.cos_coeffs = detail::field_or<std::vector<double>>(j, "cos", {}, where);
    f.sin_coeffs = detail::field_or<std::vector<double>>(j, "sin", {}, where);
    return f;
}

// -------------------------------------------------------------- potentials

inline json to_json(const PotentialSpec& s) {
    json j{{"family", family_name(s.family)}};
    switch (s.family) {
        case Family::Zero: break;
        case Family::Constant: j["c"] = s.c; break;
        case Family::LambdaIndependent: j["q"] = to_json(s.q); break;
        case Family::Rational:
            j["q"] = to_json(s.q);
            j["shift"] = s.shift;
            break;
        case Family::Exp:
        case Family::Cos: {
            json t = json::array();
            for (auto& term : s.terms) t.push_back({{"kappa", term.kappa}, {"q", to_json(term.q)}});
            j["terms"] = t;
            break;
        }
        case Family::Tabulated:
            j["lambda0"] = {{"re", s.tab->lambda0.real()}, {"im", s.tab->lambda0.imag()}};
            j["x"] = s.tab->x;
            j["v"] = detail::complex_list(s.tab->v);
            j["dv"] = detail::complex_list(s.tab->dv);
            break;
    }
    return j;
}

namespace detail {
inline PotentialSpec potential_from_json_raw(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto fam = detail::field<std::string>(j, "family", where);
    PotentialSpec s;
    if (fam == "zero") {
        detail::only_fields(j, {"family"}, where);
    } else if (fam == "constant") {
        detail::only_fields(j, {"family", "c"}, where);
        s = PotentialSpec::constant(detail::field<double>(j, "c", where));
    } else if (fam == "lambda_independent") {
        detail::only_fields(j, {"family", "q"}, where);
        if (!j.contains("q")) throw ParseError(where + ": missing field 'q'");
        s = PotentialSpec::lambda_independent(profile_from_json(j.at("q"), where + ".q"));
    } else if (fam == "rational") {
        detail::only_fields(j, {"family", "q", "shift"}, where);
        if (!j.contains("q")) throw ParseError(where + ": missing field 'q'");
        s = PotentialSpec::rational(profile_from_json(j.at("q"), where + ".q"), detail::field<double>(j, "shift", where));
    } else if (fam == "exp" || fam == "cos") {
        detail::only_fields(j, {"family", "terms"}, where);
        if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError(where + ": 'terms' must be an array");
        std::vector<FamilyTerm> terms;
        int i = 0;
        for (auto& t : j.at("terms")) {
            std::string w = where + ".terms[" + std::to_string(i++) + "]";
            detail::only_fields(t, {"kappa", "q"}, w);
            if (!t.contains("q")) throw ParseError(w + ": missing field 'q'");
            terms.push_back({detail::field<double>(t, "kappa", w), profile_from_json(t.at("q"), w + ".q")});
        }
        s = fam == "exp" ? PotentialSpec::exp_family(terms) : PotentialSpec::cos_family(terms);
    } else if (fam == "tabulated") {
        detail::only_fields(j, {"family", "lambda0", "x", "v", "dv"}, where);
        auto tab = std::make_shared<TabulatedData>();
        if (j.contains("lambda0")) {
            const auto& l = j.at("lambda0");
            detail::only_fields(l, {"re", "im"}, where + ".lambda0");
            tab->lambda0 = {detail::field_or<double>(l, "re", 0.0, where), detail::field_or<double>(l, "im", 0.0, where)};
        }
        tab->x = detail::field<std::vector<double>>(j, "x", where);
        if (!j.contains("v") || !j.contains("dv")) throw ParseError(where + ": tabulated needs 'v' and 'dv'");
        tab->v = detail::complex_list(j.at("v"), where + ".v");
        tab->dv = detail::complex_list(j.at("dv"), where + ".dv");
        if (tab->v.size() != tab->x.size() || tab->dv.size() != tab->x.size())
            throw ParseError(where + ": tabulated arrays differ in length");
        tab->init_weights();
        s = PotentialSpec::tabulated(tab);
    } else {
        throw ParseError(where + ": unknown family '" + fam + "'");
    }
    s.validate();
    return s;
}
}  // namespace detail

inline PotentialSpec potential_from_json(const json& j, const std::string& where = "potential") {
    try {
        return detail::potential_from_json_raw(j, where);
    } catch (const ParseError&) {
        throw;
    } catch (const ConfigError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline json to_json(const ThirdOrderCoeffs& c) { return {{"p", to_json(c.p)}, {"q", to_json(c.q)}}; }

inline ThirdOrderCoeffs coeffs_from_json(const json& j, const std::string& where = "coeffs") {
    detail::only_fields(j, {"p", "q"}, where);
    ThirdOrderCoeffs c;
    if (j.contains("p")) c.p = profile_from_json(j.at("p"), where + ".p");
    if (j.contains("q")) c.q = profile_from_json(j.at("q"), where + ".q");
    return c;
}

inline json to_json(const IntegratorConfig& c) {
    return {{"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol}, {"max_steps", c.max_steps}, {"quadrature_order", c.quadrature_order}};
}

inline IntegratorConfig integrator_from_json(const json& j, const std::string& where = "tolerances") {
    detail::only_fields(j, {"rel_tol", "abs_tol", "max_steps", "quadrature_order"}, where);
    IntegratorConfig c;
    c.rel_tol = detail::field_or<double>(j, "rel_tol", c.rel_tol, where);
    c.abs_tol = detail::field_or<double>(j, "abs_tol", c.abs_tol, where);
    c.max_steps = detail::field_or<long>(j, "max_steps", c.max_steps, where);
    c.quadrature_order = detail::field_or<int>(j, "quadrature_order", c.quadrature_order, where);
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ParseError(where + ": " + e.what());
    }
    return c;
}

// ------------------------------------------------------------------ output

inline json to_json(const DomainSpec& d) {
    switch (d.kind) {
        case DomainSpec::Kind::HalfPlane: return {{"kind", "half_plane"}, {"a", d.a}};
        case DomainSpec::Kind::HalfStrip: return {{"kind", "half_strip"}, {"a", d.a}, {"r", d.r}};
        case DomainSpec::Kind::Rect: return {{"kind", "rect"}, {"a", d.a}, {"b", d.b}, {"r", d.r}};
        case DomainSpec::Kind::Sector: return {{"kind", "sector"}, {"R", d.R}, {"angle", d.angle}};
    }
    return {};
}

// Non-finite doubles have no JSON literal; they are written as strings.
inline json number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

inline json to_json(const RealityCertificate& c) {
    json j{{"kind", kind_name(c.kind)},      {"region", to_json(c.region)},     {"xi", number(c.xi_value)},
           {"threshold", number(c.threshold)}, {"certified", c.certified},        {"margin", number(c.margin)},
           {"real_lo", number(c.real_lo)},   {"real_hi", number(c.real_hi)}};
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

inline json to_json(const Eigenvalue& e) {
    return {{"problem", problem_name(e.problem)},
            {"k", e.k},
            {"re", e.lambda.real()},
            {"im", e.lambda.imag()},
            {"multiplicity", e.multiplicity},
            {"index", e.index},
            {"branch", e.branch},
            {"residual", e.residual}};
}

inline json to_json(const ZetaRoot& z) {
    return {{"re", z.zeta.real()}, {"im", z.zeta.imag()},      {"multiplicity", z.multiplicity},
            {"n", z.n},            {"branch", z.branch},       {"residual", z.residual}};
}

inline json to_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}, {"index", i.index}}; }

inline json to_json(const BandStructure& b) {
    json bands = json::array(), gaps = json::array(), raw = json::array();
    for (auto& i : b.bands) bands.push_back(to_json(i));
    for (auto& i : b.gaps) gaps.push_back(to_json(i));
    for (auto& e : b.raw) raw.push_back(to_json(e));
    json j{{"bands", bands}, {"gaps", gaps}, {"refused", b.refused}, {"certificate", to_json(b.certificate)}, {"raw", raw}};
    if (!b.reason.empty()) j["reason"] = b.reason;
    return j;
}

// -------------------------------------------------------------------- files

inline json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline PotentialSpec load_potential(const std::string& path) { return potential_from_json(load_json_file(path), path); }
inline ThirdOrderCoeffs load_coeffs(const std::string& path) { return coeffs_from_json(load_json_file(path), path); }

}  // namespace hillbands
