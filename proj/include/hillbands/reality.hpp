#pragma once

#include <optional>
#include <string>

#include "potentials.hpp"

namespace hillbands {

struct RealityConfig {
    // 2 - sqrt(3) in the half-plane threshold; whether it can be enlarged is
    // not known, so it stays adjustable.
    double phi = 2.0 - std::sqrt(3.0);
    int grid = 32;  // per direction, doubled once or twice
};

struct RealityCertificate {
    enum class Kind { DerivativeStrip, HalfPlane, Rect, HalfStrip } kind = Kind::HalfPlane;
    DomainSpec region;
    double xi_value = 0;
    double derivative_sup = 0;
    double threshold = 0;  // a + rho (half-plane), a + r (strips), or 1 (derivative)
    bool certified = false;
    double margin = 0;
    std::string reason;
    // certified real segment of the axis: (real_lo, real_hi)
    double real_lo = 0, real_hi = std::numeric_limits<double>::infinity();
};

inline const char* kind_name(RealityCertificate::Kind k) {
    switch (k) {
        case RealityCertificate::Kind::DerivativeStrip: return "derivative_strip";
        case RealityCertificate::Kind::HalfPlane: return "half_plane";
        case RealityCertificate::Kind::Rect: return "rect";
        case RealityCertificate::Kind::HalfStrip: return "half_strip";
    }
    return "?";
}

struct UnsupportedRegion : Error {
    using Error::Error;
};

inline double eta(const PotentialSpec& spec, double x, cplx lambda) {
    return eval_V(spec, x, lambda).imag() - lambda.imag();
}

namespace detail {

inline double family_sup_bound(const PotentialSpec& s) {
    double t = 0;
    for (auto& term : s.terms) t += term.q.sup_bound();
    return t;
}

// smallest Re(lambda) over the region
inline double region_re_min(const DomainSpec& d) {
    if (d.kind == DomainSpec::Kind::Sector) {
        if (d.angle >= pi / 2) return -std::numeric_limits<double>::infinity();
        return d.R * std::cos(d.angle);
    }
    return d.a;
}

inline double region_nu_max(const DomainSpec& d) {
    if (d.kind == DomainSpec::Kind::Sector) return std::numeric_limits<double>::infinity();
    return d.nu_max();
}

// sup over [0,1] x (sample of the region) of f(x, lambda)
template <class F>
double grid_sup(const DomainSpec& d, int n, F&& f) {
    double re0 = region_re_min(d), re1, im1;
    if (!std::isfinite(re0)) re0 = -d.R;
    if (d.kind == DomainSpec::Kind::Rect) re1 = d.b;
    else re1 = re0 + 64.0;
    im1 = std::min(region_nu_max(d), 8.0);
    double best = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            // open region: stay off the boundary by half a cell
            double mu = re0 + (re1 - re0) * (i + 0.5) / (n + 1);
            double nu = -im1 + 2 * im1 * (j + 0.5) / (n + 1);
            cplx l(mu, nu);
            if (!d.contains(l)) continue;
            for (int k = 0; k < n; ++k) best = std::max(best, std::abs(f((k + 0.5) / n, l)));
        }
    return best;
}

template <class F>
double refined_grid_sup(const DomainSpec& d, int n, F&& f) {
    double prev = grid_sup(d, n, f);
    for (int it = 0; it < 2; ++it) {
        n *= 2;
        double cur = grid_sup(d, n, f);
        if (std::abs(cur - prev) <= 0.01 * std::max(cur, 1e-300)) return std::max(cur, prev);
        prev = std::max(cur, prev);
    }
    return prev;
}

}  // namespace detail

// Upper bound for sup |Im V| over [0,1] x region. Families with closed-form
// bounds report max(grid sup, bound); others need a bounded region.
inline double xi_functional(const PotentialSpec& spec, const DomainSpec& region, const RealityConfig& cfg = {},
                            bool with_grid = true) {
    region.validate();
    double nu = detail::region_nu_max(region);
    double re0 = detail::region_re_min(region);
    std::optional<double> tail;
    switch (spec.family) {
        case Family::Zero:
        case Family::Constant:
        case Family::LambdaIndependent: return 0.0;
        case Family::Exp: {
            if (!std::isfinite(re0)) throw UnsupportedRegion("exp family: region unbounded to the left");
            double t = 0;
            for (auto& term : spec.terms)
                t += term.q.sup_bound() * std::exp(-term.kappa * re0) * std::min(1.0, term.kappa * nu);
            tail = t;
            break;
        }
        case Family::Cos: {
            if (!std::isfinite(nu)) throw UnsupportedRegion("cos family: needs a region of bounded height");
            double t = 0;
            for (auto& term : spec.terms) t += term.q.sup_bound() * std::sinh(term.kappa * nu);
            tail = t;
            break;
        }
        case Family::Rational: {
            double dist = re0 + spec.shift;
            if (!(dist > 0)) throw DomainError("region reaches the pole of the rational family");
            tail = spec.q.sup_bound() / dist;
            break;
        }
        case Family::Tabulated:
            if (!region.bounded()) throw UnsupportedRegion("tabulated potential: no tail bound");
            break;
    }
    if (tail && !with_grid) return *tail;
    auto q = [&](double x, cplx l) { return eval_V(spec, x, l).imag(); };
    double g = detail::refined_grid_sup(region, cfg.grid, q);
    return tail ? std::max(*tail, g) : g;
}

// sup |Re dV/dlambda| over [0,1] x [lo, hi] (real interval).
inline double dQ_dnu_sup(const PotentialSpec& spec, double lo, double hi, const RealityConfig& cfg = {}) {
    std::optional<double> tail;
    switch (spec.family) {
        case Family::Zero:
        case Family::Constant:
        case Family::LambdaIndependent: return 0.0;
        case Family::Exp: {
            double t = 0;
            for (auto& term : spec.terms) t += term.kappa * term.q.sup_bound() * std::exp(-term.kappa * lo);
            tail = t;
            break;
        }
        case Family::Cos: {
            double t = 0;
            for (auto& term : spec.terms) t += term.kappa * term.q.sup_bound();
            tail = t;
            break;
        }
        case Family::Rational: {
            double d = lo + spec.shift;
            if (!(d > 0)) throw DomainError("interval reaches the pole of the rational family");
            tail = spec.q.sup_bound() / (d * d);
            break;
        }
        case Family::Tabulated:
            if (!std::isfinite(hi)) throw UnsupportedRegion("tabulated potential: no tail bound");
            break;
    }
    double top = std::isfinite(hi) ? hi : lo + 64.0;
    int n = cfg.grid * 4;
    double best = 0;
    for (int i = 0; i <= n; ++i) {
        double l = lo + (top - lo) * i / n;
        if (spec.family == Family::Rational && l + spec.shift <= 0) continue;
        for (int k = 0; k < cfg.grid * 2; ++k)
            best = std::max(best, std::abs(eval_dV(spec, (k + 0.5) / (cfg.grid * 2), l).real()));
    }
    return tail ? std::max(*tail, best) : best;
}

inline RealityCertificate certify_derivative_strip(const PotentialSpec& spec, double lo, double hi,
                                                   const RealityConfig& cfg = {}) {
    RealityCertificate c;
    c.kind = RealityCertificate::Kind::DerivativeStrip;
    c.region = std::isfinite(hi) ? DomainSpec::rect(lo, hi, 1.0) : DomainSpec::half_plane(lo);
    c.derivative_sup = dQ_dnu_sup(spec, lo, hi, cfg);
    c.threshold = 1.0;
    c.margin = 1.0 - c.derivative_sup;
    c.certified = c.margin > 0;
    if (!c.certified) c.reason = "sup |dQ/dnu| >= 1";
    c.real_lo = lo;
    c.real_hi = hi;
    return c;
}

// Half-plane certificate; with nu0 the domain is the strip |Im| < nu0.
inline RealityCertificate certify_halfplane(const PotentialSpec& spec, double a, std::optional<double> nu0 = {},
                                            const RealityConfig& cfg = {}, bool with_grid = true) {
    RealityCertificate c;
    c.kind = RealityCertificate::Kind::HalfPlane;
    c.region = nu0 ? DomainSpec::half_strip(a, *nu0) : DomainSpec::half_plane(a);
    try {
        c.xi_value = xi_functional(spec, c.region, cfg, with_grid);
    } catch (const Error& e) {
        c.certified = false;
        c.reason = e.what();
        c.xi_value = std::numeric_limits<double>::infinity();
        c.threshold = std::numeric_limits<double>::infinity();
        return c;
    }
    double rho = c.xi_value / cfg.phi;
    c.threshold = a + rho;
    c.margin = std::numeric_limits<double>::infinity();
    if (nu0) c.margin = *nu0 - rho;
    if (spec.family == Family::Rational) c.margin = std::min(c.margin, a + spec.shift);
    if (spec.family == Family::Tabulated) {
        c.margin = -1;
        c.reason = "tabulated potential has no analytic continuation in lambda";
    }
    c.certified = c.margin > 0;
    if (!c.certified && c.reason.empty()) c.reason = "strip (a, inf) x (-rho, rho) leaves the domain";
    c.real_lo = c.threshold;
    return c;
}

// Strip certificate: xi over Pi_{a,b}(r) at most r (1-phi)^2 / 2 certifies
// Pi_{a+r, b-r}(phi r). b = +inf gives the half-strip version.
inline RealityCertificate certify_strip(const PotentialSpec& spec, double a, double b, double r, double phi,
                                        const RealityConfig& cfg = {}) {
    if (!(r > 0) || !(phi > 0 && phi < 1)) throw ConfigError("certify_strip: need r > 0 and 0 < phi < 1");
    bool half = !std::isfinite(b);
    if (!half && !(b > a + 2 * r)) throw ConfigError("certify_strip: need b > a + 2r");
    RealityCertificate c;
    c.kind = half ? RealityCertificate::Kind::HalfStrip : RealityCertificate::Kind::Rect;
    c.region = half ? DomainSpec::half_strip(a, r) : DomainSpec::rect(a, b, r);
    c.xi_value = xi_functional(spec, c.region, cfg);
    double need = r * (1 - phi) * (1 - phi) / 2;
    c.margin = need - c.xi_value;
    c.certified = c.margin >= 0;
    c.threshold = a + r;
    c.real_lo = a + r;
    c.real_hi = half ? std::numeric_limits<double>::infinity() : b - r;
    if (!c.certified) c.reason = "xi exceeds r (1 - phi)^2 / 2";
    return c;
}

inline double poisson_derivative_bound(double f_max, double r, double nu) {
    if (!(std::abs(nu) < r)) throw ConfigError("poisson_derivative_bound: need |nu| < r");
    return 2 * r * f_max / ((r - std::abs(nu)) * (r - std::abs(nu)));
}

// A certificate whose real segment starts at or below lo, if one exists.
inline RealityCertificate certify_interval(const PotentialSpec& spec, double lo, const RealityConfig& cfg = {}) {
    if (spec.energy_independent()) return certify_halfplane(spec, lo, {}, cfg);
    if (spec.family == Family::Tabulated) return certify_halfplane(spec, lo, {}, cfg);
    if (spec.family == Family::Cos) {
        // rho does not depend on a; pick the smallest tried nu0 that contains the strip
        RealityCertificate best;
        best.certified = false;
        best.threshold = std::numeric_limits<double>::infinity();
        for (double nu0 : {0.125, 0.25, 0.5, 1.0, 2.0}) {
            double rho = certify_halfplane(spec, 0.0, nu0, cfg, false).threshold;
            auto c = certify_halfplane(spec, lo - rho, nu0, cfg, false);
            if (c.certified && c.threshold <= lo + 1e-12) return certify_halfplane(spec, lo - rho, nu0, cfg);
            if (c.threshold < best.threshold) best = c;
        }
        return best;
    }
    // exp / rational: bisect on the closed-form bound, then recheck with the grid
    double floor_a = spec.family == Family::Rational ? -spec.shift + 1e-9 : lo - 1e3;
    auto fast = [&](double a) { return certify_halfplane(spec, a, {}, cfg, false); };
    auto ok = [&](const RealityCertificate& c) { return c.certified && c.threshold <= lo; };
    if (!fast(lo).certified) return certify_halfplane(spec, lo, {}, cfg);
    double a0 = floor_a, a1 = lo;
    if (ok(fast(a0))) {
        a1 = a0;
    } else {
        for (int it = 0; it < 60; ++it) {
            double m = (a0 + a1) / 2;
            if (ok(fast(m))) a1 = m;
            else a0 = m;
        }
    }
    auto c = certify_halfplane(spec, a1, {}, cfg);
    // the grid can only raise xi; step a down a little while it helps
    for (int it = 0; it < 20 && c.certified && c.threshold > lo && a1 - floor_a > 1e-9; ++it) {
        a1 = std::max(floor_a, a1 - (c.threshold - lo));
        c = certify_halfplane(spec, a1, {}, cfg);
    }
    return c;
}

// sup_x |Im V| over a small disc around lambda0 (centre and 8 rim points).
inline double xi_disc(const PotentialSpec& spec, cplx lambda0, double radius, int nx = 256) {
    if (spec.energy_independent()) return 0.0;
    double best = 0;
    for (int j = -1; j < 8; ++j) {
        cplx l = j < 0 ? lambda0 : lambda0 + radius * std::exp(I * (2 * pi * j / 8));
        BoundPotential bv(spec, l);
        for (int k = 0; k <= nx; ++k) best = std::max(best, std::abs(bv(double(k) / nx).first.imag()));
    }
    return best;
}

}  // namespace hillbands
