#pragma once

#include "fundsol.hpp"

namespace hillbands {

struct DiscriminantSample {
    cplx lambda, delta, ddelta;
    cplx phi1, dtheta1, theta1, dphi1;
    FundamentalData fd;

    // delta^2 - 1 - ((theta1 - dphi1)/2)^2 - dtheta1 phi1
    double identity_residual() const {
        cplx a = (theta1 - dphi1) / 2.0;
        return std::abs(delta * delta - 1.0 - a * a - dtheta1 * phi1);
    }
};

inline DiscriminantSample make_sample(cplx lambda, const FundamentalData& fd) {
    DiscriminantSample s;
    s.lambda = lambda;
    s.delta = (fd.theta1 + fd.dphi1) / 2.0;
    s.ddelta = (fd.lam_derivs.theta1 + fd.lam_derivs.dphi1) / 2.0;
    s.theta1 = fd.theta1;
    s.dtheta1 = fd.dtheta1;
    s.phi1 = fd.phi1;
    s.dphi1 = fd.dphi1;
    s.fd = fd;
    return s;
}

inline DiscriminantSample discriminant(const PotentialSpec& spec, cplx lambda, const IntegratorConfig& cfg = {}) {
    return make_sample(lambda, integrate_fundamental(spec, lambda, 1.0, cfg));
}

// sin z / z as an entire function of lambda
inline cplx sinc_lambda(cplx lambda) { return free_pair(lambda, 1.0).s; }

inline cplx delta1(const PotentialSpec& spec, cplx lambda) { return sinc_lambda(lambda) / 2.0 * mean_V(spec, lambda); }

namespace detail {

// Integrates f(s,t) over the triangle 0<t<s<1: square panel pairs below the
// diagonal use tensor Gauss-Legendre, diagonal panels a Duffy map
// t = s0 + u (s - s0). f(s, vs, t) receives V(s) precomputed.
template <class F, class Acc>
void triangle_integral(const BoundPotential& bv, F&& f, Acc& total, int panels, int order) {
    const auto& g = gauss_legendre(order);
    double h = 1.0 / panels;
    std::vector<double> tn(panels * order);
    std::vector<cplx> vt(panels * order);
    for (int p = 0; p < panels; ++p)
        for (int j = 0; j < order; ++j) {
            tn[p * order + j] = p * h + h / 2 * (1 + g.x[j]);
            vt[p * order + j] = bv(tn[p * order + j]).first;
        }
    for (int ps = 0; ps < panels; ++ps) {
        double s0 = ps * h;
        for (int i = 0; i < order; ++i) {
            double s = tn[ps * order + i];
            cplx vs = vt[ps * order + i];
            double ws = g.w[i] * h / 2;
            for (int k = 0; k < ps * order; ++k) f(total, ws * g.w[k % order] * h / 2, s, vs, tn[k], vt[k]);
            double len = s - s0;
            for (int j = 0; j < order; ++j) {
                double t = s0 + len / 2 * (1 + g.x[j]);
                f(total, ws * g.w[j] * len / 2, s, vs, t, bv(t).first);
            }
        }
    }
}

}  // namespace detail

// Second correction in closed double-integral form; an equivalent entire form is used
// for |lambda| < 0.5 where 1/(4 z^2) would cancel.
inline cplx delta2(const PotentialSpec& spec, cplx lambda, const IntegratorConfig& cfg = {}) {
    if (spec.family == Family::Zero) return 0.0;
    BoundPotential bv(spec, lambda);
    ZNorm zn(lambda);
    const int order = 32;
    (void)cfg;
    double freq = 2 * std::abs(zn.z) + 4 * pi * potential_modes(spec);
    int panels = std::max(2, static_cast<int>(std::ceil(freq / 12.0)));
    if (std::abs(lambda) < 0.5) {
        cplx acc = 0;
        detail::triangle_integral(
            bv,
            [&](cplx& a, double w, double s, cplx vs, double t, cplx vt) {
                a += w * vs * vt * free_pair(lambda, 1 - s + t).s * free_pair(lambda, s - t).s;
            },
            acc, panels, order);
        return 0.5 * acc;
    }
    cplx z = zn.z;
    std::pair<cplx, cplx> acc{0.0, 0.0};
    detail::triangle_integral(
        bv,
        [&](std::pair<cplx, cplx>& a, double w, double s, cplx vs, double t, cplx vt) {
            cplx arg = 2.0 * z * (s - t);
            cplx wv = w * vs * vt;
            a.first += wv * std::cos(arg);
            a.second += wv * std::sin(arg);
        },
        acc, panels, order);
    cplx v0 = mean_V(spec, lambda);
    return (std::cos(z) * (acc.first - v0 * v0 / 2.0) + std::sin(z) * acc.second) / (4.0 * z * z);
}

struct EnvelopeResult {
    double residual, bound;
    bool ok;
    double slack;
};

// |Delta - cos z - [Delta_1] - [Delta_2]| against e_order. The comparison
// allows for the integrator's own error in Delta, which is not part of the
// analytic estimate.
inline EnvelopeResult envelope_check(const PotentialSpec& spec, cplx lambda, int order,
                                     const IntegratorConfig& cfg = {}) {
    if (order < 1 || order > 3) throw ConfigError("order must be 1, 2 or 3");
    ZNorm zn(lambda);
    cplx d = discriminant(spec, lambda, cfg).delta;
    cplx r = d - free_pair(lambda, 1.0).c;
    if (order > 1) r -= delta1(spec, lambda);
    if (order > 2) r -= delta2(spec, lambda, cfg);
    EnvelopeResult e;
    e.residual = std::abs(r);
    e.bound = error_envelope(spec, lambda, order);
    e.slack = 10 * (cfg.rel_tol + cfg.abs_tol) * std::exp(std::abs(zn.z.imag()));
    e.ok = e.residual <= e.bound + e.slack;
    return e;
}

}  // namespace hillbands
