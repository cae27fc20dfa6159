#pragma once

#include <optional>
#include <vector>

#include "ode.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"

namespace hillbands {

struct LamDerivs {
    cplx theta1 = 0, dtheta1 = 0, phi1 = 0, dphi1 = 0;
};

struct FundamentalData {
    cplx theta1 = 1, dtheta1 = 0, phi1 = 0, dphi1 = 1;
    LamDerivs lam_derivs;
    bool has_lam_derivs = false;
    // Picard path: guaranteed remainder bound (weighted components).
    // RK path: an a-posteriori estimate only.
    double err_bound = 0;
    double x_end = 1;
    long steps = 0;
};

inline double wronskian_defect(const FundamentalData& fd) {
    return std::abs(fd.theta1 * fd.dphi1 - fd.dtheta1 * fd.phi1 - 1.0);
}

namespace detail {

// Error norm for the stacked (theta, phi) system: components are rescaled by
// the |z|_1 weights so each solution pair is O(1)-comparable, and each pair is
// measured against its own size.
template <std::size_t N>
struct PairNorm {
    double z1;
    double operator()(const CState<N>& y, const CState<N>& yn, const CState<N>& err, double rtol, double atol) const {
        double e = 0;
        for (std::size_t g = 0; g < N / 2; ++g) {
            double w0 = (g % 2 == 0) ? 1.0 : z1;        // theta-like or phi-like value weight
            double w1 = (g % 2 == 0) ? 1.0 / z1 : 1.0;  // derivative weight
            double sc = std::max({w0 * std::abs(y[2 * g]), w1 * std::abs(y[2 * g + 1]), w0 * std::abs(yn[2 * g]),
                                  w1 * std::abs(yn[2 * g + 1])});
            double eg = std::max(w0 * std::abs(err[2 * g]), w1 * std::abs(err[2 * g + 1]));
            e = std::max(e, eg / (atol + rtol * sc));
        }
        return e;
    }
};

inline double initial_step(cplx lambda) { return 0.25 / (1.0 + std::sqrt(std::abs(lambda))); }

// Local error control runs tighter than the requested tolerance so that the
// accumulated global error stays within a small multiple of rel_tol.
inline IntegratorConfig local_tolerances(const IntegratorConfig& cfg) {
    IntegratorConfig c = cfg;
    c.rel_tol *= 0.05;
    c.abs_tol *= 0.05;
    return c;
}

}  // namespace detail

// Fundamental solutions at x_end with their lambda-derivatives.
inline FundamentalData integrate_fundamental(const PotentialSpec& spec, cplx lambda, double x_end = 1.0,
                                             const IntegratorConfig& cfg = {}) {
    if (!(x_end > 0)) throw ConfigError("x_end must be positive");
    BoundPotential bv(spec, lambda);
    ZNorm zn(lambda);
    FundamentalData fd;
    fd.x_end = x_end;
    if (spec.family == Family::Zero || spec.family == Family::Constant) {
        // constant coefficients: closed form with mu = lambda - c
        double c = spec.family == Family::Constant ? spec.c : 0.0;
        cplx mu = lambda - c;
        FreePair f = free_pair(mu, x_end);
        fd.theta1 = f.c;
        fd.dtheta1 = f.dc;
        fd.phi1 = f.s;
        fd.dphi1 = f.ds;
        // d/dmu via the variational formulas in closed form
        // dC/dmu = -x S/2, dS/dmu = (x C - S)/(2 mu)  (series near 0)
        double x = x_end;
        cplx dS;
        if (std::abs(mu * x * x) < 0.5) {
            // S = x sum (-mu x^2)^k/(2k+1)!  => dS/dmu = x sum k (-x^2)^k mu^(k-1)/(2k+1)!
            cplx sum = 0, term = 1;  // term = (-mu x^2)^(k-1)/(2k+1)! * (-x^2) * k
            cplx w = -mu * x * x;
            cplx p = 1;  // w^(k-1)
            double fact = 6;  // (2k+1)! for k=1
            for (int k = 1; k < 40; ++k) {
                term = double(k) * p * (-x * x) / fact;
                sum += term;
                p *= w;
                fact *= (2.0 * k + 2) * (2.0 * k + 3);
                if (std::abs(term) < 1e-18 && k > 2) break;
            }
            dS = x * sum;
        } else {
            dS = (x * f.c - f.s) / (2.0 * mu);
        }
        cplx dC = -x * f.s / 2.0;
        fd.lam_derivs.theta1 = dC;
        fd.lam_derivs.phi1 = dS;
        fd.lam_derivs.dphi1 = dC;                        // phi' = C
        fd.lam_derivs.dtheta1 = -f.s - mu * dS;          // theta' = -mu S
        fd.has_lam_derivs = true;
        fd.err_bound = 0;
        return fd;
    }
    auto rhs = [&](double x, const CState<8>& y) {
        auto [v, dv] = bv(x);
        cplx w = v - lambda, g = dv - 1.0;
        return CState<8>{y[1], w * y[0], y[3], w * y[2], y[5], w * y[4] + g * y[0], y[7], w * y[6] + g * y[2]};
    };
    CState<8> y0{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    long steps = 0;
    auto y = dopri5<8>(rhs, y0, 0.0, x_end, detail::local_tolerances(cfg), detail::PairNorm<8>{zn.z1}, std::span<const double>{},
                       [](std::size_t, const CState<8>&) {}, detail::initial_step(lambda), &steps);
    fd.theta1 = y[0];
    fd.dtheta1 = y[1];
    fd.phi1 = y[2];
    fd.dphi1 = y[3];
    fd.lam_derivs = {y[4], y[5], y[6], y[7]};
    fd.has_lam_derivs = true;
    fd.steps = steps;
    double scale = std::max({std::abs(y[0]), std::abs(y[1]) / zn.z1, zn.z1 * std::abs(y[2]), std::abs(y[3])});
    fd.err_bound = 10 * cfg.rel_tol * scale;
    return fd;
}

struct SolutionSample {
    double x;
    cplx theta, dtheta, phi, dphi;
};

// theta, phi and derivatives on an increasing mesh in [0, x_end].
inline std::vector<SolutionSample> sample_fundamental(const PotentialSpec& spec, cplx lambda,
                                                      const std::vector<double>& mesh, const IntegratorConfig& cfg = {}) {
    BoundPotential bv(spec, lambda);
    ZNorm zn(lambda);
    std::vector<SolutionSample> out;
    out.reserve(mesh.size());
    std::vector<double> stops;
    for (double x : mesh) {
        if (x <= 0) out.push_back({x, 1.0, 0.0, 0.0, 1.0});
        else stops.push_back(x);
    }
    if (stops.empty()) return out;
    auto rhs = [&](double x, const CState<4>& y) {
        cplx w = bv(x).first - lambda;
        return CState<4>{y[1], w * y[0], y[3], w * y[2]};
    };
    dopri5<4>(rhs, CState<4>{1.0, 0.0, 0.0, 1.0}, 0.0, stops.back(), detail::local_tolerances(cfg), detail::PairNorm<4>{zn.z1},
              std::span<const double>(stops),
              [&](std::size_t i, const CState<4>& y) { out.push_back({stops[i], y[0], y[1], y[2], y[3]}); },
              detail::initial_step(lambda));
    return out;
}

// Picard partial sums sum_{n<=N} theta_n, phi_n at x = 1 and a guaranteed
// bound on the remainder.
inline FundamentalData picard_fundamental(const PotentialSpec& spec, cplx lambda, int N,
                                          const IntegratorConfig& cfg = {}) {
    if (N < 0) throw ConfigError("N must be nonnegative");
    BoundPotential bv(spec, lambda);
    ZNorm zn(lambda);
    const int order = 12;
    int modes = potential_modes(spec);
    int panels = std::max(8, static_cast<int>(std::ceil(8 * (std::abs(zn.z) + 2 * pi * modes) / (2 * pi))));
    const auto& g = gauss_legendre(order);
    // reference integration matrix S(i,j) = int_{-1}^{x_i} l_j(t) dt
    std::vector<double> S(order * order);
    {
        auto lag = [&](int j, double t) {
            double v = 1;
            for (int m = 0; m < order; ++m)
                if (m != j) v *= (t - g.x[m]) / (g.x[j] - g.x[m]);
            return v;
        };
        for (int i = 0; i < order; ++i) {
            double lo = -1, hi = g.x[i];
            for (int j = 0; j < order; ++j) {
                double acc = 0;
                for (int k = 0; k < order; ++k) acc += g.w[k] * lag(j, (lo + hi) / 2 + (hi - lo) / 2 * g.x[k]);
                S[i * order + j] = acc * (hi - lo) / 2;
            }
        }
    }
    const int M = panels * order;
    const double h = 1.0 / panels;
    std::vector<double> xs(M);
    std::vector<cplx> V(M), C(M), Sx(M);
    for (int p = 0; p < panels; ++p)
        for (int i = 0; i < order; ++i) {
            double x = p * h + h / 2 * (1 + g.x[i]);
            int k = p * order + i;
            xs[k] = x;
            V[k] = bv(x).first;
            FreePair fp = free_pair(lambda, x);
            C[k] = fp.c;
            Sx[k] = fp.s;
        }
    FreePair f1 = free_pair(lambda, 1.0);

    // One Picard step: given y_{n-1} at nodes return y_n at nodes and (y_n(1), y_n'(1)).
    auto step = [&](const std::vector<cplx>& prev, std::vector<cplx>& next, cplx& end_val, cplx& end_der) {
        cplx ic = 0, is = 0;  // cumulative integrals at panel start
        next.assign(M, 0.0);
        std::vector<cplx> fc(order), fs(order);
        for (int p = 0; p < panels; ++p) {
            for (int i = 0; i < order; ++i) {
                int k = p * order + i;
                cplx gk = V[k] * prev[k];
                fc[i] = C[k] * gk;
                fs[i] = Sx[k] * gk;
            }
            for (int i = 0; i < order; ++i) {
                cplx pc = 0, ps = 0;
                for (int j = 0; j < order; ++j) {
                    pc += S[i * order + j] * fc[j];
                    ps += S[i * order + j] * fs[j];
                }
                int k = p * order + i;
                cplx Ic = ic + pc * (h / 2), Is = is + ps * (h / 2);
                next[k] = Sx[k] * Ic - C[k] * Is;
            }
            cplx tc = 0, ts = 0;
            for (int j = 0; j < order; ++j) {
                tc += g.w[j] * fc[j];
                ts += g.w[j] * fs[j];
            }
            ic += tc * (h / 2);
            is += ts * (h / 2);
        }
        end_val = f1.s * ic - f1.c * is;
        end_der = f1.c * ic + lambda * f1.s * is;
    };

    FundamentalData fd;
    fd.theta1 = f1.c;
    fd.dtheta1 = f1.dc;
    fd.phi1 = f1.s;
    fd.dphi1 = f1.ds;
    std::vector<cplx> th = C, ph = Sx, nx;
    for (int n = 1; n <= N; ++n) {
        cplx v, d;
        step(th, nx, v, d);
        th.swap(nx);
        fd.theta1 += v;
        fd.dtheta1 += d;
        step(ph, nx, v, d);
        ph.swap(nx);
        fd.phi1 += v;
        fd.dphi1 += d;
    }
    double nv = potential_norm(spec, lambda, std::max(64, cfg.quadrature_order));
    fd.err_bound = std::pow(nv / zn.z1, N + 1) * std::exp(std::abs(zn.z.imag()) + nv / zn.z1);
    fd.has_lam_derivs = false;
    fd.x_end = 1.0;
    return fd;
}

// Smallest N with bound < 1e-8, capped at 12.
inline int picard_default_order(const PotentialSpec& spec, cplx lambda) {
    ZNorm zn(lambda);
    double nv = potential_norm(spec, lambda);
    for (int N = 0; N < 12; ++N)
        if (std::pow(nv / zn.z1, N + 1) * std::exp(std::abs(zn.z.imag()) + nv / zn.z1) < 1e-8) return N;
    return 12;
}

// Envelope e_j(lambda) of the j-th discriminant correction.
inline double error_envelope(const PotentialSpec& spec, cplx lambda, int j) {
    if (j < 0) throw ConfigError("j must be nonnegative");
    ZNorm zn(lambda);
    double nv = potential_norm(spec, lambda);
    return std::pow(nv, j) / std::pow(zn.z1, j) * std::exp(std::abs(zn.z.imag()) + nv / zn.z1);
}

}  // namespace hillbands
