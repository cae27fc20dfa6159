#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "core.hpp"

namespace hillbands {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 200000;
    int quadrature_order = 32;

    void validate() const {
        if (!(rel_tol > 0 && abs_tol > 0)) throw ConfigError("tolerances must be positive");
        if (max_steps < 1000) throw ConfigError("max_steps must be at least 1000");
    }
};

template <std::size_t N>
using CState = std::array<cplx, N>;

// Default error norm: per-component mixed absolute/relative measure.
struct ComponentNorm {
    template <std::size_t N>
    double operator()(const CState<N>& y, const CState<N>& yn, const CState<N>& err, double rtol, double atol) const {
        double e = 0;
        for (std::size_t i = 0; i < N; ++i) {
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(yn[i]));
            e = std::max(e, std::abs(err[i]) / sc);
        }
        return e;
    }
};

// Dormand-Prince 5(4) with step rejection. Steps are clipped so that every
// point in `stops` (increasing, inside (x0, x1]) is hit exactly; `observe`
// is called as observe(index, y) there.
template <std::size_t N, class Rhs, class Norm, class Observe>
CState<N> dopri5(Rhs&& f, CState<N> y, double x0, double x1, const IntegratorConfig& cfg, Norm&& norm,
                 std::span<const double> stops, Observe&& observe, double h_init = 0.0, long* steps_out = nullptr) {
    static constexpr double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
    static constexpr double a21 = 1. / 5;
    static constexpr double a31 = 3. / 40, a32 = 9. / 40;
    static constexpr double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
    static constexpr double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561, a54 = -212. / 729;
    static constexpr double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247, a64 = 49. / 176,
                            a65 = -5103. / 18656;
    static constexpr double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192, b5 = -2187. / 6784, b6 = 11. / 84;
    static constexpr double e1 = 71. / 57600, e3 = -71. / 16695, e4 = 71. / 1920, e5 = -17253. / 339200,
                            e6 = 22. / 525, e7 = -1. / 40;

    auto axpy = [](CState<N>& out, const CState<N>& base, double h, std::initializer_list<std::pair<double, const CState<N>*>> terms) {
        for (std::size_t i = 0; i < N; ++i) {
            cplx acc = 0;
            for (auto& t : terms) acc += t.first * (*t.second)[i];
            out[i] = base[i] + h * acc;
        }
    };

    double x = x0;
    double h = h_init > 0 ? h_init : std::min(0.01, (x1 - x0) / 16);
    std::size_t next_stop = 0;
    CState<N> k1 = f(x, y), k2, k3, k4, k5, k6, k7, tmp, yn, err;
    long steps = 0;
    bool last_rejected = false;
    while (x < x1) {
        if (++steps > cfg.max_steps) throw IntegrationError("step budget exhausted", x);
        double target = next_stop < stops.size() ? stops[next_stop] : x1;
        bool hits = false;
        if (x + h >= target - 1e-14 * std::max(1.0, std::abs(target))) {
            h = target - x;
            hits = true;
        }
        axpy(tmp, y, h, {{a21, &k1}});
        k2 = f(x + c2 * h, tmp);
        axpy(tmp, y, h, {{a31, &k1}, {a32, &k2}});
        k3 = f(x + c3 * h, tmp);
        axpy(tmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        k4 = f(x + c4 * h, tmp);
        axpy(tmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        k5 = f(x + c5 * h, tmp);
        axpy(tmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        k6 = f(x + h, tmp);
        axpy(yn, y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        k7 = f(x + h, yn);
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double en = norm(y, yn, err, cfg.rel_tol, cfg.abs_tol);
        if (!std::isfinite(en)) throw IntegrationError("non-finite state", x);
        if (en <= 1.0) {
            x = hits ? target : x + h;
            y = yn;
            k1 = k7;
            if (hits && next_stop < stops.size()) {
                observe(next_stop, y);
                ++next_stop;
            }
            double fac = en == 0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (last_rejected) fac = std::min(fac, 1.0);
            last_rejected = false;
            h *= fac;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            last_rejected = true;
        }
        if (h < 1e-14 * std::max(1.0, std::abs(x))) throw IntegrationError("step size underflow", x);
    }
    if (steps_out) *steps_out = steps;
    return y;
}

template <std::size_t N, class Rhs>
CState<N> dopri5(Rhs&& f, CState<N> y, double x0, double x1, const IntegratorConfig& cfg) {
    return dopri5<N>(f, y, x0, x1, cfg, ComponentNorm{}, std::span<const double>{}, [](std::size_t, const CState<N>&) {});
}

}  // namespace hillbands
