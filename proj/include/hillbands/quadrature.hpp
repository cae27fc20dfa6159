#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "core.hpp"

namespace hillbands {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1,1]
    std::vector<double> w;
};

namespace detail {
inline GaussRule compute_gauss_legendre(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = t; p0 = 1; }
            dp = n * (t * p1 - p0) / (t * t - 1);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1);
        double w = 2.0 / ((1 - t * t) * dp * dp);
        r.x[i] = -t;
        r.x[n - 1 - i] = t;
        r.w[i] = r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}
}  // namespace detail

// Cached Gauss-Legendre rule; safe to call from several threads.
inline const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(detail::compute_gauss_legendre(n));
    return *slot;
}

// Composite Gauss-Legendre over [a,b] with `panels` equal panels.
template <class F>
auto integrate_gl(F&& f, double a, double b, int order, int panels = 1) {
    const auto& g = gauss_legendre(order);
    using R = decltype(f(a));
    R acc{};
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, c = lo + h / 2;
        for (int i = 0; i < order; ++i) acc += g.w[i] * f(c + h / 2 * g.x[i]);
    }
    return acc * (h / 2);
}

// Gauss-Kronrod 7/15 on [-1,1].
struct GK15 {
    static constexpr std::array<double, 8> xk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                              0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                              0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                              0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                              0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                              0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                              0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

// Adaptive G7K15 for complex-valued integrands on [a,b].
template <class F>
cplx adaptive_gk(F&& f, double a, double b, double abs_tol, int max_depth = 30) {
    struct Seg {
        double a, b;
        int depth;
    };
    auto rule = [&](double lo, double hi, cplx& kron, cplx& gauss) {
        double c = (lo + hi) / 2, h = (hi - lo) / 2;
        cplx fc = f(c);
        kron = GK15::wk[7] * fc;
        gauss = GK15::wg[3] * fc;
        for (int i = 0; i < 7; ++i) {
            cplx s = f(c - h * GK15::xk[i]) + f(c + h * GK15::xk[i]);
            kron += GK15::wk[i] * s;
            if (i % 2 == 1) gauss += GK15::wg[i / 2] * s;
        }
        kron *= h;
        gauss *= h;
    };
    cplx total = 0;
    std::vector<Seg> stack{{a, b, 0}};
    double tol_density = abs_tol / (b - a);
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        cplx k, g;
        rule(s.a, s.b, k, g);
        double err = std::abs(k - g);
        if (err <= tol_density * (s.b - s.a) || s.depth >= max_depth) {
            if (s.depth >= max_depth && err > tol_density * (s.b - s.a))
                throw NumericalError("adaptive_gk: depth limit reached");
            total += k;
        } else {
            double m = (s.a + s.b) / 2;
            stack.push_back({s.a, m, s.depth + 1});
            stack.push_back({m, s.b, s.depth + 1});
        }
    }
    return total;
}

// cos(z x) and sin(z x)/z as entire functions of lambda = z^2.
struct FreePair {
    cplx c, s, dc, ds;  // C(x), S(x), C'(x), S'(x)
};

inline FreePair free_pair(cplx lambda, double x) {
    FreePair r;
    cplx w = lambda * x * x;
    if (std::abs(w) < 0.5) {
        // even power series in lambda
        cplx term_c = 1, term_s = x, sum_c = 0, sum_s = 0;
        for (int k = 0; k < 40; ++k) {
            sum_c += term_c;
            sum_s += term_s;
            term_c *= -w / double((2 * k + 1) * (2 * k + 2));
            term_s *= -w / double((2 * k + 2) * (2 * k + 3));
            if (std::abs(term_c) < 1e-18 && std::abs(term_s) < 1e-18 * x) break;
        }
        r.c = sum_c;
        r.s = sum_s;
    } else {
        cplx z = std::sqrt(lambda);
        r.c = std::cos(z * x);
        r.s = std::sin(z * x) / z;
    }
    r.dc = -lambda * r.s;
    r.ds = r.c;
    return r;
}

}  // namespace hillbands
