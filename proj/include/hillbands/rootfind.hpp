#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "core.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace hillbands {

// F and F' at a complex point.
using AnalyticFn = std::function<std::pair<cplx, cplx>(cplx)>;
// F and F' on the real line (real-analytic F).
using RealFn = std::function<std::pair<double, double>(double)>;

struct Rect {
    cplx center;
    double half_width, half_height;

    double lo_re() const { return center.real() - half_width; }
    double hi_re() const { return center.real() + half_width; }
    double lo_im() const { return center.imag() - half_height; }
    double hi_im() const { return center.imag() + half_height; }
    double diameter() const { return 2 * std::hypot(half_width, half_height); }
    bool contains(cplx z) const {
        return std::abs(z.real() - center.real()) <= half_width && std::abs(z.imag() - center.imag()) <= half_height;
    }
    bool straddles_real_axis() const { return lo_im() < 0 && hi_im() > 0; }
    Rect dilated(double f) const { return {center, half_width * f, half_height * f}; }
    static Rect from_bounds(double re0, double re1, double im0, double im1) {
        return {cplx((re0 + re1) / 2, (im0 + im1) / 2), (re1 - re0) / 2, (im1 - im0) / 2};
    }
};

struct LocatedZero {
    cplx lambda;
    int multiplicity = 1;
    double residual = 0;
    bool newton_converged = true;
    bool suspicious = false;  // multiplicity > 2 for a second-order problem
};

struct BoundaryError : NumericalError {
    using NumericalError::NumericalError;
};
struct PrecisionError : NumericalError {
    using NumericalError::NumericalError;
};
struct DepthError : NumericalError {
    using NumericalError::NumericalError;
};

namespace detail {

// Winding number integral (1/2 pi i) \oint F'/F, no retry logic.
inline double winding_raw(const AnalyticFn& F, const Rect& r, double& min_ratio) {
    cplx corners[4] = {cplx(r.lo_re(), r.lo_im()), cplx(r.hi_re(), r.lo_im()), cplx(r.hi_re(), r.hi_im()),
                       cplx(r.lo_re(), r.hi_im())};
    // boundary sampling for near-zero suspicion
    double fmin = std::numeric_limits<double>::infinity();
    std::vector<double> mags;
    for (int e = 0; e < 4; ++e) {
        cplx p0 = corners[e], p1 = corners[(e + 1) % 4];
        for (int i = 0; i < 32; ++i) {
            double m = std::abs(F(p0 + (p1 - p0) * ((i + 0.5) / 32)).first);
            mags.push_back(m);
            fmin = std::min(fmin, m);
        }
    }
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    double med = mags[mags.size() / 2];
    min_ratio = med > 0 ? fmin / med : 0;
    cplx total = 0;
    for (int e = 0; e < 4; ++e) {
        cplx p0 = corners[e], p1 = corners[(e + 1) % 4];
        cplx d = p1 - p0;
        total += adaptive_gk(
            [&](double t) {
                auto [f, fp] = F(p0 + d * t);
                return fp / f * d;
            },
            0.0, 1.0, 2e-3, 24);
    }
    return (total / (2 * pi * I)).real();
}

}  // namespace detail

// Argument-principle count with up to five 1% dilations when the boundary
// passes too close to a zero or the integral does not round cleanly.
inline int count_zeros(const AnalyticFn& F, const Rect& rect, Rect* used = nullptr) {
    Rect r = rect;
    std::string last = "boundary too close to a zero";
    for (int attempt = 0; attempt <= 5; ++attempt) {
        double ratio = 0;
        double w = 0;
        bool ok = true;
        try {
            w = detail::winding_raw(F, r, ratio);
        } catch (const NumericalError& e) {
            ok = false;
            last = e.what();
        }
        if (ok && ratio > 1e-7) {
            double n = std::round(w);
            if (std::abs(w - n) < 0.25) {
                if (used) *used = r;
                return static_cast<int>(n);
            }
            last = "winding number does not round to an integer";
        }
        r = r.dilated(1.01);
    }
    if (last.find("round") != std::string::npos) throw PrecisionError("count_zeros: " + last);
    throw BoundaryError("count_zeros: " + last);
}

inline LocatedZero refine_newton(const AnalyticFn& F, cplx seed, int multiplicity = 1, int max_iter = 60) {
    LocatedZero z;
    z.multiplicity = multiplicity;
    cplx l = seed;
    bool conv = false;
    for (int it = 0; it < max_iter; ++it) {
        auto [f, fp] = F(l);
        if (f == cplx(0)) {
            conv = true;
            break;
        }
        if (fp == cplx(0) || !is_finite(f / fp)) break;
        cplx step = double(multiplicity) * f / fp;
        l -= step;
        if (std::abs(step) < 1e-12 * (1 + std::abs(l))) {
            conv = true;
            break;
        }
    }
    z.newton_converged = conv;
    if (!conv) l = seed;
    z.lambda = l;
    z.residual = std::abs(F(l).first);
    return z;
}

// Quadtree isolation of zero clusters inside rect.
inline std::vector<std::pair<Rect, int>> isolate_zeros(const AnalyticFn& F, const Rect& rect, double target_radius,
                                                      int threads = 1) {
    Rect root;
    int total = count_zeros(F, rect, &root);
    std::vector<std::pair<Rect, int>> out;
    struct Node {
        Rect r;
        int count, depth;
    };
    std::vector<Node> frontier{{root, total, 0}};
    static const double offsets[] = {0.0371, -0.0613, 0.0847, -0.1129, 0.1423};
    while (!frontier.empty()) {
        std::vector<std::vector<Node>> kids(frontier.size());
        parallel_for(
            frontier.size(),
            [&](std::size_t idx) {
                const Node& nd = frontier[idx];
                if (nd.count == 0) return;
                if (nd.r.diameter() <= 2 * target_radius) return;  // emitted below
                if (nd.depth >= 40) throw DepthError("isolate_zeros: depth cap reached");
                for (double off : offsets) {
                    const Rect& r = nd.r;
                    bool split_re = r.half_width >= 0.5 * r.half_height;
                    bool split_im = r.half_height >= 0.5 * r.half_width;
                    double xm = r.center.real() + (split_re ? off * r.half_width : 0);
                    double ym = r.center.imag() + (split_im ? -off * 1.37 * r.half_height : 0);
                    std::vector<double> xs{r.lo_re()}, ys{r.lo_im()};
                    if (split_re) xs.push_back(xm);
                    if (split_im) ys.push_back(ym);
                    xs.push_back(r.hi_re());
                    ys.push_back(r.hi_im());
                    std::vector<Node> cand;
                    int sum = 0;
                    bool fail = false;
                    for (std::size_t i = 0; i + 1 < xs.size() && !fail; ++i)
                        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
                            Rect c = Rect::from_bounds(xs[i], xs[i + 1], ys[j], ys[j + 1]);
                            try {
                                double ratio;
                                double w = detail::winding_raw(F, c, ratio);
                                double n = std::round(w);
                                if (ratio <= 1e-7 || std::abs(w - n) >= 0.25) {
                                    fail = true;
                                    break;
                                }
                                sum += static_cast<int>(n);
                                cand.push_back({c, static_cast<int>(n), nd.depth + 1});
                            } catch (const NumericalError&) {
                                fail = true;
                                break;
                            }
                        }
                    if (!fail && sum == nd.count) {
                        kids[idx] = std::move(cand);
                        return;
                    }
                }
                throw BoundaryError("isolate_zeros: count conservation failed for every split offset");
            },
            threads);
        std::vector<Node> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const Node& nd = frontier[i];
            if (nd.count == 0) continue;
            if (nd.r.diameter() <= 2 * target_radius) out.emplace_back(nd.r, nd.count);
            for (auto& k : kids[i])
                if (k.count > 0) next.push_back(k);
        }
        frontier.swap(next);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
        if (a.first.center.real() != b.first.center.real()) return a.first.center.real() < b.first.center.real();
        return a.first.center.imag() < b.first.center.imag();
    });
    return out;
}

struct ScanOptions {
    double tangency_tol = 1e-10;
    double merge_rel = 1e-9;
};

// Default sampling: spacing pi/8 in sqrt(lambda).
inline double default_step(double lambda) { return pi / 4 * std::max(1.0, std::sqrt(std::abs(lambda))); }

// Zeros of a real-valued F on (a,b): sign changes of F are bracketed and
// solved; sign changes of F' locate critical points, which either split a
// bracket or, when |F| there is below the tangency threshold, are double zeros.
inline std::vector<LocatedZero> real_scan(const RealFn& F, double a, double b,
                                          const std::function<double(double)>& step = default_step,
                                          const ScanOptions& opt = {}) {
    std::vector<LocatedZero> out;
    if (!(b > a)) return out;
    std::vector<double> xs{a};
    while (xs.back() < b) xs.push_back(std::min(b, xs.back() + std::max(step(xs.back()), 1e-9 * (1 + std::abs(b)))));
    std::vector<std::pair<double, double>> fv(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fv[i] = F(xs[i]);

    using boost::math::tools::eps_tolerance;
    auto solve = [&](auto&& g, double lo, double hi, double glo, double ghi) {
        std::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, eps_tolerance<double>(52), it);
        return (r.first + r.second) / 2;
    };
    auto add_simple = [&](double lo, double hi, double flo, double fhi) {
        if (flo == 0.0 || fhi == 0.0) return;  // exact zeros are handled at samples
        double r = solve([&](double x) { return F(x).first; }, lo, hi, flo, fhi);
        out.push_back({r, 1, std::abs(F(r).first), true});
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (fv[i].first == 0.0 && i > 0 && i + 1 < xs.size()) {
            bool dbl = fv[i].second == 0.0 || (fv[i - 1].first * fv[i + 1].first > 0);
            out.push_back({xs[i], dbl ? 2 : 1, 0.0, true});
        }
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double x0 = xs[i], x1 = xs[i + 1];
        double f0 = fv[i].first, f1 = fv[i + 1].first, d0 = fv[i].second, d1 = fv[i + 1].second;
        if (d0 * d1 < 0) {
            double c = solve([&](double x) { return F(x).second; }, x0, x1, d0, d1);
            double fc = F(c).first;
            if (f0 * fc < 0) add_simple(x0, c, f0, fc);
            if (fc * f1 < 0) add_simple(c, x1, fc, f1);
            if (fc == 0.0 || (f0 * fc > 0 && fc * f1 > 0 && std::abs(fc) <= opt.tangency_tol))
                out.push_back({c, 2, std::abs(fc), true});
        } else if (f0 * f1 < 0) {
            add_simple(x0, x1, f0, f1);
        }
    }
    std::sort(out.begin(), out.end(), [](auto& u, auto& v) { return u.lambda.real() < v.lambda.real(); });
    // merge numerically coincident zeros
    std::vector<LocatedZero> merged;
    for (auto& z : out) {
        if (!merged.empty() &&
            std::abs(z.lambda.real() - merged.back().lambda.real()) <= opt.merge_rel * std::max(1.0, std::abs(z.lambda.real()))) {
            auto& m = merged.back();
            m.lambda = (m.lambda * double(m.multiplicity) + z.lambda * double(z.multiplicity)) /
                       double(m.multiplicity + z.multiplicity);
            m.multiplicity += z.multiplicity;
            m.residual = std::max(m.residual, z.residual);
        } else {
            merged.push_back(z);
        }
    }
    return merged;
}

inline std::vector<LocatedZero> real_scan(const RealFn& F, double a, double b, double step_hint,
                                          const ScanOptions& opt = {}) {
    return real_scan(
        F, a, b, [step_hint](double l) { return std::min(step_hint, default_step(l)); }, opt);
}

// Complex zeros in rect: quadtree isolation, then per cluster either a
// real-line scan (real-analytic F, cluster straddling the axis, counts agree)
// or multiplicity-aware Newton from the cluster centre.
inline std::vector<LocatedZero> locate_zeros(const AnalyticFn& F, const RealFn* Freal, const Rect& rect,
                                             double target_radius, const ScanOptions& opt = {}, int threads = 1,
                                             int max_multiplicity = 2) {
    auto clusters = isolate_zeros(F, rect, target_radius, threads);
    std::vector<std::vector<LocatedZero>> per(clusters.size());
    parallel_for(
        clusters.size(),
        [&](std::size_t i) {
            const auto& [r, cnt] = clusters[i];
            if (Freal && r.straddles_real_axis()) {
                auto rz = real_scan(*Freal, r.lo_re(), r.hi_re(), std::max(r.half_width / 4, 1e-12), opt);
                int s = 0;
                for (auto& z : rz) s += z.multiplicity;
                if (s == cnt) {
                    per[i] = rz;
                    return;
                }
            }
            auto z = refine_newton(F, r.center, cnt);
            if (!z.newton_converged) {
                // the cluster centre is the best available estimate
                z.lambda = r.center;
                z.residual = std::abs(F(r.center).first);
            }
            per[i].push_back(z);
        },
        threads);
    std::vector<LocatedZero> out;
    for (auto& v : per)
        for (auto& z : v) {
            z.suspicious = z.multiplicity > max_multiplicity;
            out.push_back(z);
        }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    return out;
}

}  // namespace hillbands
