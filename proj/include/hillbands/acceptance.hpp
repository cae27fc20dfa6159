#pragma once

// The acceptance suite shared by tests/acceptance_main.cpp and `hillbands verify`.

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "boussinesq.hpp"
#include "io.hpp"
#include "lyapunov.hpp"
#include "reality.hpp"
#include "resolvent.hpp"
#include "spectra.hpp"

namespace hillbands::acceptance {

struct Result {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Options {
    std::string fixtures;  // directory with the shipped JSON fixtures
    bool quick = false;    // reduced ranges and draw counts
    int threads = default_threads();
    unsigned seed = 20240611;
};

namespace detail {

struct Fixture {
    std::string name;
    PotentialSpec spec;
};

inline std::vector<Fixture> load(const Options& o, std::initializer_list<const char*> names) {
    std::vector<Fixture> out;
    for (auto n : names) out.push_back({n, load_potential(o.fixtures + "/" + n + ".json")});
    return out;
}

inline const std::vector<const char*>& all_names() {
    static const std::vector<const char*> v{"zero", "constant", "mathieu", "exp01", "cos01", "rational", "cos_strong"};
    return v;
}

inline std::vector<Fixture> load_all(const Options& o) {
    std::vector<Fixture> out;
    for (auto n : all_names()) out.push_back({n, load_potential(o.fixtures + "/" + n + ".json")});
    return out;
}

struct Detail {
    std::ostringstream s;
    bool ok = true;
    template <class T>
    Detail& operator<<(const T& v) {
        s << v;
        return *this;
    }
    void fail(const std::string& why) {
        if (ok) s << (s.tellp() > 0 ? "; " : "") << "FAIL: " << why;
        ok = false;
    }
};

inline SpectrumOptions opts(const Options& o, SpectrumOptions::Mode m = SpectrumOptions::Mode::Auto) {
    SpectrumOptions so;
    so.mode = m;
    so.threads = o.threads;
    return so;
}

inline double rel_err(cplx got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// A random draw inside the analytic domain of the fixture.
inline cplx draw_lambda(std::mt19937& rng, const PotentialSpec& s, double re_lo, double re_hi, double im) {
    std::uniform_real_distribution<double> re(re_lo, re_hi), imd(-im, im);
    for (;;) {
        cplx l(re(rng), imd(rng));
        if (s.family == Family::Rational && std::abs(l + s.shift) < 0.5) continue;
        return l;
    }
}

}  // namespace detail

// 1. free spectra of the four self-adjoint problems
inline Result criterion1(const Options& o) {
    detail::Detail d;
    auto m = make_model(PotentialSpec::zero());
    SpectralRegion reg{-0.5, 1000, 0};
    auto so = detail::opts(o);
    auto tw = two_periodic_spectrum(m, reg, so);
    auto di = dirichlet_spectrum(m, reg, so);
    auto ne = neumann_spectrum(m, reg, so);
    double worst = 0;
    int nmax = static_cast<int>(std::floor(std::sqrt(1000.0) / pi));
    auto check = [&](const std::vector<Eigenvalue>& ev, int n0, const char* what, bool two_periodic) {
        if (static_cast<int>(ev.size()) != nmax - n0 + 1) {
            d.fail(std::string(what) + ": " + std::to_string(ev.size()) + " eigenvalues, expected " +
                   std::to_string(nmax - n0 + 1));
            return;
        }
        for (int n = n0; n <= nmax; ++n) {
            const auto& e = ev[n - n0];
            double want = pi * pi * n * n;
            worst = std::max(worst, detail::rel_err(e.lambda, want));
            int mult = two_periodic ? (n == 0 ? 1 : 2) : 1;
            if (e.multiplicity != mult) d.fail(std::string(what) + " multiplicity at n=" + std::to_string(n));
            if (two_periodic && e.problem != (n % 2 == 0 ? Problem::Periodic : Problem::Antiperiodic))
                d.fail(std::string(what) + " periodic/antiperiodic attribution at n=" + std::to_string(n));
        }
    };
    check(tw, 0, "2-periodic", true);
    check(di, 1, "Dirichlet", false);
    check(ne, 0, "Neumann", false);
    if (worst > 1e-9) d.fail("relative error above 1e-9");
    d << "max rel err " << worst << " over n <= " << nmax;
    return {1, "unperturbed spectra", d.ok, d.s.str()};
}

// 2. Wronskian conservation
inline Result criterion2(const Options& o) {
    detail::Detail d;
    auto fx = detail::load_all(o);
    std::mt19937 rng(o.seed);
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-10;
    int draws = o.quick ? 20 : 100;
    double worst = 0;
    for (int i = 0; i < draws; ++i) {
        const auto& f = fx[rng() % fx.size()];
        cplx l = detail::draw_lambda(rng, f.spec, -5, 2000, 5);
        double w = wronskian_defect(integrate_fundamental(f.spec, l, 1.0, cfg));
        worst = std::max(worst, w);
        if (w > 1e-9) {
            std::ostringstream s;
            s << f.name << " at " << l << ": " << w;
            d.fail(s.str());
        }
    }
    d << "max defect " << worst << " over " << draws << " draws";
    return {2, "Wronskian conservation", d.ok, d.s.str()};
}

// 3. Picard partial sums against the integrator
inline Result criterion3(const Options& o) {
    detail::Detail d;
    auto fx = detail::load_all(o);
    std::mt19937 rng(o.seed + 3);
    int draws = o.quick ? 10 : 50, done = 0, tries = 0;
    double worst_ratio = 0;
    while (done < draws && tries < 100 * draws) {
        ++tries;
        const auto& f = fx[rng() % fx.size()];
        cplx l = detail::draw_lambda(rng, f.spec, -5, 400, 3);
        ZNorm zn(l);
        if (potential_norm(f.spec, l) / zn.z1 > 1) continue;
        ++done;
        auto rk = integrate_fundamental(f.spec, l);
        for (int N = 0; N <= 3; ++N) {
            auto pc = picard_fundamental(f.spec, l, N);
            // components in the bound's weights: theta, theta'/|z|_1, |z|_1 phi, phi'
            double diff = std::max({std::abs(pc.theta1 - rk.theta1), std::abs(pc.dtheta1 - rk.dtheta1) / zn.z1,
                                    zn.z1 * std::abs(pc.phi1 - rk.phi1), std::abs(pc.dphi1 - rk.dphi1)});
            double lim = pc.err_bound + 1e-9;
            worst_ratio = std::max(worst_ratio, diff / lim);
            if (diff > lim) {
                std::ostringstream s;
                s << f.name << " N=" << N << " at " << l << ": " << diff << " > " << lim;
                d.fail(s.str());
            }
        }
    }
    if (done < draws) d.fail("not enough admissible draws");
    d << done << " draws, max |Picard-RK|/(bound+1e-9) = " << worst_ratio;
    return {3, "Picard bound", d.ok, d.s.str()};
}

// 4. envelope estimates at orders 1..3
inline Result criterion4(const Options& o) {
    detail::Detail d;
    auto fx = detail::load(o, {"constant", "mathieu", "exp01", "rational"});
    int pts = o.quick ? 10 : 40, checks = 0;
    for (auto& f : fx)
        for (int i = 0; i < pts; ++i) {
            double l = 10 * std::pow(1e3, double(i) / (pts - 1));
            for (int ord = 1; ord <= 3; ++ord) {
                auto e = envelope_check(f.spec, l, ord);
                ++checks;
                if (!e.ok) {
                    std::ostringstream s;
                    s << f.name << " order " << ord << " at " << l << ": " << e.residual << " > " << e.bound;
                    d.fail(s.str());
                }
            }
        }
    d << checks << " checks";
    return {4, "error envelopes", d.ok, d.s.str()};
}

// 5. Delta^2 identity and Delta^2 >= 1 at Dirichlet eigenvalues
inline Result criterion5(const Options& o) {
    detail::Detail d;
    auto fx = detail::load_all(o);
    std::mt19937 rng(o.seed + 5);
    int per = o.quick ? 40 : 200;
    double worst = 0, min_d2 = 1e300;
    int ndir = 0;
    for (auto& f : fx) {
        for (int i = 0; i < per; ++i) {
            cplx l = detail::draw_lambda(rng, f.spec, -5, 500, 2);
            double r = discriminant(f.spec, l).identity_residual();
            worst = std::max(worst, r);
            if (r > 1e-9) d.fail(f.name + " identity residual");
        }
        auto cert = certify_interval(f.spec, 0.0);
        if (!cert.certified) continue;  // complex Dirichlet eigenvalues carry no sign information
        double lo = std::max(0.0, cert.threshold) + 1e-3, hi = o.quick ? 200.0 : 1000.0;
        if (lo >= hi) continue;
        auto ev = dirichlet_spectrum(make_model(f.spec), {lo, hi, 0}, detail::opts(o));
        for (auto& e : ev) {
            auto s = discriminant(f.spec, e.lambda);
            double d2 = std::norm(s.delta);
            min_d2 = std::min(min_d2, d2);
            ++ndir;
            if (d2 < 1 - 1e-9) d.fail(f.name + " Delta^2 < 1 at a Dirichlet eigenvalue");
        }
    }
    d << "max residual " << worst << "; min Delta^2 " << min_d2 << " over " << ndir << " Dirichlet eigenvalues";
    return {5, "discriminant identity", d.ok, d.s.str()};
}

// 6 and 7 share the rational fixture's spectra.
struct RationalRun {
    InterlacingReport rep;
    double hi;
};

inline RationalRun rational_run(const Options& o) {
    auto f = detail::load(o, {"rational"})[0];
    double top = o.quick ? 16 : 31;
    RationalRun r;
    r.hi = (top * pi) * (top * pi);
    r.rep = interlacing_report(make_model(f.spec), {5, r.hi, 0}, detail::opts(o));
    return r;
}

inline Result criterion6(const Options& o, const RationalRun& run) {
    detail::Detail d;
    const auto& rep = run.rep;
    for (auto& v : rep.violations) d.fail(v);
    if (rep.windows_checked == 0 || rep.inclusions_checked == 0) d.fail("nothing checked");
    d << rep.windows_checked << " windows, " << rep.inclusions_checked << " inclusions, " << rep.violations.size()
      << " violations";
    return {6, "counting and interlacing", d.ok, d.s.str()};
}

inline Result criterion7(const Options& o, const RationalRun& run) {
    detail::Detail d;
    auto f = detail::load(o, {"rational"})[0];
    // mean of V vanishes and ||V|| lambda^{-1/6} decays
    double worst_mean = 0, prev_norm = 1e300;
    for (double l : {100.0, 1000.0, 1e4, 1e5}) {
        worst_mean = std::max(worst_mean, std::abs(mean_V(f.spec, l)));
        double nv = potential_norm(f.spec, l) / std::pow(l, 1.0 / 6.0);
        if (!(nv < prev_norm)) d.fail("||V|| lambda^{-1/6} not decreasing");
        prev_norm = nv;
    }
    if (worst_mean > 1e-12) d.fail("mean of V not vanishing");
    int n0 = 10, n1 = o.quick ? 15 : 30;
    std::map<int, double> dev;
    for (auto& e : run.rep.two_periodic)
        if (e.index >= n0 && e.index <= n1) {
            double v = std::abs(e.lambda.real() - pi * pi * e.index * e.index);
            dev[e.index] = std::max(dev[e.index], v);
        }
    if (static_cast<int>(dev.size()) != n1 - n0 + 1) d.fail("missing labelled 2-periodic eigenvalues");
    // trend: least-squares slope of log deviation against log n, and no
    // increase above the 1e-6 noise floor
    const double floor = 1e-6;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    double prev = 1e300;
    for (auto& [n, v] : dev) {
        double x = std::log(double(n)), y = std::log(std::max(v, floor));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
        if (v > std::max(prev, floor)) d.fail("deviation increases at n=" + std::to_string(n));
        prev = std::max(v, floor) == floor ? prev : v;
    }
    double slope = cnt > 1 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0;
    if (!(slope < 0) && !(dev.size() && dev.rbegin()->second <= floor)) d.fail("no decreasing trend");
    double last = dev.count(n1) ? dev[n1] : 1e300;
    if (!(last < 0.05)) d.fail("deviation at the last n not below 0.05");
    d << "deviation n=" << n0 << ": " << (dev.count(n0) ? dev[n0] : -1) << ", n=" << n1 << ": " << last
      << ", log-log slope " << slope;
    return {7, "2-periodic asymptotics", d.ok, d.s.str()};
}

// 8. reality: exp fixture above its threshold, and the xi-disc bound everywhere
inline Result criterion8(const Options& o) {
    detail::Detail d;
    auto e = detail::load(o, {"exp01"})[0];
    auto cert = certify_halfplane(e.spec, 0.0);
    if (!cert.certified || std::abs(cert.threshold - 0.37321) > 1e-4) d.fail("threshold mismatch");
    auto m = make_model(e.spec);
    auto so = detail::opts(o, SpectrumOptions::Mode::Complex);
    SpectralRegion reg{cert.threshold, o.quick ? 60.0 : 150.0, 1.0};
    std::vector<Eigenvalue> all;
    auto add = [&](std::vector<Eigenvalue> v) { all.insert(all.end(), v.begin(), v.end()); };
    add(quasi_spectrum(m, 1.0, reg, so));
    add(two_periodic_spectrum(m, reg, so));
    add(dirichlet_spectrum(m, reg, so));
    add(neumann_spectrum(m, reg, so));
    double worst_im = 0;
    for (auto& ev : all) worst_im = std::max(worst_im, std::abs(ev.lambda.imag()));
    if (worst_im > 1e-8) d.fail("non-real eigenvalue above the threshold");
    if (all.empty()) d.fail("no eigenvalues located");
    d << all.size() << " eigenvalues above mu1 = " << cert.threshold << ", max |Im| " << worst_im;

    // |Im lambda| <= xi(disc) at every located eigenvalue
    int located = 0;
    double worst_excess = -1e300;
    for (auto& f : detail::load_all(o)) {
        double lo = f.spec.family == Family::Rational ? std::max(-3.0, 0.5 - f.spec.shift) : -3.0;
        SpectralRegion r{lo, o.quick ? 25.0 : 60.0, 3.0};
        auto mm = make_model(f.spec);
        std::vector<Eigenvalue> ev = dirichlet_spectrum(mm, r, so);
        auto tw = two_periodic_spectrum(mm, r, so);
        ev.insert(ev.end(), tw.begin(), tw.end());
        for (auto& x : ev) {
            ++located;
            double excess = std::abs(x.lambda.imag()) - xi_disc(f.spec, x.lambda, 1e-3);
            worst_excess = std::max(worst_excess, excess);
            if (excess > 1e-8) d.fail(f.name + " eigenvalue violates the xi bound");
        }
    }
    d << "; xi bound at " << located << " eigenvalues, max |Im|-xi " << worst_excess;
    return {8, "reality certificates", d.ok, d.s.str()};
}

// 9. resolvent residuals for both kernels
inline Result criterion9(const Options& o) {
    detail::Detail d;
    auto fx = detail::load_all(o);
    auto f = [](double x) { return cplx(1 + x * x, 0) + std::cos(2 * pi * x); };
    int per = o.quick ? 3 : 10, checks = 0;
    double worst = 0;
    for (auto& fxt : fx)
        for (int i = 0; i < per; ++i) {
            cplx l(2.5 + 23.0 * i, 0.5 + 0.1 * i);  // off the real axis: regular for every fixture
            for (int kind = 0; kind < 2; ++kind) {
                std::unique_ptr<GreenKernel> K;
                if (kind == 0) K = green_quasi(fxt.spec, 1.0, l);
                else K = green_dirichlet(fxt.spec, l);
                double r = resolvent_residual(*K, f);
                ++checks;
                worst = std::max(worst, r);
                if (r > 1e-5) {
                    std::ostringstream s;
                    s << fxt.name << (kind ? " Dirichlet" : " quasi") << " at " << l << ": " << r;
                    d.fail(s.str());
                }
            }
        }
    d << checks << " kernels, max residual " << worst;
    return {9, "resolvent residuals", d.ok, d.s.str()};
}

// 10. unperturbed Boussinesq operator
inline Result criterion10(const Options& o) {
    detail::Detail d;
    auto co = load_coeffs(o.fixtures + "/free_coeffs.json");
    int nmax = o.quick ? 4 : 8;
    auto r = ramifications(co, 10, alpha_plus(nmax), {}, o.threads);
    auto t = three_point_eigenvalues(co, 10, alpha_plus(nmax), {}, o.threads);
    double worst = 0;
    if (static_cast<int>(r.size()) != nmax || static_cast<int>(t.size()) != nmax) d.fail("wrong number of zeros");
    for (std::size_t i = 0; i < r.size() && i < t.size(); ++i) {
        int n = static_cast<int>(i) + 1;
        double want = zeta_free(n);
        worst = std::max({worst, detail::rel_err(r[i].zeta, want), detail::rel_err(t[i].zeta, want)});
        if (r[i].multiplicity != 2) d.fail("ramification " + std::to_string(n) + " not double");
        if (t[i].multiplicity != 1) d.fail("three-point eigenvalue " + std::to_string(n) + " not simple");
    }
    if (worst > 1e-7) d.fail("relative error above 1e-7");
    // the n = 1 value to the four decimals of the closed form (2 pi/sqrt3)^3
    if (!r.empty() && std::abs(r[0].zeta.real() - 47.7373) > 5e-5) d.fail("n=1 value");
    // multiplier product over a zeta grid, real and complex
    double worst_prod = 0;
    for (int i = 0; i <= 60; ++i) {
        double re = alpha_plus(nmax) * i / 60.0;
        for (double im : {0.0, 0.01 * re + 1}) {
            double p = multipliers(integrate_third_order(co, cplx(re, im))).product_defect();
            worst_prod = std::max(worst_prod, p);
        }
    }
    if (worst_prod > 1e-9) d.fail("multiplier product deviates");
    d << "max rel err " << worst << " (n <= " << nmax << "), r_1 = " << (r.empty() ? 0.0 : r[0].zeta.real())
      << ", max |k1 k2 k3 - 1| " << worst_prod;
    return {10, "Boussinesq unperturbed", d.ok, d.s.str()};
}

// 11. perturbed Boussinesq operator
inline Result criterion11(const Options& o) {
    detail::Detail d;
    auto co = load_coeffs(o.fixtures + "/pq.json");
    int n1 = o.quick ? 5 : 8;
    auto r = ramifications(co, alpha_minus(2), alpha_plus(n1), {}, o.threads);
    auto t = three_point_eigenvalues(co, alpha_minus(2), alpha_plus(n1), {}, o.threads);
    std::map<int, double> tdev, rres;
    for (int n = 2; n <= n1; ++n) {
        int rc = 0, tc = 0;
        double lo = 1e300, hi = -1e300;
        for (auto& z : r)
            if (z.n == n) {
                rc += z.multiplicity;
                lo = std::min(lo, z.zeta.real());
                hi = std::max(hi, z.zeta.real());
                rres[n] = std::max(rres[n], std::abs(z.zeta.real() - ram_asymptotic(co, n)) / n);
            }
        for (auto& z : t)
            if (z.n == n) {
                ++tc;
                if (z.multiplicity != 1) d.fail("three-point eigenvalue not simple in window " + std::to_string(n));
                if (z.zeta.real() < lo - 1e-6 || z.zeta.real() > hi + 1e-6)
                    d.fail("inclusion fails in window " + std::to_string(n));
                tdev[n] = std::abs(z.zeta.real() - zeta_asymptotic(co, n));
            }
        if (rc != 2) d.fail("window " + std::to_string(n) + ": " + std::to_string(rc) + " ramifications");
        if (tc != 1) d.fail("window " + std::to_string(n) + ": " + std::to_string(tc) + " three-point eigenvalues");
    }
    for (int n = 5; n <= n1; ++n) {
        if (!(tdev[n] < tdev[n - 1])) d.fail("|zeta_n - asymptotic| not decreasing at n=" + std::to_string(n));
        if (!(rres[n] < rres[n - 1])) d.fail("|r_n - asymptotic|/n not decreasing at n=" + std::to_string(n));
    }
    d << "|zeta_n - asym| n=4: " << tdev[4] << ", n=" << n1 << ": " << tdev[n1] << "; |r_n - asym|/n n=4: " << rres[4]
      << ", n=" << n1 << ": " << rres[n1];
    return {11, "Boussinesq perturbed", d.ok, d.s.str()};
}

// 12. reduced Hill problem against the third-order spectra, in lambda units
inline Result criterion12(const Options& o) {
    detail::Detail d;
    auto co = load_coeffs(o.fixtures + "/pq.json");
    int n1 = o.quick ? 4 : 8;
    auto m = reduced_model(co);
    auto so = detail::opts(o, SpectrumOptions::Mode::RealOnly);
    SpectralRegion reg{lambda_of_zeta(alpha_minus(3)).real(), lambda_of_zeta(alpha_plus(n1)).real(), 0};
    auto tw = two_periodic_spectrum(m, reg, so);
    auto di = dirichlet_spectrum(m, reg, so);
    auto r = ramifications(co, alpha_minus(3), alpha_plus(n1), {}, o.threads);
    auto t = three_point_eigenvalues(co, alpha_minus(3), alpha_plus(n1), {}, o.threads);
    double worst = 0;
    auto match = [&](const std::vector<Eigenvalue>& a, const std::vector<ZetaRoot>& b, const char* what) {
        int ma = 0, mb = 0;
        for (auto& e : a) ma += e.multiplicity;
        for (auto& z : b) mb += z.multiplicity;
        if (ma != mb || a.size() != b.size()) {
            d.fail(std::string(what) + ": counts differ");
            return;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            double diff = std::abs(a[i].lambda - lambda_of_zeta(b[i].zeta));
            worst = std::max(worst, diff);
            if (diff > 1e-6) d.fail(std::string(what) + " mismatch");
        }
    };
    match(tw, r, "2-periodic vs ramifications");
    match(di, t, "Dirichlet vs three-point");
    d << "n = 3.." << n1 << ", max |lambda difference| " << worst;
    return {12, "reduction cross-check", d.ok, d.s.str()};
}

// Runs all criteria in order; `report` sees each result as soon as it is ready.
inline std::vector<Result> run_all(const Options& o, const std::function<void(const Result&)>& report = {}) {
    std::vector<Result> out;
    auto timed = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };
    auto push = [&](Result r, int id, const char* title) {
        r.id = id;
        if (r.title.empty()) r.title = title;
        out.push_back(r);
        if (report) report(out.back());
    };
    auto r1 = timed([&] { return criterion1(o); });
    if (r1.pass && r1.seconds >= 10) {
        r1.pass = false;
        r1.detail += "; FAIL: runtime not below 10 s";
    }
    push(r1, 1, "unperturbed spectra");
    push(timed([&] { return criterion2(o); }), 2, "Wronskian conservation");
    push(timed([&] { return criterion3(o); }), 3, "Picard bound");
    push(timed([&] { return criterion4(o); }), 4, "error envelopes");
    push(timed([&] { return criterion5(o); }), 5, "discriminant identity");
    RationalRun rr;
    std::string rr_error;
    auto t0 = std::chrono::steady_clock::now();
    try {
        rr = rational_run(o);
    } catch (const std::exception& e) {
        rr_error = e.what();
    }
    double rr_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto with_rr = [&](auto&& fn) {
        if (!rr_error.empty()) throw NumericalError(rr_error);
        return fn();
    };
    auto r6 = timed([&] { return with_rr([&] { return criterion6(o, rr); }); });
    r6.seconds += rr_time;
    push(r6, 6, "counting and interlacing");
    push(timed([&] { return with_rr([&] { return criterion7(o, rr); }); }), 7, "2-periodic asymptotics");
    push(timed([&] { return criterion8(o); }), 8, "reality certificates");
    push(timed([&] { return criterion9(o); }), 9, "resolvent residuals");
    push(timed([&] { return criterion10(o); }), 10, "Boussinesq unperturbed");
    push(timed([&] { return criterion11(o); }), 11, "Boussinesq perturbed");
    push(timed([&] { return criterion12(o); }), 12, "reduction cross-check");
    return out;
}

inline std::string format(const Result& r) {
    std::ostringstream s;
    s.precision(4);
    s << "criterion " << r.id << " [" << (r.pass ? "PASS" : "FAIL") << "] " << r.title << " (" << r.seconds << " s): " << r.detail;
    return s.str();
}

}  // namespace hillbands::acceptance
