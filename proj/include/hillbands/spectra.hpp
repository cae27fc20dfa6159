#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "lyapunov.hpp"
#include "reality.hpp"
#include "rootfind.hpp"

namespace hillbands {

enum class Problem { QuasiPeriodic, Periodic, Antiperiodic, TwoPeriodic, Dirichlet, Neumann, MixedDN, MixedND };

inline const char* problem_name(Problem p) {
    switch (p) {
        case Problem::QuasiPeriodic: return "quasi_periodic";
        case Problem::Periodic: return "periodic";
        case Problem::Antiperiodic: return "antiperiodic";
        case Problem::TwoPeriodic: return "two_periodic";
        case Problem::Dirichlet: return "dirichlet";
        case Problem::Neumann: return "neumann";
        case Problem::MixedDN: return "mixed_dn";
        case Problem::MixedND: return "mixed_nd";
    }
    return "?";
}

struct Eigenvalue {
    cplx lambda;
    int multiplicity = 1;
    Problem problem = Problem::Periodic;
    double k = 0;
    int index = -1;   // window label n, -1 when the counting window does not apply
    int branch = 0;   // -1 / +1 for lambda_n^-, lambda_n^+; 0 for both (double) or n/a
    bool real_flag = false;
    double residual = 0;
};

// Anything that yields the fundamental solutions at 1 with lambda-derivatives.
struct HillModel {
    std::function<FundamentalData(cplx)> fundamental;
    bool real_analytic = true;
    std::optional<PotentialSpec> spec;  // absent for derived (e.g. reduced) models
};

inline HillModel make_model(const PotentialSpec& spec, const IntegratorConfig& cfg = {}) {
    spec.validate();
    cfg.validate();
    HillModel m;
    m.fundamental = [spec, cfg](cplx l) { return integrate_fundamental(spec, l, 1.0, cfg); };
    m.real_analytic = spec.real_analytic();
    m.spec = spec;
    return m;
}

struct SpectralRegion {
    double lo = 0, hi = 0;
    double im_half = 0;  // complex search height; 0 selects max(1, 2 xi)
};

struct SpectrumOptions {
    enum class Mode { Auto, RealOnly, Complex } mode = Mode::Auto;
    int threads = default_threads();
    ScanOptions scan{};
    RealityConfig reality{};
};

// Characteristic function and its lambda-derivative from fundamental data.
inline std::pair<cplx, cplx> characteristic(Problem p, double k, const FundamentalData& fd) {
    const auto& d = fd.lam_derivs;
    switch (p) {
        case Problem::QuasiPeriodic:
        case Problem::Periodic:
        case Problem::Antiperiodic: {
            double c = p == Problem::Periodic ? 1.0 : p == Problem::Antiperiodic ? -1.0 : std::cos(k);
            return {(fd.theta1 + fd.dphi1) / 2.0 - c, (d.theta1 + d.dphi1) / 2.0};
        }
        case Problem::TwoPeriodic: {
            // Delta^2 - 1 written without the cancellation near |Delta| = 1
            cplx a = (fd.theta1 - fd.dphi1) / 2.0, da = (d.theta1 - d.dphi1) / 2.0;
            return {a * a + fd.dtheta1 * fd.phi1, 2.0 * a * da + d.dtheta1 * fd.phi1 + fd.dtheta1 * d.phi1};
        }
        case Problem::Dirichlet: return {fd.phi1, d.phi1};
        case Problem::Neumann: return {fd.dtheta1, d.dtheta1};
        case Problem::MixedDN: return {fd.dphi1, d.dphi1};
        case Problem::MixedND: return {fd.theta1, d.theta1};
    }
    throw ConfigError("unknown problem");
}

namespace detail {

inline double canonical_k(double k) {
    if (!(k >= 0 && k < 2 * pi)) throw ConfigError("k must lie in [0, 2 pi)");
    return k > pi ? 2 * pi - k : k;
}

inline double eig_spacing(double l) { return 2 * pi * std::max(1.0, std::sqrt(std::abs(l))); }

inline void resolve_cluster(const AnalyticFn& F, const RealFn* Fr, const Rect& r, int count, double target,
                            const ScanOptions& opt, std::vector<LocatedZero>& out, int depth = 0) {
    if (Fr && r.straddles_real_axis()) {
        auto rz = real_scan(*Fr, r.lo_re(), r.hi_re(), std::max(r.half_width / 4, 1e-12), opt);
        int s = 0;
        for (auto& z : rz) s += z.multiplicity;
        if (s == count) {
            out.insert(out.end(), rz.begin(), rz.end());
            return;
        }
    }
    auto z = refine_newton(F, r.center, count);
    if ((z.newton_converged && r.dilated(1.5).contains(z.lambda)) || count == 1 || depth >= 2 ||
        r.diameter() < 1e-9 * (1 + std::abs(r.center))) {
        if (!z.newton_converged) {
            z.lambda = r.center;
            z.residual = std::abs(F(r.center).first);
        }
        out.push_back(z);
        return;
    }
    // several distinct zeros still share the cluster: isolate further
    for (auto& [c, n] : isolate_zeros(F, r, target * 1e-3, 1))
        resolve_cluster(F, Fr, c, n, target * 1e-3, opt, out, depth + 1);
}

inline std::vector<LocatedZero> merge_close(std::vector<LocatedZero> v) {
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    std::vector<LocatedZero> out;
    for (auto& z : v) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend() && it != out.rbegin() + 4; ++it)
            if (std::abs(it->lambda - z.lambda) <= 1e-10 * std::max(1.0, std::abs(z.lambda))) {
                it->multiplicity = std::max(it->multiplicity, z.multiplicity);
                dup = true;
                break;
            }
        if (!dup) out.push_back(z);
    }
    return out;
}

// Complex search on [lo, hi] x [-h, h], cut into chunks of about one
// eigenvalue spacing with cut lines moved to where |F| is largest.
inline std::vector<LocatedZero> complex_search(const AnalyticFn& F, const RealFn* Fr, double lo, double hi, double h,
                                               const SpectrumOptions& o) {
    std::vector<double> edges{lo};
    while (edges.back() < hi) {
        double w = eig_spacing(edges.back());
        double e = edges.back() + w;
        if (e >= hi - 0.25 * w) {
            edges.push_back(hi);
            break;
        }
        double best = e, bv = -1;
        for (double f : {-0.2, -0.1, 0.0, 0.1, 0.2}) {
            double c = e + f * w;
            double m = std::abs(F(c).first);
            if (m > bv) bv = m, best = c;
        }
        edges.push_back(best);
    }
    std::vector<std::vector<LocatedZero>> per(edges.size() - 1);
    parallel_for(
        per.size(),
        [&](std::size_t i) {
            Rect r = Rect::from_bounds(edges[i], edges[i + 1], -h, h);
            double target = 0.05 * std::max(1.0, std::sqrt(std::abs(r.center.real())));
            for (auto& [c, n] : isolate_zeros(F, r, target, 1)) resolve_cluster(F, Fr, c, n, target, o.scan, per[i]);
        },
        o.threads);
    std::vector<LocatedZero> all;
    for (auto& v : per)
        for (auto& z : v)
            if (z.lambda.real() >= lo - 1e-9 * (1 + std::abs(lo)) && z.lambda.real() <= hi + 1e-9 * (1 + std::abs(hi)))
                all.push_back(z);
    return merge_close(std::move(all));
}

// Real scan, run chunk-wise in parallel.
inline std::vector<LocatedZero> parallel_real_scan(const RealFn& F, double lo, double hi, const SpectrumOptions& o) {
    int chunks = std::max(1, std::min(o.threads * 4, static_cast<int>((hi - lo) / eig_spacing(hi)) + 1));
    if (o.threads <= 1) chunks = 1;
    std::vector<double> edges(chunks + 1);
    for (int i = 0; i <= chunks; ++i) edges[i] = lo + (hi - lo) * i / chunks;
    std::vector<std::vector<LocatedZero>> per(chunks);
    parallel_for(
        chunks,
        [&](std::size_t i) {
            per[i] = real_scan(F, edges[i], edges[i + 1], default_step, o.scan);
        },
        o.threads);
    std::vector<LocatedZero> all;
    for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
    return merge_close(std::move(all));
}

}  // namespace detail

// Zeros of the characteristic function of problem p in region.
inline std::vector<LocatedZero> characteristic_zeros(const HillModel& m, Problem p, double k,
                                                     const SpectralRegion& region, const SpectrumOptions& o = {}) {
    if (!(region.hi > region.lo)) throw ConfigError("spectral region needs lo < hi");
    AnalyticFn F = [&m, p, k](cplx l) { return characteristic(p, k, m.fundamental(l)); };
    RealFn Fr = [&m, p, k](double l) {
        auto [f, fp] = characteristic(p, k, m.fundamental(l));
        return std::make_pair(f.real(), fp.real());
    };
    ScanOptions scan = o.scan;
    // F2 touches zero at closed gaps; its noise floor is set by the integrator
    if (p == Problem::TwoPeriodic) scan.tangency_tol = std::max(scan.tangency_tol, 1e-8);
    SpectrumOptions oo = o;
    oo.scan = scan;

    double real_from = std::numeric_limits<double>::infinity();
    if (o.mode == SpectrumOptions::Mode::RealOnly) {
        real_from = region.lo;
    } else if (o.mode == SpectrumOptions::Mode::Auto && m.spec && m.real_analytic) {
        auto c = certify_interval(*m.spec, region.lo, o.reality);
        if (c.certified) real_from = std::max(region.lo, c.threshold);
    }
    if (real_from > region.lo && !m.real_analytic && o.mode == SpectrumOptions::Mode::RealOnly)
        throw ConfigError("real-only search needs a real-analytic potential");

    std::vector<LocatedZero> out;
    try {
        if (real_from < region.hi) {
            auto r = detail::parallel_real_scan(Fr, real_from, region.hi, oo);
            out.insert(out.end(), r.begin(), r.end());
        }
        if (real_from > region.lo) {
            double top = std::min(real_from, region.hi);
            double h = region.im_half;
            if (!(h > 0)) {
                double xi = 0;
                if (m.spec) xi = xi_functional(*m.spec, DomainSpec::rect(region.lo, top, 1.0), o.reality);
                h = std::max(1.0, 2 * xi);
            }
            auto c = detail::complex_search(F, m.real_analytic ? &Fr : nullptr, region.lo, top, h, oo);
            out.insert(out.end(), c.begin(), c.end());
        }
    } catch (const NumericalError& e) {
        std::ostringstream s;
        s << e.what() << " [region (" << region.lo << ", " << region.hi << "), problem " << problem_name(p) << "]";
        throw NumericalError(s.str());
    }
    return detail::merge_close(std::move(out));
}

namespace detail {

inline Eigenvalue to_eigenvalue(const LocatedZero& z, Problem p, double k) {
    Eigenvalue e;
    e.lambda = z.lambda;
    e.multiplicity = z.multiplicity;
    e.problem = p;
    e.k = k;
    e.residual = z.residual;
    e.real_flag = std::abs(z.lambda.imag()) <= 1e-10 * (1 + std::abs(z.lambda));
    return e;
}

// window index for a real value; -1 when not applicable
inline int window_index(Problem p, double l) {
    double s = l > 0 ? std::sqrt(l) / pi : 0.0;
    switch (p) {
        case Problem::Periodic: return l < 0 ? 0 : 2 * static_cast<int>(std::floor(s / 2 + 0.5));
        case Problem::Antiperiodic: return l < 0 ? -1 : 2 * static_cast<int>(std::floor(s / 2)) + 1;
        case Problem::Dirichlet: {
            int n = static_cast<int>(std::floor(s + 0.5));
            return n >= 1 ? n : -1;
        }
        case Problem::Neumann: return l < 0 ? 0 : static_cast<int>(std::floor(s + 0.5));
        case Problem::MixedDN:
        case Problem::MixedND: return l < 0 ? -1 : static_cast<int>(std::floor(s)) + 1;
        default: return -1;
    }
}

// window (lo, hi) of index n
inline std::pair<double, double> window_bounds(Problem p, int n) {
    auto sq = [](double t) { return t * t; };
    double ninf = -std::numeric_limits<double>::infinity();
    switch (p) {
        case Problem::Periodic:
        case Problem::Antiperiodic:
            return {n == 0 ? ninf : sq((n - 1) * pi), sq((n + 1) * pi)};
        case Problem::Dirichlet:
        case Problem::Neumann: return {n == 0 ? ninf : sq((n - 0.5) * pi), sq((n + 0.5) * pi)};
        case Problem::MixedDN:
        case Problem::MixedND: return {sq((n - 1) * pi), sq(n * pi)};
        default: return {ninf, ninf};
    }
}

inline int window_expected(Problem p, int n) {
    if (p == Problem::Periodic || p == Problem::Antiperiodic) return n == 0 ? 1 : 2;
    return 1;
}

// Assigns window labels where the window lies inside the region and holds
// the expected count.
inline void label(std::vector<Eigenvalue>& ev, const SpectralRegion& region) {
    std::map<std::pair<int, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        ev[i].index = -1;
        ev[i].branch = 0;
        if (!ev[i].real_flag) continue;
        int n = window_index(ev[i].problem, ev[i].lambda.real());
        if (n >= 0) groups[{static_cast<int>(ev[i].problem), n}].push_back(i);
    }
    for (auto& [key, idx] : groups) {
        Problem p = static_cast<Problem>(key.first);
        int n = key.second;
        auto [wl, wh] = window_bounds(p, n);
        if (wl < region.lo || wh > region.hi) {
            if (!(n == 0 && wh <= region.hi)) continue;
        }
        int total = 0;
        for (auto i : idx) total += ev[i].multiplicity;
        if (total != window_expected(p, n)) continue;
        for (auto i : idx) ev[i].index = n;
        if (total == 2 && idx.size() == 2) {
            ev[idx[0]].branch = -1;
            ev[idx[1]].branch = +1;
        }
    }
}

inline void sort_eigs(std::vector<Eigenvalue>& ev) {
    std::sort(ev.begin(), ev.end(), [](auto& a, auto& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
}

}  // namespace detail

inline std::vector<Eigenvalue> two_periodic_spectrum(const HillModel& m, const SpectralRegion& region,
                                                     const SpectrumOptions& o = {}) {
    auto zs = characteristic_zeros(m, Problem::TwoPeriodic, 0, region, o);
    std::vector<Eigenvalue> out;
    for (auto& z : zs) {
        auto fd = m.fundamental(z.lambda);
        cplx delta = (fd.theta1 + fd.dphi1) / 2.0;
        Problem p = delta.real() >= 0 ? Problem::Periodic : Problem::Antiperiodic;
        out.push_back(detail::to_eigenvalue(z, p, p == Problem::Periodic ? 0.0 : pi));
    }
    detail::sort_eigs(out);
    detail::label(out, region);
    return out;
}

inline std::vector<Eigenvalue> quasi_spectrum(const HillModel& m, double k, const SpectralRegion& region,
                                              const SpectrumOptions& o = {}) {
    double kc = detail::canonical_k(k);
    if (kc == 0.0 || kc == pi) {
        // Delta = +-1 has double roots at closed gaps; go through F2
        Problem want = kc == 0.0 ? Problem::Periodic : Problem::Antiperiodic;
        auto all = two_periodic_spectrum(m, region, o);
        std::vector<Eigenvalue> out;
        for (auto& e : all)
            if (e.problem == want) out.push_back(e);
        return out;
    }
    auto zs = characteristic_zeros(m, Problem::QuasiPeriodic, kc, region, o);
    std::vector<Eigenvalue> out;
    for (auto& z : zs) out.push_back(detail::to_eigenvalue(z, Problem::QuasiPeriodic, k));
    detail::sort_eigs(out);
    return out;
}

inline std::vector<Eigenvalue> boundary_spectrum(const HillModel& m, Problem p, const SpectralRegion& region,
                                                 const SpectrumOptions& o = {}) {
    if (p != Problem::Dirichlet && p != Problem::Neumann && p != Problem::MixedDN && p != Problem::MixedND)
        throw ConfigError("boundary_spectrum: not a boundary problem");
    auto zs = characteristic_zeros(m, p, 0, region, o);
    std::vector<Eigenvalue> out;
    for (auto& z : zs) out.push_back(detail::to_eigenvalue(z, p, 0));
    detail::sort_eigs(out);
    detail::label(out, region);
    return out;
}

inline std::vector<Eigenvalue> dirichlet_spectrum(const HillModel& m, const SpectralRegion& r, const SpectrumOptions& o = {}) {
    return boundary_spectrum(m, Problem::Dirichlet, r, o);
}
inline std::vector<Eigenvalue> neumann_spectrum(const HillModel& m, const SpectralRegion& r, const SpectrumOptions& o = {}) {
    return boundary_spectrum(m, Problem::Neumann, r, o);
}
inline std::pair<std::vector<Eigenvalue>, std::vector<Eigenvalue>> mixed_spectra(const HillModel& m,
                                                                                const SpectralRegion& r,
                                                                                const SpectrumOptions& o = {}) {
    return {boundary_spectrum(m, Problem::MixedDN, r, o), boundary_spectrum(m, Problem::MixedND, r, o)};
}

// ---------------------------------------------------------------- bands

struct Interval {
    double lo, hi;
    int index = -1;
};

struct BandStructureError : Error {
    using Error::Error;
};

struct BandStructure {
    std::vector<Interval> bands;  // [lambda_{n-1}^+, lambda_n^-], index n
    std::vector<Interval> gaps;   // (lambda_n^-, lambda_n^+), index n; lo == hi when closed
    int start_index = -1;
    SpectralRegion region;
    bool refused = false;
    std::string reason;
    RealityCertificate certificate;
    std::vector<Eigenvalue> raw;  // 2-periodic eigenvalues used (or raw complex zeros when refused)
};

inline BandStructure assemble_bands(const HillModel& m, const SpectralRegion& region, const SpectrumOptions& o = {}) {
    BandStructure bs;
    bs.region = region;
    if (m.spec) {
        bs.certificate = certify_interval(*m.spec, region.lo, o.reality);
        if (!bs.certificate.certified || bs.certificate.threshold > region.lo) {
            bs.refused = true;
            bs.reason = "region (" + std::to_string(region.lo) + ", " + std::to_string(region.hi) +
                        ") is not certified real";
            SpectrumOptions oc = o;
            oc.mode = SpectrumOptions::Mode::Complex;
            bs.raw = two_periodic_spectrum(m, region, oc);
            return bs;
        }
    }
    SpectrumOptions orl = o;
    orl.mode = SpectrumOptions::Mode::RealOnly;
    bs.raw = two_periodic_spectrum(m, region, orl);

    // expanded by multiplicity
    std::vector<double> e;
    std::vector<int> lab;
    for (auto& ev : bs.raw)
        for (int j = 0; j < ev.multiplicity; ++j) {
            e.push_back(ev.lambda.real());
            lab.push_back(ev.index);
        }
    if (e.empty()) return bs;
    auto delta_at = [&](double l) { auto fd = m.fundamental(l); return ((fd.theta1 + fd.dphi1) / 2.0).real(); };
    // is (region.lo, e0) inside a band?
    std::size_t s = 0;
    if (region.lo < e[0] && std::abs(delta_at((region.lo + e[0]) / 2)) < 1) s = 1;
    // start index from the first labelled band end
    int first_label = -1;
    for (std::size_t i = s; i < e.size(); ++i)
        if (lab[i] >= 0) {
            // e[i] is lambda^+ of window lab[i] when (i - s) is even
            first_label = lab[i] + 1 - static_cast<int>((i - s) / 2) - ((i - s) % 2 == 1 ? 1 : 0);
            break;
        }
    bs.start_index = first_label;
    if (s == 1 && e.size() >= 2)
        bs.gaps.push_back({e[0], e[1], first_label >= 0 ? first_label - 1 : -1});
    for (std::size_t i = s; i + 1 < e.size(); i += 2) {
        int n = first_label >= 0 ? first_label + static_cast<int>((i - s) / 2) : -1;
        if (!(e[i] < e[i + 1])) {
            std::ostringstream msg;
            msg << "band ordering violated at sorted positions " << i << ", " << i + 1 << " (" << e[i] << ", "
                << e[i + 1] << ")";
            throw BandStructureError(msg.str());
        }
        bs.bands.push_back({e[i], e[i + 1], n});
        if (i + 2 < e.size()) bs.gaps.push_back({e[i + 1], e[i + 2], n});
    }
    // |Delta| < 1 on band interiors, > 1 inside open gaps
    for (auto& b : bs.bands)
        for (int j = 1; j <= 5; ++j) {
            double l = b.lo + (b.hi - b.lo) * j / 6.0;
            double d = delta_at(l);
            if (!(std::abs(d) < 1 + 1e-9)) {
                std::ostringstream msg;
                msg << "|Delta| = " << std::abs(d) << " >= 1 inside band " << b.index << " at " << l;
                throw BandStructureError(msg.str());
            }
        }
    for (auto& g : bs.gaps)
        if (g.hi - g.lo > 1e-7 * std::max(1.0, std::abs(g.hi))) {
            double d = delta_at((g.lo + g.hi) / 2);
            if (!(std::abs(d) > 1 - 1e-9)) {
                std::ostringstream msg;
                msg << "|Delta| = " << std::abs(d) << " < 1 inside gap " << g.index;
                throw BandStructureError(msg.str());
            }
        }
    return bs;
}

struct BandTable {
    std::vector<double> ks;
    std::vector<std::vector<double>> values;  // values[j][n]: n-th band function at ks[j]
    std::vector<int> monotone;                // per band: +1 increasing, -1 decreasing, 0 neither
    std::vector<std::string> crossings;
};

inline BandTable band_functions(const HillModel& m, const std::vector<double>& k_grid, const SpectralRegion& region,
                                const SpectrumOptions& o = {}) {
    for (double k : k_grid)
        if (!(k >= 0 && k <= pi)) throw ConfigError("band_functions: k must lie in [0, pi]");
    SpectrumOptions inner = o;
    inner.threads = 1;
    auto rows = parallel_map<std::vector<double>>(
        k_grid.size(),
        [&](std::size_t j) {
            std::vector<double> v;
            for (auto& e : quasi_spectrum(m, k_grid[j], region, inner))
                for (int r = 0; r < e.multiplicity; ++r) v.push_back(e.lambda.real());
            std::sort(v.begin(), v.end());
            return v;
        },
        o.threads);
    BandTable t;
    t.ks = k_grid;
    std::size_t nb = rows.empty() ? 0 : rows[0].size();
    for (auto& r : rows) nb = std::min(nb, r.size());
    t.values.resize(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (j == 0) {
            t.values[0].assign(rows[0].begin(), rows[0].begin() + nb);
            continue;
        }
        // nearest-match tracking against the previous column
        std::vector<double> cur(nb);
        std::vector<bool> used(rows[j].size(), false);
        for (std::size_t n = 0; n < nb; ++n) {
            double prev = t.values[j - 1][n];
            std::size_t best = 0;
            double bd = std::numeric_limits<double>::infinity(), second = bd;
            for (std::size_t c = 0; c < rows[j].size(); ++c) {
                if (used[c]) continue;
                double d = std::abs(rows[j][c] - prev);
                if (d < bd) second = bd, bd = d, best = c;
                else if (d < second) second = d;
            }
            used[best] = true;
            cur[n] = rows[j][best];
            if (second - bd <= 1e-8 * std::max(1.0, std::abs(prev))) {
                std::ostringstream s;
                s << "band " << n << " between k=" << k_grid[j - 1] << " and k=" << k_grid[j];
                t.crossings.push_back(s.str());
            }
        }
        t.values[j] = cur;
    }
    t.monotone.assign(nb, 0);
    for (std::size_t n = 0; n < nb; ++n) {
        bool inc = true, dec = true;
        for (std::size_t j = 1; j < rows.size(); ++j) {
            double d = t.values[j][n] - t.values[j - 1][n];
            double tol = 1e-9 * std::max(1.0, std::abs(t.values[j][n]));
            if (d < -tol) inc = false;
            if (d > tol) dec = false;
        }
        t.monotone[n] = inc && !dec ? 1 : dec && !inc ? -1 : 0;
    }
    return t;
}

// ---------------------------------------------------------- interlacing

struct InterlacingReport {
    std::vector<Eigenvalue> two_periodic, dirichlet, neumann;
    std::vector<std::string> violations;
    int windows_checked = 0;
    int inclusions_checked = 0;
    int empirical_N = -1;
    double min_delta_sq_at_dirichlet = std::numeric_limits<double>::infinity();
    double inclusion_slack = 1e-6;
    bool ok() const { return violations.empty(); }
};

inline InterlacingReport interlacing_report(const HillModel& m, const SpectralRegion& region,
                                            const SpectrumOptions& o = {}) {
    InterlacingReport rep;
    if (m.spec) {
        auto c = certify_interval(*m.spec, region.lo, o.reality);
        if (!c.certified || c.threshold > region.lo)
            rep.violations.push_back("region is not certified real; reality assumed for the report");
    }
    SpectrumOptions orl = o;
    orl.mode = SpectrumOptions::Mode::RealOnly;
    rep.two_periodic = two_periodic_spectrum(m, region, orl);
    rep.dirichlet = dirichlet_spectrum(m, region, orl);
    rep.neumann = neumann_spectrum(m, region, orl);

    // window counts per problem
    std::map<int, bool> window_ok;  // by n; all problems combined
    auto count_windows = [&](Problem p, const std::vector<Eigenvalue>& ev, int nmin, int step) {
        for (int n = nmin;; n += step) {
            auto [wl, wh] = detail::window_bounds(p, n);
            if (wh > region.hi) break;
            if (wl < region.lo) continue;
            int cnt = 0;
            for (auto& e : ev)
                if (e.problem == p && e.lambda.real() > wl && e.lambda.real() < wh) cnt += e.multiplicity;
            ++rep.windows_checked;
            bool good = cnt == detail::window_expected(p, n);
            if (!window_ok.count(n)) window_ok[n] = true;
            window_ok[n] = window_ok[n] && good;
            if (!good) {
                std::ostringstream s;
                s << problem_name(p) << " window " << n << ": " << cnt << " eigenvalues, expected "
                  << detail::window_expected(p, n);
                rep.violations.push_back(s.str());
            }
        }
    };
    count_windows(Problem::Periodic, rep.two_periodic, 2, 2);
    count_windows(Problem::Antiperiodic, rep.two_periodic, 1, 2);
    count_windows(Problem::Dirichlet, rep.dirichlet, 1, 1);
    count_windows(Problem::Neumann, rep.neumann, 1, 1);

    // empirical N: first n from which all windows hold for 10 consecutive n
    {
        std::vector<int> ns;
        for (auto& [n, g] : window_ok) ns.push_back(n);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            std::size_t run = 0;
            while (i + run < ns.size() && window_ok[ns[i + run]] && (run == 0 || ns[i + run] == ns[i + run - 1] + 1))
                ++run;
            if (run >= std::min<std::size_t>(10, ns.size() - i) && run > 0) {
                rep.empirical_N = ns[i];
                break;
            }
        }
    }

    // inclusions gamma_n, nu_n in [lambda_n^-, lambda_n^+]
    std::map<int, std::pair<double, double>> pm;
    for (auto& e : rep.two_periodic) {
        if (e.index < 1) continue;
        double l = e.lambda.real();
        auto it = pm.find(e.index);
        if (it == pm.end()) pm[e.index] = {l, l};
        else it->second = {std::min(it->second.first, l), std::max(it->second.second, l)};
    }
    auto include = [&](const std::vector<Eigenvalue>& ev, const char* name) {
        for (auto& e : ev) {
            if (e.index < 1) continue;
            auto it = pm.find(e.index);
            if (it == pm.end()) continue;
            ++rep.inclusions_checked;
            double l = e.lambda.real();
            double sl = rep.inclusion_slack;
            if (l < it->second.first - sl || l > it->second.second + sl) {
                std::ostringstream s;
                s.precision(12);
                s << name << "_" << e.index << " = " << l << " outside [" << it->second.first << ", "
                  << it->second.second << "]";
                rep.violations.push_back(s.str());
            }
        }
    };
    include(rep.dirichlet, "gamma");
    include(rep.neumann, "nu");

    for (auto& e : rep.dirichlet) {
        auto fd = m.fundamental(e.lambda);
        cplx d = (fd.theta1 + fd.dphi1) / 2.0;
        double d2 = std::norm(d);
        rep.min_delta_sq_at_dirichlet = std::min(rep.min_delta_sq_at_dirichlet, d2);
        if (d2 < 1 - 1e-9) {
            std::ostringstream s;
            s << "Delta^2 = " << d2 << " < 1 at Dirichlet eigenvalue " << e.lambda.real();
            rep.violations.push_back(s.str());
        }
    }
    return rep;
}

}  // namespace hillbands
