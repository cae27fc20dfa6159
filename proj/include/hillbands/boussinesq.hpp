#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fundsol.hpp"
#include "rootfind.hpp"
#include "spectra.hpp"

namespace hillbands {

// y''' + (p y)' + p y' + q y = zeta y
struct ThirdOrderCoeffs {
    FourierProfile p, q;
};

using Mat3 = Eigen::Matrix3cd;

struct NearRamificationError : NumericalError {
    using NumericalError::NumericalError;
};

// M(k, j) = y_j^{(k)}(x) for the basis y_j^{(k)}(0) = delta_jk. C1 is the
// second compound of M1 (2x2 minors, pairs ordered 01, 02, 12); it is
// integrated alongside M1 because its entries are only O(e^{z/2}) and carry
// the subdominant multipliers that M1 loses to rounding.
struct Monodromy3 {
    cplx zeta;
    Mat3 M1, C1, M2;
    bool has_m2 = false;
    long steps = 0;

    // |det M1 - 1| relative to the size of the cofactor expansion
    double det_defect() const {
        cplx d = M1(0, 0) * C1(2, 2) - M1(1, 0) * C1(1, 2) + M1(2, 0) * C1(0, 2);
        double scale = std::max(1.0, M1.cwiseAbs().maxCoeff() * C1.cwiseAbs().maxCoeff());
        return std::abs(d - 1.0) / scale;
    }
    double m2_defect() const {
        if (!has_m2) return 0;
        Mat3 sq = M1 * M1;
        return (M2 - sq).cwiseAbs().maxCoeff() / std::max(1.0, sq.cwiseAbs().maxCoeff());
    }
};

struct MultiplierSet {
    std::array<cplx, 3> kappa;  // |k1| <= |k2| <= |k3|
    cplx A, B;
    double product_defect() const { return std::abs(kappa[0] * kappa[1] * kappa[2] - 1.0); }
};

// One located zero in the zeta plane with its window label.
struct ZetaRoot {
    cplx zeta;
    int multiplicity = 1;
    int n = 0;       // window (alpha_n^-, alpha_n^+), 0 if outside every window
    int branch = 0;  // -1 / +1 for the two simple zeros of a window
    double residual = 0;
};

struct BoussinesqConfig {
    IntegratorConfig ode{1e-11, 1e-13};
    double fd_rel = 1e-5;     // central-difference step relative to |z|
    double z_step = 0.2;      // real scan spacing in z = zeta^{1/3}
    double tangency_tol = 1e-8;
    double z_cap = 200;       // |zeta|^{1/3} above this overflows the monodromy
    int nodes = 48;           // Chebyshev nodes of the reduced potential
    double dominance = 1e-4;  // required |k3| - |k2| relative to |k3|
};

inline cplx cube_root(cplx zeta) { return zeta == 0.0 ? cplx(0) : std::pow(zeta, 1.0 / 3.0); }

namespace detail {

// Error norm for (Phi, C): each column measured against its own size with
// derivative rows scaled by powers of 1/|z|_1.
struct ColumnNorm3 {
    double z1;
    double operator()(const CState<18>& y, const CState<18>& yn, const CState<18>& err, double rtol, double atol) const {
        double e = 0;
        for (int g = 0; g < 6; ++g) {
            double base = g < 3 ? 1.0 : 1.0 / z1;
            double sc = 0, eg = 0;
            for (int r = 0; r < 3; ++r) {
                double w = base * std::pow(1.0 / z1, r);
                int i = 3 * g + r;
                sc = std::max({sc, w * std::abs(y[i]), w * std::abs(yn[i])});
                eg = std::max(eg, w * std::abs(err[i]));
            }
            e = std::max(e, eg / (atol + rtol * sc));
        }
        return e;
    }
};

struct Coeff3 {
    cplx c;  // zeta - q - p'
    double p;
};

inline Coeff3 coeff3(const ThirdOrderCoeffs& co, cplx zeta, double x) {
    auto [p, dp] = co.p.eval(x);
    return {zeta - co.q(x) - dp, p};
}

inline void check_zeta(cplx zeta, const BoussinesqConfig& b) {
    if (!is_finite(zeta)) throw DomainError("zeta must be finite");
    if (std::cbrt(std::abs(zeta)) > b.z_cap) throw DomainError("|zeta| beyond the overflow cap");
}

}  // namespace detail

// Monodromy at x = 1 (and, on request, at x = 2 by continuing the integration).
inline Monodromy3 integrate_third_order(const ThirdOrderCoeffs& co, cplx zeta, bool second_period = false,
                                        const BoussinesqConfig& b = {}) {
    detail::check_zeta(zeta, b);
    b.ode.validate();
    double z1 = std::max(1.0, std::cbrt(std::abs(zeta)));
    auto rhs = [&](double x, const CState<18>& y) {
        auto k = detail::coeff3(co, zeta, x);
        CState<18> d;
        for (int j = 0; j < 3; ++j) {
            const cplx* u = &y[3 * j];
            d[3 * j] = u[1];
            d[3 * j + 1] = u[2];
            d[3 * j + 2] = k.c * u[0] - 2.0 * k.p * u[1];
        }
        for (int j = 0; j < 3; ++j) {
            const cplx* u = &y[9 + 3 * j];
            d[9 + 3 * j] = u[1];
            d[9 + 3 * j + 1] = -2.0 * k.p * u[0] + u[2];
            d[9 + 3 * j + 2] = -k.c * u[0];
        }
        return d;
    };
    CState<18> y0{};
    for (int j = 0; j < 3; ++j) {
        y0[4 * j] = 1.0;
        y0[9 + 4 * j] = 1.0;
    }
    Monodromy3 m;
    m.zeta = zeta;
    auto unpack = [](const CState<18>& y, Mat3& M, Mat3* C) {
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 3; ++r) {
                M(r, j) = y[3 * j + r];
                if (C) (*C)(r, j) = y[9 + 3 * j + r];
            }
    };
    std::array<double, 1> stop{1.0};
    double x1 = second_period ? 2.0 : 1.0;
    auto y = dopri5<18>(rhs, y0, 0.0, x1, detail::local_tolerances(b.ode), detail::ColumnNorm3{z1},
                        std::span<const double>(stop.data(), second_period ? 1 : 0),
                        [&](std::size_t, const CState<18>& s) { unpack(s, m.M1, &m.C1); }, 0.25 / (1 + z1), &m.steps);
    if (second_period) {
        unpack(y, m.M2, nullptr);
        m.has_m2 = true;
    } else {
        unpack(y, m.M1, &m.C1);
    }
    return m;
}

namespace detail {

// C1 restricted to its invariant plane for the eigenvalues k1 k3, k2 k3
// (range of C1 - 1/k3), in an orthonormal basis.
inline Eigen::Matrix2cd dominant_plane(const Mat3& C1, cplx k3) {
    Mat3 R = C1 - Mat3::Identity() / k3;
    Eigen::JacobiSVD<Mat3> svd(R, Eigen::ComputeFullU);
    Eigen::Matrix<cplx, 3, 2> W = svd.matrixU().leftCols<2>();
    return W.adjoint() * C1 * W;
}

inline bool strongly_dominant(cplx k3) { return std::abs(k3) >= 8.0; }

}  // namespace detail

// Roots of t^3 - A t^2 + B t - 1 with B = tr C1 (the adjugate trace). The
// dominant root comes from Cardano (companion eigenvalues as fallback)
// polished by Newton. When it dominates, the other two are read off the
// compound's dominant plane, so k1 k2 k3 = 1 is an honest check rather than
// an identity of the construction.
inline MultiplierSet multipliers(const Monodromy3& m) {
    MultiplierSet s;
    s.A = m.M1.trace();
    s.B = m.C1.trace();
    cplx A = s.A, B = s.B;
    auto cubic = [&](cplx t) { return ((t - A) * t + B) * t - 1.0; };
    auto dcubic = [&](cplx t) { return (3.0 * t - 2.0 * A) * t + B; };
    auto polish = [&](cplx t) {
        for (int it = 0; it < 8; ++it) {
            cplx d = dcubic(t);
            if (d == 0.0) break;
            cplx step = cubic(t) / d;
            if (std::abs(cubic(t - step)) >= std::abs(cubic(t))) break;
            t -= step;
            if (std::abs(step) <= 1e-16 * std::abs(t)) break;
        }
        return t;
    };
    std::array<cplx, 3> roots{};
    bool ok = false;
    // depressed cubic u^3 + P u + Q with t = u + A/3
    cplx P = B - A * A / 3.0, Q = -2.0 * A * A * A / 27.0 + A * B / 3.0 - 1.0;
    cplx sq = std::sqrt(Q * Q / 4.0 + P * P * P / 27.0);
    cplx w = -Q / 2.0 + sq;
    if (std::abs(-Q / 2.0 - sq) > std::abs(w)) w = -Q / 2.0 - sq;
    if (w == 0.0) {
        roots.fill(A / 3.0);  // P = Q = 0: triple root
        ok = true;
    } else if (is_finite(w)) {
        cplx Cc = std::pow(w, 1.0 / 3.0);
        const cplx om = std::polar(1.0, 2 * pi / 3);
        ok = true;
        for (int k = 0; k < 3; ++k) {
            roots[k] = polish(Cc - P / (3.0 * Cc) + A / 3.0);
            double tol = 1e-8 * std::max({1.0, std::abs(A), std::abs(B)}) * std::max(1.0, std::norm(roots[k]));
            ok = ok && is_finite(roots[k]) && std::abs(cubic(roots[k])) <= tol;
            Cc *= om;
        }
    }
    if (!ok) {
        Mat3 comp = Mat3::Zero();
        comp(0, 0) = A;
        comp(0, 1) = -B;
        comp(0, 2) = 1.0;
        comp(1, 0) = 1.0;
        comp(2, 1) = 1.0;
        Eigen::ComplexEigenSolver<Mat3> es(comp);
        for (int i = 0; i < 3; ++i) roots[i] = polish(es.eigenvalues()(i));
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    cplx k3 = roots[2];
    if (detail::strongly_dominant(k3)) {
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(detail::dominant_plane(m.C1, k3));
        roots[0] = es.eigenvalues()(0) / k3;
        roots[1] = es.eigenvalues()(1) / k3;
        if (std::abs(roots[0]) > std::abs(roots[1])) std::swap(roots[0], roots[1]);
    }
    s.kappa = roots;
    return s;
}

// (k1-k2)^2 (k1-k3)^2 (k2-k3)^2 from the symmetric functions. Exact in
// arithmetic, but at large zeta the terms cancel to O(e^{3z}) rounding; the
// root finders use ramification_function instead.
inline cplx cubic_discriminant(cplx A, cplx B) {
    return A * A * B * B - 4.0 * B * B * B - 4.0 * A * A * A + 18.0 * A * B - 27.0;
}
inline cplx cubic_discriminant(const MultiplierSet& ms) { return cubic_discriminant(ms.A, ms.B); }

// k3 (k1 - k2)^2: the discriminant divided by the nonvanishing factor
// k3^{-1} (k1-k3)^2 (k2-k3)^2. Computed from the compound matrix restricted
// to its dominant invariant plane, where its eigenvalues are k1 k3, k2 k3.
inline cplx ramification_function(const Monodromy3& m, const MultiplierSet& ms) {
    cplx k3 = ms.kappa[2];
    if (!detail::strongly_dominant(k3)) {
        cplx d = ms.kappa[0] - ms.kappa[1];
        return k3 * d * d;
    }
    auto N = detail::dominant_plane(m.C1, k3);
    cplx d = N(0, 0) - N(1, 1);
    return (d * d + 4.0 * N(0, 1) * N(1, 0)) / k3;
}
inline cplx ramification_function(const Monodromy3& m) { return ramification_function(m, multipliers(m)); }

// Three-point determinant y2(1) y3(2) - y3(1) y2(2) with M2 = M1^2 written
// through the compound, divided by k3^{3/2}.
inline cplx three_point_function(const Monodromy3& m, const MultiplierSet& ms) {
    cplx D = m.M1(0, 1) * m.C1(0, 2) + m.M1(0, 2) * m.C1(1, 2);
    return D / std::pow(ms.kappa[2], 1.5);
}
inline cplx three_point_function(const Monodromy3& m) { return three_point_function(m, multipliers(m)); }

// Window edges alpha_n^{+-} = (pi (2n +- 1)/sqrt3)^3 and the unperturbed value.
inline double alpha_minus(int n) { return std::pow(pi * (2 * n - 1) / std::sqrt(3.0), 3); }
inline double alpha_plus(int n) { return std::pow(pi * (2 * n + 1) / std::sqrt(3.0), 3); }
inline double zeta_free(int n) { return std::pow(2 * pi * n / std::sqrt(3.0), 3); }

// (2/sqrt3) int f cos(2 pi n x + pi/6) dx from the Fourier coefficients
inline double tilde_coeff(const FourierProfile& f, int n) {
    if (n < 1) throw ConfigError("n must be positive");
    double a = n <= static_cast<int>(f.cos_coeffs.size()) ? f.cos_coeffs[n - 1] : 0.0;
    double b = n <= static_cast<int>(f.sin_coeffs.size()) ? f.sin_coeffs[n - 1] : 0.0;
    return a / 2 - b / (2 * std::sqrt(3.0));
}

inline double zeta_asymptotic(const ThirdOrderCoeffs& co, int n) {
    double w = 2 * pi * n / std::sqrt(3.0);
    return w * w * w - 2 * w * co.p.a0 + w * tilde_coeff(co.p, n) + co.q.a0 - tilde_coeff(co.q, n);
}

inline double ram_asymptotic(const ThirdOrderCoeffs& co, int n) {
    if (n < 1) throw ConfigError("n must be positive");
    double w = 2 * pi * n / std::sqrt(3.0);
    return w * w * w - 2 * w * co.p.a0;
}

namespace detail {

enum class ZetaFn { Ramification, ThreePoint };

inline cplx zeta_fn(const ThirdOrderCoeffs& co, ZetaFn which, cplx zeta, const BoussinesqConfig& b) {
    auto m = integrate_third_order(co, zeta, false, b);
    auto ms = multipliers(m);
    return which == ZetaFn::Ramification ? ramification_function(m, ms) : three_point_function(m, ms);
}

inline int zeta_window(double zeta) {
    if (!(zeta > 0)) return 0;
    double t = std::cbrt(zeta) * std::sqrt(3.0) / pi;  // in (2n-1, 2n+1)
    int n = static_cast<int>(std::floor((t + 1) / 2));
    return n >= 1 ? n : 0;
}

inline std::vector<ZetaRoot> label_zeta(const std::vector<LocatedZero>& zs) {
    std::vector<ZetaRoot> out;
    for (auto& z : zs) out.push_back({z.lambda, z.multiplicity, zeta_window(z.lambda.real()), 0, z.residual});
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].n == 0 || out[i].multiplicity != 1) continue;
        std::size_t j = i + 1;
        if (j < out.size() && out[j].n == out[i].n && out[j].multiplicity == 1 &&
            (i == 0 || out[i - 1].n != out[i].n) && (j + 1 == out.size() || out[j + 1].n != out[i].n)) {
            out[i].branch = -1;
            out[j].branch = +1;
            ++i;
        }
    }
    return out;
}

// Real zeros on (zeta_lo, zeta_hi), zeta > 0, scanned in z = zeta^{1/3}
// where the functions oscillate with a fixed period.
inline std::vector<ZetaRoot> real_zeta_zeros(const ThirdOrderCoeffs& co, ZetaFn which, double lo, double hi,
                                             const BoussinesqConfig& b, int threads) {
    if (!(lo > 0 && hi > lo)) throw ConfigError("real zeta interval must satisfy 0 < lo < hi");
    check_zeta(hi, b);
    double za = std::cbrt(lo), zb = std::cbrt(hi);
    auto f = [&](double z) { return zeta_fn(co, which, z * z * z, b).real(); };
    RealFn F = [&](double z) {
        double h = b.fd_rel * std::max(1.0, z);
        return std::pair<double, double>{f(z), (f(z + h) - f(z - h)) / (2 * h)};
    };
    ScanOptions so;
    so.tangency_tol = b.tangency_tol;
    so.merge_rel = 1e-9;
    // independent chunks of about two periods
    double period = 2 * pi / std::sqrt(3.0);
    int nch = std::max(1, static_cast<int>(std::ceil((zb - za) / (2 * period))));
    std::vector<std::vector<LocatedZero>> per(nch);
    parallel_for(
        nch,
        [&](std::size_t i) {
            double a = za + (zb - za) * i / nch, c = za + (zb - za) * (i + 1) / nch;
            per[i] = real_scan(F, a, c, [&](double) { return b.z_step; }, so);
        },
        threads);
    std::vector<LocatedZero> all;
    for (auto& v : per)
        for (auto& z : v) {
            double zz = z.lambda.real();
            z.lambda = zz * zz * zz;
            if (!all.empty() && std::abs(all.back().lambda.real() - z.lambda.real()) <= 1e-9 * z.lambda.real()) {
                all.back().multiplicity = std::max(all.back().multiplicity, z.multiplicity);
                continue;
            }
            all.push_back(z);
        }
    return label_zeta(all);
}

inline std::vector<ZetaRoot> complex_zeta_zeros(const ThirdOrderCoeffs& co, ZetaFn which, const Rect& rect,
                                                const BoussinesqConfig& b, int threads) {
    check_zeta(std::abs(rect.center) + rect.half_width + rect.half_height, b);
    AnalyticFn F = [&](cplx zeta) {
        double h = b.fd_rel * std::max(1.0, std::abs(zeta));
        return std::pair<cplx, cplx>{zeta_fn(co, which, zeta, b),
                                     (zeta_fn(co, which, zeta + h, b) - zeta_fn(co, which, zeta - h, b)) / (2 * h)};
    };
    double target = 0.25 * std::max(1.0, std::pow(std::abs(rect.center), 2.0 / 3.0));
    auto zs = locate_zeros(F, nullptr, rect, target, ScanOptions{b.tangency_tol, 1e-9}, threads, 2);
    return label_zeta(zs);
}

}  // namespace detail

// Zeros of the discriminant (up to a nonvanishing factor) on a real
// interval of positive zeta, or in a complex rectangle.
inline std::vector<ZetaRoot> ramifications(const ThirdOrderCoeffs& co, double lo, double hi, const BoussinesqConfig& b = {},
                                           int threads = default_threads()) {
    return detail::real_zeta_zeros(co, detail::ZetaFn::Ramification, lo, hi, b, threads);
}
inline std::vector<ZetaRoot> ramifications(const ThirdOrderCoeffs& co, const Rect& r, const BoussinesqConfig& b = {},
                                           int threads = default_threads()) {
    return detail::complex_zeta_zeros(co, detail::ZetaFn::Ramification, r, b, threads);
}

// Eigenvalues of y(0) = y(1) = y(2) = 0.
inline std::vector<ZetaRoot> three_point_eigenvalues(const ThirdOrderCoeffs& co, double lo, double hi,
                                                     const BoussinesqConfig& b = {}, int threads = default_threads()) {
    return detail::real_zeta_zeros(co, detail::ZetaFn::ThreePoint, lo, hi, b, threads);
}
inline std::vector<ZetaRoot> three_point_eigenvalues(const ThirdOrderCoeffs& co, const Rect& r,
                                                     const BoussinesqConfig& b = {}, int threads = default_threads()) {
    return detail::complex_zeta_zeros(co, detail::ZetaFn::ThreePoint, r, b, threads);
}

struct Psi3Samples {
    std::vector<double> x;
    std::vector<cplx> psi, dpsi, d2psi;
    cplx kappa3;
};

// Floquet solution psi3(x+1) = k3 psi3(x), psi3(0) = 1, sampled on mesh.
inline Psi3Samples floquet_psi3(const ThirdOrderCoeffs& co, cplx zeta, const std::vector<double>& mesh,
                                const BoussinesqConfig& b = {}) {
    auto m = integrate_third_order(co, zeta, false, b);
    auto ms = multipliers(m);
    cplx k3 = ms.kappa[2];
    if (std::abs(k3) - std::abs(ms.kappa[1]) < b.dominance * std::abs(k3))
        throw NearRamificationError("dominant multiplier not separated");
    Eigen::JacobiSVD<Mat3> svd(m.M1 - k3 * Mat3::Identity(), Eigen::ComputeFullV);
    Eigen::Vector3cd v = svd.matrixV().col(2);
    if (std::abs(v(0)) < 1e-300) throw NearRamificationError("Floquet vector has vanishing first component");
    v /= v(0);

    Psi3Samples s;
    s.kappa3 = k3;
    double z1 = std::max(1.0, std::cbrt(std::abs(zeta)));
    std::vector<double> stops;
    for (double x : mesh) {
        if (x < 0 || x > 1) throw ConfigError("mesh must lie in [0,1]");
        if (x == 0) {
            s.x.push_back(0);
            s.psi.push_back(v(0));
            s.dpsi.push_back(v(1));
            s.d2psi.push_back(v(2));
        } else {
            stops.push_back(x);
        }
    }
    if (stops.empty()) return s;
    auto rhs = [&](double x, const CState<3>& u) {
        auto k = detail::coeff3(co, zeta, x);
        return CState<3>{u[1], u[2], k.c * u[0] - 2.0 * k.p * u[1]};
    };
    auto norm = [z1](const CState<3>& y, const CState<3>& yn, const CState<3>& err, double rtol, double atol) {
        double sc = 0, e = 0;
        for (int r = 0; r < 3; ++r) {
            double w = std::pow(1.0 / z1, r);
            sc = std::max({sc, w * std::abs(y[r]), w * std::abs(yn[r])});
            e = std::max(e, w * std::abs(err[r]));
        }
        return e / (atol + rtol * sc);
    };
    dopri5<3>(rhs, CState<3>{v(0), v(1), v(2)}, 0.0, stops.back(), detail::local_tolerances(b.ode), norm,
              std::span<const double>(stops),
              [&](std::size_t i, const CState<3>& u) {
                  s.x.push_back(stops[i]);
                  s.psi.push_back(u[0]);
                  s.dpsi.push_back(u[1]);
                  s.d2psi.push_back(u[2]);
              },
              0.25 / (1 + z1));
    return s;
}

inline cplx lambda_of_zeta(cplx zeta) { return 0.75 * std::pow(zeta, 2.0 / 3.0); }
inline cplx zeta_of_lambda(cplx lambda) { return std::pow(4.0 * lambda / 3.0, 1.5); }

struct Reduction {
    PotentialSpec spec;
    cplx lambda, zeta;
    double min_abs_psi = 0;
};

namespace detail {

// V = -2p - (3/4)(2 psi''/psi - (psi'/psi)^2) + lambda at the nodes
inline std::vector<cplx> reduced_values(const ThirdOrderCoeffs& co, cplx zeta, const std::vector<double>& x,
                                        const BoussinesqConfig& b, double* min_psi = nullptr) {
    auto s = floquet_psi3(co, zeta, x, b);
    cplx lam = lambda_of_zeta(zeta);
    std::vector<cplx> v(x.size());
    double mn = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        mn = std::min(mn, std::abs(s.psi[i]));
        if (s.psi[i] == 0.0) throw NearRamificationError("Floquet solution vanishes on the mesh");
        cplx L = s.dpsi[i] / s.psi[i];
        v[i] = -2.0 * co.p(x[i]) - 0.75 * (2.0 * s.d2psi[i] / s.psi[i] - L * L) + lam;
    }
    if (min_psi) *min_psi = mn;
    return v;
}

}  // namespace detail

// Reduced energy-dependent Hill potential at zeta, tabulated with its
// lambda-derivative (central differences in zeta, chain factor 2 zeta^{1/3}).
inline Reduction reduce_to_hill(const ThirdOrderCoeffs& co, cplx zeta, const BoussinesqConfig& b = {},
                                bool with_derivative = true) {
    auto tab = std::make_shared<TabulatedData>();
    tab->x = TabulatedData::nodes(b.nodes);
    tab->init_weights();
    Reduction r;
    r.zeta = zeta;
    r.lambda = lambda_of_zeta(zeta);
    tab->lambda0 = r.lambda;
    tab->v = detail::reduced_values(co, zeta, tab->x, b, &r.min_abs_psi);
    tab->dv.assign(tab->x.size(), 0.0);
    if (with_derivative) {
        double h = b.fd_rel;
        auto vp = detail::reduced_values(co, zeta * (1 + h), tab->x, b);
        auto vm = detail::reduced_values(co, zeta * (1 - h), tab->x, b);
        cplx chain = 2.0 * cube_root(zeta);
        for (std::size_t i = 0; i < tab->x.size(); ++i) tab->dv[i] = (vp[i] - vm[i]) / (2 * h * zeta) * chain;
    }
    r.spec = PotentialSpec::tabulated(tab);
    return r;
}

// Hill model whose potential is re-reduced at every lambda.
inline HillModel reduced_model(const ThirdOrderCoeffs& co, const BoussinesqConfig& b = {}) {
    HillModel m;
    m.fundamental = [co, b](cplx lambda) {
        auto r = reduce_to_hill(co, zeta_of_lambda(lambda), b);
        return integrate_fundamental(r.spec, lambda, 1.0, b.ode);
    };
    m.real_analytic = true;
    return m;
}

}  // namespace hillbands
