#pragma once

#include <memory>

#include "fundsol.hpp"

namespace hillbands {

namespace detail {

// theta, phi on a uniform mesh with cubic Hermite interpolation; the second
// derivative (V - lambda) y supplies the slopes for y'.
class SolutionTable {
  public:
    SolutionTable(const PotentialSpec& spec, cplx lambda, int mesh, const IntegratorConfig& cfg) : n_(mesh) {
        if (mesh < 8) throw ConfigError("mesh must have at least 8 intervals");
        std::vector<double> xs(mesh + 1);
        for (int i = 0; i <= mesh; ++i) xs[i] = double(i) / mesh;
        xs.back() = 1.0;
        s_ = sample_fundamental(spec, lambda, xs, cfg);
        BoundPotential bv(spec, lambda);
        w_.resize(mesh + 1);
        for (int i = 0; i <= mesh; ++i) w_[i] = bv(xs[i]).first - lambda;
    }

    struct Val {
        cplx theta, dtheta, phi, dphi;
    };

    Val at(double x) const {
        x = std::clamp(x, 0.0, 1.0);
        int i = std::min(n_ - 1, static_cast<int>(x * n_));
        double h = 1.0 / n_;
        double t = (x - double(i) / n_) / h;
        double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t), h01 = t * t * (3 - 2 * t),
               h11 = t * t * (t - 1);
        const auto &a = s_[i], &b = s_[i + 1];
        auto herm = [&](cplx y0, cplx d0, cplx y1, cplx d1) { return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1; };
        Val v;
        v.theta = herm(a.theta, a.dtheta, b.theta, b.dtheta);
        v.phi = herm(a.phi, a.dphi, b.phi, b.dphi);
        v.dtheta = herm(a.dtheta, w_[i] * a.theta, b.dtheta, w_[i + 1] * b.theta);
        v.dphi = herm(a.dphi, w_[i] * a.phi, b.dphi, w_[i + 1] * b.phi);
        return v;
    }
    const SolutionSample& end() const { return s_.back(); }

  private:
    int n_;
    std::vector<SolutionSample> s_;
    std::vector<cplx> w_;
};

}  // namespace detail

// Green kernel of H - lambda for some boundary conditions.
class GreenKernel {
  public:
    virtual ~GreenKernel() = default;
    virtual cplx operator()(double x, double s) const = 0;
    virtual cplx dx(double x, double s) const = 0;  // d/dx of the kernel
    // residual of the boundary conditions for u with the given end values
    virtual double bc_residual(cplx u0, cplx du0, cplx u1, cplx du1) const = 0;

    const PotentialSpec& spec() const { return spec_; }
    cplx lambda() const { return lambda_; }

  protected:
    GreenKernel(const PotentialSpec& spec, cplx lambda) : spec_(spec), lambda_(lambda) {}
    PotentialSpec spec_;
    cplx lambda_;
};

// Quasi-periodic problem y(1) = e^{ik} y(0), y'(1) = e^{ik} y'(0). Written
// over the common denominator 2 e^{ik} (cos k - Delta) so that phi(1) = 0 is
// not a singularity.
class GreenKernelQuasi : public GreenKernel {
  public:
    GreenKernelQuasi(const PotentialSpec& spec, double k, cplx lambda, int mesh = 2000, const IntegratorConfig& cfg = {})
        : GreenKernel(spec, lambda), k_(k), tab_(spec, lambda, mesh, cfg) {
        if (!(k >= 0 && k < 2 * pi)) throw ConfigError("k must lie in [0, 2 pi)");
        const auto& e = tab_.end();
        t1_ = e.theta;
        dt1_ = e.dtheta;
        p1_ = e.phi;
        dp1_ = e.dphi;
        omega_ = std::exp(I * k);
        delta_ = (t1_ + dp1_) / 2.0;
        if (std::abs(delta_ - std::cos(k)) <= 1e-10 * (1 + std::abs(delta_)))
            throw SpectralPointError("lambda is a quasi-periodic eigenvalue: Delta = cos k");
        D_ = 2.0 * omega_ * (std::cos(k) - delta_);
    }

    cplx operator()(double x, double s) const override {
        auto X = tab_.at(x), S = tab_.at(s);
        auto [a, b] = coeffs(S);
        cplx g = a * X.theta + b * X.phi;
        if (s < x) g += X.theta * S.phi - X.phi * S.theta;
        return g;
    }
    cplx dx(double x, double s) const override {
        auto X = tab_.at(x), S = tab_.at(s);
        auto [a, b] = coeffs(S);
        cplx g = a * X.dtheta + b * X.dphi;
        if (s < x) g += X.dtheta * S.phi - X.dphi * S.theta;
        return g;
    }
    double bc_residual(cplx u0, cplx du0, cplx u1, cplx du1) const override {
        return std::abs(u1 - omega_ * u0) + std::abs(du1 - omega_ * du0);
    }

    double k() const { return k_; }
    cplx delta() const { return delta_; }
    cplx prefactor() const { return p1_ / (2.0 * (std::cos(k_) - delta_)); }
    cplx m_plus() const { return m(+1); }
    cplx m_minus() const { return m(-1); }

  private:
    std::pair<cplx, cplx> coeffs(const detail::SolutionTable::Val& S) const {
        cplx a = (S.phi * (omega_ * t1_ - 1.0) - omega_ * p1_ * S.theta) / D_;
        cplx b = (omega_ * dt1_ * S.phi + S.theta * (1.0 - omega_ * dp1_)) / D_;
        return {a, b};
    }
    cplx m(int sign) const {
        if (std::abs(p1_) <= 1e-14 * (1 + std::abs(t1_)))
            throw SpectralPointError("m_+- undefined: phi(1, lambda) = 0");
        return ((dp1_ - t1_) / 2.0 + double(sign) * I * std::sin(k_)) / p1_;
    }

    double k_;
    detail::SolutionTable tab_;
    cplx t1_, dt1_, p1_, dp1_, omega_, delta_, D_;
};

class GreenKernelDirichlet : public GreenKernel {
  public:
    GreenKernelDirichlet(const PotentialSpec& spec, cplx lambda, int mesh = 2000, const IntegratorConfig& cfg = {})
        : GreenKernel(spec, lambda), tab_(spec, lambda, mesh, cfg) {
        const auto& e = tab_.end();
        t1_ = e.theta;
        p1_ = e.phi;
        ZNorm zn(lambda);
        double scale = std::max(std::abs(e.phi) * zn.z1, std::max(std::abs(e.theta), std::abs(e.dphi)));
        if (std::abs(p1_) * zn.z1 <= 1e-10 * scale)
            throw SpectralPointError("lambda is a Dirichlet eigenvalue: phi(1, lambda) = 0");
    }

    cplx operator()(double x, double s) const override {
        if (x == 0.0 || x == 1.0 || s == 0.0 || s == 1.0) return 0.0;
        double lo = std::min(x, s), hi = std::max(x, s);
        auto L = tab_.at(lo), H = tab_.at(hi);
        return L.phi * (H.theta * p1_ - H.phi * t1_) / p1_;
    }
    cplx dx(double x, double s) const override {
        auto X = tab_.at(x), S = tab_.at(s);
        if (x < s) return X.dphi * (S.theta * p1_ - S.phi * t1_) / p1_;
        return S.phi * (X.dtheta * p1_ - X.dphi * t1_) / p1_;
    }
    double bc_residual(cplx u0, cplx, cplx u1, cplx) const override { return std::abs(u0) + std::abs(u1); }

  private:
    detail::SolutionTable tab_;
    cplx t1_, p1_;
};

inline std::unique_ptr<GreenKernelQuasi> green_quasi(const PotentialSpec& spec, double k, cplx lambda, int mesh = 2000,
                                                     const IntegratorConfig& cfg = {}) {
    return std::make_unique<GreenKernelQuasi>(spec, k, lambda, mesh, cfg);
}
inline std::unique_ptr<GreenKernelDirichlet> green_dirichlet(const PotentialSpec& spec, cplx lambda, int mesh = 2000,
                                                             const IntegratorConfig& cfg = {}) {
    return std::make_unique<GreenKernelDirichlet>(spec, lambda, mesh, cfg);
}

// u = R f by Gauss-Legendre split at the kernel's diagonal.
inline cplx apply_kernel(const GreenKernel& K, const std::function<cplx(double)>& f, double x, int order = 64) {
    auto g = [&](double s) { return K(x, s) * f(s); };
    cplx u = 0;
    if (x > 0) u += integrate_gl(g, 0.0, x, order, 1);
    if (x < 1) u += integrate_gl(g, x, 1.0, order, 1);
    return u;
}

inline cplx apply_kernel_dx(const GreenKernel& K, const std::function<cplx(double)>& f, double x, int order = 64) {
    auto g = [&](double s) { return K.dx(x, s) * f(s); };
    cplx u = 0;
    if (x > 0) u += integrate_gl(g, 0.0, x, order, 1);
    if (x < 1) u += integrate_gl(g, x, 1.0, order, 1);
    return u;
}

// max |-u'' + (V - lambda) u - f| over interior points (five-point
// differences), plus the boundary-condition residual.
inline double resolvent_residual(const GreenKernel& K, const std::function<cplx(double)>& f, int quad_order = 64,
                                 int points = 49) {
    const double h = 2e-3;
    BoundPotential bv(K.spec(), K.lambda());
    double worst = 0;
    for (int i = 1; i <= points; ++i) {
        double x = 0.02 + 0.96 * (i - 1) / std::max(1, points - 1);
        cplx um2 = apply_kernel(K, f, x - 2 * h, quad_order), um1 = apply_kernel(K, f, x - h, quad_order);
        cplx u0 = apply_kernel(K, f, x, quad_order);
        cplx up1 = apply_kernel(K, f, x + h, quad_order), up2 = apply_kernel(K, f, x + 2 * h, quad_order);
        cplx d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12 * h * h);
        cplx r = -d2 + (bv(x).first - K.lambda()) * u0 - f(x);
        worst = std::max(worst, std::abs(r));
    }
    cplx u0 = apply_kernel(K, f, 0.0, quad_order), u1 = apply_kernel(K, f, 1.0, quad_order);
    cplx du0 = apply_kernel_dx(K, f, 0.0, quad_order), du1 = apply_kernel_dx(K, f, 1.0, quad_order);
    return worst + K.bc_residual(u0, du0, u1, du1);
}

// sup of |kernel| over a coarse grid of [0,1]^2
inline double kernel_sup(const GreenKernel& K, int n = 41) {
    double m = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m = std::max(m, std::abs(K(double(i) / (n - 1), double(j) / (n - 1))));
    return m;
}

}  // namespace hillbands
