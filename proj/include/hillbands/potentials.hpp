#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "quadrature.hpp"

namespace hillbands {

// q(x) = a0 + sum_m a_m cos(2 pi m x) + b_m sin(2 pi m x)
struct FourierProfile {
    double a0 = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    double operator()(double x) const { return eval(x).first; }

    // value and x-derivative
    std::pair<double, double> eval(double x) const {
        double v = a0, d = 0.0;
        std::size_t m_max = std::max(cos_coeffs.size(), sin_coeffs.size());
        if (m_max == 0) return {v, d};
        double c1 = std::cos(2 * pi * x), s1 = std::sin(2 * pi * x);
        double c = c1, s = s1;
        for (std::size_t m = 1; m <= m_max; ++m) {
            if (m > 1 && m % 8 == 1) {  // resync the recurrence now and then
                c = std::cos(2 * pi * m * x);
                s = std::sin(2 * pi * m * x);
            }
            double w = 2 * pi * m;
            if (m <= cos_coeffs.size()) {
                v += cos_coeffs[m - 1] * c;
                d -= w * cos_coeffs[m - 1] * s;
            }
            if (m <= sin_coeffs.size()) {
                v += sin_coeffs[m - 1] * s;
                d += w * sin_coeffs[m - 1] * c;
            }
            double cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
        }
        return {v, d};
    }

    // coefficient-sum upper bound on sup |q|
    double sup_bound() const {
        double s = std::abs(a0);
        for (double a : cos_coeffs) s += std::abs(a);
        for (double b : sin_coeffs) s += std::abs(b);
        return s;
    }

    int max_mode() const { return static_cast<int>(std::max(cos_coeffs.size(), sin_coeffs.size())); }
    bool is_zero() const { return sup_bound() == 0.0; }
};

struct FamilyTerm {
    double kappa;
    FourierProfile q;
};

// Chebyshev-Lobatto samples on [0,1] of V(x, lambda0) and dV/dlambda.
struct TabulatedData {
    cplx lambda0;
    std::vector<double> x;
    std::vector<cplx> v;
    std::vector<cplx> dv;
    std::vector<double> bary;

    static std::vector<double> nodes(int n) {
        std::vector<double> x(n);
        for (int j = 0; j < n; ++j) x[j] = 0.5 * (1 - std::cos(pi * j / (n - 1)));
        return x;
    }
    void init_weights() {
        int n = static_cast<int>(x.size());
        bary.assign(n, 1.0);
        for (int j = 0; j < n; ++j) {
            bary[j] = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j == n - 1) bary[j] *= 0.5;
        }
    }
    std::pair<cplx, cplx> interp(double t) const {
        cplx num_v = 0, num_d = 0;
        double den = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            double dx = t - x[j];
            if (dx == 0.0) return {v[j], dv[j]};
            double w = bary[j] / dx;
            num_v += w * v[j];
            num_d += w * dv[j];
            den += w;
        }
        return {num_v / den, num_d / den};
    }
};

enum class Family { Zero, Constant, LambdaIndependent, Exp, Cos, Rational, Tabulated };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Zero: return "zero";
        case Family::Constant: return "constant";
        case Family::LambdaIndependent: return "lambda_independent";
        case Family::Exp: return "exp";
        case Family::Cos: return "cos";
        case Family::Rational: return "rational";
        case Family::Tabulated: return "tabulated";
    }
    return "?";
}

struct PotentialSpec {
    Family family = Family::Zero;
    double c = 0.0;                  // Constant
    FourierProfile q;                // LambdaIndependent, Rational
    std::vector<FamilyTerm> terms;   // Exp, Cos
    double shift = 0.0;              // Rational: V = q/(shift+lambda)
    std::shared_ptr<const TabulatedData> tab;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec constant(double c) {
        PotentialSpec s;
        s.family = Family::Constant;
        s.c = c;
        return s;
    }
    static PotentialSpec lambda_independent(FourierProfile q) {
        PotentialSpec s;
        s.family = Family::LambdaIndependent;
        s.q = std::move(q);
        return s;
    }
    static PotentialSpec exp_family(std::vector<FamilyTerm> t) { return with_terms(Family::Exp, std::move(t)); }
    static PotentialSpec cos_family(std::vector<FamilyTerm> t) { return with_terms(Family::Cos, std::move(t)); }
    static PotentialSpec rational(FourierProfile q, double shift) {
        PotentialSpec s;
        s.family = Family::Rational;
        s.q = std::move(q);
        s.shift = shift;
        return s;
    }
    static PotentialSpec tabulated(std::shared_ptr<const TabulatedData> t) {
        PotentialSpec s;
        s.family = Family::Tabulated;
        s.tab = std::move(t);
        return s;
    }

    // V(x, conj l) = conj V(x, l)
    bool real_analytic() const { return family != Family::Tabulated; }
    // V does not depend on lambda
    bool energy_independent() const {
        return family == Family::Zero || family == Family::Constant || family == Family::LambdaIndependent;
    }

    void validate() const {
        if (family == Family::Exp || family == Family::Cos) {
            if (terms.empty()) throw ConfigError("family needs at least one term");
            for (std::size_t i = 0; i < terms.size(); ++i) {
                if (!(terms[i].kappa > 0)) throw ConfigError("kappa must be positive");
                if (i > 0 && !(terms[i].kappa > terms[i - 1].kappa))
                    throw ConfigError("kappa values must be strictly increasing");
            }
        }
        if (family == Family::Tabulated && (!tab || tab->x.size() < 2))
            throw ConfigError("tabulated potential without samples");
    }

  private:
    static PotentialSpec with_terms(Family f, std::vector<FamilyTerm> t) {
        PotentialSpec s;
        s.family = f;
        s.terms = std::move(t);
        s.validate();
        return s;
    }
};

inline void check_domain(const PotentialSpec& spec, cplx lambda) {
    if (!is_finite(lambda)) throw DomainError("non-finite lambda");
    if (spec.family == Family::Rational && !(lambda.real() > -spec.shift))
        throw DomainError("lambda outside analyticity domain Re(lambda) > -shift");
}

// V(., lambda) with the lambda-dependent factors precomputed.
class BoundPotential {
  public:
    BoundPotential(const PotentialSpec& spec, cplx lambda) : spec_(&spec), lambda_(lambda) {
        check_domain(spec, lambda);
        bool real = lambda.imag() == 0.0;
        switch (spec.family) {
            case Family::Exp:
                for (auto& t : spec.terms) {
                    cplx g = real ? cplx(std::exp(-t.kappa * lambda.real()), 0) : std::exp(-t.kappa * lambda);
                    g_.push_back(g);
                    dg_.push_back(-t.kappa * g);
                }
                break;
            case Family::Cos:
                for (auto& t : spec.terms) {
                    if (real) {
                        g_.push_back(std::cos(t.kappa * lambda.real()));
                        dg_.push_back(-t.kappa * std::sin(t.kappa * lambda.real()));
                    } else {
                        g_.push_back(std::cos(t.kappa * lambda));
                        dg_.push_back(-t.kappa * std::sin(t.kappa * lambda));
                    }
                }
                break;
            case Family::Rational: {
                cplx g = real ? cplx(1.0 / (spec.shift + lambda.real()), 0) : 1.0 / (spec.shift + lambda);
                g_.push_back(g);
                dg_.push_back(-g * g);
                break;
            }
            default: break;
        }
    }

    // (V, dV/dlambda) at x
    std::pair<cplx, cplx> operator()(double x) const {
        const auto& s = *spec_;
        switch (s.family) {
            case Family::Zero: return {0.0, 0.0};
            case Family::Constant: return {s.c, 0.0};
            case Family::LambdaIndependent: return {s.q(x), 0.0};
            case Family::Exp:
            case Family::Cos: {
                cplx v = 0, d = 0;
                for (std::size_t i = 0; i < s.terms.size(); ++i) {
                    double qx = s.terms[i].q(x);
                    v += qx * g_[i];
                    d += qx * dg_[i];
                }
                return {v, d};
            }
            case Family::Rational: {
                double qx = s.q(x);
                return {qx * g_[0], qx * dg_[0]};
            }
            case Family::Tabulated: {
                auto [v, d] = s.tab->interp(x);
                return {v + (lambda_ - s.tab->lambda0) * d, d};
            }
        }
        return {0.0, 0.0};
    }

    cplx lambda() const { return lambda_; }
    const PotentialSpec& spec() const { return *spec_; }
    const std::vector<cplx>& factors() const { return g_; }

  private:
    const PotentialSpec* spec_;
    cplx lambda_;
    std::vector<cplx> g_, dg_;
};

inline cplx eval_V(const PotentialSpec& spec, double x, cplx lambda) { return BoundPotential(spec, lambda)(x).first; }
inline cplx eval_dV(const PotentialSpec& spec, double x, cplx lambda) { return BoundPotential(spec, lambda)(x).second; }

// L^1 norm over one period: order-point Gauss-Legendre panels, bisected
// where |V| has kinks (zeros of V).
inline double potential_norm(const PotentialSpec& spec, cplx lambda, int order = 64) {
    if (spec.family == Family::Zero) return 0.0;
    if (spec.family == Family::Constant) return std::abs(spec.c);
    BoundPotential bv(spec, lambda);
    auto f = [&](double x) { return std::abs(bv(x).first); };
    auto panel = [&](double a, double b) { return integrate_gl(f, a, b, order); };
    double total = 0;
    struct Seg { double a, b, val; int depth; };
    std::vector<Seg> stack;
    for (int p = 0; p < 4; ++p) stack.push_back({p / 4.0, (p + 1) / 4.0, panel(p / 4.0, (p + 1) / 4.0), 0});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        double m = (s.a + s.b) / 2, l = panel(s.a, m), r = panel(m, s.b);
        if (std::abs(l + r - s.val) <= 1e-14 * std::max(1.0, std::abs(s.val)) || s.depth > 40) total += l + r;
        else {
            stack.push_back({s.a, m, l, s.depth + 1});
            stack.push_back({m, s.b, r, s.depth + 1});
        }
    }
    return total;
}

inline cplx mean_V(const PotentialSpec& spec, cplx lambda) {
    check_domain(spec, lambda);
    switch (spec.family) {
        case Family::Zero: return 0.0;
        case Family::Constant: return spec.c;
        case Family::LambdaIndependent: return spec.q.a0;
        case Family::Exp:
        case Family::Cos:
        case Family::Rational: {
            BoundPotential bv(spec, lambda);
            if (spec.family == Family::Rational) return spec.q.a0 * bv.factors()[0];
            cplx m = 0;
            for (std::size_t i = 0; i < spec.terms.size(); ++i) m += spec.terms[i].q.a0 * bv.factors()[i];
            return m;
        }
        case Family::Tabulated: {
            BoundPotential bv(spec, lambda);
            return integrate_gl([&](double x) { return bv(x).first; }, 0.0, 1.0, 64);
        }
    }
    return 0.0;
}

// Crude count of the x-oscillation of V, used to size quadrature panels.
inline int potential_modes(const PotentialSpec& spec) {
    int m = 0;
    if (spec.family == Family::LambdaIndependent || spec.family == Family::Rational) m = spec.q.max_mode();
    for (auto& t : spec.terms) m = std::max(m, t.q.max_mode());
    if (spec.family == Family::Tabulated) m = static_cast<int>(spec.tab->x.size()) / 4;
    return m;
}

// Regions used by the certificates and the Boussinesq sector.
struct DomainSpec {
    enum class Kind { HalfPlane, HalfStrip, Rect, Sector } kind = Kind::HalfPlane;
    double a = 0, b = 0, r = 0;
    double R = 0, angle = 0;

    static DomainSpec half_plane(double a) { return {Kind::HalfPlane, a, 0, 0, 0, 0}; }
    static DomainSpec half_strip(double a, double r) { return {Kind::HalfStrip, a, 0, r, 0, 0}; }
    static DomainSpec rect(double a, double b, double r) { return {Kind::Rect, a, b, r, 0, 0}; }
    static DomainSpec sector(double R, double angle) { return {Kind::Sector, 0, 0, 0, R, angle}; }

    void validate() const {
        if ((kind == Kind::HalfStrip || kind == Kind::Rect) && !(r > 0)) throw ConfigError("region needs r > 0");
        if (kind == Kind::Rect && !(a < b)) throw ConfigError("region needs a < b");
        if (kind == Kind::Sector && !(R > 0 && angle > 0)) throw ConfigError("sector needs R, angle > 0");
    }
    bool bounded() const { return kind == Kind::Rect; }
    double nu_max() const {
        return (kind == Kind::HalfStrip || kind == Kind::Rect) ? r : std::numeric_limits<double>::infinity();
    }
    bool contains(cplx l) const {
        switch (kind) {
            case Kind::HalfPlane: return l.real() > a;
            case Kind::HalfStrip: return l.real() > a && std::abs(l.imag()) < r;
            case Kind::Rect: return l.real() > a && l.real() < b && std::abs(l.imag()) < r;
            case Kind::Sector: return std::abs(l) > R && std::abs(std::arg(l)) < angle;
        }
        return false;
    }
};

}  // namespace hillbands
