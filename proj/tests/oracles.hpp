#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <Eigen/Dense>
#include <vector>

#include "hillbands/potentials.hpp"
#include "hillbands/quadrature.hpp"

namespace oracle {

using hillbands::pi;

// Fourier-Galerkin eigenvalues of -y'' + q y for an energy-independent
// trigonometric q (period 1). Periodic: basis e^{i 2 pi m x}; antiperiodic:
// e^{i pi (2m+1) x}; Dirichlet sin(n pi x); Neumann cos(n pi x).
enum class Bc { Periodic, Antiperiodic, Dirichlet, Neumann };

// complex Fourier coefficient of q at frequency j (q = sum c_j e^{2 pi i j x})
inline std::complex<double> qhat(const hillbands::FourierProfile& q, int j) {
    if (j == 0) return q.a0;
    int a = std::abs(j);
    double c = a <= int(q.cos_coeffs.size()) ? q.cos_coeffs[a - 1] : 0.0;
    double s = a <= int(q.sin_coeffs.size()) ? q.sin_coeffs[a - 1] : 0.0;
    // c cos + s sin = (c - i s)/2 e^{i..} + (c + i s)/2 e^{-i..}
    return j > 0 ? std::complex<double>(c / 2, -s / 2) : std::complex<double>(c / 2, s / 2);
}

inline std::vector<double> galerkin(const hillbands::FourierProfile& q, Bc bc, int size = 160) {
    if (bc == Bc::Periodic || bc == Bc::Antiperiodic) {
        int M = size / 2;
        int n = 2 * M + (bc == Bc::Periodic ? 1 : 0);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
        auto freq = [&](int i) {  // in units of pi
            if (bc == Bc::Periodic) return 2.0 * (i - M);
            return 2.0 * (i - M) + 1.0;
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int d = static_cast<int>(std::lround((freq(i) - freq(j)) / 2));
                H(i, j) = qhat(q, d);
                if (i == j) H(i, j) += (pi * freq(i)) * (pi * freq(i));
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        auto ev = es.eigenvalues();
        return std::vector<double>(ev.data(), ev.data() + ev.size());
    }
    // sine / cosine bases: matrix elements by quadrature
    int n = size;
    int start = bc == Bc::Dirichlet ? 1 : 0;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    // composite Gauss-Legendre, 64 panels of order 32
    const auto& g = hillbands::gauss_legendre(32);
    std::vector<double> xs, ws, qv;
    for (int p = 0; p < 64; ++p)
        for (int k = 0; k < 32; ++k) {
            xs.push_back((p + 0.5 + 0.5 * g.x[k]) / 64);
            ws.push_back(g.w[k] / 128);
            qv.push_back(q(xs.back()));
        }
    auto basis = [&](int m, double x) {
        if (bc == Bc::Dirichlet) return std::sqrt(2.0) * std::sin(m * pi * x);
        return m == 0 ? 1.0 : std::sqrt(2.0) * std::cos(m * pi * x);
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < xs.size(); ++k)
                s += ws[k] * basis(i + start, xs[k]) * qv[k] * basis(j + start, xs[k]);
            if (i == j) s += std::pow((i + start) * pi, 2);
            H(i, j) = H(j, i) = s;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    auto ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace oracle
