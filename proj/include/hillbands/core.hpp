#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hillbands {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Error hierarchy. Numerical failures and domain/config problems are kept
// apart so the CLI can map them to distinct exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};
struct IntegrationError : NumericalError {
    double last_x;
    IntegrationError(const std::string& what, double x) : NumericalError(what), last_x(x) {}
};
struct RootError : NumericalError {
    using NumericalError::NumericalError;
};
struct SpectralPointError : NumericalError {
    using NumericalError::NumericalError;
};

// Principal square root of lambda together with |z|_1 = max(1,|z|).
struct ZNorm {
    cplx z;
    double z1;
    explicit ZNorm(cplx lambda) : z(std::sqrt(lambda)), z1(std::max(1.0, std::abs(z))) {}
};

inline bool is_finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace hillbands
