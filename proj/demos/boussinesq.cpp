// Ramification points of the third-order operator with p = 0.1 cos(2 pi x),
// q = 0.05 sin(2 pi x), against the free values and the large-n asymptotics.

#include <cstdio>

#include "hillbands/boussinesq.hpp"

using namespace hillbands;

int main() {
    ThirdOrderCoeffs co{{0.0, {0.1}, {}}, {0.0, {}, {0.05}}};
    auto rs = ramifications(co, alpha_minus(2), alpha_plus(6));
    std::printf("  n  mult  zeta                       free          asymptotic\n");
    for (auto& z : rs)
        std::printf("%3d  %4d  %12.6f %+10.3e i  %12.4f  %12.4f\n", z.n, z.multiplicity, z.zeta.real(), z.zeta.imag(),
                    zeta_free(z.n), ram_asymptotic(co, z.n));
    auto red = reduce_to_hill(co, zeta_free(4) * 1.01);
    std::printf("reduced Hill potential at lambda = %.4f, min |psi| = %.3e\n", red.lambda.real(), red.min_abs_psi);
}
