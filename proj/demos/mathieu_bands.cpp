// Band edges of the Mathieu potential 2 cos(2 pi x), then the same with an
// energy-dependent exp-family perturbation, side by side.
// The exp family is only certified real above its half-plane threshold.

#include <cstdio>

#include "hillbands/spectra.hpp"

using namespace hillbands;

static void show(const char* name, const PotentialSpec& spec, double lo) {
    auto bs = assemble_bands(make_model(spec), {lo, 400.0, 0});
    std::printf("%s\n", name);
    if (bs.refused) {
        std::printf("  refused: %s\n", bs.reason.c_str());
        return;
    }
    for (auto& b : bs.bands) std::printf("  band %2d  [%12.6f, %12.6f]\n", b.index, b.lo, b.hi);
    for (auto& g : bs.gaps) std::printf("  gap  %2d  width %.3e\n", g.index, g.hi - g.lo);
}

int main() {
    show("mathieu", PotentialSpec::lambda_independent({0.0, {2.0}, {}}), -5.0);
    show("exp family", PotentialSpec::exp_family({{0.5, {0.0, {0.06}, {}}}, {1.5, {0.04, {}, {}}}}), 0.5);
}
