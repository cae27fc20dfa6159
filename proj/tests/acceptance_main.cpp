#include <cstdio>
#include <cstring>

#include "hillbands/acceptance.hpp"

// One pass/fail line per acceptance criterion; exit status 1 if any fails.
int main(int argc, char** argv) {
    hillbands::acceptance::Options o;
    o.fixtures = HILLBANDS_FIXTURES;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) o.quick = true;
        else if (!std::strcmp(argv[i], "--fixtures") && i + 1 < argc) o.fixtures = argv[++i];
    }
    auto t0 = std::chrono::steady_clock::now();
    auto results = hillbands::acceptance::run_all(o, [](const auto& r) {
        std::printf("%s\n", hillbands::acceptance::format(r).c_str());
        std::fflush(stdout);
    });
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int failed = 0;
    for (auto& r : results) failed += !r.pass;
    std::printf("total %.1f s, %d/%zu criteria passed\n", total, int(results.size()) - failed, results.size());
    return failed ? 1 : 0;
}
