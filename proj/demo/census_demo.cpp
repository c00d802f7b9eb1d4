// Prints colouring statistics for the one-vertex Z2 homology sphere census.
#include <cstdio>

#include "tvq/tvq.hpp"

using namespace tvq;

int main(int argc, char **argv) {
    int maxTets = argc > 1 ? std::atoi(argv[1]) : 2;
    if (maxTets < 1 || maxTets > kMaxCensusTets) {
        std::fprintf(stderr, "usage: census_demo [1..%d]\n", kMaxCensusTets);
        return 2;
    }
    std::printf("%2s %6s %8s %8s %8s %6s\n", "n", "#trig", "|Adm5|", "|Adm6|", "|Adm7|", "#sharp");
    for (int n = 1; n <= maxTets; ++n) {
        auto list = enumerate_census(n, {true, true, std::nullopt});
        std::array<std::size_t, 3> totals{};
        int sharp = 0;
        for (const auto &t : list) {
            auto s = build_skeleton(t);
            bool all = true;
            for (int r = 5; r <= 7; ++r) {
                auto b = bounds(s, r);
                totals[static_cast<std::size_t>(r - 5)] += b.actual;
                all = all && b.sharp_small_r();
            }
            sharp += all ? 1 : 0;
        }
        auto mean = [&](std::size_t k) { return static_cast<double>(totals[k]) / static_cast<double>(list.size()); };
        std::printf("%2d %6zu %8.2f %8.2f %8.2f %6d\n", n, list.size(), mean(0), mean(1), mean(2), sharp);
    }
}
