// How fast does the sample eigenvector line up with u as m grows?

#include <array>
#include <cstdio>

#include "centsel/centsel.hpp"

int main() {
    using namespace centsel;

    Rng rng(3);
    Graph g = erdos_renyi(50, 0.2, rng);
    while (!is_connected(g)) g = erdos_renyi(50, 0.2, rng);

    const std::array<std::int64_t, 5> grid{250, 500, 1000, 2000, 4000};
    const AlignmentCheck c = empirical_alignment_check(g, FilterSpec::sqrt(), grid, 20, 1);

    std::printf("delta=%.4g  fitted c=%.4g  coverage=%.3f\n", c.delta, c.fitted_constant, c.bound_coverage);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::printf("m=%-5ld median sin=%.4f  median ||C_hat - C_y||=%.4f\n", static_cast<long>(grid[i]),
                    c.median_sin_theta[i], c.median_deviation[i]);
    }
    std::printf("slopes: sin %.3f, deviation %.3f\n", c.sin_theta_slope, c.deviation_slope);
    return 0;
}
