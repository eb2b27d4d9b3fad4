#include "burgers/rng.hpp"

#include <cmath>

namespace burgers {

int poisson_knuth(SplitMix64& g, double lambda) {
    if (lambda <= 0.0) return 0;
    // For larger means, split into halves: Poisson(a+b) = Poisson(a)+Poisson(b).
    if (lambda > 30.0) {
        int a = poisson_knuth(g, lambda / 2.0);
        int b = poisson_knuth(g, lambda - lambda / 2.0);
        return a + b;
    }
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= g.next_double();
    } while (p > limit);
    return k - 1;
}

}  // namespace burgers
