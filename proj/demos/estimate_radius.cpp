// Derivative-growth estimate of the spectral radius of a band-limited bump, against the FFT oracle.
#include <cstdio>

#include "pwlab/pwlab.hpp"

int main() {
    using namespace pwlab;
    const GridSpec g = defaultGrid(1);
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, 10.0);
    const double oracle = t.oracleRadius;  // last nonzero sample of the exact spectrum
    const WeightFunction w = WeightFunction::logWeight();
    for (double lambda : {0.0, 1.0}) {
        const RadiusSequence s = derivativeGrowthSequence(t.f, &w, lambda, 2.0, 40);
        const RadiusEstimate e = extrapolateLimit(s, oracle);
        std::printf("lambda=%.1f  n_used=%d (%s)  root-fit=%.5f  ratio-fit=%.5f  last-root=%.5f  grid-oracle=%.5f\n",
                    lambda, s.nUsed, truncationName(s.reason), e.rootLimit, e.ratioLimit, e.lastRoot, oracle);
    }
}
