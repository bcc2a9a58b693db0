// Gabor moment roots with the reflected window (limit 2R) and a narrower fixed window.
#include <cstdio>

#include "pwlab/pwlab.hpp"

namespace {

pwlab::TimeFreqField normalized(pwlab::TimeFreqField F) {
    const double l = pwlab::mixedLpqNorm(F, 2.0, 2.0).log();
    for (auto& v : F.samples) v *= std::exp(-l);
    return F;
}

void show(const char* label, const pwlab::TimeFreqField& V, double oracle) {
    const pwlab::RadiusSequence s = pwlab::gaborMomentSequence(normalized(V), nullptr, 0.0, 0.0, 2.0, 2.0, 40);
    const pwlab::RadiusEstimate e = pwlab::extrapolateLimit(s, oracle);
    std::printf("%-18s root-fit=%.4f  last-root=%.4f  reference=%.4f\n", label, e.rootLimit, e.lastRoot, oracle);
}

}  // namespace

int main() {
    using namespace pwlab;
    const GridSpec g = GridSpec::make(1, 128.0 * std::numbers::pi, 1024);
    const TestFunction f = makeBandlimited(g, {{-1.0, 1.0}}, 10.0);
    const TestFunction psi = makeBandlimited(g, {{-0.5, 0.5}}, 10.0);
    show("window reflect(f)", stft(f.f, reflect(f.f)), 2.0);
    show("window |xi|<=0.5", stft(f.f, psi.f), 1.5);
}
