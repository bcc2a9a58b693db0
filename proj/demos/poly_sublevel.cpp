// Bounding box of {|xi1^2 - xi2^2 + i xi2| <= 1} and of the unbounded set {|xi1^2 - xi2^2| <= 1}.
#include <cstdio>

#include "pwlab/pwlab.hpp"

int main() {
    using namespace pwlab;
    PolySymbol P(2);
    P.set({2, 0}, 1.0);
    P.set({0, 2}, -1.0);
    PolySymbol Q = P;
    P.set({0, 1}, cplx(0.0, 1.0));
    const std::vector<std::pair<double, double>> box{{-3.0, 3.0}, {-3.0, 3.0}};
    for (const auto& [name, S] : {std::pair{"with i*xi2", P}, std::pair{"without", Q}}) {
        const SublevelResult r = sublevelSetBox(S, 1.0, box, 601);
        std::printf("%-11s %s", name, r.bounded ? "bounded" : "unbounded");
        if (r.bounded && !r.boundingBox.empty())
            std::printf("  xi1 in [%.3f, %.3f]  xi2 in [%.3f, %.3f]", r.boundingBox[0].first, r.boundingBox[0].second,
                        r.boundingBox[1].first, r.boundingBox[1].second);
        if (!r.witness.empty()) std::printf("  boundary point (%.3f, %.3f)", r.witness[0], r.witness[1]);
        std::printf("\n");
    }
}
