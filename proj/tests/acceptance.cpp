// Runs the full suite and prints one PASS/FAIL line per acceptance criterion.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pwlab/experiments.hpp"

namespace {

const std::map<int, const char*> kCriteria{
    {1, "derivative-growth limit, lambda in {0, 0.5, 1}"},
    {2, "weight independence, power vs log weight"},
    {3, "Wigner xi- and x-moment limits"},
    {4, "weighted Wigner limit, (lambda, mu) in {0,1}^2"},
    {5, "Gabor self-window limit 2R"},
    {6, "strict Gabor case, limsup <= 0.25"},
    {7, "Gabor upper bound R_f + R_g"},
    {8, "Paley-Wiener seminorm dichotomy"},
    {9, "P(D)^n limits at d = 1 and d = 2"},
    {10, "symbol power decomposition, 50 random cases"},
    {11, "sublevel set box and unbounded witness"},
    {12, "Hermite divergence, Wig e0, twisted Laplacian"},
    {13, "transform identities on the corpus"},
    {14, "Young conjugate of the power weight"},
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

pwlab::cli::Report runSuite(const std::filesystem::path& out) {
    pwlab::cli::RunConfig cfg;
    cfg.outDir = out.string();
    cfg.emit = {"json"};
    pwlab::cli::Report rep = pwlab::cli::cmdSuite(cfg);
    pwlab::cli::writeReport(rep, cfg);
    return rep;
}

}  // namespace

int main() {
    const auto root = std::filesystem::temp_directory_path() / "pwlab_acceptance";
    std::filesystem::remove_all(root);
    const pwlab::cli::Report first = runSuite(root / "run1");
    runSuite(root / "run2");

    int failed = 0;
    for (const auto& [id, title] : kCriteria) {
        std::vector<const pwlab::report::Check*> checks;
        for (const auto& c : first.checks)
            if (c.criterion == id) checks.push_back(&c);
        bool pass = !checks.empty();
        for (const auto* c : checks) pass = pass && c->pass;
        failed += pass ? 0 : 1;
        std::printf("%s  criterion %2d: %s (%zu checks)\n", pass ? "PASS" : "FAIL", id, title, checks.size());
        for (const auto* c : checks)
            std::printf("        %-4s %-48s measured %.6g %s %.6g\n", c->pass ? "ok" : "FAIL", c->name.c_str(),
                        c->measured, pwlab::report::relationName(c->relation), c->tolerance);
    }

    const std::string a = slurp(root / "run1" / "report.json"), b = slurp(root / "run2" / "report.json");
    const bool same = !a.empty() && a == b;
    failed += same ? 0 : 1;
    std::printf("%s  criterion 15: determinism, two suite runs give byte-identical report.json (%zu bytes)\n",
                same ? "PASS" : "FAIL", a.size());

    std::printf("%d of 15 criteria failed\n", failed);
    std::filesystem::remove_all(root);
    return failed == 0 ? 0 : 1;
}
