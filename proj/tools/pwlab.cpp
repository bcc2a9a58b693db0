#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pwlab/experiments.hpp"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;
constexpr int kExitInternal = 4;

void printError(const char* kind, const std::string& message, const std::string& guard = {}) {
    nlohmann::json j{{"error", kind}, {"message", message}};
    if (!guard.empty()) j["guard"] = guard;
    std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Paley-Wiener radius lab: spectral support radius estimators with oracle cross-checks"};
    std::string configPath, experiment, outDir;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    app.add_option("--config", configPath, "JSON run configuration");
    app.add_option("--experiment", experiment, "estimate | transform | weights-check | suite | poly | hermite");
    app.add_option("--out", outDir, "output directory");
    auto* threadsOpt = app.add_option("--threads", threads, "worker threads (default $PWLAB_THREADS or 1)");
    auto* seedOpt = app.add_option("--seed", seed, "seed for randomized cases");
    CLI11_PARSE(app, argc, argv);

    try {
        pwlab::cli::RunConfig cfg;
        if (!configPath.empty()) {
            std::ifstream in(configPath);
            if (!in) throw pwlab::ParameterError("cannot open config " + configPath);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw pwlab::ParameterError(std::string("config is not valid JSON: ") + e.what());
            }
            cfg = pwlab::cli::configFromJson(j);
        }
        if (!experiment.empty()) cfg.experiment = experiment;
        if (!outDir.empty()) cfg.outDir = outDir;
        if (threadsOpt->count()) cfg.threads = threads;
        if (seedOpt->count()) cfg.seed = seed;

        const pwlab::cli::Report rep = pwlab::cli::run(cfg);
        pwlab::cli::writeReport(rep, cfg);
        const auto failures = rep.failures();
        std::cout << nlohmann::json{{"checks", rep.checks.size()}, {"failures", failures}}.dump() << '\n';
        return failures.empty() ? 0 : kExitChecksFailed;
    } catch (const pwlab::GuardViolation& e) {
        printError("guard", e.what(), e.guard());
        return kExitGuard;
    } catch (const pwlab::Error& e) {
        printError("config", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        printError("internal", e.what());
        return kExitInternal;
    }
}
