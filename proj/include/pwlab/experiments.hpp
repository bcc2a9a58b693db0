#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pwlab/corpus.hpp"
#include "pwlab/errors.hpp"
#include "pwlab/estimators.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/identities.hpp"
#include "pwlab/io.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/polyops.hpp"
#include "pwlab/report.hpp"
#include "pwlab/signal.hpp"
#include "pwlab/transforms.hpp"
#include "pwlab/weights.hpp"

namespace pwlab::cli {

using nlohmann::json;

/// Everything a run needs; filled from a JSON config file and command-line flags.
struct RunConfig {
    std::string experiment = "suite";
    std::string function = "bandlimited:[-1,1]:k10";
    std::string functionFile;  // base path of a .bin/.json pair; overrides `function`
    std::optional<GridSpec> grid;
    int dim = 1;
    std::string method = "derivative";
    std::string weight = "none";
    std::string window;  // corpus name; empty means reflect(f)
    std::optional<json> symbol;
    double p = 2.0;
    double q = 2.0;
    double lambda = 0.0;
    double mu = 0.0;
    int nMax = 0;  // 0: 40 at d = 1, 24 at d = 2
    std::optional<double> oracle;
    std::string outDir = "pwlab-out";
    std::set<std::string> emit{"json", "csv"};
    unsigned threads = 0;  // 0: keep the PWLAB_THREADS default
    std::uint64_t seed = 20240601;
    std::optional<std::vector<std::string>> experiments;  // suite entries; unset runs all
    std::map<std::string, double> tolerances;
    int hermiteIndex = 3;
    std::string transform = "wigner";
    double sublevelR = 1.0;
    std::vector<std::pair<double, double>> searchBox;
    int resolution = 1201;

    GridSpec gridOrDefault() const { return grid ? *grid : defaultGrid(dim); }
    int nMaxOrDefault() const { return nMax > 0 ? nMax : (gridOrDefault().dim == 1 ? 40 : 24); }
};

inline const std::vector<std::string>& experimentKinds() {
    static const std::vector<std::string> k{"estimate", "transform", "weights-check", "suite", "poly", "hermite"};
    return k;
}

inline const std::vector<std::string>& methodKinds() {
    static const std::vector<std::string> k{"derivative", "wigner-xi", "wigner-x", "gabor", "poly"};
    return k;
}

inline const std::vector<std::string>& transformKinds() {
    static const std::vector<std::string> k{"spectrum", "stft", "wigner", "ambiguity"};
    return k;
}

namespace detail {

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

inline double exponentFromJson(const json& j, const char* key) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw ParameterError(std::string(key) + ": expected a number or \"inf\"");
    }
    if (!j.is_number()) throw ParameterError(std::string(key) + ": expected a number or \"inf\"");
    return j.get<double>();
}

inline std::vector<std::pair<double, double>> boxFromJson(const json& j, const char* key) {
    std::vector<std::pair<double, double>> box;
    if (!j.is_array()) throw ParameterError(std::string(key) + ": expected a list of [lo, hi] pairs");
    for (const auto& iv : j) {
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
            throw ParameterError(std::string(key) + ": expected a list of [lo, hi] pairs");
        box.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
    return box;
}

}  // namespace detail

/// Parses and validates a config object; unknown keys and bad enums raise ParameterError.
inline RunConfig configFromJson(const json& j) {
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    static const std::set<std::string> known{
        "experiment", "function", "function_file", "grid",        "dim",          "method",   "weight",
        "window",     "symbol",   "p",             "q",           "lambda",       "mu",       "n_max",
        "oracle",     "out",      "emit",          "threads",     "seed",         "experiments",
        "tolerances", "hermite_index", "transform", "sublevel"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ParameterError("unknown config key '" + it.key() + "'");
    RunConfig c;
    try {
        if (j.contains("experiment")) c.experiment = j.at("experiment").get<std::string>();
        if (j.contains("function")) c.function = j.at("function").get<std::string>();
        if (j.contains("function_file")) c.functionFile = j.at("function_file").get<std::string>();
        if (j.contains("dim")) c.dim = j.at("dim").get<int>();
        if (j.contains("grid")) {
            c.grid = io::gridFromJson(j.at("grid"));
            if (!j.contains("dim")) c.dim = c.grid->dim;
        }
        if (j.contains("method")) c.method = j.at("method").get<std::string>();
        if (j.contains("weight")) c.weight = j.at("weight").get<std::string>();
        if (j.contains("window")) c.window = j.at("window").get<std::string>();
        if (j.contains("symbol")) c.symbol = j.at("symbol");
        if (j.contains("p")) c.p = detail::exponentFromJson(j.at("p"), "p");
        if (j.contains("q")) c.q = detail::exponentFromJson(j.at("q"), "q");
        if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
        if (j.contains("mu")) c.mu = j.at("mu").get<double>();
        if (j.contains("n_max")) c.nMax = j.at("n_max").get<int>();
        if (j.contains("oracle")) c.oracle = j.at("oracle").get<double>();
        if (j.contains("out")) c.outDir = j.at("out").get<std::string>();
        if (j.contains("emit")) {
            c.emit.clear();
            for (const auto& e : j.at("emit")) c.emit.insert(e.get<std::string>());
        }
        if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("experiments")) c.experiments = j.at("experiments").get<std::vector<std::string>>();
        if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
        if (j.contains("hermite_index")) c.hermiteIndex = j.at("hermite_index").get<int>();
        if (j.contains("transform")) c.transform = j.at("transform").get<std::string>();
        if (j.contains("sublevel")) {
            const json& s = j.at("sublevel");
            if (s.contains("R")) c.sublevelR = s.at("R").get<double>();
            if (s.contains("search_box")) c.searchBox = detail::boxFromJson(s.at("search_box"), "sublevel.search_box");
            if (s.contains("resolution")) c.resolution = s.at("resolution").get<int>();
        }
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    return c;
}

/// Enum and range validation shared by file and flag input.
inline void validate(const RunConfig& c) {
    if (!detail::contains(experimentKinds(), c.experiment))
        throw ParameterError("unknown experiment '" + c.experiment + "'");
    if (!detail::contains(methodKinds(), c.method)) throw ParameterError("unknown method '" + c.method + "'");
    if (!detail::contains(transformKinds(), c.transform))
        throw ParameterError("unknown transform '" + c.transform + "'");
    if (c.dim != 1 && c.dim != 2) throw ParameterError("dim must be 1 or 2");
    if (c.grid && c.grid->dim != c.dim) throw ParameterError("grid dim and dim disagree");
    for (const auto& e : c.emit)
        if (e != "json" && e != "csv") throw ParameterError("emit entries must be json or csv");
    if (c.nMax < 0) throw ParameterError("n_max must be positive");
    if (!(c.p >= 1.0) || !(c.q >= 1.0)) throw ParameterError("p and q must be >= 1");
    if (!(c.lambda >= 0.0) || !(c.mu >= 0.0)) throw ParameterError("lambda and mu must be >= 0");
    if (c.hermiteIndex < 0 || c.hermiteIndex > kHermiteCap) throw ParameterError("hermite_index out of range");
    if (!(c.sublevelR > 0.0)) throw ParameterError("sublevel R must be positive");
    if (c.resolution < 2) throw ParameterError("sublevel resolution must be >= 2");
    if (!c.functionFile.empty()) {
        for (const char* ext : {".bin", ".json"})
            if (!std::filesystem::exists(std::filesystem::path(c.functionFile).concat(ext)))
                throw ParameterError("function file " + c.functionFile + ext + " does not exist");
    }
}

/// Config echo for the report. The output directory and worker count do not change results and are left out.
inline json configJson(const RunConfig& c) {
    json j{{"experiment", c.experiment},
           {"function", c.function},
           {"function_file", c.functionFile},
           {"dim", c.dim},
           {"method", c.method},
           {"weight", c.weight},
           {"window", c.window},
           {"p", report::num(c.p)},
           {"q", report::num(c.q)},
           {"lambda", c.lambda},
           {"mu", c.mu},
           {"n_max", c.nMaxOrDefault()},
           {"seed", c.seed},
           {"hermite_index", c.hermiteIndex},
           {"transform", c.transform},
           {"emit", std::vector<std::string>(c.emit.begin(), c.emit.end())}};
    j["grid"] = io::gridJson(c.gridOrDefault());
    if (c.symbol) j["symbol"] = *c.symbol;
    if (c.oracle) j["oracle"] = report::num(*c.oracle);
    if (c.experiments) j["experiments"] = *c.experiments;
    json tol = json::object();
    for (const auto& [k, v] : c.tolerances) tol[k] = report::num(v);
    j["tolerances"] = tol;
    json sub{{"R", c.sublevelR}, {"resolution", c.resolution}};
    json sb = json::array();
    for (auto [lo, hi] : c.searchBox) sb.push_back({lo, hi});
    sub["search_box"] = sb;
    j["sublevel"] = sub;
    return j;
}

/// Deterministic report plus wall-clock timings kept outside report.json.
struct Report {
    json config = json::object();
    json grids = json::array();
    json estimates = json::array();
    json tables = json::array();
    json notes = json::object();
    std::vector<std::string> experimentsRun;
    std::vector<report::Check> checks;
    std::vector<std::pair<std::string, double>> timings;

    bool allPass() const {
        return std::all_of(checks.begin(), checks.end(), [](const report::Check& c) { return c.pass; });
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> f;
        for (const auto& c : checks)
            if (!c.pass) f.push_back(c.name);
        return f;
    }
    json toJson() const {
        json cj = json::array();
        for (const auto& c : checks) cj.push_back(report::checkJson(c));
        return {{"schema", report::kSchemaVersion},
                {"tool_version", report::kToolVersion},
                {"config", config},
                {"experiments", experimentsRun},
                {"grids", grids},
                {"estimates", estimates},
                {"tables", tables},
                {"notes", notes},
                {"checks", cj},
                {"failures", failures()},
                {"all_pass", allPass()}};
    }
    json timingsJson() const {
        json t = json::object();
        for (const auto& [k, v] : timings) t[k] = v;
        return t;
    }
};

/// Per-experiment recording helper: tolerance overrides, CSV output, namespacing by tag.
class Context {
public:
    Context(const RunConfig& cfg, Report& rep, std::string tag) : cfg_(cfg), rep_(rep), tag_(std::move(tag)) {}

    const RunConfig& config() const { return cfg_; }
    const std::string& tag() const { return tag_; }

    double tolerance(const std::string& name, double fallback) const {
        auto it = cfg_.tolerances.find(qualified(name));
        return it == cfg_.tolerances.end() ? fallback : it->second;
    }

    bool check(int criterion, const std::string& name, double measured, double tolerance,
               report::Relation rel = report::Relation::AtMost) {
        report::Check c;
        c.name = qualified(name);
        c.experiment = tag_;
        c.criterion = criterion;
        c.measured = measured;
        c.tolerance = this->tolerance(name, tolerance);
        c.relation = rel;
        c.pass = report::holds(c.measured, c.relation, c.tolerance);
        rep_.checks.push_back(c);
        return c.pass;
    }

    void grid(const std::string& label, const GridSpec& g) {
        json j = io::gridJson(g);
        j["label"] = qualified(label);
        rep_.grids.push_back(j);
    }

    void estimate(const std::string& label, const RadiusSequence& s, const RadiusEstimate& e) {
        json j = report::estimateJson(s, e);
        j["label"] = qualified(label);
        j["max_root"] = report::num(maxRoot(s));
        rep_.estimates.push_back(j);
        if (cfg_.emit.count("csv")) io::writeSequenceCsv(path(label + ".csv"), s);
    }

    void table(const std::string& label, const DiagnosticTable& t) {
        json j = report::tableJson(t);
        j["label"] = qualified(label);
        rep_.tables.push_back(j);
        if (cfg_.emit.count("csv")) io::writeProfileCsv(path(label + ".csv"), t);
    }

    void note(const std::string& key, json value) { rep_.notes[qualified(key)] = std::move(value); }

    std::filesystem::path path(const std::string& file) const {
        std::string stem = tag_.empty() ? file : tag_ + "_" + file;
        for (auto& ch : stem)
            if (ch == ':' || ch == '/' || ch == ' ') ch = '_';
        return std::filesystem::path(cfg_.outDir) / stem;
    }

    static double maxRoot(const RadiusSequence& s) {
        double m = 0.0;
        for (std::size_t i = 0; i < s.entries.size(); ++i)
            if (s.entries[i].n > 0) m = std::max(m, s.root(i));
        return m;
    }

private:
    std::string qualified(const std::string& name) const { return tag_.empty() ? name : tag_ + "." + name; }

    const RunConfig& cfg_;
    Report& rep_;
    std::string tag_;
};

namespace detail {

inline double relDiff(double a, double b) { return std::abs(a - b) / std::min(std::abs(a), std::abs(b)); }

inline double maxPairwiseRelDiff(const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) m = std::max(m, relDiff(v[i], v[j]));
    return m;
}

// Rescales a field so that its L^{p,q} norm is 1 (entry 0 of a moment sequence becomes 0).
inline TimeFreqField normalizedField(TimeFreqField F, double p, double q) {
    const double l = mixedLpqNorm(F, p, q).log();
    if (!std::isfinite(l)) return F;
    const double s = std::exp(-l);
    for (auto& v : F.samples) v *= s;
    return F;
}

inline std::optional<WeightFunction> parseWeight(const std::string& s) {
    if (s == "none") return std::nullopt;
    if (s == "log") return WeightFunction::logWeight();
    if (s.rfind("power:", 0) == 0) {
        double a = 0.0;
        try {
            a = std::stod(s.substr(6));
        } catch (...) {
            throw ParameterError("bad power weight '" + s + "'");
        }
        return WeightFunction::powerWeight(a);
    }
    throw ParameterError("unknown weight '" + s + "'");
}

inline PolySymbol exampleSymbol(int dim) {
    PolySymbol P(dim);
    if (dim == 1) {
        P.set({2, 0}, 1.0);
    } else {
        P.set({2, 0}, 1.0);
        P.set({0, 2}, -1.0);
        P.set({0, 1}, cplx(0.0, 1.0));
    }
    return P;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Suite experiments. Each records its checks under its tag and the acceptance criterion it serves.

namespace suite {

inline constexpr double kBandKappa = 10.0;

/// Derivative growth limit for LogWeight and PowerWeight(1/2) at several strengths.
inline void derivativeGrowth(Context& ctx) {
    const GridSpec g = defaultGrid(1);
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, kBandKappa);
    const double nominal = 1.0;
    ctx.grid("input", g);
    ctx.note("grid_oracle", t.oracleRadius);
    const WeightFunction lw = WeightFunction::logWeight(), pw = WeightFunction::powerWeight(0.5);
    std::map<std::string, RadiusEstimate> est;
    for (double lam : {0.0, 0.5, 1.0}) {
        char label[64];
        std::snprintf(label, sizeof label, "log_l%g", lam);
        auto s = derivativeGrowthSequence(t.f, &lw, lam, 2.0, 40);
        est[label] = extrapolateLimit(s, nominal);
        ctx.estimate(label, s, est[label]);
        ctx.check(1, std::string("ratio_relerr.") + label, est[label].relErrRatio, 0.01);
        ctx.check(1, std::string("root_relerr.") + label, est[label].relErrRoot, 0.03);
    }
    for (double lam : {0.5, 1.0}) {
        char label[64];
        std::snprintf(label, sizeof label, "power0.5_l%g", lam);
        auto s = derivativeGrowthSequence(t.f, &pw, lam, 2.0, 40);
        est[label] = extrapolateLimit(s, nominal);
        ctx.estimate(label, s, est[label]);
        char logLabel[64];
        std::snprintf(logLabel, sizeof logLabel, "log_l%g", lam);
        ctx.check(2, std::string("weight_agreement.") + label,
                  detail::relDiff(est[label].ratioLimit, est[logLabel].ratioLimit), 0.02);
    }
    ctx.check(1, "lambda_spread",
              detail::maxPairwiseRelDiff(
                  {est["log_l0"].ratioLimit, est["log_l0.5"].ratioLimit, est["log_l1"].ratioLimit}),
              0.02);
}

/// Real Paley-Wiener seminorm profile: bounded above the radius, exploding below it.
inline void pwDichotomy(Context& ctx) {
    const GridSpec g = defaultGrid(1);
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, kBandKappa);
    const WeightFunction lw = WeightFunction::logWeight();
    const int cap = 800;
    ctx.grid("input", g);
    ctx.note("alpha_cap", cap);
    for (double R : {1.1, 0.8}) {
        DiagnosticTable tab = pwSeminormCheck(t.f, R, &lw, {0.0, 1.0}, cap);
        char label[32];
        std::snprintf(label, sizeof label, "R%g", R);
        ctx.table(label, tab);
        for (const auto& row : tab.rows) {
            char name[64];
            std::snprintf(name, sizeof name, "growth.%s.l%g", label, row.parameter);
            if (R > 1.0)
                ctx.check(8, name, profileGrowth(row), 10.0);
            else
                ctx.check(8, name, profileGrowth(row), 1e3, report::Relation::AtLeast);
        }
    }
}

inline GridSpec wignerGrid() { return GridSpec::make(1, 64.0 * std::numbers::pi, 1024); }

/// Unweighted Wigner moments along xi (radius of the spectrum) and along x (radius of the function).
inline void wignerMoments(Context& ctx) {
    const GridSpec g = wignerGrid();
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, kBandKappa);
    ctx.grid("input_xi", g);
    auto sx = wignerMomentSequence(t.f, MomentAxis::Xi, nullptr, 0.0, 0.0, 2.0, 2.0, 40);
    auto ex = extrapolateLimit(sx, 1.0);
    ctx.estimate("xi", sx, ex);
    ctx.check(3, "xi.ratio_relerr", ex.relErrRatio, 0.05);
    ctx.check(3, "xi.root_relerr", ex.relErrRoot, 0.05);

    const GridSpec gs = GridSpec::make(1, 2.5, 512);
    const SampledFunction b = makeBump(gs, {{-2.0, 2.0}}, 1.0);
    ctx.grid("input_x", gs);
    auto sy = wignerMomentSequence(b, MomentAxis::X, nullptr, 0.0, 0.0, 2.0, 2.0, 40);
    auto ey = extrapolateLimit(sy, 2.0);
    ctx.estimate("x", sy, ey);
    ctx.check(3, "x.ratio_relerr", ey.relErrRatio, 0.05);
    ctx.check(3, "x.root_relerr", ey.relErrRoot, 0.05);
}

/// Weighted Wigner xi-moments: the limit does not depend on (lambda, mu).
inline void wignerWeighted(Context& ctx) {
    const GridSpec g = wignerGrid();
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, kBandKappa);
    const WeightFunction lw = WeightFunction::logWeight();
    const TimeFreqField W = wigner(t.f);
    ctx.grid("input", g);
    std::vector<double> ratios;
    for (double lam : {0.0, 1.0})
        for (double mu : {0.0, 1.0}) {
            auto s = wignerMomentSequence(W, MomentAxis::Xi, &lw, lam, mu, 2.0, 2.0, 40);
            auto e = extrapolateLimit(s, 1.0);
            char label[32];
            std::snprintf(label, sizeof label, "l%g_m%g", lam, mu);
            ctx.estimate(label, s, e);
            ratios.push_back(e.ratioLimit);
        }
    ctx.check(4, "weight_spread", detail::maxPairwiseRelDiff(ratios), 0.02);
}

/// Gabor moments with window reflect(f): limit twice the spectral radius.
inline void gaborSelfWindow(Context& ctx) {
    const GridSpec g = wignerGrid();
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, kBandKappa);
    ctx.grid("input", g);
    const TimeFreqField V = detail::normalizedField(stft(t.f, reflect(t.f)), 2.0, 2.0);
    auto s = gaborMomentSequence(V, nullptr, 0.0, 0.0, 2.0, 2.0, 40);
    s.params.windowId = "reflect(f)";
    auto e = extrapolateLimit(s, 2.0 * 1.0);
    ctx.estimate("self_window", s, e);
    ctx.check(5, "ratio_relerr", e.relErrRatio, 0.05);
}

/// Spectrum in [0.8, 1] with window f: the Gabor limit stays near the support width, far below 2R.
inline void gaborStrict(Context& ctx) {
    const GridSpec g = GridSpec::make(1, 512.0 * std::numbers::pi, 2048);
    const TestFunction t = makeBandlimited(g, {{0.8, 1.0}}, 20.0);
    ctx.grid("input", g);
    const TimeFreqField V = detail::normalizedField(stft(t.f, t.f), 2.0, 2.0);
    auto s = gaborMomentSequence(V, nullptr, 0.0, 0.0, 2.0, 2.0, 40);
    s.params.windowId = "f";
    auto e = extrapolateLimit(s, 0.2);
    ctx.estimate("strict", s, e);
    double tailMax = 0.0;
    const int nLast = s.entries.back().n;
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        if (s.entries[i].n > 0 && 2 * s.entries[i].n >= nLast) tailMax = std::max(tailMax, s.root(i));
    ctx.check(6, "root_limsup", std::max(e.rootLimit, tailMax), 0.25);
    ctx.check(6, "below_2R", e.rootLimit, 2.0, report::Relation::Below);
}

/// Gabor roots with a band-limited window stay below R_f + R_window.
inline void gaborUpperBound(Context& ctx) {
    const GridSpec g = GridSpec::make(1, 128.0 * std::numbers::pi, 1024);
    const TestFunction f = makeBandlimited(g, {{-1.0, 1.0}}, kBandKappa);
    const TestFunction w = makeBandlimited(g, {{-0.5, 0.5}}, kBandKappa);
    ctx.grid("input", g);
    const TimeFreqField V = detail::normalizedField(stft(f.f, w.f), 2.0, 2.0);
    auto s = gaborMomentSequence(V, nullptr, 0.0, 0.0, 2.0, 2.0, 40);
    s.params.windowId = "bandlimited:[-0.5,0.5]";
    auto e = extrapolateLimit(s, 1.5);
    ctx.estimate("upper", s, e);
    ctx.check(7, "max_root", Context::maxRoot(s), 1.55);
}

/// P(D)^n limits: xi^2 at d = 1 and xi1^2 - xi2^2 + i xi2 at d = 2.
inline void polyLimits(Context& ctx) {
    {
        const GridSpec g = defaultGrid(1);
        const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, kBandKappa);
        const PolySymbol P = detail::exampleSymbol(1);
        ctx.grid("input_d1", g);
        auto s = polyIterateSequence(t.f, P, nullptr, 0.0, 2.0, 40);
        auto e = extrapolateLimit(s, 1.0);
        ctx.estimate("d1", s, e);
        ctx.check(9, "d1.ratio_relerr", e.relErrRatio, 0.05);
    }
    {
        const GridSpec g = GridSpec::make(2, 64.0 * std::numbers::pi, 512);
        const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}, {-0.5, 0.5}}, kBandKappa);
        const PolySymbol P = detail::exampleSymbol(2);
        const double oracle = supAbsOnSupport(*t.exactSpectrum, P, 0.0);
        ctx.grid("input_d2", g);
        ctx.note("d2.grid_oracle", oracle);
        auto s = polyIterateSequence(t.f, P, nullptr, 0.0, 2.0, 40);
        auto e = extrapolateLimit(s, oracle);
        ctx.estimate("d2", s, e);
        ctx.check(9, "d2.ratio_relerr", e.relErrRatio, 0.10);
    }
}

/// Exact decomposition of D^k (P^n) for seeded random symbols, and the degree bound.
inline void polyDecomposition(Context& ctx) {
    std::mt19937_64 rng(ctx.config().seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int mismatches = 0, degreeViolations = 0;
    json cases = json::array();
    for (int c = 0; c < 50; ++c) {
        const int d = uni(1, 2), m = uni(1, 3);
        PolySymbol P(d);
        for (int a = 0; a <= m; ++a)
            for (int b = 0; a + b <= m; ++b) {
                if (d == 1 && b > 0) continue;
                if (uni(0, 2) == 0) continue;
                P.set({a, b}, cplx(uni(-3, 3), uni(-3, 3)));
            }
        // Force degree m.
        P.set({d == 1 ? m : uni(0, m), 0}, cplx(uni(1, 3), uni(-3, 3)));
        if (d == 2) {
            auto top = P.coefficients();
            bool hasTop = false;
            for (const auto& [k, v] : top) hasTop = hasTop || k[0] + k[1] == m;
            if (!hasTop) P.set({0, m}, cplx(1.0, uni(-3, 3)));
        }
        std::vector<int> k(d, 0);
        const int order = uni(0, 4);
        for (int s = 0; s < order; ++s) ++k[uni(0, d - 1)];
        const int n = uni(order, 6);
        const auto terms = symbolPowerDecomposition(P, k);
        const PolySymbol direct = P.power(n).differentiate(k);
        const PolySymbol assembled = assembleDecomposition(P, terms, n);
        const bool same = direct == assembled;
        if (!same) ++mismatches;
        for (std::size_t l = 0; l < terms.size(); ++l)
            if (!terms[l].isZero() && terms[l].degree() > static_cast<int>(l) * (P.degree() - 1)) ++degreeViolations;
        cases.push_back({{"dim", d}, {"degree", P.degree()}, {"k", k}, {"n", n}, {"exact", same}});
    }
    ctx.note("cases", cases);
    ctx.check(10, "mismatches", mismatches, 0.0, report::Relation::Equal);
    ctx.check(10, "degree_violations", degreeViolations, 0.0, report::Relation::Equal);
}

/// Sublevel sets of xi1^2 - xi2^2 + i xi2 (bounded) and xi1^2 - xi2^2 (unbounded).
inline void sublevel(Context& ctx) {
    const std::vector<std::pair<double, double>> search{{-3.0, 3.0}, {-3.0, 3.0}};
    const int res = 1201;
    const double cell = 6.0 / (res - 1);
    const PolySymbol P = detail::exampleSymbol(2);
    const SublevelResult r = sublevelSetBox(P, 1.0, search, res);
    ctx.note("cell", cell);
    json box = json::array();
    for (auto [lo, hi] : r.boundingBox) box.push_back({lo, hi});
    ctx.note("bounded.box", box);
    ctx.check(11, "bounded", r.bounded ? 1.0 : 0.0, 1.0, report::Relation::Equal);
    // Containment in [-sqrt2, sqrt2] x [-1, 1] up to one cell.
    const double target[2] = {std::sqrt(2.0), 1.0};
    double excess = std::numeric_limits<double>::infinity();
    if (r.boundingBox.size() == 2) {
        excess = 0.0;
        for (int a = 0; a < 2; ++a)
            excess = std::max({excess, -target[a] - r.boundingBox[a].first, r.boundingBox[a].second - target[a]});
    }
    ctx.check(11, "box_excess", excess, cell);
    // Tight extent: |xi2| <= 1 and max |xi1| = sqrt(5)/2 at xi2^2 = 3/4.
    if (r.boundingBox.size() == 2) {
        ctx.note("bounded.tight_xi1", std::sqrt(5.0) / 2.0);
        ctx.check(11, "tight_xi1_error",
                  std::max(std::abs(r.boundingBox[0].second - std::sqrt(5.0) / 2.0),
                           std::abs(r.boundingBox[0].first + std::sqrt(5.0) / 2.0)),
                  cell);
        ctx.check(11, "tight_xi2_error",
                  std::max(std::abs(r.boundingBox[1].second - 1.0), std::abs(r.boundingBox[1].first + 1.0)), cell);
    }

    PolySymbol Q(2);
    Q.set({2, 0}, 1.0);
    Q.set({0, 2}, -1.0);
    const SublevelResult u = sublevelSetBox(Q, 1.0, search, res);
    ctx.check(11, "unbounded", u.bounded ? 0.0 : 1.0, 1.0, report::Relation::Equal);
    if (!u.witness.empty()) {
        ctx.note("unbounded.witness", u.witness);
        ctx.check(11, "witness_diagonal", std::abs(std::abs(u.witness[0]) - std::abs(u.witness[1])), cell);
        ctx.check(11, "witness_in_set", std::abs(Q(u.witness.data())), 1.0);
    } else {
        ctx.check(11, "witness_present", 0.0, 1.0, report::Relation::Equal);
    }
    if (ctx.config().emit.count("csv")) {
        io::writeSublevelCsv(ctx.path("bounded.csv"), sublevelSetBox(P, 1.0, search, 241, true));
    }
}

inline GridSpec hermiteGrid() { return GridSpec::make(1, 12.0, 256); }

/// Hermite functions: divergent derivative roots, Wig e0, twisted Laplacian eigenvalues.
inline void hermite(Context& ctx) {
    const GridSpec g = defaultGrid(1);
    ctx.grid("derivative_input", g);
    auto s = derivativeGrowthSequence(hermiteFunction(3, g), nullptr, 0.0, 2.0, 40);
    auto e = extrapolateLimit(s);
    ctx.estimate("e3", s, e);
    ctx.check(12, "e3.divergent", e.divergent ? 1.0 : 0.0, 1.0, report::Relation::Equal);
    std::size_t i10 = 0;
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        if (s.entries[i].n == 10) i10 = i;
    const std::size_t iLast = s.entries.size() - 1;
    ctx.note("e3.n_last", s.entries[iLast].n);
    ctx.check(12, "e3.root_last_over_root10", s.root(iLast) / s.root(i10), 3.0,
              report::Relation::Above);

    const GridSpec hg = hermiteGrid();
    ctx.grid("wigner_input", hg);
    const TimeFreqField W = wigner(hermiteFunction(0, hg));
    double err = 0.0;
    for (std::size_t i = 0; i < W.nx(); ++i)
        for (std::size_t k = 0; k < W.nxi(); ++k) {
            double x = W.xGrid.coord(i), xi = W.xiGrid.coord(k);
            err = std::max(err, std::abs(W.at(i, k) - 2.0 * std::exp(-x * x - xi * xi)));
        }
    ctx.check(12, "wig_e0.max_error", err, 1e-6);

    double worst = 0.0;
    json resid = json::array();
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 3; ++k) {
            double r = twistedLaplacianResidual(j, k, hg);
            resid.push_back({{"j", j}, {"k", k}, {"residual", r}});
            worst = std::max(worst, r);
        }
    ctx.note("twisted_laplacian", resid);
    ctx.check(12, "twisted_laplacian.max_residual", worst, 1e-4);
    ctx.check(12, "twisted_laplacian.wrong_eigenvalue", twistedLaplacianResidual(0, 0, hg, 2.0), 0.1,
              report::Relation::AtLeast);
}

/// Transform identities on the corpus.
inline void identities(Context& ctx) {
    const GridSpec hg = hermiteGrid(), bg = wignerGrid();
    const std::vector<std::pair<std::string, SampledFunction>> corpus{
        {"gaussian", gaussian(hg)},
        {"hermite3", hermiteFunction(3, hg)},
        {"bandlimited", makeBandlimited(bg, {{-1.0, 1.0}}, kBandKappa).f}};
    ctx.grid("small", hg);
    ctx.grid("bandlimited", bg);
    for (const auto& [name, f] : corpus) {
        ctx.check(13, name + ".plancherel", plancherelError(f), 1e-8);
        auto [xm, km] = wignerMarginalResiduals(f);
        ctx.check(13, name + ".marginal_x", xm.relative(), 1e-6);
        ctx.check(13, name + ".marginal_xi", km.relative(), 1e-6);
        ctx.check(13, name + ".moyal", moyalError(f), 1e-6);
        ctx.check(13, name + ".stft_fundamental", stftFundamentalResidual(f, f).relative(), 1e-8);
        ctx.check(13, name + ".wigner_from_stft", wignerFromStftResidual(f).relative(), 1e-8);
        ctx.check(13, name + ".wigner_fourier", wignerFourierResidual(f).relative(), 1e-8);
        ctx.check(13, name + ".ambiguity_stft", ambiguityStftResidual(f).relative(), 1e-8);
        ctx.check(13, name + ".wigner_real", wignerImaginaryRatio(f), 1e-10);
    }
}

/// Young conjugate of PowerWeight(1/2) against 2s log(2s) - 2s and a brute-force scan.
inline void youngConjugate(Context& ctx) {
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    std::vector<double> s;
    for (int i = 1; i <= 100; ++i) s.push_back(0.5 * i);
    auto closed = [](double v) { return 2.0 * v * std::log(2.0 * v) - 2.0 * v; };
    std::vector<double> numeric(s.size()), brute(s.size());
    parallelFor(s.size(), [&](std::size_t i) {
        numeric[i] = scaledYoungConjugate(w, 1.0, s[i]);
        const double tMax = 2.0 * std::log(2.0 * s[i]) + 10.0, h = 1e-4;
        double best = -std::numeric_limits<double>::infinity();
        for (double t = 0.0; t <= tMax; t += h) best = std::max(best, s[i] * t - w.phi(t));
        brute[i] = best;
    });
    double errNumeric = 0.0, errBrute = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double c = closed(s[i]), sc = std::max(1.0, std::abs(c));
        errNumeric = std::max(errNumeric, std::abs(numeric[i] - c) / sc);
        errBrute = std::max(errBrute, std::abs(brute[i] - c) / sc);
    }
    ctx.note("phi_star_at_2", numeric[3]);
    ctx.check(14, "closed_form_error", errNumeric, 1e-6);
    ctx.check(14, "brute_force_error", errBrute, 1e-6);
    int superViolations = 0, monotoneViolations = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i; i + j + 1 < s.size(); ++j)
            // s[i] + s[j] = s[i + j + 1] on the 0.5-spaced grid
            if (numeric[i + j + 1] < numeric[i] + numeric[j] - 1e-9) ++superViolations;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (numeric[i] / s[i] < numeric[i - 1] / s[i - 1] - 1e-12) ++monotoneViolations;
    ctx.check(14, "superadditivity_violations", superViolations, 0.0, report::Relation::Equal);
    ctx.check(14, "ratio_monotonicity_violations", monotoneViolations, 0.0, report::Relation::Equal);
}

}  // namespace suite

struct SuiteEntry {
    std::string tag;
    std::string title;
    std::function<void(Context&)> run;
};

/// Registered suite experiments, in run order.
inline const std::vector<SuiteEntry>& suiteEntries() {
    static const std::vector<SuiteEntry> e{
        {"th3A1", "derivative growth limit and weight independence", suite::derivativeGrowth},
        {"th1A1", "real Paley-Wiener seminorm dichotomy", suite::pwDichotomy},
        {"corWig2", "Wigner moment limits along xi and x", suite::wignerMoments},
        {"corWig1", "weighted Wigner xi-moment limit", suite::wignerWeighted},
        {"prop2", "Gabor limit with reflected self-window", suite::gaborSelfWindow},
        {"remstrict", "strict Gabor bound for a one-sided spectrum", suite::gaborStrict},
        {"prop1", "Gabor upper bound with a band-limited window", suite::gaborUpperBound},
        {"cor-AND", "P(D)^n limits", suite::polyLimits},
        {"th22AD", "exact decomposition of D^k P^n", suite::polyDecomposition},
        {"rem2", "sublevel sets of the example symbol", suite::sublevel},
        {"hermite", "Hermite divergence, Wig e0, twisted Laplacian", suite::hermite},
        {"identities", "transform identities", suite::identities},
        {"young", "Young conjugate of the power weight", suite::youngConjugate},
    };
    return e;
}

namespace detail {

template <class Body>
void timed(Report& rep, const std::string& label, Body&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    rep.timings.emplace_back(label, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

inline void applyThreads(const RunConfig& cfg) {
    if (cfg.threads > 0) setThreadCount(cfg.threads);
}

inline void prepareOutput(const RunConfig& cfg) {
    if (!cfg.emit.empty()) std::filesystem::create_directories(cfg.outDir);
}

inline TestFunction loadFunction(const RunConfig& cfg) {
    if (!cfg.functionFile.empty()) {
        TestFunction t;
        t.name = cfg.functionFile;
        t.f = io::readSamples(cfg.functionFile);
        t.oracleRadius = supportRadiusSupNorm(forwardFT(t.f));
        return t;
    }
    return makeTestFunction(cfg.function, cfg.gridOrDefault());
}

}  // namespace detail

/// Runs the listed suite experiments (all when the config has no list).
inline Report cmdSuite(const RunConfig& cfg) {
    validate(cfg);
    detail::applyThreads(cfg);
    detail::prepareOutput(cfg);
    Report rep;
    rep.config = configJson(cfg);
    std::vector<std::string> tags;
    if (cfg.experiments) {
        tags = *cfg.experiments;
        for (const auto& t : tags) {
            bool found = false;
            for (const auto& e : suiteEntries()) found = found || e.tag == t;
            if (!found) throw ParameterError("unknown suite experiment '" + t + "'");
        }
    } else {
        for (const auto& e : suiteEntries()) tags.push_back(e.tag);
    }
    for (const auto& e : suiteEntries()) {
        if (std::find(tags.begin(), tags.end(), e.tag) == tags.end()) continue;
        Context ctx(cfg, rep, e.tag);
        detail::timed(rep, e.tag, [&] { e.run(ctx); });
        rep.experimentsRun.push_back(e.tag);
    }
    return rep;
}

/// One radius estimate for the configured function, method and weight.
inline Report cmdEstimate(const RunConfig& cfg) {
    validate(cfg);
    detail::applyThreads(cfg);
    detail::prepareOutput(cfg);
    Report rep;
    rep.config = configJson(cfg);
    Context ctx(cfg, rep, "estimate");
    detail::timed(rep, "estimate", [&] {
        const TestFunction t = detail::loadFunction(cfg);
        const auto w = detail::parseWeight(cfg.weight);
        const WeightFunction* wp = w ? &*w : nullptr;
        const int nMax = cfg.nMaxOrDefault();
        ctx.grid("input", t.f.grid);
        RadiusSequence s;
        std::optional<double> oracle = cfg.oracle;
        if (cfg.method == "derivative") {
            s = derivativeGrowthSequence(t.f, wp, cfg.lambda, cfg.p, nMax);
            if (!oracle && std::isfinite(t.oracleRadius)) oracle = t.oracleRadius;
        } else if (cfg.method == "wigner-xi" || cfg.method == "wigner-x") {
            const bool xi = cfg.method == "wigner-xi";
            s = wignerMomentSequence(t.f, xi ? MomentAxis::Xi : MomentAxis::X, wp, cfg.lambda, cfg.mu, cfg.p, cfg.q,
                                     nMax);
            if (!oracle) {
                if (xi && std::isfinite(t.oracleRadius)) oracle = t.oracleRadius;
                if (!xi && t.spatialRadius) oracle = *t.spatialRadius;
            }
        } else if (cfg.method == "gabor") {
            SampledFunction window =
                cfg.window.empty() ? reflect(t.f) : makeTestFunction(cfg.window, t.f.grid).f;
            TimeFreqField V = detail::normalizedField(stft(t.f, window), cfg.p, cfg.q);
            s = gaborMomentSequence(V, wp, cfg.lambda, cfg.mu, cfg.p, cfg.q, nMax);
            s.params.windowId = cfg.window.empty() ? "reflect(f)" : cfg.window;
            if (!oracle && cfg.window.empty() && std::isfinite(t.oracleRadius)) oracle = 2.0 * t.oracleRadius;
        } else {
            const PolySymbol P =
                cfg.symbol ? io::polyFromJson(*cfg.symbol, t.f.grid.dim) : detail::exampleSymbol(t.f.grid.dim);
            s = polyIterateSequence(t.f, P, wp, cfg.lambda, cfg.p, nMax);
            if (!oracle) oracle = supAbsOnSupport(t.exactSpectrum ? *t.exactSpectrum : forwardFT(t.f), P, 0.0);
        }
        const RadiusEstimate e = extrapolateLimit(s, oracle);
        ctx.estimate("sequence", s, e);
        if (oracle && std::isfinite(*oracle)) ctx.check(0, "ratio_relerr", e.relErrRatio, 0.05);
    });
    return rep;
}

/// Axiom and condition flags for the shipped weights, plus a Young conjugate table.
inline Report cmdWeightsCheck(const RunConfig& cfg) {
    validate(cfg);
    detail::applyThreads(cfg);
    detail::prepareOutput(cfg);
    Report rep;
    rep.config = configJson(cfg);
    detail::timed(rep, "weights-check", [&] {
        std::vector<std::string> ids;
        if (cfg.weight == "none")
            ids = {"log", "power:0.5"};
        else
            ids = {cfg.weight};
        const auto grid = defaultConditionGrid();
        for (const auto& id : ids) {
            const WeightFunction w = *detail::parseWeight(id);
            Context ctx(cfg, rep, w.id());
            const ConditionReport r = checkWeightConditions(w, grid);
            ctx.check(0, "alpha", r.alpha, 1.0, report::Relation::Equal);
            ctx.check(0, "beta", r.beta, 1.0, report::Relation::Equal);
            ctx.check(0, "gamma", r.gamma, 1.0, report::Relation::Equal);
            ctx.check(0, "delta", r.delta, 1.0, report::Relation::Equal);
            ctx.note("alpha_L", r.alphaWitnessL);
            ctx.note("beta_integral", r.betaTotal);
            ctx.note("gamma_ab", json::array({r.gammaA, r.gammaB}));
            ctx.note("delta_min_second_difference", r.deltaMinSecondDifference);
            ctx.note("subadditive", r.subadditive);
            ctx.note("bmm", r.bmm);
            if (r.bmm) ctx.note("bmm_H", r.bmmH);
            const double lam = cfg.lambda > 0.0 ? cfg.lambda : 1.0;
            std::vector<double> sv;
            for (int i = 0; i <= 40; ++i) sv.push_back(0.25 * i);
            const YoungConjugateTable yt = makeYoungConjugateTable(w, lam, sv);
            json tab = json::array();
            for (auto [sx, v] : yt.samples) tab.push_back({report::num(sx), report::num(v)});
            ctx.note("young_conjugate", {{"lambda", lam}, {"samples", tab}});
        }
    });
    return rep;
}

/// P(D)^n radius estimate and the sublevel-set analysis of the configured symbol.
inline Report cmdPoly(const RunConfig& cfg) {
    validate(cfg);
    detail::applyThreads(cfg);
    detail::prepareOutput(cfg);
    Report rep;
    rep.config = configJson(cfg);
    Context ctx(cfg, rep, "poly");
    detail::timed(rep, "poly", [&] {
        const TestFunction t = detail::loadFunction(cfg);
        const int d = t.f.grid.dim;
        const PolySymbol P = cfg.symbol ? io::polyFromJson(*cfg.symbol, d) : detail::exampleSymbol(d);
        const auto w = detail::parseWeight(cfg.weight);
        ctx.grid("input", t.f.grid);
        ctx.note("symbol", io::polyToJson(P));
        const double oracle =
            cfg.oracle ? *cfg.oracle : supAbsOnSupport(t.exactSpectrum ? *t.exactSpectrum : forwardFT(t.f), P, 0.0);
        auto s = polyIterateSequence(t.f, P, w ? &*w : nullptr, cfg.lambda, cfg.p, cfg.nMaxOrDefault());
        auto e = extrapolateLimit(s, oracle);
        ctx.estimate("sequence", s, e);
        ctx.check(0, "ratio_relerr", e.relErrRatio, d == 1 ? 0.05 : 0.10);

        std::vector<std::pair<double, double>> box = cfg.searchBox;
        if (box.empty()) box.assign(d, {-3.0, 3.0});
        const SublevelResult r = sublevelSetBox(P, cfg.sublevelR, box, cfg.resolution, cfg.emit.count("csv") > 0);
        json bb = json::array();
        for (auto [lo, hi] : r.boundingBox) bb.push_back({lo, hi});
        ctx.note("sublevel", {{"R", cfg.sublevelR}, {"bounded", r.bounded}, {"box", bb}, {"witness", r.witness}});
        if (cfg.emit.count("csv")) io::writeSublevelCsv(ctx.path("sublevel.csv"), r);
    });
    return rep;
}

/// Hermite derivative sequence for e_k, Wig e0 and twisted-Laplacian residuals.
inline Report cmdHermite(const RunConfig& cfg) {
    validate(cfg);
    detail::applyThreads(cfg);
    detail::prepareOutput(cfg);
    Report rep;
    rep.config = configJson(cfg);
    Context ctx(cfg, rep, "hermite");
    detail::timed(rep, "hermite", [&] {
        const GridSpec g = cfg.grid ? *cfg.grid : defaultGrid(1);
        ctx.grid("input", g);
        auto s = derivativeGrowthSequence(hermiteFunction(cfg.hermiteIndex, g), nullptr, 0.0, cfg.p,
                                          cfg.nMaxOrDefault());
        auto e = extrapolateLimit(s);
        ctx.estimate("e" + std::to_string(cfg.hermiteIndex), s, e);
        ctx.note("divergent", e.divergent);
        const GridSpec hg = suite::hermiteGrid();
        json resid = json::array();
        double worst = 0.0;
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 3; ++k) {
                double r = twistedLaplacianResidual(j, k, hg);
                worst = std::max(worst, r);
                resid.push_back({{"j", j}, {"k", k}, {"residual", r}});
            }
        ctx.note("twisted_laplacian", resid);
        ctx.check(0, "twisted_laplacian.max_residual", worst, 1e-4);
    });
    return rep;
}

/// Writes the requested transform of the configured function (binary + descriptor, CSV magnitude).
inline Report cmdTransform(const RunConfig& cfg) {
    validate(cfg);
    detail::applyThreads(cfg);
    std::filesystem::create_directories(cfg.outDir);
    Report rep;
    rep.config = configJson(cfg);
    Context ctx(cfg, rep, "transform");
    detail::timed(rep, "transform", [&] {
        const TestFunction t = detail::loadFunction(cfg);
        ctx.grid("input", t.f.grid);
        io::writeSamples(ctx.path("input"), t.f, "x");
        if (cfg.transform == "spectrum") {
            const Spectrum F = forwardFT(t.f);
            io::writeSamples(ctx.path("spectrum"), F, "xi");
            ctx.note("support_radius", supportRadiusSupNorm(F));
            return;
        }
        TimeFreqField F;
        if (cfg.transform == "stft") {
            SampledFunction window = cfg.window.empty() ? reflect(t.f) : makeTestFunction(cfg.window, t.f.grid).f;
            F = stft(t.f, window);
        } else if (cfg.transform == "wigner") {
            F = wigner(t.f);
        } else {
            F = ambiguity(t.f);
        }
        io::writeField(ctx.path(cfg.transform), F);
        if (cfg.emit.count("csv")) io::writeFieldMagnitudeCsv(ctx.path(cfg.transform + "_abs.csv"), F);
        ctx.note("field", {{"kind", kindName(F.kind)}, {"xGrid", io::gridJson(F.xGrid)}, {"xiGrid", io::gridJson(F.xiGrid)}});
    });
    return rep;
}

inline Report run(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.experiment == "suite") return cmdSuite(cfg);
    if (cfg.experiment == "estimate") return cmdEstimate(cfg);
    if (cfg.experiment == "weights-check") return cmdWeightsCheck(cfg);
    if (cfg.experiment == "poly") return cmdPoly(cfg);
    if (cfg.experiment == "hermite") return cmdHermite(cfg);
    return cmdTransform(cfg);
}

/// Writes report.json (canonical form) and timings.json when JSON output is enabled.
inline void writeReport(const Report& rep, const RunConfig& cfg) {
    if (!cfg.emit.count("json")) return;
    std::filesystem::create_directories(cfg.outDir);
    std::ofstream(std::filesystem::path(cfg.outDir) / "report.json") << report::canonicalDump(rep.toJson());
    std::ofstream(std::filesystem::path(cfg.outDir) / "timings.json") << report::canonicalDump(rep.timingsJson());
}

}  // namespace pwlab::cli
