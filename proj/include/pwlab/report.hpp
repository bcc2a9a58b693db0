#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "pwlab/estimators.hpp"
#include "pwlab/io.hpp"

namespace pwlab::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

namespace detail {

inline void number(std::string& out, double v) {
    if (std::isnan(v)) {
        out += "\"nan\"";
    } else if (std::isinf(v)) {
        out += v > 0 ? "\"inf\"" : "\"-inf\"";
    } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
    }
}

inline void emit(std::string& out, const nlohmann::json& j, int depth) {
    const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // object keys iterate sorted
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::json(it.key()).dump() + ": ";
                emit(out, it.value(), depth + 1);
            }
            out += "\n" + close + "}";
            break;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                emit(out, j[i], depth + 1);
            }
            out += "\n" + close + "]";
            break;
        }
        case nlohmann::json::value_t::number_float:
            number(out, j.get<double>());
            break;
        default:
            out += j.dump();
    }
}

}  // namespace detail

/// Sorted keys, floats with 17 significant digits, non-finite values as strings.
inline std::string canonicalDump(const nlohmann::json& j) {
    std::string out;
    detail::emit(out, j, 0);
    out += '\n';
    return out;
}

inline nlohmann::json num(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

inline nlohmann::json sequenceJson(const RadiusSequence& s) {
    nlohmann::json params{{"p", num(s.params.p)},           {"q", num(s.params.q)},
                          {"lambda", s.params.lambda},      {"mu", s.params.mu},
                          {"weight", s.params.weightId},    {"window", s.params.windowId},
                          {"symbol", s.params.symbolId}};
    return {{"method", methodName(s.method)},
            {"params", params},
            {"truncation", {{"n_used", s.nUsed}, {"reason", truncationName(s.reason)}}},
            {"zero_input", s.zeroInput}};
}

inline nlohmann::json estimateJson(const RadiusSequence& s, const RadiusEstimate& e) {
    nlohmann::json j = sequenceJson(s);
    j["rootLimit"] = num(e.rootLimit);
    j["ratioLimit"] = num(e.ratioLimit);
    j["richardson"] = num(e.richardson);
    j["lastRoot"] = num(e.lastRoot);
    j["lastRatio"] = num(e.lastRatio);
    j["oracle"] = num(e.oracle);
    j["relErr"] = {{"root", num(e.relErrRoot)}, {"ratio", num(e.relErrRatio)}};
    j["divergent"] = e.divergent;
    j["ratioGrowthSlope"] = num(e.ratioGrowthSlope);
    return j;
}

inline nlohmann::json tableJson(const DiagnosticTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        nlohmann::json vals = nlohmann::json::array();
        for (double v : r.values) vals.push_back(num(v));
        rows.push_back({{"parameter", num(r.parameter)}, {"log_values", vals}});
    }
    nlohmann::json ab = nlohmann::json::array();
    for (double v : t.abscissa) ab.push_back(num(v));
    return {{"title", t.title}, {"parameter", t.parameterName}, {"abscissa_name", t.abscissaName},
            {"abscissa", ab},   {"rows", rows}};
}

/// Comparison a check applies between its measured value and its tolerance.
enum class Relation { AtMost, AtLeast, Below, Above, Equal };

inline const char* relationName(Relation r) {
    switch (r) {
        case Relation::AtMost: return "<=";
        case Relation::AtLeast: return ">=";
        case Relation::Below: return "<";
        case Relation::Above: return ">";
        case Relation::Equal: return "==";
    }
    return "?";
}

inline bool holds(double measured, Relation r, double tolerance) {
    switch (r) {
        case Relation::AtMost: return measured <= tolerance;
        case Relation::AtLeast: return measured >= tolerance;
        case Relation::Below: return measured < tolerance;
        case Relation::Above: return measured > tolerance;
        case Relation::Equal: return measured == tolerance;
    }
    return false;
}

/// One tolerance check: pass iff `measured relation tolerance` holds (NaN never passes).
struct Check {
    std::string name;
    std::string experiment;
    int criterion = 0;
    double measured = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::AtMost;
    bool pass = false;
};

inline nlohmann::json checkJson(const Check& c) {
    nlohmann::json j{{"name", c.name},           {"experiment", c.experiment},
                     {"measured", num(c.measured)}, {"tolerance", num(c.tolerance)},
                     {"relation", relationName(c.relation)}, {"pass", c.pass}};
    if (c.criterion > 0) j["criterion"] = c.criterion;
    return j;
}

}  // namespace pwlab::report
