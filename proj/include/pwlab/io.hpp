#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pwlab/errors.hpp"
#include "pwlab/estimators.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/polyops.hpp"
#include "pwlab/signal.hpp"

namespace pwlab::io {

namespace detail {

inline void putFloat(std::ostream& os, float v) {
    std::uint32_t u = std::bit_cast<std::uint32_t>(v);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    os.write(reinterpret_cast<const char*>(&u), 4);
}

inline float getFloat(std::istream& is) {
    std::uint32_t u = 0;
    is.read(reinterpret_cast<char*>(&u), 4);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    return std::bit_cast<float>(u);
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void writeComplex64(const std::filesystem::path& path, const std::vector<cplx>& a) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open " + path.string() + " for writing");
    for (const auto& v : a) {
        putFloat(os, static_cast<float>(v.real()));
        putFloat(os, static_cast<float>(v.imag()));
    }
}

inline std::ofstream openText(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open " + path.string() + " for writing");
    return os;
}

}  // namespace detail

inline nlohmann::json gridJson(const GridSpec& g) {
    return {{"dim", g.dim}, {"half_width", g.halfWidth}, {"points", g.points}};
}

inline GridSpec gridFromJson(const nlohmann::json& j) {
    try {
        return GridSpec::make(j.at("dim").get<int>(), j.at("half_width").get<double>(), j.at("points").get<std::size_t>());
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("grid descriptor: ") + e.what());
    }
}

/// Writes base.bin (little-endian complex64 pairs) and base.json (grid descriptor).
inline void writeSamples(const std::filesystem::path& base, const GridSamples& f, const char* domain = "x") {
    detail::writeComplex64(std::filesystem::path(base).concat(".bin"), f.samples);
    nlohmann::json j = gridJson(f.grid);
    j["domain"] = domain;
    detail::openText(std::filesystem::path(base).concat(".json")) << j.dump(2) << '\n';
}

/// Reads a function written by writeSamples (or any complex64 file with a matching sidecar).
inline SampledFunction readSamples(const std::filesystem::path& base) {
    std::filesystem::path jp = std::filesystem::path(base).concat(".json");
    std::filesystem::path bp = std::filesystem::path(base).concat(".bin");
    std::ifstream js(jp);
    if (!js) throw ParameterError("missing grid descriptor " + jp.string());
    nlohmann::json j;
    try {
        js >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("grid descriptor: ") + e.what());
    }
    GridSpec g = gridFromJson(j);
    std::ifstream bs(bp, std::ios::binary);
    if (!bs) throw ParameterError("missing sample file " + bp.string());
    const auto bytes = std::filesystem::file_size(bp);
    if (bytes != g.size() * 8) throw DataError("sample file size does not match the grid descriptor");
    std::vector<cplx> s(g.size());
    for (auto& v : s) {
        float re = detail::getFloat(bs);
        float im = detail::getFloat(bs);
        v = cplx(re, im);
    }
    return SampledFunction(g, std::move(s));
}

inline void writeField(const std::filesystem::path& base, const TimeFreqField& F) {
    detail::writeComplex64(std::filesystem::path(base).concat(".bin"), F.samples);
    nlohmann::json j{{"kind", kindName(F.kind)}, {"xGrid", gridJson(F.xGrid)}, {"xiGrid", gridJson(F.xiGrid)}};
    detail::openText(std::filesystem::path(base).concat(".json")) << j.dump(2) << '\n';
}

/// |F| as a CSV matrix: one row per x sample, one column per xi sample.
inline void writeFieldMagnitudeCsv(const std::filesystem::path& path, const TimeFreqField& F) {
    auto os = detail::openText(path);
    for (std::size_t i = 0; i < F.nx(); ++i) {
        for (std::size_t k = 0; k < F.nxi(); ++k) os << (k ? "," : "") << detail::fmt(std::abs(F.at(i, k)));
        os << '\n';
    }
}

inline void writeSequenceCsv(const std::filesystem::path& path, const RadiusSequence& s) {
    auto os = detail::openText(path);
    os << "n,logNorm,root,ratio\n";
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const auto& e = s.entries[i];
        os << e.n << ',' << detail::fmt(e.logNorm.log()) << ',';
        if (e.n > 0) os << detail::fmt(s.root(i));
        os << ',';
        if (i > 0) os << detail::fmt(s.ratio(i));
        os << '\n';
    }
}

inline void writeProfileCsv(const std::filesystem::path& path, const DiagnosticTable& t) {
    auto os = detail::openText(path);
    os << t.parameterName << ",index,log_value\n";
    for (const auto& r : t.rows)
        for (std::size_t j = 0; j < r.values.size(); ++j)
            os << detail::fmt(r.parameter) << ',' << detail::fmt(t.abscissa[j]) << ',' << detail::fmt(r.values[j])
               << '\n';
}

inline void writeNormCsv(const std::filesystem::path& path, const std::vector<double>& logValues) {
    auto os = detail::openText(path);
    os << "index,log_value\n";
    for (std::size_t i = 0; i < logValues.size(); ++i) os << i << ',' << detail::fmt(logValues[i]) << '\n';
}

inline void writeSublevelCsv(const std::filesystem::path& path, const SublevelResult& r) {
    auto os = detail::openText(path);
    os << (r.inSetPoints.empty() || r.inSetPoints[0].size() == 1 ? "xi1\n" : "xi1,xi2\n");
    for (const auto& p : r.inSetPoints) {
        for (std::size_t a = 0; a < p.size(); ++a) os << (a ? "," : "") << detail::fmt(p[a]);
        os << '\n';
    }
}

/// Symbol literal: list of {"index": [i, j], "re": r, "im": s}.
inline PolySymbol polyFromJson(const nlohmann::json& j, int dim) {
    if (!j.is_array()) throw ParameterError("symbol literal must be a list of terms");
    PolySymbol P(dim);
    try {
        for (const auto& t : j) {
            auto idx = t.at("index").get<std::vector<int>>();
            if (static_cast<int>(idx.size()) != dim) throw ParameterError("symbol index length must equal dim");
            PolySymbol::Index k{idx[0], dim == 2 ? idx[1] : 0};
            P.set(k, P.coefficient(k) + cplx(t.value("re", 0.0), t.value("im", 0.0)));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("symbol literal: ") + e.what());
    }
    return P;
}

inline nlohmann::json polyToJson(const PolySymbol& P) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [k, v] : P.coefficients()) {
        nlohmann::json idx = P.dim() == 1 ? nlohmann::json::array({k[0]}) : nlohmann::json::array({k[0], k[1]});
        out.push_back({{"index", idx}, {"re", v.real()}, {"im", v.imag()}});
    }
    return out;
}

}  // namespace pwlab::io
