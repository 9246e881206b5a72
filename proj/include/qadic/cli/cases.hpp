#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qadic/bimodule.hpp"

namespace qadic {

enum class ReportFormat { Json, Csv, Text };

struct RunConfig {
    int grid_exp = 6;
    std::int64_t window = 16;
    std::optional<double> tolerance;
    int precision = PadicInt::kMaxPrecision;
    std::string out_path;
    ReportFormat format = ReportFormat::Text;

    /// Throws Error unless 3 <= g <= 12, the window is a power of two and tolerances are positive.
    void validate_duality() const {
        if (grid_exp < 3 || grid_exp > 12) throw Error("grid exponent must lie in [3, 12]");
        if (window <= 0 || (window & (window - 1)) != 0) throw Error("window must be a power of two");
        if (tolerance && !(*tolerance > 0)) throw Error("tolerance must be positive");
        if (precision < 1 || precision > PadicInt::kMaxPrecision) throw Error("precision must lie in [1, 64]");
    }
};

/// Default 2-adic precision, overridable through QADIC_DEFAULT_PRECISION.
inline int default_precision() {
    const char* env = std::getenv("QADIC_DEFAULT_PRECISION");
    if (!env || !*env) return PadicInt::kMaxPrecision;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > PadicInt::kMaxPrecision)
        throw Error("QADIC_DEFAULT_PRECISION must be an integer in [1, 64]");
    return static_cast<int>(v);
}

struct DualityCase {
    nlohmann::json f_spec;
    SymbolFunction f;
    DyadicRational d;
    PowerOfTwo c;
    nlohmann::json xi_spec;
    nlohmann::json xi2_spec;  // defaults to xi_spec
};

namespace detail {

inline double param(const nlohmann::json& p, const char* key, double fallback) {
    return p.contains(key) ? p.at(key).get<double>() : fallback;
}

inline cplx complex_param(const nlohmann::json& p, const char* key, cplx fallback) {
    if (!p.contains(key)) return fallback;
    const auto& v = p.at(key);
    if (v.is_array()) return {v.at(0).get<double>(), v.at(1).get<double>()};
    return v.get<double>();
}

inline GaussianSymbol gaussian_from(const nlohmann::json& p) {
    return GaussianSymbol{complex_param(p, "amplitude", 1.0), param(p, "center", 0.0), param(p, "width", 1.0),
                          param(p, "modulation", 0.0)};
}

}  // namespace detail

/// {kind: gaussian | bump | constant, params: {...}}.
inline SymbolFunction symbol_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    if (kind == "gaussian") return detail::gaussian_from(p);
    if (kind == "bump") return BumpSymbol{detail::param(p, "width", 1.0)};
    if (kind == "constant") return ConstantSymbol{detail::complex_param(p, "value", 1.0)};
    throw Error("unknown symbol kind '" + kind + "'");
}

/// {kind: gaussian | indicator, params: {...}} sampled at spacing 2^-g inside [-window, window).
inline GridFunction vector_from_json(const nlohmann::json& j, int g, double window) {
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    if (kind == "gaussian") {
        GaussianSymbol s = detail::gaussian_from(p);
        SymbolFunction f = s;
        return GridFunction::sample([&](double x) { return f.f(x); }, g, -window, window);
    }
    if (kind == "indicator") {
        double lo = std::max(detail::param(p, "lo", 0.0), -window), hi = std::min(detail::param(p, "hi", 1.0), window);
        return GridFunction::indicator(lo, hi, g);
    }
    throw Error("unknown vector kind '" + kind + "'");
}

inline std::vector<DualityCase> cases_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error("case file must hold a JSON array");
    std::vector<DualityCase> out;
    for (const auto& item : j) {
        DualityCase c;
        c.f_spec = item.at("f");
        c.f = symbol_from_json(c.f_spec);
        c.d = DyadicRational::parse(item.at("d").get<std::string>());
        c.c = PowerOfTwo::parse(item.at("c").get<std::string>());
        c.xi_spec = item.at("xi");
        c.xi2_spec = item.value("xi2", c.xi_spec);
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<DualityCase> load_cases(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open case file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("case file '" + path + "': " + e.what());
    }
    try {
        return cases_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error("case file '" + path + "': " + e.what());
    }
}

inline TheoremReport run_case(const DualityCase& c, const RunConfig& cfg) {
    const double W = static_cast<double>(cfg.window);
    GridFunction xi1 = vector_from_json(c.xi_spec, cfg.grid_exp, W);
    GridFunction xi2 = vector_from_json(c.xi2_spec, cfg.grid_exp, W);
    TheoremReport r;
    r.f = c.f_spec;
    r.d = c.d;
    r.c = c.c;
    r.residual = verify_theorem(c.f, c.d, c.c, xi1, xi2, cfg.precision);
    r.tolerance = cfg.tolerance.value_or(theorem_tolerance(c.c));
    r.g = cfg.grid_exp;
    r.window = W;
    r.pass = r.residual <= r.tolerance;
    return r;
}

}  // namespace qadic
