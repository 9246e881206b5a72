#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qadic/cli/cases.hpp"
#include "qadic/cli/parser.hpp"
#include "qadic/wold.hpp"

using namespace qadic;

namespace {

// Exit statuses: 0 success or equal, 1 not equal or tolerance failure, 2 usage, 3 precondition.
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kPrecondition = 3;

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const InsufficientPrecision*>(&e)) return "InsufficientPrecision";
    if (dynamic_cast<const CuntzRelationViolation*>(&e)) return "CuntzRelationViolation";
    if (dynamic_cast<const HypothesisViolation*>(&e)) return "HypothesisViolation";
    if (dynamic_cast<const UnsupportedIsometry*>(&e)) return "UnsupportedIsometry";
    if (dynamic_cast<const NonTermination*>(&e)) return "NonTermination";
    if (dynamic_cast<const UnresolvedConvention*>(&e)) return "UnresolvedConvention";
    if (dynamic_cast<const ArithmeticOverflow*>(&e)) return "ArithmeticOverflow";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "InternalError";
}

int report_error(const std::exception& e, int status) {
    nlohmann::json err{{"type", error_type(e)}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        err["offset"] = pe->offset();
        err["expected"] = pe->expected();
    }
    std::cerr << nlohmann::json{{"error", err}}.dump() << "\n";
    return status;
}

std::string number(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string exact_text(const GaussianRational& c) { return c.to_string(); }

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error("cannot write '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void print_element(std::ostream& os, const ExactElement& e, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: os << to_json(e).dump(2) << "\n"; break;
        case ReportFormat::Csv:
            os << "j,r,i,m0,re,im\n";
            for (const auto& [m, c] : e.terms())
                os << m.j << "," << m.r << "," << m.i << "," << m.m0 << "," << c.re.str() << "," << c.im.str() << "\n";
            break;
        case ReportFormat::Text: os << to_text(e) << "\n"; break;
    }
}

std::string vector_text(const ExactVector& v) {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& [n, c] : v) {
        if (!out.empty()) out += " + ";
        if (!(c == GaussianRational(1))) out += exact_text(c) + " * ";
        out += "e_" + std::to_string(n);
    }
    return out;
}

nlohmann::json vector_json(const ExactVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [n, c] : v) arr.push_back({{"index", n}, {"re", c.re.str()}, {"im", c.im.str()}});
    return arr;
}

void print_vector(std::ostream& os, const ExactVector& v, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: os << vector_json(v).dump(2) << "\n"; break;
        case ReportFormat::Csv:
            os << "index,re,im\n";
            for (const auto& [n, c] : v) os << n << "," << c.re.str() << "," << c.im.str() << "\n";
            break;
        case ReportFormat::Text: os << vector_text(v) << "\n"; break;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numerical workbench for the 2-adic ring C*-algebra"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    try {
        cfg.precision = default_precision();
    } catch (const Error& e) {
        return report_error(e, kUsage);
    }
    std::string format_name;
    double tol = 0.0;
    app.add_option("-g,--grid-exp", cfg.grid_exp, "grid spacing 2^-g")->check(CLI::Range(3, 12));
    app.add_option("-N,--window", cfg.window, "basis window [-N, N] or support half-width");
    app.add_option("--tol", tol, "residual tolerance override")->check(CLI::PositiveNumber);
    app.add_option("--precision", cfg.precision, "2-adic precision in digits")->check(CLI::Range(1, 64));
    app.add_option("--format", format_name, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", cfg.out_path, "write the report to PATH");

    std::string expr1, expr2;
    auto* normalize = app.add_subcommand("normalize", "print the canonical form");
    normalize->add_option("expr", expr1)->required();

    auto* eq = app.add_subcommand("eq", "exit 0 if the expressions are equal, 1 otherwise");
    eq->add_option("lhs", expr1)->required();
    eq->add_option("rhs", expr2)->required();

    std::int64_t basis = 0;
    auto* apply = app.add_subcommand("apply", "apply lambda_2(EXPR) to a basis vector");
    apply->add_option("expr", expr1)->required();
    apply->add_option("--basis", basis, "basis index n")->required();

    auto* expect = app.add_subcommand("expect", "print the conditional expectation onto the diagonal");
    expect->add_option("expr", expr1)->required();

    auto* matrix = app.add_subcommand("matrix", "write the truncated matrix of lambda_2(EXPR) as CSV");
    matrix->add_option("expr", expr1)->required();

    std::string s0, s1;
    auto* wold = app.add_subcommand("wold", "build the extension unitary of a Cuntz pair");
    wold->add_option("--s0", s0)->required();
    wold->add_option("--s1", s1)->required();

    std::string cases_path;
    auto* duality = app.add_subcommand("duality", "verify the unitary equivalence on a case list");
    duality->add_option("--cases", cases_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (app.count("--tol")) cfg.tolerance = tol;

    auto format_or = [&](ReportFormat fallback) {
        if (format_name == "json") return ReportFormat::Json;
        if (format_name == "csv") return ReportFormat::Csv;
        if (format_name == "text") return ReportFormat::Text;
        return fallback;
    };

    ExactElement a, b;
    try {
        if (*normalize || *eq || *apply || *expect || *matrix) a = parse_expr(expr1);
        if (*eq) b = parse_expr(expr2);
    } catch (const ParseError& e) {
        return report_error(e, kUsage);
    }

    try {
        Output out(cfg.out_path);
        std::ostream& os = out.os();

        if (*normalize) {
            print_element(os, a, format_or(ReportFormat::Text));
            return kOk;
        }
        if (*eq) {
            bool same = equals(a, b);
            if (format_or(ReportFormat::Text) == ReportFormat::Json)
                os << nlohmann::json{{"equal", same}}.dump() << "\n";
            else
                os << (same ? "equal" : "not equal") << "\n";
            return same ? kOk : kFail;
        }
        if (*apply) {
            print_vector(os, lambda2_apply(a, basis_vector<GaussianRational>(basis)), format_or(ReportFormat::Text));
            return kOk;
        }
        if (*expect) {
            print_element(os, cond_expectation(a), format_or(ReportFormat::Text));
            return kOk;
        }
        if (*matrix) {
            if (cfg.window < 0) throw std::invalid_argument("window must be non-negative");
            TruncatedMatrix M = truncate_matrix(a, cfg.window);
            if (format_or(ReportFormat::Csv) == ReportFormat::Json) {
                nlohmann::json entries = nlohmann::json::array();
                for (const auto& e : M.entries)
                    entries.push_back({{"row", e.row}, {"col", e.col}, {"re", e.value.real()}, {"im", e.value.imag()}});
                os << nlohmann::json{{"window", M.window}, {"boundary_loss", M.boundary_loss}, {"entries", entries}}.dump(2)
                   << "\n";
            } else {
                os << "row,col,re,im\n";
                for (const auto& e : M.entries)
                    os << e.row << "," << e.col << "," << number(e.value.real(), 17) << "," << number(e.value.imag(), 17) << "\n";
            }
            if (M.boundary_loss) std::cerr << "note: entries mapping outside the window were dropped\n";
            return kOk;
        }
        if (*wold) {
            if (cfg.window < 0) throw std::invalid_argument("window must be non-negative");
            MonomialIsometry S0 = MonomialIsometry::from_element(parse_expr(s0));
            MonomialIsometry S1 = MonomialIsometry::from_element(parse_expr(s1));
            WoldReport rep = build_extension_unitary(S0, S1, cfg.window);
            bool ok = rep.u1_holds && rep.u2_holds && rep.permutation;
            if (format_or(ReportFormat::Text) == ReportFormat::Json) {
                nlohmann::json table = nlohmann::json::array();
                for (const auto& [n, v] : rep.table) table.push_back({{"n", n}, {"image", vector_json(v)}});
                os << nlohmann::json{{"window", rep.window},
                                     {"table", table},
                                     {"checks", {{"U1", rep.u1_holds}, {"U2", rep.u2_holds}, {"permutation", rep.permutation}}},
                                     {"pass", ok}}
                          .dump(2)
                   << "\n";
            } else {
                for (const auto& [n, v] : rep.table) os << "U e_" << n << " = " << vector_text(v) << "\n";
                auto verdict = [](bool x) { return x ? "pass" : "fail"; };
                os << "U S0 = S1: " << verdict(rep.u1_holds) << "\n";
                os << "S0 U = U^2 S0: " << verdict(rep.u2_holds) << "\n";
                os << "permutation: " << verdict(rep.permutation) << "\n";
            }
            return ok ? kOk : kFail;
        }
        if (*duality) {
            try {
                cfg.validate_duality();
            } catch (const Error& e) {
                return report_error(e, kUsage);
            }
            std::vector<DualityCase> cases = load_cases(cases_path);
            std::vector<TheoremReport> reports;
            bool ok = true;
            for (const auto& c : cases) {
                reports.push_back(run_case(c, cfg));
                ok = ok && reports.back().pass;
            }
            const int digits = 6;
            switch (format_or(ReportFormat::Json)) {
                case ReportFormat::Json: {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& r : reports) arr.push_back(to_json(r));
                    os << nlohmann::json{{"cases", arr}, {"pass", ok}}.dump(2) << "\n";
                    break;
                }
                case ReportFormat::Csv:
                    os << "index,d,c,residual,tolerance,g,window,pass\n";
                    for (std::size_t k = 0; k < reports.size(); ++k) {
                        const auto& r = reports[k];
                        os << k << "," << r.d.to_string() << "," << r.c.to_string() << "," << number(r.residual, digits)
                           << "," << number(r.tolerance, digits) << "," << r.g << "," << r.window << ","
                           << (r.pass ? "true" : "false") << "\n";
                    }
                    break;
                case ReportFormat::Text:
                    for (const auto& r : reports)
                        os << "d=" << r.d.to_string() << " c=" << r.c.to_string() << " residual=" << number(r.residual, digits)
                           << " tol=" << number(r.tolerance, digits) << " " << (r.pass ? "PASS" : "FAIL") << "\n";
                    break;
            }
            return ok ? kOk : kFail;
        }
    } catch (const ParseError& e) {
        return report_error(e, kUsage);
    } catch (const std::invalid_argument& e) {
        return report_error(e, kUsage);
    } catch (const std::exception& e) {
        return report_error(e, kPrecondition);
    }
    return kUsage;
}
