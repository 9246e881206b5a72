#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <random>
#include <string>

#include "json.hpp"
#include "qadic/cli/cases.hpp"
#include "qadic/cli/parser.hpp"
#include "support/random_elements.hpp"

using namespace qadic;
using E = ExactElement;
using qadic::testing::random_element;

namespace {

struct CliRun {
    int status;
    std::string output;
};

// Runs the built binary with stderr folded into the captured output.
CliRun run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + QADIC_CLI_PATH + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string data_file(const std::string& name) { return std::string(QADIC_DATA_DIR) + "/" + name; }

std::size_t parse_offset(std::string_view src) {
    try {
        parse_expr(src);
    } catch (const ParseError& e) {
        return e.offset();
    }
    ADD_FAILURE() << "no ParseError for '" << src << "'";
    return std::string_view::npos;
}

}  // namespace

TEST(Parser, RelationExamples) {
    EXPECT_TRUE(equals(parse_expr("s u"), parse_expr("u^2 s")));
    EXPECT_TRUE(equals(parse_expr("s*u"), parse_expr("u * u * s")));
    EXPECT_TRUE(equals(parse_expr("s s^* + u s s^* u^*"), E::identity()));
    EXPECT_TRUE(parse_expr("s^* u s").is_zero());
    EXPECT_TRUE(equals(parse_expr("s^* s"), E::identity()));
    EXPECT_TRUE(equals(parse_expr("u^-1"), parse_expr("u^*")));
    EXPECT_TRUE(equals(parse_expr("u^-3"), E::u(-3)));
    EXPECT_TRUE(equals(parse_expr("(s u)^*"), parse_expr("u^* s^*")));
    EXPECT_TRUE(equals(parse_expr("(u + s)^2"), parse_expr("u u + u s + s u + s s")));
    EXPECT_TRUE(parse_expr("0").is_zero());
    EXPECT_TRUE(parse_expr("u - u").is_zero());
}

TEST(Parser, Scalars) {
    EXPECT_TRUE(equals(parse_expr("(1/2) s"), GaussianRational(Rational(1, 2)) * E::s()));
    EXPECT_TRUE(equals(parse_expr("(3 i)"), E::scalar(GaussianRational(Rational(0), Rational(3)))));
    EXPECT_TRUE(equals(parse_expr("(1 - 2/3 i) u"), GaussianRational(Rational(1), Rational(-2, 3)) * E::u()));
    EXPECT_TRUE(equals(parse_expr("(0.25) s^*"), GaussianRational(Rational(1, 4)) * E::s_star()));
    EXPECT_TRUE(equals(parse_expr("(1.5e-1)"), E::scalar(GaussianRational(Rational(3, 20)))));
    EXPECT_TRUE(equals(parse_expr("-(2) u"), GaussianRational(-2) * E::u()));
    EXPECT_THROW(parse_expr("(1 + 2)"), ParseError);
}

TEST(Parser, ErrorOffsets) {
    EXPECT_EQ(parse_offset("s^-1"), 2u);
    EXPECT_EQ(parse_offset("u +"), 3u);
    EXPECT_EQ(parse_offset("u x"), 2u);
    EXPECT_EQ(parse_offset("(u s"), 4u);
    EXPECT_EQ(parse_offset(""), 0u);
    EXPECT_EQ(parse_offset("s^"), 2u);
    EXPECT_EQ(parse_offset("(1/0)"), 4u);
    EXPECT_EQ(parse_offset("s^61"), 4u);
    EXPECT_THROW(parse_expr("(s^*)^-1"), ParseError);
}

TEST(Parser, RoundTripsCanonicalText) {
    std::mt19937_64 rng(20261016);
    for (int k = 0; k < 1000; ++k) {
        E e = random_element(rng, 4, 6);
        if (k % 3 == 1) e = GaussianRational(Rational(1 + rng() % 7, 1 + rng() % 5)) * e;
        if (k % 3 == 2) e = GaussianRational(Rational(0), Rational(static_cast<long long>(rng() % 9) - 4, 3)) * e + E::u();
        const std::string text = to_text(e);
        E back = parse_expr(text);
        ASSERT_TRUE(equals(back, e)) << text << " -> " << to_text(back);
        ASSERT_EQ(to_text(back), text);
    }
}

TEST(Cases, DefaultFileLoads) {
    std::vector<DualityCase> cases = load_cases(data_file("default_cases.json"));
    ASSERT_EQ(cases.size(), 5u);
    EXPECT_EQ(cases[2].d, DyadicRational::parse("1/2"));
    EXPECT_EQ(cases[2].c, PowerOfTwo(1));
    EXPECT_EQ(cases[3].c, PowerOfTwo(-1));
}

TEST(Cases, RejectsMalformedInput) {
    EXPECT_THROW(cases_from_json(nlohmann::json::object()), Error);
    nlohmann::json bad = nlohmann::json::parse(R"([{"f": {"kind": "wavelet"}, "d": "0", "c": "2^0", "xi": {"kind": "gaussian"}}])");
    EXPECT_THROW(cases_from_json(bad), Error);
    EXPECT_THROW(load_cases(data_file("no_such_file.json")), Error);
}

TEST(Cases, ConfigValidation) {
    RunConfig cfg;
    EXPECT_NO_THROW(cfg.validate_duality());
    cfg.window = 12;
    EXPECT_THROW(cfg.validate_duality(), Error);
    cfg.window = 16;
    cfg.tolerance = 0.0;
    EXPECT_THROW(cfg.validate_duality(), Error);
    cfg.tolerance.reset();
    cfg.grid_exp = 13;
    EXPECT_THROW(cfg.validate_duality(), Error);
}

TEST(Cases, RunCaseMeetsTolerance) {
    RunConfig cfg;
    for (const auto& c : load_cases(data_file("default_cases.json"))) {
        TheoremReport r = run_case(c, cfg);
        EXPECT_TRUE(r.pass) << r.d.to_string() << " " << r.c.to_string() << " residual " << r.residual;
        EXPECT_EQ(r.tolerance, theorem_tolerance(c.c));
    }
}

TEST(Binary, EqExitCodes) {
    EXPECT_EQ(run_cli("eq 's u' 'u^2 s'").status, 0);
    EXPECT_EQ(run_cli("eq 's' 'u s'").status, 1);
}

TEST(Binary, NormalizePrintsCanonicalForm) {
    CliRun r = run_cli("normalize 's s^* + u s s^* u^*'");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.output, "1\n");
    r = run_cli("normalize 's^* u s'");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.output, "0\n");
}

TEST(Binary, ParseErrorIsStructured) {
    CliRun r = run_cli("normalize 's^-1'");
    EXPECT_EQ(r.status, 2);
    nlohmann::json j = nlohmann::json::parse(r.output);
    EXPECT_EQ(j["error"]["type"], "ParseError");
    EXPECT_EQ(j["error"]["offset"], 2);
    EXPECT_EQ(run_cli("normalize ''").status, 2);
}

TEST(Binary, UsageErrors) {
    EXPECT_EQ(run_cli("").status, 2);
    EXPECT_EQ(run_cli("frobnicate").status, 2);
    EXPECT_EQ(run_cli("-g 20 duality --cases " + data_file("default_cases.json")).status, 2);
    EXPECT_EQ(run_cli("-N 12 duality --cases " + data_file("default_cases.json")).status, 2);
}

TEST(Binary, ApplyAndExpect) {
    CliRun r = run_cli("apply 'u^2 s' --basis 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.output, "e_8\n");
    r = run_cli("expect 's^* u s + s s^*'");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(equals(parse_expr(r.output.substr(0, r.output.size() - 1)), parse_expr("s s^*")));
}

TEST(Binary, MatrixCsv) {
    CliRun r = run_cli("-N 2 matrix u");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.output.find("row,col,re,im"), std::string::npos);
    EXPECT_NE(r.output.find("1,0,1,0"), std::string::npos);
}

TEST(Binary, WoldExitCodes) {
    EXPECT_EQ(run_cli("-N 4 wold --s0 s --s1 'u s'").status, 0);
    CliRun r = run_cli("-N 4 wold --s0 s --s1 'u^2 s'");
    EXPECT_EQ(r.status, 3);
    EXPECT_NE(r.output.find("\"error\""), std::string::npos);
}

TEST(Binary, DualityDefaultCasesPass) {
    CliRun r = run_cli("--format json duality --cases " + data_file("default_cases.json"));
    ASSERT_EQ(r.status, 0) << r.output;
    nlohmann::json j = nlohmann::json::parse(r.output);
    EXPECT_TRUE(j["pass"].get<bool>());
    ASSERT_EQ(j["cases"].size(), 5u);
    for (const auto& c : j["cases"]) {
        EXPECT_LE(c["residual"].get<double>(), c["tolerances"]["residual"].get<double>());
        EXPECT_EQ(c["grid"]["g"], 6);
    }
}

TEST(Binary, DualityToleranceOverrideFails) {
    EXPECT_EQ(run_cli("--tol 1e-300 duality --cases " + data_file("default_cases.json")).status, 1);
}

TEST(Binary, MissingCaseFileIsPrecondition) {
    EXPECT_EQ(run_cli("duality --cases " + data_file("no_such_file.json")).status, 3);
}
