#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace quartet;
using G = GaussianRational;
namespace fs = std::filesystem;

namespace {

const std::string kData = QUARTET_TEST_DATA;

std::string write_temp(const std::string &name, const std::string &text) {
    const fs::path p = fs::temp_directory_path() / ("quartet_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(cli::Command cmd, std::optional<std::string> input, cli::Mode mode = cli::Mode::Float,
               cli::Output output = cli::Output::Json, double tol = 1e-9) {
    cli::RunConfig cfg;
    cfg.command = cmd;
    cfg.input_path = std::move(input);
    cfg.mode = mode;
    cfg.output = output;
    cfg.tolerance = tol;
    cfg.trials = 20;
    std::ostringstream out, err;
    const int code = cli::run(cfg, out, err);
    return {code, out.str(), err.str()};
}

std::string random_state_file() {
    return write_temp("random.json", dump_json(state_to_json(random_state(3, true))));
}

}  // namespace

TEST(StateParsing, RejectsMalformedDocuments) {
    EXPECT_THROW(parse_state<Complex>(std::string("not json")), StateFormatError);
    EXPECT_THROW(parse_state<Complex>(std::string("[1, 2]")), StateFormatError);
    EXPECT_THROW(parse_state<Complex>(std::string(R"({"amplitudes": []})")), StateFormatError);
    EXPECT_THROW(parse_state<Complex>(std::string(R"({"n": 5, "amplitudes": []})")), StateFormatError);
    EXPECT_THROW(parse_state<Complex>(std::string(R"({"n": 4, "amplitudes": [[1, 0]]})")), StateFormatError);
    EXPECT_THROW(parse_state<Complex>(std::string(R"({"n": 3, "amplitudes": [[1, 0, 0], [0, 0], [0, 0], [0, 0],
                                                     [0, 0], [0, 0], [0, 0], [0, 0]]})")),
                 StateFormatError);
    EXPECT_THROW(parse_state<Complex>(std::string(R"({"n": 3, "amplitudes": [[true, 0], [0, 0], [0, 0], [0, 0],
                                                     [0, 0], [0, 0], [0, 0], [0, 0]]})")),
                 StateFormatError);
    EXPECT_THROW(read_state_file<Complex>(kData + "/does-not-exist.json"), StateFormatError);
}

TEST(StateParsing, ReadsBothSizes) {
    const auto four = read_state_file<Complex>(kData + "/g1234.json");
    ASSERT_TRUE(std::holds_alternative<FourQubitState<Complex>>(four));
    EXPECT_EQ(std::get<0>(four)[0], Complex(2.5));
    const auto three = read_state_file<G>(kData + "/ghz3.json");
    ASSERT_TRUE(std::holds_alternative<ThreeQubitState<G>>(three));
    EXPECT_EQ(std::get<1>(three)[7], G(1));
}

TEST(StateParsing, ExactComponents) {
    std::string doc = R"({"n": 3, "amplitudes": [["1/3", "-2/7"], ["0.25", 0], [0.1, 3], [0, 0],
                                                 [0, 0], [0, 0], [0, 0], [0, 0]]})";
    const auto z = std::get<1>(parse_state<G>(doc));
    EXPECT_EQ(z[0], G(mpq_class(1, 3), mpq_class(-2, 7)));
    EXPECT_EQ(z[1], G(mpq_class(1, 4)));
    EXPECT_EQ(z[2], G(mpq_class(1, 10), mpq_class(3)));
    const auto f = std::get<1>(parse_state<Complex>(doc));
    EXPECT_NEAR(std::abs(f[0] - Complex(1.0 / 3, -2.0 / 7)), 0, 1e-16);
}

TEST(StateParsing, RoundTrip) {
    const auto z = random_rational_state(2);
    EXPECT_TRUE(std::get<0>(parse_state<G>(state_to_json(z))).amplitudes() == z.amplitudes());
    const auto f = random_state(2, false);
    EXPECT_TRUE(std::get<0>(parse_state<Complex>(dump_json(state_to_json(f)))).amplitudes() == f.amplitudes());
}

TEST(Serialization, NumbersAndLayout) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(24.0), "24");
    const Json j{{"a", Json::array({1.5, 2})}, {"b", Json{{"c", "x"}}}, {"d", Json::array({Json::array({1, 2})})}};
    EXPECT_EQ(dump_json(j), "{\n  \"a\": [1.5, 2],\n  \"b\": {\n    \"c\": \"x\"\n  },\n  \"d\": [\n    [1, 2]\n  ]\n}");
}

TEST(Cli, InvariantsFloatAndExact) {
    const auto f = run_cli(cli::Command::Invariants, kData + "/g1234.json");
    EXPECT_EQ(f.code, cli::kExitOk);
    EXPECT_NE(f.out.find("\"command\": \"invariants\""), std::string::npos);
    EXPECT_NE(f.out.find("\"I4\": [24, 0]"), std::string::npos);
    const auto e = run_cli(cli::Command::Invariants, kData + "/g1234.json", cli::Mode::Exact);
    EXPECT_EQ(e.code, cli::kExitOk);
    EXPECT_NE(e.out.find("\"I1\": [\"15/2\", \"0\"]"), std::string::npos);
    EXPECT_NE(e.out.find("\"U\": [\"129\", \"0\"]"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
    const auto file = random_state_file();
    for (auto cmd : {cli::Command::Invariants, cli::Command::Hyperdet, cli::Command::Canonical,
                     cli::Command::Tetrahedron}) {
        const auto a = run_cli(cmd, file), b = run_cli(cmd, file);
        EXPECT_EQ(a.code, cli::kExitOk) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, HyperdetExact) {
    const auto r = run_cli(cli::Command::Hyperdet, kData + "/g1234.json", cli::Mode::Exact);
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("\"consensus\": [\"89302500\", \"0\"]"), std::string::npos);
}

TEST(Cli, CanonicalExactRecoversParameters) {
    const auto r = run_cli(cli::Command::Canonical, kData + "/g1234.json", cli::Mode::Exact);
    EXPECT_EQ(r.code, cli::kExitOk);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["exact"]["multiplicity_pattern"], Json::array({1, 1, 1, 1}));
    ASSERT_TRUE(j["exact"]["parameters"].is_object());
    EXPECT_EQ(j["recovery"]["candidates"].size(), 1u);
}

TEST(Cli, TetrahedronAndClassify) {
    const auto t = run_cli(cli::Command::Tetrahedron, kData + "/g1234.json");
    EXPECT_EQ(Json::parse(t.out)["tetrahedron"]["point_rank"], 4);
    const auto w = run_cli(cli::Command::Classify3, kData + "/w3.json", cli::Mode::Exact);
    EXPECT_EQ(Json::parse(w.out)["class"], "Tangent");
    const auto ghz = run_cli(cli::Command::Classify3, kData + "/ghz3.json");
    EXPECT_EQ(Json::parse(ghz.out)["class"], "TwoPoints");
}

TEST(Cli, TableOutput) {
    const auto r = run_cli(cli::Command::Invariants, kData + "/g1234.json", cli::Mode::Exact, cli::Output::Table);
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("command"), std::string::npos);
    EXPECT_NE(r.out.find("invariants.I4"), std::string::npos);
    EXPECT_NE(r.out.find("24 0i"), std::string::npos);
}

TEST(Cli, VerifyExact) {
    const auto r = run_cli(cli::Command::Verify, std::nullopt, cli::Mode::Exact);
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["all_passed"].get<bool>());
    EXPECT_FALSE(j["notes"][0]["holds"].get<bool>());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli(cli::Command::Invariants, std::nullopt).code, cli::kExitUsage);
    EXPECT_EQ(run_cli(cli::Command::Invariants, kData + "/g1234.json", cli::Mode::Float, cli::Output::Json, 0).code,
              cli::kExitUsage);
    EXPECT_EQ(run_cli(cli::Command::Invariants, kData + "/missing.json").code, cli::kExitInput);
    EXPECT_EQ(run_cli(cli::Command::Classify3, kData + "/g1234.json").code, cli::kExitInput);
    EXPECT_EQ(run_cli(cli::Command::Invariants, kData + "/ghz3.json").code, cli::kExitInput);
    EXPECT_EQ(run_cli(cli::Command::Invariants, write_temp("bad.json", "{")).code, cli::kExitInput);
    cli::RunConfig cfg;
    cfg.command = cli::Command::Verify;
    cfg.trials = 0;
    std::ostringstream o, e;
    EXPECT_EQ(cli::run(cfg, o, e), cli::kExitUsage);
}

TEST(Cli, FailedCheckStillPrintsReport) {
    // A tolerance far below rounding error makes some relation fail.
    const auto r = run_cli(cli::Command::Invariants, random_state_file(), cli::Mode::Float, cli::Output::Json, 1e-300);
    EXPECT_EQ(r.code, cli::kExitCheckFailed);
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j.contains("failed_relation"));
    EXPECT_NE(r.err.find("check failed"), std::string::npos);
}
