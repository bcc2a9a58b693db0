#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pwlab/experiments.hpp"

using namespace pwlab;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("pwlab_cli_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

cli::RunConfig quietSuite(std::vector<std::string> tags) {
    cli::RunConfig c;
    c.emit.clear();
    c.experiments = std::move(tags);
    return c;
}

// Runs the tool with a config file and returns its exit status.
int runTool(const std::filesystem::path& dir, const json& config) {
    const auto cfgPath = dir / "config.json";
    std::ofstream(cfgPath) << config.dump();
    const std::string cmd = std::string("\"") + PWLAB_TOOL_PATH + "\" --config \"" + cfgPath.string() + "\" > \"" +
                            (dir / "stdout.txt").string() + "\" 2> \"" + (dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(cli::configFromJson(json{{"experimnet", "suite"}}), ParameterError);
    EXPECT_THROW(cli::configFromJson(json::array()), ParameterError);
    EXPECT_THROW(cli::validate(cli::configFromJson(json{{"p", 0.5}})), ParameterError);
    EXPECT_THROW(cli::configFromJson(json{{"lambda", "one"}}), ParameterError);
    cli::RunConfig c;
    c.experiment = "bogus";
    EXPECT_THROW(cli::validate(c), ParameterError);
    c = {};
    c.method = "bogus";
    EXPECT_THROW(cli::validate(c), ParameterError);
    c = {};
    c.dim = 2;
    c.grid = GridSpec::make(1, 10.0, 256);
    EXPECT_THROW(cli::validate(c), ParameterError);
    c = {};
    c.functionFile = "/nonexistent/input";
    EXPECT_THROW(cli::validate(c), ParameterError);
}

TEST(Config, GridImpliesDimension) {
    const auto c = cli::configFromJson(json::parse(R"({"grid": {"dim": 2, "half_width": 50, "points": 256},
                                                       "p": "inf", "sublevel": {"R": 2, "resolution": 11}})"));
    EXPECT_EQ(c.dim, 2);
    EXPECT_TRUE(std::isinf(c.p));
    EXPECT_EQ(c.sublevelR, 2.0);
    EXPECT_EQ(c.resolution, 11);
    EXPECT_NO_THROW(cli::validate(c));
}

TEST(Report, CanonicalDumpIsSortedAndExact) {
    const json j{{"b", 0.1}, {"a", {1, 2}}, {"c", std::numeric_limits<double>::quiet_NaN()}};
    const std::string s = report::canonicalDump(j);
    EXPECT_LT(s.find("\"a\""), s.find("\"b\""));
    EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
    EXPECT_NE(s.find("\"nan\""), std::string::npos);
    EXPECT_TRUE(report::holds(1.0, report::Relation::AtMost, 1.0));
    EXPECT_FALSE(report::holds(1.0, report::Relation::Below, 1.0));
    EXPECT_FALSE(report::holds(std::numeric_limits<double>::quiet_NaN(), report::Relation::AtMost, 1.0));
}

TEST(Suite, EmptyListGivesEmptyPassingReport) {
    const cli::Report r = cli::cmdSuite(quietSuite({}));
    EXPECT_TRUE(r.checks.empty());
    EXPECT_TRUE(r.allPass());
    EXPECT_TRUE(r.toJson().at("all_pass").get<bool>());
    EXPECT_THROW(cli::cmdSuite(quietSuite({"nope"})), ParameterError);
}

TEST(Suite, ToleranceOverrideCanFailACheck) {
    cli::RunConfig c = quietSuite({"young"});
    c.tolerances["young.closed_form_error"] = -1.0;
    const cli::Report r = cli::cmdSuite(c);
    ASSERT_EQ(r.failures().size(), 1u);
    EXPECT_EQ(r.failures()[0], "young.closed_form_error");
}

TEST(Suite, ReportsAreDeterministicAcrossRunsAndThreads) {
    cli::RunConfig c = quietSuite({"th22AD", "rem2", "young"});
    c.threads = 1;
    const std::string a = report::canonicalDump(cli::cmdSuite(c).toJson());
    const std::string b = report::canonicalDump(cli::cmdSuite(c).toJson());
    c.threads = 3;
    const std::string t = report::canonicalDump(cli::cmdSuite(c).toJson());
    setThreadCount(1);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, t);
    EXPECT_EQ(a.find("threads"), std::string::npos);
}

TEST(Commands, EstimateAndWeightsCheck) {
    cli::RunConfig c;
    c.emit.clear();
    c.experiment = "estimate";
    c.weight = "log";
    c.lambda = 1.0;
    const cli::Report r = cli::run(c);
    ASSERT_EQ(r.estimates.size(), 1u);
    EXPECT_NEAR(r.estimates[0].at("ratioLimit").get<double>(), 1.0, 0.03);
    EXPECT_TRUE(r.allPass());
    c.experiment = "weights-check";
    c.weight = "power:0.5";
    EXPECT_TRUE(cli::run(c).allPass());
    c.weight = "power:1.5";
    EXPECT_THROW(cli::run(c), DomainError);
}

TEST(Commands, TransformWritesFieldAndDescriptor) {
    const auto dir = scratch("transform");
    cli::RunConfig c;
    c.experiment = "transform";
    c.transform = "ambiguity";
    c.function = "hermite:1";
    c.grid = GridSpec::make(1, 12.0, 256);
    c.outDir = dir.string();
    c.emit = {"json"};
    const cli::Report r = cli::run(c);
    EXPECT_TRUE(std::filesystem::exists(dir / "transform_ambiguity.bin"));
    EXPECT_EQ(std::filesystem::file_size(dir / "transform_ambiguity.bin"), 256u * 1024u * 8u);
    EXPECT_EQ(r.notes.at("transform.field").at("kind").get<std::string>(), "ambiguity");
    std::filesystem::remove_all(dir);
}

TEST(Tool, ExitCodes) {
    const auto dir = scratch("exit");
    const json ok{{"experiments", {"th22AD"}}, {"out", dir.string()}, {"emit", {"json"}}};
    EXPECT_EQ(runTool(dir, ok), 0);
    const json rep = json::parse(slurp(dir / "report.json"));
    EXPECT_TRUE(rep.at("all_pass").get<bool>());
    EXPECT_TRUE(std::filesystem::exists(dir / "timings.json"));

    json failing = ok;
    failing["tolerances"] = {{"th22AD.mismatches", -1.0}};
    EXPECT_EQ(runTool(dir, failing), 1);

    EXPECT_EQ(runTool(dir, json{{"not_a_key", 1}}), 2);
    EXPECT_NE(slurp(dir / "stderr.txt").find("\"config\""), std::string::npos);

    const json guard{{"experiment", "estimate"},
                     {"function", "gaussian"},
                     {"grid", {{"dim", 1}, {"half_width", 3.0}, {"points", 256}}},
                     {"emit", json::array()}};
    EXPECT_EQ(runTool(dir, guard), 3);
    EXPECT_NE(slurp(dir / "stderr.txt").find("boundary-decay"), std::string::npos);
    std::filesystem::remove_all(dir);
}
