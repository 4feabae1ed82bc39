#include "superweyl/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace superweyl;

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

Json run_json(std::vector<std::string> args, int expected_code = cli::kOk) {
    args.push_back("--json");
    const auto r = run(args);
    EXPECT_EQ(r.code, expected_code) << r.out << r.err;
    return Json::parse(r.out);
}

}  // namespace

TEST(Cli, RootsJson) {
    const Json j = run_json({"roots", "gl:1,2"});
    std::size_t even = 0, odd = 0;
    for (const auto& r : j["roots"]) (r["parity"].get<int>() ? odd : even)++;
    EXPECT_EQ(even, 2u);
    EXPECT_EQ(odd, 4u);
    EXPECT_EQ(j["base"].size(), 2u);
}

TEST(Cli, RootReportRoundTrip) {
    const auto r = run({"roots", "osp:3,2", "--json"});
    const auto report = root_report_from_json(Json::parse(r.out));
    EXPECT_EQ(dump(to_json(report)), r.out);
}

TEST(Cli, CheckSystemDistinguishedFails) {
    const Json j = run_json({"check-system", "gl:1,2", "--system", "distinguished"});
    EXPECT_FALSE(j["holds"].get<bool>());
    const Json g = run_json({"check-system", "gl:1,2", "--system", "good"});
    EXPECT_TRUE(g["holds"].get<bool>());
    const auto table = run({"check-system", "gl:1,2"});
    EXPECT_EQ(table.code, 0);
    EXPECT_NE(table.out.find("condition fails"), std::string::npos);
}

TEST(Cli, Reflect) {
    const Json j = run_json({"reflect", "gl:2,2", "--at", "1"});
    EXPECT_EQ(j["steps"].size(), 1u);
    EXPECT_TRUE(j["condition_holds"].get<bool>());
    EXPECT_EQ(j["final"]["base"].size(), 3u);
    EXPECT_EQ(run({"reflect", "gl:2,2", "--at", "0"}).code, cli::kInvalid);
    EXPECT_EQ(run({"reflect", "gl:2,2", "--at", "x"}).code, cli::kInvalid);
}

TEST(Cli, WeylSl2) {
    const Json j = run_json({"weyl", "sl:2", "--psi", "0:1"});
    EXPECT_EQ(j["dimension"].get<std::size_t>(), 2u);
    const auto report = character_report_from_json(j);
    EXPECT_EQ(report.dimension, 2u);
    EXPECT_EQ(report.character.size(), 2u);
    EXPECT_EQ(dump(to_json(report)), dump(j));
    const std::vector<std::string> keys{"algebra",    "system", "coordinates", "psi",  "truncation",
                                        "trace",      "dimension", "character", "notes"};
    std::vector<std::string> got;
    for (const auto& [k, v] : j.items()) got.push_back(k);
    EXPECT_EQ(got, keys);
}

TEST(Cli, KacAndTable) {
    const Json j = run_json({"kac", "sl:1,2", "--system", "distinguished", "--weight", "1,0"});
    EXPECT_EQ(j["dimension"].get<std::size_t>(), 8u);
    const auto t = run({"kac", "sl:2", "--weight", "2"});
    EXPECT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("dimension"), std::string::npos);
    EXPECT_EQ(run({"kac", "sl:2", "--weight", "2", "--json", "--table"}).out.find('{'), std::string::npos);
}

TEST(Cli, WeightAliases) {
    EXPECT_EQ(run_json({"kac", "osp:3,2", "--weight", "nat"})["dimension"].get<std::size_t>(), 5u);
    EXPECT_EQ(run_json({"kac", "osp:3,2", "--weight", "zero"})["dimension"].get<std::size_t>(), 1u);
    EXPECT_EQ(run_json({"weyl", "osp:3,2", "--psi", "0"})["dimension"].get<std::size_t>(), 1u);
}

TEST(Cli, TensorCheck) {
    const Json j = run_json({"tensor-check", "sl:2", "--psi1", "0:1", "--psi2", "1:1"});
    EXPECT_TRUE(j["holds"].get<bool>());
    EXPECT_EQ(j["dimensions"][2].get<std::size_t>(), 4u);
    const Json refused = run_json({"tensor-check", "sl:2", "--psi1", "0:1", "--psi2", "0:1"}, cli::kInvalid);
    EXPECT_TRUE(refused.contains("error"));
}

TEST(Cli, Garland) {
    const Json j = run_json({"garland", "osp:1,2", "--psi", "0:nat"});
    EXPECT_TRUE(j["all_zero"].get<bool>());
    EXPECT_EQ(j["checks"].size(), 4u * 3u);
}

TEST(Cli, Selftest) {
    const auto r = run({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    const Json j = run_json({"selftest"});
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"kac", "F4", "--weight", "0"}).code, cli::kUnsupported);
    EXPECT_EQ(run({"weyl", "gl:1,2", "--system", "distinguished", "--psi", "0"}).code, cli::kUnsupported);
    EXPECT_EQ(run({"weyl", "gl:1,1", "--psi", "0"}).code, cli::kUnsupported);
    EXPECT_EQ(run({"kac", "sl:2", "--weight", "-1"}).code, cli::kInvalid);
    EXPECT_EQ(run({"kac", "sl:2", "--weight", "1/2"}).code, cli::kInvalid);
    EXPECT_EQ(run({"roots", "nonsense"}).code, cli::kInvalid);
    EXPECT_EQ(run({"roots", "gl:1,2", "--system", "sideways"}).code, cli::kInvalid);
    EXPECT_EQ(run({"weyl", "sl:2", "--psi", "0:1;0:2"}).code, cli::kInvalid);
    EXPECT_EQ(run({"weyl", "sl:2", "--psi", "0:1", "--trunc", "0", "--no-adaptive"}).code, cli::kInvalid);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kInvalid);
    EXPECT_EQ(run({}).code, cli::kInvalid);
    EXPECT_EQ(run({"weyl", "sl:2"}).code, cli::kInvalid);
}

TEST(Cli, ErrorsAreOneLine) {
    const auto text = run({"kac", "sl:2", "--weight", "-1"});
    EXPECT_TRUE(text.out.empty());
    EXPECT_EQ(text.err.rfind("error: ", 0), 0u);
    EXPECT_EQ(std::count(text.err.begin(), text.err.end(), '\n'), 1);

    const Json j = run_json({"kac", "F4", "--weight", "0"}, cli::kUnsupported);
    ASSERT_TRUE(j.contains("error"));
    EXPECT_EQ(j.size(), 1u);
    EXPECT_EQ(j["error"].get<std::string>().find('\n'), std::string::npos);

    const Json usage = run_json({"weyl", "sl:2"}, cli::kInvalid);
    EXPECT_EQ(usage["error"].get<std::string>().rfind("usage: ", 0), 0u);
}

TEST(Cli, DimensionCapExitsUnsupported) {
    ::setenv("SUPERWEYL_MAX_DIM", "3", 1);
    const auto r = run({"weyl", "sl:2", "--psi", "0:2"});
    ::unsetenv("SUPERWEYL_MAX_DIM");
    EXPECT_EQ(r.code, cli::kUnsupported);
}

TEST(Cli, Deterministic) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"weyl", "sl:1,2", "--psi", "0:nat;1:nat", "--json"},
          std::vector<std::string>{"roots", "D21a:alpha=2/3", "--json"},
          std::vector<std::string>{"tensor-check", "osp:1,2", "--psi1", "0:nat", "--psi2", "1:nat", "--json"}}) {
        const auto a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, HelpDocumentsGrammar) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* needle : {"gl:", "osp:", "D21a", "reflect:", "nat", "SUPERWEYL_MAX_DIM"})
        EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
}
