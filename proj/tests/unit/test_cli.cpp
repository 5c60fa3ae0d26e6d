#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../support.hpp"
#include "limsketch/cli.hpp"

using namespace limsketch;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "limsketch");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, ReflectIsoForcing) {
    const auto r = run({"reflect", "--sketch", "iso_forcing", "--presentation",
                        support::fixture("iso_forcing.json")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("verdict: converged at stage 2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("core: a:1 b:1"), std::string::npos);
}

TEST(Cli, ReflectKellyJson) {
    const auto r = run({"reflect", "--sketch", "binary_product", "--presentation",
                        support::fixture("binary_product.json"), "--engine", "kelly", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json_text(r.out, "stdout");
    EXPECT_EQ(j["engine"], "kelly");
    EXPECT_EQ(j["converged_at"], 1);
}

TEST(Cli, CheckReportsWitnessAndExitsNegative) {
    const auto r = run({"check", "--sketch", "binary_product", "--presentation",
                        support::fixture("binary_product_unhit.json")});
    EXPECT_EQ(r.code, kExitNegative);
    EXPECT_NE(r.out.find("unhit (u,u)"), std::string::npos) << r.out;
    const auto ok = run({"check", "--sketch", "binary_product", "--presentation",
                         support::fixture("binary_product_terminal.json")});
    EXPECT_EQ(ok.code, kExitOk);
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(run({"reflect", "--sketch", "iso_forcing", "--presentation",
                   support::fixture("malformed.json")}).code,
              kExitInput);
    EXPECT_EQ(run({"reflect", "--sketch", "nope", "--presentation",
                   support::fixture("iso_forcing.json")}).code,
              kExitInput);
    EXPECT_EQ(run({"reflect", "--sketch", "iso_forcing"}).code, kExitInput);
    EXPECT_EQ(run({"reflect", "--sketch", "iso_forcing", "--presentation",
                   support::fixture("iso_forcing.json"), "--mode", "eager"}).code,
              kExitInput);
}

TEST(Cli, BudgetExhaustion) {
    const auto r = run({"reflect", "--sketch", "binary_product", "--presentation",
                        support::fixture("binary_product.json"), "--budget", "1"});
    EXPECT_EQ(r.code, kExitBudget);
    EXPECT_NE(r.out.find("budget exhausted"), std::string::npos);
    const auto cap = run({"reflect", "--sketch", "binary_product", "--presentation",
                          support::fixture("binary_product.json"), "--mode", "faithful",
                          "--max-elements", "3"});
    EXPECT_EQ(cap.code, kExitBudget);
}

TEST(Cli, UniversalAndPrecondition) {
    const auto r = run({"universal", "--sketch", "iso_forcing", "--presentation",
                        support::fixture("iso_forcing.json"), "--model",
                        support::fixture("iso_forcing_model.json"), "--map",
                        support::fixture("iso_forcing_map.json")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("uniqueness: unique"), std::string::npos) << r.out;
    const auto bad = run({"universal", "--sketch", "iso_forcing", "--presentation",
                          support::fixture("iso_forcing.json"), "--model",
                          support::fixture("iso_forcing_not_model.json"), "--map",
                          support::fixture("iso_forcing_not_model_map.json")});
    EXPECT_EQ(bad.code, kExitPrecondition);
}

TEST(Cli, CompareSheaf) {
    const auto r = run({"compare", "--sketch", support::fixture("two_cover_sheaf_sketch.json"),
                        "--presentation", support::fixture("two_cover_sheaf.json")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("alpha: ok"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("iso elim/kelly: yes"), std::string::npos);
    EXPECT_NE(r.out.find("iso faithful/pruned: yes"), std::string::npos);
}

TEST(Cli, BuildersListAndEmit) {
    const auto r = run({"builders", "list"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("two_cover_sheaf"), std::string::npos);
    const auto e = run({"builders", "emit", "equalizer"});
    ASSERT_EQ(e.code, kExitOk);
    EXPECT_NO_THROW(sketch_from_json(parse_json_text(e.out, "emit")));
    EXPECT_EQ(run({"builders", "emit", "nope"}).code, kExitInput);
}

TEST(Cli, OutFileIsByteIdenticalAcrossRuns) {
    const auto dir = std::filesystem::temp_directory_path() / "limsketch_cli_test";
    std::filesystem::create_directories(dir);
    for (const auto& cmd : {"reflect", "compare"}) {
        std::string first;
        for (int i = 0; i < 2; ++i) {
            const auto path = dir / (std::string(cmd) + std::to_string(i) + ".json");
            const auto r = run({cmd, "--sketch", "binary_product", "--presentation",
                                support::fixture("binary_product.json"), "--out", path.string()});
            ASSERT_EQ(r.code, kExitOk) << r.err;
            const auto text = slurp(path);
            EXPECT_FALSE(text.empty());
            if (i == 0) first = text;
            else EXPECT_EQ(text, first) << cmd;
        }
    }
    std::filesystem::remove_all(dir);
}
