#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "polyadic/cli.hpp"

namespace polyadic::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

TEST(ShapeTableCommand, SingleCell) {
    const auto r = run_cli({"shape-table", "--a-max", "1", "--b-max", "2", "--format", "csv"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, "a,b,m,n,I,J,note\n1,2,3,2,1,0,\n");
}

TEST(ShapeTableCommand, EmptyCellsPerFormat) {
    const auto csv = run_cli({"shape-table", "--a-max", "2", "--b-max", "4", "--format", "csv"});
    EXPECT_NE(csv.out.find("\n2,4,,,,,\n"), std::string::npos) << csv.out;

    const auto json = json_of(run_cli({"shape-table", "--a-max", "2", "--b-max", "4", "--format", "json"}));
    bool found = false;
    for (const auto& cell : json["cells"]) {
        if (cell["a"] == 2 && cell["b"] == 4) {
            EXPECT_TRUE(cell["shape"].is_null());
            found = true;
        }
    }
    EXPECT_TRUE(found);

    const auto text = run_cli({"shape-table", "--a-max", "2", "--b-max", "4"});
    EXPECT_NE(text.out.find("—"), std::string::npos);
}

TEST(ShapeTableCommand, LargeInvariantsStayExact) {
    const auto r = run_cli({"shape-table", "--a-max", "5", "--b-max", "7", "--format", "csv"});
    EXPECT_NE(r.out.find("5,7,8,7,5,11160,"), std::string::npos) << r.out;
}

TEST(ShapeTableCommand, FlagsKnownErratum) {
    const auto json = json_of(run_cli({"shape-table", "--a-max", "9", "--b-max", "10", "--format", "json"}));
    for (const auto& cell : json["cells"]) {
        if (cell["a"] == 5 && cell["b"] == 7) {
            EXPECT_EQ(cell["shape"]["I"], "5");
            EXPECT_TRUE(cell["note"].is_string());
        } else {
            EXPECT_TRUE(cell["note"].is_null());
        }
    }
}

TEST(ShapeTableCommand, BadRanges) {
    EXPECT_EQ(run_cli({"shape-table", "--a-max", "0", "--b-max", "10"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"shape-table", "--a-max", "3", "--b-max", "1"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"shape-table", "--a-max", "x", "--b-max", "3"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"shape-table", "--a-max", "3", "--b-max", "5", "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(run_cli({}).code, kExitUsage);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
}

TEST(ShapeTableCommand, CsvJsonAndTextAgree) {
    const std::vector<std::string> base{"shape-table", "--a-max", "6", "--b-max", "12"};
    auto with = [&](const char* fmt) {
        auto args = base;
        args.insert(args.end(), {"--format", fmt});
        return run_cli(args).out;
    };
    const auto json = nlohmann::json::parse(with("json"));
    std::istringstream csv(with("csv"));
    const std::string text = with("text");
    std::string line;
    std::getline(csv, line);
    std::size_t i = 0;
    for (; std::getline(csv, line); ++i) {
        const auto& cell = json["cells"][i];
        std::string expected = std::to_string(cell["a"].get<int>()) + "," + std::to_string(cell["b"].get<int>()) + ",";
        if (cell["shape"].is_null()) {
            expected += ",,,";
        } else {
            const auto cell_text = std::to_string(cell["shape"]["m"].get<int>()) + "," +
                                   std::to_string(cell["shape"]["n"].get<int>()) + "," +
                                   cell["shape"]["I"].get<std::string>() + "," +
                                   cell["shape"]["J"].get<std::string>();
            expected += cell_text;
            EXPECT_NE(text.find(cell_text), std::string::npos) << cell_text;
        }
        EXPECT_EQ(line.substr(0, expected.size()), expected);
    }
    EXPECT_EQ(i, json["cells"].size());
}

TEST(ShapeTableCommand, ByteIdenticalAcrossRuns) {
    for (const char* fmt : {"csv", "json", "text"}) {
        const std::vector<std::string> args{"shape-table", "--a-max", "15", "--b-max", "20", "--format", fmt};
        EXPECT_EQ(run_cli(args).out, run_cli(args).out);
    }
}

TEST(ClassInfoCommand, WorkedExample) {
    const auto r = run_cli({"class-info", "3", "4", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk);
    const auto j = json_of(r);
    EXPECT_EQ(j["shape"]["m"], 5);
    EXPECT_EQ(j["shape"]["n"], 3);
    EXPECT_EQ(j["shape"]["I"], "3");
    EXPECT_EQ(j["shape"]["J"], "6");
    EXPECT_EQ(j["identity"], "-1");
    EXPECT_EQ(j["zeroless"], true);
    EXPECT_EQ(j["querelement_factor"], "-3");

    const auto text = run_cli({"class-info", "3", "4"});
    EXPECT_NE(text.out.find("m=5 n=3 I=3 J=6"), std::string::npos);
    EXPECT_NE(text.out.find("7->-21"), std::string::npos);
    EXPECT_NE(text.out.find("zeroless: true"), std::string::npos);
}

TEST(ClassInfoCommand, BinaryIntegers) {
    const auto r = run_cli({"class-info", "0", "1"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("Z_(2,2)(0,1)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("zeroless: false"), std::string::npos);
}

TEST(ClassInfoCommand, NoClosedMultiplication) {
    const auto r = run_cli({"class-info", "2", "4"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("no n exists <= cap"), std::string::npos) << r.out;
    EXPECT_TRUE(json_of(run_cli({"class-info", "2", "4", "--format", "json"}))["shape"].is_null());
}

TEST(ClassInfoCommand, InvalidClass) {
    EXPECT_EQ(run_cli({"class-info", "4", "4"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"class-info", "1", "0"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"class-info", "x", "4"}).code, kExitUsage);
}

TEST(PadicCommand, Product) {
    const auto j = json_of(run_cli({"padic", "7*6", "--p", "5", "--n", "3", "--format", "json"}));
    EXPECT_EQ(j["digits"], (nlohmann::json{2, 3, 1}));
    EXPECT_EQ(j["positional"], ".132 (5-adic)");
    EXPECT_EQ(j["partial_sums"], (nlohmann::json{"2", "17", "42"}));
}

TEST(PadicCommand, ZeroAndNegative) {
    const auto zero = run_cli({"padic", "0", "--p", "2", "--n", "4"});
    EXPECT_EQ(zero.code, kExitOk);
    EXPECT_NE(zero.out.find("digits (little-endian): 0,0,0,0"), std::string::npos);
    EXPECT_NE(zero.out.find("valuation: ≥4"), std::string::npos);

    const auto minus_one = run_cli({"padic", "-1", "--p", "2", "--n", "4"});
    EXPECT_EQ(minus_one.code, kExitOk) << minus_one.err;
    EXPECT_NE(minus_one.out.find(".1111 (2-adic)"), std::string::npos) << minus_one.out;
}

TEST(PadicCommand, Errors) {
    EXPECT_EQ(run_cli({"padic", "7*", "--p", "5", "--n", "3"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"padic", "(1+2", "--p", "5", "--n", "3"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"padic", "7", "--p", "6", "--n", "3"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"padic", "7", "--p", "5", "--n", "0"}).code, kExitUsage);
}

TEST(ExpressionEvaluation, MatchesIntegerArithmetic) {
    const std::vector<std::pair<std::string, long long>> cases{
        {"1+2*3", 7}, {"(1+2)*3", 9}, {"-3*-3", 9}, {"10 - 4 - 3", 3}, {"-(2+3)*4", -20}, {"2*3*4-1", 23}};
    for (const auto& [expr, value] : cases) {
        EXPECT_EQ(evaluate_expression(expr, 7, 8), PAdicInt::from_integer(7, 8, value)) << expr;
    }
}

TEST(LiftCommand, Examples) {
    const auto j = json_of(run_cli({"lift", "--p", "2", "--m", "5", "--n", "3", "--v", "2", "--N", "4",
                                    "--format", "json"}));
    EXPECT_EQ(j, nlohmann::json::parse(R"({"p":2,"m":5,"n":3,"v":2,"modulus":4,"admissible":[0,1,3],"free_from":2})"));
    // Key order is part of the schema.
    EXPECT_EQ(lift_solution_json(lift_digits(2, 5, 3, 2, 4)).dump(),
              R"({"p":2,"m":5,"n":3,"v":2,"modulus":4,"admissible":[0,1,3],"free_from":2})");

    const auto j2 = json_of(run_cli({"lift", "--p", "2", "--m", "2", "--n", "2", "--v", "1", "--N", "3",
                                     "--format", "json"}));
    EXPECT_EQ(j2["admissible"], (nlohmann::json{0}));
}

TEST(LiftCommand, TextOutput) {
    const auto r = run_cli({"lift", "--p", "2", "--m", "5", "--n", "3", "--v", "2"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("admissible a mod 4: 0 1 3"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("degenerate"), std::string::npos);
}

TEST(LiftCommand, InvalidParameters) {
    EXPECT_EQ(run_cli({"lift", "--p", "4", "--m", "5", "--n", "3", "--v", "2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"lift", "--p", "2", "--m", "1", "--n", "3", "--v", "2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"lift", "--p", "2", "--m", "5", "--n", "3", "--v", "0"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"lift", "--p", "2", "--m", "5", "--n", "3", "--v", "3", "--N", "2"}).code, kExitUsage);
}

TEST(VerifyCommand, ExitCodes) {
    const auto ok = run_cli({"verify", "--p", "2", "--a", "3", "--b", "4", "--m", "5", "--n", "3", "--samples", "200"});
    EXPECT_EQ(ok.code, kExitOk) << ok.out;

    const auto refuted = run_cli({"verify", "--p", "2", "--a", "3", "--b", "4", "--m", "2", "--n", "2"});
    EXPECT_EQ(refuted.code, kExitRefuted);
    EXPECT_NE(refuted.out.find("witness: nu_2[3, 7] = 10"), std::string::npos) << refuted.out;

    EXPECT_EQ(run_cli({"verify", "--p", "2", "--a", "3", "--b", "0", "--m", "5", "--n", "3"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"verify", "--p", "2", "--a", "3", "--b", "2:4:0,0,0,0", "--m", "5", "--n", "3"}).code,
              kExitUsage);
    EXPECT_EQ(run_cli({"verify", "--p", "2", "--a", "three", "--b", "4", "--m", "5", "--n", "3"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"verify", "--p", "9", "--a", "3", "--b", "4", "--m", "5", "--n", "3"}).code, kExitUsage);
}

TEST(VerifyCommand, DigitStringLiterals) {
    const auto r = run_cli({"verify", "--p", "2", "--a", "2:8:1,1,0,0,0,0,0,0", "--b", "2:8:0,0,1,0,0,0,0,0", "--m",
                            "5", "--n", "3", "--samples", "50", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = json_of(r);
    EXPECT_EQ(j["N"], 8);
    EXPECT_EQ(j["b_valuation"], 2);
    EXPECT_EQ(j["passed"], true);

    EXPECT_EQ(run_cli({"verify", "--p", "3", "--a", "2:8:1,1,0,0,0,0,0,0", "--b", "4", "--m", "5", "--n", "3"}).code,
              kExitUsage);
}

TEST(VerifyCommand, JsonIsDeterministic) {
    const std::vector<std::string> args{"verify", "--p", "3", "--a", "2", "--b", "9", "--m", "10", "--n", "7",
                                        "--samples", "40", "--format", "json"};
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

// The built executable honours the same exit-code contract.
int run_binary(const std::string& args) {
    const std::string command = std::string(POLYADIC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Executable, ExitCodeContract) {
    EXPECT_EQ(run_binary("shape-table --a-max 9 --b-max 10 --format csv"), 0);
    EXPECT_EQ(run_binary("shape-table --a-max 0 --b-max 10"), 2);
    EXPECT_EQ(run_binary("verify --p 2 --a 3 --b 4 --m 5 --n 3 --samples 100"), 0);
    EXPECT_EQ(run_binary("verify --p 2 --a 3 --b 4 --m 2 --n 2"), 1);
    EXPECT_EQ(run_binary("verify --p 2 --a 3 --b 0 --m 5 --n 3"), 2);
    EXPECT_EQ(run_binary("lift --p 4 --m 5 --n 3 --v 2"), 2);
    EXPECT_EQ(run_binary("padic -1 --p 2 --n 4"), 0);
    EXPECT_EQ(run_binary("--help"), 0);
}

TEST(Executable, SeedFromEnvironment) {
    const std::string bin = POLYADIC_CLI_PATH;
    auto status = std::system(("POLYADIC_SEED=abc " + bin + " verify --p 2 --a 3 --b 4 --m 5 --n 3 > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
    status = std::system(("POLYADIC_SEED=12345 " + bin + " verify --p 2 --a 3 --b 4 --m 5 --n 3 --samples 20 > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(status), 0);
}

}  // namespace
}  // namespace polyadic::cli
