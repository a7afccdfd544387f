/*
 * Copyright 2026 The NUM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "num/cli.h"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace num::cli {
namespace {

namespace fs = std::filesystem;

constexpr char kSessions[] =
    R"({"session_id":"s1","queries":[{"query_id":"q1","issue_time":0,"end_time":60,)"
    R"("results":[{"doc_id":"a","rank":1,"snippet_len":80,"doc_len":500,"clicked":true,)"
    R"("click_time":5},{"doc_id":"b","rank":2,"snippet_len":80,"doc_len":500,"clicked":false}]}]})"
    "\n"
    R"({"session_id":"s2","queries":[{"query_id":"q1","issue_time":0,"end_time":60,)"
    R"("results":[{"doc_id":"a","rank":1,"snippet_len":80,"doc_len":500,"clicked":false}]},)"
    R"({"query_id":"q2","issue_time":100,"end_time":160,"results":[{"doc_id":"c","rank":1,)"
    R"("snippet_len":80,"doc_len":500,"clicked":false}]}]})"
    "\n";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("num_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::string Write(const std::string& name, const std::string& content) const {
    std::ofstream(Path(name)) << content;
    return Path(name);
  }

  static std::string Read(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  int Call(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return num::cli::Run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, EvalWritesCsvAndFlagsUndefinedScores) {
  const std::string in = Write("s.jsonl", kSessions);
  ASSERT_EQ(Call({"eval", in, "--metric", "num,sdcg", "--L", "1000", "--rt-len", "0"}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(out_.str(),
            "session_id,metric,score\n"
            "s1,num,0.9111111111111112\n"
            "s2,num,error:no_clicks\n"
            "s1,sdcg,0.5\n"
            "s2,sdcg,0\n");
  EXPECT_NE(err_.str().find("1 undefined"), std::string::npos);
}

TEST_F(CliTest, EvalRunTagAndReport) {
  const std::string in = Write("s.jsonl", kSessions);
  const std::string csv = Path("out.csv");
  const std::string report = Path("report.json");
  ASSERT_EQ(Call({"eval", in, "--metric", "lcd", "--L", "1000", "--rt-len", "0",
                  "--run-tag", "sys", "--out", csv, "--report", report}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(Read(csv).substr(0, 40), "session_id,run_tag,metric,score\ns1,sys,l");
  const auto j = nlohmann::json::parse(Read(report));
  EXPECT_EQ(j["provenance"]["tool"], "num");
  EXPECT_EQ(j["provenance"]["params"]["L"], 1000);
  EXPECT_EQ(j["provenance"]["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}

TEST_F(CliTest, EstimateOnSynthesizedLog) {
  const std::string in = Path("synth.jsonl");
  ASSERT_EQ(Call({"synth", "--n", "300", "--seed", "4", "--out", in}), kExitOk)
      << err_.str();
  ASSERT_EQ(Call({"estimate", in}), kExitOk) << err_.str();
  const auto j = nlohmann::json::parse(out_.str());
  EXPECT_GT(j["L"].get<long>(), 0);
  EXPECT_GT(j["rt_len"].get<long>(), 0);
  EXPECT_EQ(j["n_sessions"], 300);
}

TEST_F(CliTest, UsageErrors) {
  const std::string in = Write("s.jsonl", kSessions);
  EXPECT_EQ(Call({"eval", in, "--metric", "num", "--bogus"}), kExitUsage);
  EXPECT_EQ(Call({"eval", Path("missing.jsonl"), "--metric", "num"}), kExitUsage);
  EXPECT_EQ(Call({"eval", in}), kExitUsage);
  EXPECT_EQ(Call({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Call({"eval", in, "--metric", "ndcg"}), kExitUsage);
}

TEST_F(CliTest, ModuleErrors) {
  const std::string in = Write("s.jsonl", kSessions);
  EXPECT_EQ(Call({"eval", in, "--metric", "num", "--L", "0", "--rt-len", "0"}),
            kExitModuleError);
  const std::string bad = Write("bad.jsonl", "{bad\n");
  EXPECT_EQ(Call({"eval", bad, "--metric", "num", "--L", "10", "--rt-len", "0"}),
            kExitModuleError);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos);
}

TEST_F(CliTest, PipelineIsByteIdentical) {
  // Reports record input paths, so both runs use the same file names.
  const auto pipeline = [&] {
    const std::string log = Path("log.jsonl");
    const std::string pools = Path("pools.tsv");
    EXPECT_EQ(Call({"synth", "--n", "120", "--seed", "9", "--out", log,
                    "--pools-out", pools}),
              kExitOk);
    EXPECT_EQ(Call({"eval", log, "--metric", "num,srbp,ap"}), kExitOk);
    std::string result = out_.str();
    EXPECT_EQ(Call({"correlate", log, "--metric", "num", "--folds", "3",
                    "--repeats", "2"}),
              kExitOk)
        << err_.str();
    result += out_.str();
    EXPECT_EQ(Call({"transform-runs", "--mode", "diversified", "--pools", pools}),
              kExitOk)
        << err_.str();
    result += out_.str();
    EXPECT_EQ(Call({"trailtext-debug", log, "--session", "synth-3"}), kExitOk)
        << err_.str();
    result += out_.str();
    return Read(log) + Read(pools) + result;
  };
  const std::string first = pipeline();
  fs::remove(Path("log.jsonl"));
  fs::remove(Path("pools.tsv"));
  EXPECT_EQ(first, pipeline());
}

TEST_F(CliTest, ConcordanceFromScoreFiles) {
  const std::string scores = Write(
      "scores.csv",
      "session_id,run_tag,metric,score\n"
      "s1,r1,x,0.9\ns1,r2,x,0.1\n"
      "s1,r1,y,0.2\ns1,r2,y,0.3\n"
      "s1,r1,ap,1.0\ns1,r2,ap,0.5\n"
      "s1,r1,lcd,0.2\ns1,r2,lcd,0.5\n");
  ASSERT_EQ(Call({"concordance", scores, "--metric-a", "x", "--metric-b", "y"}), kExitOk)
      << err_.str();
  const auto j = nlohmann::json::parse(out_.str());
  EXPECT_EQ(j["n_disagreements"], 1);
  EXPECT_EQ(j["gold"]["ap"]["conc_a"], 1.0);
  EXPECT_EQ(j["gold"]["ap"]["conc_b"], 0.0);
  EXPECT_EQ(j["gold"]["lcd"]["conc_b"], 1.0);
}

}  // namespace
}  // namespace num::cli
