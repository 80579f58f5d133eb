// Copyright 2026 The advsgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_util.h"

namespace advsgm::cli {
namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome Invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    data_ = (dir_ / "data").string();
    const Outcome o = Invoke({"ingest", "--sbm", "25,25", "--p-in", "0.3",
                           "--p-out", "0.02", "--seed", "3", "--out", data_});
    ASSERT_EQ(o.code, kExitOk) << o.err;
  }

  std::vector<std::string> TrainArgs(const std::string& out) const {
    return {"train", "--data", data_, "--out", out, "--B", "4", "--k", "2",
            "--r", "8", "--epochs", "2", "--nD", "3", "--nG", "2", "--seed", "5"};
  }

  testing::TempDir dir_;
  std::string data_;
};

TEST_F(CliTest, IngestWritesBundle) {
  for (const char* f : {"graph.txt", "idmap.txt", "labels.txt", "train.txt",
                        "test_pos.txt", "test_neg.txt", "dataset.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / "data" / f)) << f;
  }
  const auto meta = nlohmann::json::parse(testing::ReadFile(dir_ / "data" / "dataset.json"));
  EXPECT_EQ(meta["nodes"], 50);
  EXPECT_EQ(meta["labeled"], true);
}

TEST_F(CliTest, IngestEdgeFileReportsCounts) {
  const Outcome o = Invoke({"ingest", "--edges",
                         testing::DataPath("random_edges.txt").string(), "--out",
                         (dir_ / "edges").string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("nodes: 30"), std::string::npos);
  EXPECT_NE(o.out.find("edges: 86"), std::string::npos);
}

TEST_F(CliTest, IngestRefusesOverwriteWithoutForce) {
  const std::vector<std::string> args{"ingest", "--sbm", "25,25", "--out", data_};
  EXPECT_EQ(Invoke(args).code, kExitUsage);
  std::vector<std::string> forced = args;
  forced.push_back("--force");
  EXPECT_EQ(Invoke(forced).code, kExitOk);
}

TEST_F(CliTest, TrainEvalPipeline) {
  const std::string run = (dir_ / "run").string();
  const Outcome t = Invoke(TrainArgs(run));
  ASSERT_EQ(t.code, kExitOk) << t.err;
  for (const char* f : {"manifest.json", "embeddings.txt", "report.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / "run" / f)) << f;
  }
  const auto report = nlohmann::json::parse(testing::ReadFile(dir_ / "run" / "report.json"));
  EXPECT_EQ(report["algo"], "advsgm");
  EXPECT_EQ(report["ledger"]["alpha"].size(), 63u);

  const Outcome lp = Invoke({"eval", "--data", data_, "--embeddings",
                          run + "/embeddings.txt", "--task", "lp"});
  ASSERT_EQ(lp.code, kExitOk) << lp.err;
  const auto rec = nlohmann::json::parse(lp.out);
  EXPECT_EQ(rec["metric"], "auc");
  EXPECT_EQ(rec["algo"], "advsgm");
  EXPECT_EQ(rec["seed"], 5);
  EXPECT_GE(rec["value"].get<double>(), 0.0);
  EXPECT_LE(rec["value"].get<double>(), 1.0);

  const Outcome cl = Invoke({"eval", "--data", data_, "--embeddings",
                          run + "/embeddings.txt", "--task", "cluster"});
  ASSERT_EQ(cl.code, kExitOk) << cl.err;
  EXPECT_EQ(nlohmann::json::parse(cl.out)["metric"], "mutual_information_nats");

  EXPECT_EQ(Invoke(TrainArgs(run)).code, kExitUsage);
  std::vector<std::string> forced = TrainArgs(run);
  forced.push_back("--force");
  EXPECT_EQ(Invoke(forced).code, kExitOk);
}

TEST_F(CliTest, TrainIsByteReproducible) {
  ASSERT_EQ(Invoke(TrainArgs((dir_ / "a").string())).code, kExitOk);
  ASSERT_EQ(Invoke(TrainArgs((dir_ / "b").string())).code, kExitOk);
  EXPECT_EQ(testing::ReadFile(dir_ / "a" / "embeddings.txt"),
            testing::ReadFile(dir_ / "b" / "embeddings.txt"));
}

TEST_F(CliTest, CheckpointResumeMatches) {
  std::vector<std::string> args = TrainArgs((dir_ / "ck").string());
  const std::string ck = (dir_ / "state.ck").string();
  args.insert(args.end(), {"--checkpoint", ck, "--checkpoint-every", "4"});
  ASSERT_EQ(Invoke(args).code, kExitOk);
  const Outcome resumed = Invoke({"train", "--data", data_, "--out",
                               (dir_ / "resumed").string(), "--resume", ck});
  ASSERT_EQ(resumed.code, kExitOk) << resumed.err;
  EXPECT_EQ(testing::ReadFile(dir_ / "ck" / "embeddings.txt"),
            testing::ReadFile(dir_ / "resumed" / "embeddings.txt"));
}

TEST_F(CliTest, SgmWarnsAboutSigma) {
  std::vector<std::string> args = TrainArgs((dir_ / "sgm").string());
  args.insert(args.end(), {"--algo", "sgm", "--sigma", "3"});
  const Outcome o = Invoke(args);
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.err.find("warning"), std::string::npos);
  EXPECT_NE(o.out.find("non-private"), std::string::npos);
}

TEST_F(CliTest, ConfigErrorsExitOne) {
  std::vector<std::string> args = TrainArgs((dir_ / "bad").string());
  *(std::find(args.begin(), args.end(), "--k") + 1) = "20";
  EXPECT_EQ(Invoke(args).code, kExitConfig);
  std::vector<std::string> algo = TrainArgs((dir_ / "bad2").string());
  algo.insert(algo.end(), {"--algo", "nope"});
  EXPECT_EQ(Invoke(algo).code, kExitConfig);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Invoke({"train", "--data", data_}).code, kExitUsage);
  EXPECT_EQ(Invoke({"bogus"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"train", "--data", (dir_ / "nowhere").string(), "--out",
                 (dir_ / "x").string()}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"eval", "--data", data_, "--embeddings",
                 (dir_ / "none.txt").string()}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST(CliAccountTest, PrintsBudgetAndTable) {
  const Outcome o = Invoke({"account", "--sigma", "5", "--B", "16", "--k", "5",
                         "--edges", "2450", "--nodes", "100", "--eps", "6"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("max discriminator iterations: 7"), std::string::npos)
      << o.out;
  EXPECT_NE(o.out.find("alpha"), std::string::npos);
}

TEST(CliAccountTest, RejectsInfeasibleSampling) {
  EXPECT_EQ(Invoke({"account", "--B", "128", "--k", "5", "--edges", "2450",
                 "--nodes", "100"}).code,
            kExitConfig);
  EXPECT_EQ(Invoke({"account", "--B", "10", "--k", "1", "--edges", "5",
                 "--nodes", "100"}).code,
            kExitConfig);
}

}  // namespace
}  // namespace advsgm::cli
