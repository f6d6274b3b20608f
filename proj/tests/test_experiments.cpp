// Copyright 2026 The graphmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "graphmix/experiments.hpp"

using namespace graphmix;

TEST(Experiments, SuiteTables) {
  for (const auto& name : suite_names()) {
    const auto exps = suite_experiments(name);
    EXPECT_EQ(exps.size(), 4u) << name;
    for (const auto& e : exps) {
      EXPECT_NO_THROW(parse_partition(e.partition_u));
      EXPECT_NO_THROW(parse_graphon(e.graphon_w));
    }
  }
  EXPECT_THROW(suite_experiments("table9:nothing"), DomainError);
  // about 11000 and 13200 nodes in the top-k members
  const auto topk = suite_experiments("table1:topk")[0];
  EXPECT_EQ(topk.n_d + topk.m_s + 49, 11000u);
  EXPECT_EQ(topk.test_n_d + topk.test_m_s + 49, 13200u);
}

TEST(Experiments, ReplicatesAreDeterministicAndOrderIndependent) {
  SuiteOptions a;
  a.replicates = 4;
  a.scale = 0.2;
  a.seed = 5;
  a.workers = 1;
  SuiteOptions b = a;
  b.workers = 4;
  const auto e = suite_experiments("table1:finiteU")[0];
  const auto x = run_experiment("table1:finiteU", e, 1, a);
  const auto y = run_experiment("table1:finiteU", e, 1, b);
  for (std::size_t r = 0; r < 4; ++r) {
    EXPECT_EQ(x.replicates[r].k_hat, y.replicates[r].k_hat);
    EXPECT_EQ(x.replicates[r].mape_proposed, y.replicates[r].mape_proposed);
  }
  EXPECT_NE(x.replicates[0].mape_proposed, x.replicates[1].mape_proposed);
}

TEST(Experiments, SmallScaleSuitesBehave) {
  SuiteOptions opt;
  opt.replicates = 3;
  opt.scale = 0.3;
  const auto finite = run_suite("table1:finiteU", opt);
  for (const auto& r : finite) {
    EXPECT_LT(r.proposed().mean, r.baseline().mean) << r.spec.name;
    EXPECT_GT(r.baseline().mean, 90.0) << r.spec.name;
  }
  const auto topk = run_suite("table1:topk", opt);
  for (const auto& r : topk) {
    EXPECT_LT(r.proposed().mean, r.baseline().mean) << r.spec.name;
    for (const auto& x : r.replicates) EXPECT_GE(x.k_hat, 3u);
  }
  const auto inf = run_suite("table1:infiniteU", opt);
  EXPECT_EQ(inf[3].k_hat().mean, 4.0);
  for (const auto& r : inf) {
    EXPECT_GT(r.covered_mass().mean, 0.5);
    EXPECT_LE(r.covered_mass().mean, 1.0 + 1e-12);
  }
}

TEST(Experiments, OptionValidation) {
  SuiteOptions opt;
  opt.replicates = 0;
  const auto e = suite_experiments("table1:finiteU")[0];
  EXPECT_THROW(run_experiment("table1:finiteU", e, 1, opt), DomainError);
  opt.replicates = 1;
  opt.scale = 0.0;
  EXPECT_THROW(run_experiment("table1:finiteU", e, 1, opt), DomainError);
  opt.scale = 0.1;
  EXPECT_THROW(run_experiment("nope", e, 1, opt), DomainError);
}

TEST(Experiments, Summaries) {
  const auto s = summarize({1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.sd, 1.0);
  EXPECT_DOUBLE_EQ(summarize({4.0}).sd, 0.0);
}
