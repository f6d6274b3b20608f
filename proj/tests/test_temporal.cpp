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

#include <fstream>
#include <sstream>

#include "graphmix/temporal.hpp"

using namespace graphmix;

namespace {

TemporalEdgeList parse_text(const std::string& text,
                            EventFormat f = EventFormat::whitespace3col) {
  std::istringstream is(text);
  return parse_edge_events(is, f);
}

TemporalEdgeList load(const std::string& name, EventFormat f) {
  std::ifstream in(std::string(GRAPHMIX_FIXTURES) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  return parse_edge_events(in, f);
}

}  // namespace

TEST(Temporal, ParsesWhitespaceEvents) {
  const auto tel = parse_text("1 2 5\n2 3 6\n");
  EXPECT_EQ(tel.events().size(), 2u);
  EXPECT_EQ(tel.node_count(), 3u);
  EXPECT_EQ(tel.min_time(), 5);
  EXPECT_EQ(tel.max_time(), 6);
}

TEST(Temporal, DuplicateKeepsEarliestTime) {
  const auto tel = parse_text("1 2 9\n3 4 1\n2 1 4\n1 2 7\n");
  ASSERT_EQ(tel.events().size(), 2u);
  EXPECT_EQ(tel.duplicates_dropped(), 2u);
  EXPECT_EQ(tel.events()[1].t, 4);
  const auto ids = tel.external_ids();
  EXPECT_EQ(ids[tel.events()[1].u] + ids[tel.events()[1].v], "21");
}

TEST(Temporal, RejectsSelfLoopsAndMalformedLines) {
  std::string text = "4 4 1\n";
  for (int i = 0; i < 20; ++i) text += std::to_string(i) + " x" + std::to_string(i) + " 2\n";
  auto tel = parse_text(text);
  ASSERT_EQ(tel.rejects().size(), 1u);
  EXPECT_EQ(tel.rejects()[0].line, 1u);
  EXPECT_NE(tel.rejects()[0].reason.find("self-loop"), std::string::npos);
  EXPECT_EQ(tel.events().size(), 20u);
  EXPECT_EQ(tel.record_count(), 21u);

  tel = parse_text(text + "1 2\n");
  EXPECT_EQ(tel.rejects().size(), 2u);
  EXPECT_THROW(parse_text("1 2 x\n3 4 5\n"), FormatError);
  EXPECT_THROW(parse_text(""), DomainError);
  EXPECT_THROW(parse_text("# only a comment\n\n"), DomainError);
}

TEST(Temporal, CsvNeedsHeader) {
  const auto tel = parse_text("u,v,t\n1,2,3\n", EventFormat::csv3col);
  EXPECT_EQ(tel.events().size(), 1u);
  EXPECT_THROW(parse_text("1,2,3\n", EventFormat::csv3col), FormatError);
  EXPECT_EQ(parse_event_format("csv"), EventFormat::csv3col);
  EXPECT_THROW(parse_event_format("tsv"), FormatError);
}

TEST(Temporal, FixtureFormatsAgree) {
  const auto a = load("tiny_events.txt", EventFormat::whitespace3col);
  const auto b = load("tiny_events.csv", EventFormat::csv3col);
  EXPECT_EQ(std::vector<TemporalEvent>(a.events().begin(), a.events().end()),
            std::vector<TemporalEvent>(b.events().begin(), b.events().end()));
  EXPECT_EQ(a.node_count(), 5u);
}

TEST(Temporal, RoundTripIsIdentity) {
  const auto a = load("tiny_events.txt", EventFormat::whitespace3col);
  for (auto f : {EventFormat::whitespace3col, EventFormat::csv3col}) {
    std::stringstream ss;
    write_edge_events(ss, a, f);
    const auto b = parse_edge_events(ss, f);
    EXPECT_EQ(std::vector<TemporalEvent>(a.events().begin(), a.events().end()),
              std::vector<TemporalEvent>(b.events().begin(), b.events().end()));
    EXPECT_EQ(std::vector<std::string>(a.external_ids().begin(), a.external_ids().end()),
              std::vector<std::string>(b.external_ids().begin(), b.external_ids().end()));
  }
}

TEST(Temporal, Snapshots) {
  const auto tel = parse_text("a b 1\nb c 2\nc d 3\n");
  const auto s2 = snapshot_at(tel, 2);
  EXPECT_EQ(s2.edge_count(), 2u);
  EXPECT_EQ(s2.node_count(), 3u);
  EXPECT_EQ(snapshot_at(tel, 3).edge_count(), 3u);
  EXPECT_EQ(snapshot_at(tel, 100).node_count(), 4u);
  EXPECT_EQ(snapshot_at(tel, 0).node_count(), 0u);
}

TEST(Temporal, SnapshotsAreMonotone) {
  const auto tel = load("mixture_events.txt", EventFormat::whitespace3col);
  Graph prev;
  for (long long t = tel.min_time() - 1; t <= tel.max_time(); ++t) {
    const auto g = snapshot_at(tel, t);
    EXPECT_GE(g.node_count(), prev.node_count());
    for (const auto& e : prev.edges()) ASSERT_TRUE(g.has_edge(e.u, e.v));
    prev = g;
  }
}

TEST(Temporal, BundledFixtureMatchesRegeneratedSequence) {
  const auto bundled = load("mixture_events.txt", EventFormat::whitespace3col);
  const auto fresh = mixture_temporal_fixture(parse_partition("power:1.2:2:50"),
                                              exp_sum_graphon(), {}, 8, 20, 300, 2026);
  EXPECT_EQ(bundled.events().size(), fresh.events().size());
  for (long long t = 1; t <= 8; ++t) {
    EXPECT_EQ(snapshot_at(bundled, t).edge_count(), snapshot_at(fresh, t).edge_count());
    EXPECT_EQ(degree_spectrum(snapshot_at(bundled, t)).sorted_degrees,
              degree_spectrum(snapshot_at(fresh, t)).sorted_degrees);
  }
}

TEST(Temporal, EvaluationRunOnFixture) {
  const auto tel = load("mixture_events.txt", EventFormat::whitespace3col);
  const std::vector<long long> train{3, 4, 5}, horizons{0, 1, 2, 3, 9};
  const auto rep = evaluation_run(tel, train, horizons, 10);
  EXPECT_EQ(rep.summary.size(), 12u);
  EXPECT_EQ(rep.warnings.size(), 3u);  // horizon 9 runs past t = 8
  EXPECT_EQ(rep.rows.size(), 120u);
  double prop = 0, base = 0;
  for (const auto& s : rep.summary) {
    if (s.horizon == 0) {
      EXPECT_EQ(s.mape_proposed, 0.0);
      EXPECT_EQ(s.mape_baseline, 0.0);
    }
    prop += s.mape_proposed;
    base += s.mape_baseline;
  }
  EXPECT_LT(prop, base);
  EXPECT_LT(rep.mean_proposed(), rep.mean_baseline());
  EXPECT_THROW(evaluation_run(tel, train, horizons, 0), DomainError);
}
