#include <gtest/gtest.h>

#include <random>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/timeline.hpp"
#include "test_support.hpp"

using namespace spanlab;
using namespace spanlab::timeline;

namespace {

const std::vector<std::string> kScout = {"Llama 4 Scout"};

TimelineDataset bundled() {
  return parse_timeline(csv::read_file(test_support::data_path("timeline.csv")), "bundled");
}

}  // namespace

TEST(Timeline, ParsesSingleRow) {
  auto ds = parse_timeline("date,model,max_context_tokens,source\n2023-07,Claude 2,100000,A2023\n");
  ASSERT_EQ(ds.size(), 1u);
  const auto& r = ds.releases()[0];
  EXPECT_EQ(r.release_year, 2023);
  EXPECT_EQ(r.release_month, 7);
  EXPECT_EQ(r.model_name, "Claude 2");
  EXPECT_EQ(r.max_context_tokens, 100000);
  EXPECT_EQ(r.source_tag, "A2023");
}

TEST(Timeline, SortsOutOfOrderRowsStably) {
  auto ds = parse_timeline(
      "date,model,max_context_tokens,source\n"
      "2024-02,B,10,s\n2023-01,A,5,s\n2024-02,C,20,s\n");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.releases()[0].model_name, "A");
  EXPECT_EQ(ds.releases()[1].model_name, "B");
  EXPECT_EQ(ds.releases()[2].model_name, "C");
}

TEST(Timeline, RejectsMalformedDate) {
  try {
    parse_timeline("date,model,max_context_tokens,source\n2023-7,X,10,s\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("malformed date"), std::string::npos);
  }
}

TEST(Timeline, RejectsBadTokenCounts) {
  EXPECT_THROW(parse_timeline("date,model,max_context_tokens,source\n2023-07,X,12k,s\n"),
               ParseError);
  try {
    parse_timeline("date,model,max_context_tokens,source\n2023-07,X,10,s\n2023-08,Y,0,s\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("non-positive"), std::string::npos);
  }
}

TEST(Timeline, RejectsEmptyAndMissingColumns) {
  EXPECT_THROW(parse_timeline(""), ParseError);
  EXPECT_THROW(parse_timeline("date,model,max_context_tokens,source\n"), ParseError);
  EXPECT_THROW(parse_timeline("date,model,source\n2023-07,X,s\n"), ParseError);
  EXPECT_THROW(parse_timeline("date,model,max_context_tokens,source\n2023-07,X,10\n"),
               ParseError);
}

TEST(Timeline, ValidateBundledIsClean) {
  EXPECT_TRUE(validate(bundled()).empty());
}

TEST(Timeline, ValidateReportsEachViolation) {
  TimelineDataset ds({{2016, 5, "Old", 10, "s"},
                      {2019, 13, "", 0, "s"},
                      {2019, 13, "", 0, "s"}},
                     "synthetic");
  auto findings = validate(ds);
  auto count = [&](const std::string& kind) {
    return std::count_if(findings.begin(), findings.end(),
                         [&](const Finding& f) { return f.kind == kind; });
  };
  EXPECT_EQ(count("year out of range"), 1);
  EXPECT_EQ(count("month out of range"), 2);
  EXPECT_EQ(count("non-positive context"), 2);
  EXPECT_EQ(count("empty model name"), 2);
  EXPECT_EQ(count("duplicate entry"), 1);
  EXPECT_EQ(count("coverage gap"), 2);  // 2017 and 2018
  const auto lines = findings_to_json_lines(findings);
  EXPECT_EQ(static_cast<std::size_t>(std::count(lines.begin(), lines.end(), '\n')),
            findings.size());
}

TEST(Timeline, FrontierMatchesPublishedColumn) {
  auto series = leading_context_by_year(bundled(), 2017, 2026, kScout, 7);
  const double expected[] = {512, 512, 1024, 2048, 4096, 4096, 100000, 1e6, 1e6, 2e6};
  for (int y = 2017; y <= 2026; ++y) {
    EXPECT_DOUBLE_EQ(series.value_at(y), expected[y - 2017]) << y;
  }
  ASSERT_TRUE(series.at(2022).upper.has_value());
  EXPECT_DOUBLE_EQ(*series.at(2022).upper, 8192);
  for (int y = 2017; y <= 2026; ++y) {
    if (y != 2022) EXPECT_FALSE(series.at(y).upper.has_value()) << y;
  }
}

TEST(Timeline, FrontierYearEndCutoffPicksLaterReleases) {
  auto series = leading_context_by_year(bundled(), 2017, 2026, kScout);
  EXPECT_DOUBLE_EQ(series.value_at(2023), 128000);
}

TEST(Timeline, ExclusionRemovesOutlier) {
  auto with = leading_context_by_year(bundled(), 2025, 2025, {});
  auto without = leading_context_by_year(bundled(), 2025, 2025, kScout);
  EXPECT_DOUBLE_EQ(with.value_at(2025), 1e7);
  EXPECT_DOUBLE_EQ(without.value_at(2025), 1e6);
}

TEST(Timeline, LeadingModelLabels) {
  auto ds = bundled();
  EXPECT_EQ(leading_model(ds, 2018, kScout, 7), "GPT-1");
  EXPECT_EQ(leading_model(ds, 2023, kScout, 7), "Claude 2");
  EXPECT_EQ(leading_model(ds, 2025, kScout, 7), "GPT-4.1");
  EXPECT_EQ(leading_model(ds, 2026, kScout, 7), "Grok 4.20");
  EXPECT_EQ(range_model(ds, 2022, kScout), "ChatGPT / GPT-3.5");
  EXPECT_FALSE(range_model(ds, 2023, kScout).has_value());
}

TEST(Timeline, FrontierBeforeFirstReleaseIsError) {
  EXPECT_THROW(leading_context_by_year(bundled(), 2015, 2017, kScout), DomainError);
}

TEST(Timeline, RoundTripsThroughSerialize) {
  auto ds = bundled();
  auto again = parse_timeline(serialize_timeline(ds), "bundled");
  EXPECT_EQ(ds, again);
}

// Property: the frontier is nondecreasing and dominates every release dated
// within its window.
TEST(Timeline, FrontierMonotoneAndDominatingOnRandomData) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> year(2017, 2026);
  std::uniform_int_distribution<int> month(1, 12);
  std::uniform_int_distribution<std::int64_t> tokens(1, 10'000'000);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ModelRelease> rel;
    rel.push_back({2017, 1, "seed", tokens(rng), "s"});
    for (int i = 0; i < 30; ++i) {
      rel.push_back({year(rng), month(rng), "m" + std::to_string(i), tokens(rng), "s"});
    }
    TimelineDataset ds(rel, "random");
    auto series = leading_context_by_year(ds, 2017, 2026, {});
    double prev = 0;
    for (const auto& p : series) {
      EXPECT_GE(p.value, prev);
      prev = p.value;
      for (const auto& r : ds.releases()) {
        if (r.release_year <= p.year) EXPECT_GE(p.value, static_cast<double>(r.max_context_tokens));
      }
    }
  }
}
