#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "tgb/orchestrator/campaign.hpp"
#include "tgb/report/report.hpp"

using namespace tgb;

namespace {

report::CampaignReport sample() {
  auto p = fixtures::load("mini_sed");
  orch::RunConfig cfg;
  cfg.step_budget = 300000;
  cfg.program_path = "mini_sed.ml";
  return orch::run_campaign(p, fixtures::seeds("mini_sed"), cfg);
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  auto r = sample();
  EXPECT_EQ(report::report_from_json(report::to_json(r)), r);
}

TEST(Report, FileRoundTrip) {
  auto r = sample();
  auto path = (std::filesystem::temp_directory_path() / "tgb_test_report.json").string();
  report::write_report(r, path);
  EXPECT_EQ(report::read_report(path), r);
  std::filesystem::remove(path);
  EXPECT_THROW(report::read_report(path), IoError);
}

TEST(Report, RejectsGarbage) {
  EXPECT_THROW(report::report_from_json(nlohmann::json::array()), FormatError);
  EXPECT_THROW(report::report_from_json(nlohmann::json{{"version", 99}}), FormatError);
}

TEST(Report, SeriesEmptyHasHeaderOnly) {
  report::CampaignReport r;
  EXPECT_EQ(report::series_text(r), "elapsed\tcoverage\n");
}

TEST(Report, SeriesMonotoneAndStable) {
  auto r = sample();
  auto text = report::series_text(r);
  EXPECT_EQ(text, report::series_text(r));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  double prev_t = -1, prev_c = -1;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    double t = 0, c = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf\t%lf", &t, &c), 2) << line;
    EXPECT_GE(t, prev_t);
    EXPECT_GE(c, prev_c);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    prev_t = t;
    prev_c = c;
    ++rows;
  }
  EXPECT_EQ(rows, r.series.size());
}

TEST(Report, TablesConsistent) {
  auto r = sample();
  const auto& t = r.tables;
  EXPECT_EQ(t.lifts, t.effective + t.other_goal + t.false_positive);
  EXPECT_LE(t.lifts, t.unit_winners);
  EXPECT_LE(t.parameterized_carves, t.carves);
  EXPECT_LE(t.functions_parameterized, t.functions_carved);
  EXPECT_LE(t.functions_carved, t.functions_total);
  EXPECT_EQ(r.winners.size(), t.unit_winners);
}
