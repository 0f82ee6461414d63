#include "tgb/report/report.hpp"

#include <fstream>
#include <sstream>

#include "tgb/snapshot/snapshot_io.hpp"
#include "tgb/util/error.hpp"

namespace tgb::report {

using nlohmann::json;

json to_json(const CampaignReport& r) {
  json series = json::array();
  for (const auto& p : r.series) series.push_back(json::array({p.elapsed, p.fraction}));
  json log = json::array();
  for (const auto& l : r.log)
    log.push_back({{"elapsed", l.elapsed}, {"wall_ms", l.wall_ms}, {"goal", l.goal}, {"source", l.source}});
  const Tables& t = r.tables;
  json tables{{"system_runs", t.system_runs},
              {"carves", t.carves},
              {"parameterized_carves", t.parameterized_carves},
              {"functions_total", t.functions_total},
              {"functions_carved", t.functions_carved},
              {"functions_parameterized", t.functions_parameterized},
              {"unit_rounds", t.unit_rounds},
              {"unit_executions", t.unit_executions},
              {"no_parameter_carves", t.no_parameter_carves},
              {"unit_winners", t.unit_winners},
              {"lifts", t.lifts},
              {"effective", t.effective},
              {"other_goal", t.other_goal},
              {"false_positive", t.false_positive},
              {"pct_lifted", t.pct_lifted},
              {"pct_effective", t.pct_effective}};
  json speedup{{"median_system_ms", r.speedup.median_system_ms},
               {"median_unit_ms", r.speedup.median_unit_ms},
               {"ratio", r.speedup.ratio},
               {"system_samples", r.speedup.system_samples},
               {"unit_samples", r.speedup.unit_samples}};
  json tests = json::array();
  for (const auto& n : r.new_tests)
    tests.push_back({{"input", snapshot::input_to_json(n.input)},
                     {"goals", n.goals},
                     {"classification", n.classification},
                     {"function", n.function},
                     {"corpus_path", n.corpus_path}});
  json winners = json::array();
  for (const auto& w : r.winners) {
    json values = json::object();
    for (const auto& [path, v] : w.values) values[path] = vm::value_to_json(v);
    winners.push_back({{"function", w.function},
                       {"carve_origin", w.carve_origin},
                       {"call_index", w.call_index},
                       {"values", std::move(values)},
                       {"provenance", w.provenance},
                       {"new_goals", w.new_goals},
                       {"crashed", w.crashed},
                       {"lift", w.lift},
                       {"lift_elapsed", w.lift_elapsed}});
    if (w.lifted_input) winners.back()["lifted_input"] = snapshot::input_to_json(*w.lifted_input);
  }
  return json{{"version", kReportVersion},
              {"tool_version", r.tool_version},
              {"program", r.program},
              {"mode", r.mode},
              {"rng_seed", r.rng_seed},
              {"deterministic_clock", r.deterministic_clock},
              {"config", r.config},
              {"total_goals", r.total_goals},
              {"discovered_goals", r.discovered_goals},
              {"elapsed", r.elapsed},
              {"series", std::move(series)},
              {"log", std::move(log)},
              {"tables", std::move(tables)},
              {"speedup", std::move(speedup)},
              {"new_tests", std::move(tests)},
              {"crashes", r.crashes},
              {"winners", std::move(winners)}};
}

CampaignReport report_from_json(const json& j) {
  try {
    if (j.at("version").get<int>() != kReportVersion) throw FormatError("unsupported report version");
    CampaignReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.program = j.at("program").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    r.deterministic_clock = j.at("deterministic_clock").get<bool>();
    r.config = j.at("config");
    r.total_goals = j.at("total_goals").get<std::size_t>();
    r.discovered_goals = j.at("discovered_goals").get<std::size_t>();
    r.elapsed = j.at("elapsed").get<double>();
    for (const auto& p : j.at("series")) r.series.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& l : j.at("log"))
      r.log.push_back({l.at("elapsed").get<double>(), l.at("wall_ms").get<double>(), l.at("goal").get<std::string>(),
                       l.at("source").get<std::string>()});
    const json& t = j.at("tables");
    Tables& tb = r.tables;
    tb.system_runs = t.at("system_runs").get<std::size_t>();
    tb.carves = t.at("carves").get<std::size_t>();
    tb.parameterized_carves = t.at("parameterized_carves").get<std::size_t>();
    tb.functions_total = t.at("functions_total").get<std::size_t>();
    tb.functions_carved = t.at("functions_carved").get<std::size_t>();
    tb.functions_parameterized = t.at("functions_parameterized").get<std::size_t>();
    tb.unit_rounds = t.at("unit_rounds").get<std::size_t>();
    tb.unit_executions = t.at("unit_executions").get<std::size_t>();
    tb.no_parameter_carves = t.at("no_parameter_carves").get<std::size_t>();
    tb.unit_winners = t.at("unit_winners").get<std::size_t>();
    tb.lifts = t.at("lifts").get<std::size_t>();
    tb.effective = t.at("effective").get<std::size_t>();
    tb.other_goal = t.at("other_goal").get<std::size_t>();
    tb.false_positive = t.at("false_positive").get<std::size_t>();
    tb.pct_lifted = t.at("pct_lifted").get<double>();
    tb.pct_effective = t.at("pct_effective").get<double>();
    const json& s = j.at("speedup");
    r.speedup = {s.at("median_system_ms").get<double>(), s.at("median_unit_ms").get<double>(),
                 s.at("ratio").get<double>(), s.at("system_samples").get<std::size_t>(),
                 s.at("unit_samples").get<std::size_t>()};
    for (const auto& n : j.at("new_tests"))
      r.new_tests.push_back({snapshot::input_from_json(n.at("input")), n.at("goals").get<std::vector<std::string>>(),
                             n.at("classification").get<std::string>(), n.at("function").get<std::string>(),
                             n.at("corpus_path").get<std::string>()});
    r.crashes = j.at("crashes").get<std::vector<std::string>>();
    for (const auto& w : j.at("winners")) {
      WinningAssignment a;
      a.function = w.at("function").get<std::string>();
      a.carve_origin = w.at("carve_origin").get<std::string>();
      a.call_index = w.at("call_index").get<std::uint64_t>();
      for (const auto& [path, v] : w.at("values").items()) a.values[path] = vm::value_from_json(v);
      a.provenance = w.at("provenance").get<std::string>();
      a.new_goals = w.at("new_goals").get<std::vector<std::string>>();
      a.crashed = w.at("crashed").get<bool>();
      a.lift = w.at("lift").get<std::string>();
      a.lift_elapsed = w.at("lift_elapsed").get<double>();
      if (w.contains("lifted_input")) a.lifted_input = snapshot::input_from_json(w.at("lifted_input"));
      r.winners.push_back(std::move(a));
    }
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
}

void write_report(const CampaignReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report '" + path + "'");
  out << to_json(r).dump(2) << '\n';
  if (!out) throw IoError("failed writing report '" + path + "'");
}

CampaignReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read report '" + path + "'");
  try {
    return report_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw FormatError("report '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string series_text(const CampaignReport& r) {
  std::ostringstream out;
  out << "elapsed\tcoverage\n";
  out.precision(17);
  for (const auto& p : r.series) out << p.elapsed << '\t' << p.fraction << '\n';
  return out.str();
}

void emit_series(const CampaignReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write series '" + path + "'");
  out << series_text(r);
  if (!out) throw IoError("failed writing series '" + path + "'");
}

}  // namespace tgb::report
