// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every expected value is computed here from an independent check (brute-force
// scanners, re-execution of recorded inputs, the subject's known control flow)
// rather than read back from the component under test.

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "tgb/lifter/lift.hpp"
#include "tgb/orchestrator/campaign.hpp"
#include "tgb/snapshot/carve.hpp"

using namespace tgb;
using vm::Value;

namespace {

constexpr std::uint64_t kKeycheckSteps = 8'000'000;
constexpr std::uint64_t kSedSteps = 400'000;
constexpr std::uint64_t kDcSteps = 2'000'000;
constexpr int kSeeds = 10;

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void verdict(int n, bool ok, const std::string& detail) {
  lines[n] = "criterion " + std::to_string(n) + ": " + (ok ? "PASS" : "FAIL") + "  " + detail;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 1) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(prec);
  o << v;
  return o.str();
}

report::CampaignReport campaign(const lang::Program& p, const std::string& subject, orch::Mode mode,
                                std::uint64_t steps, std::uint64_t seed) {
  orch::RunConfig cfg;
  cfg.mode = mode;
  cfg.step_budget = steps;
  cfg.rng_seed = seed;
  cfg.unit_budget = 200;
  cfg.program_path = subject;
  return orch::run_campaign(p, fixtures::seeds(subject), cfg);
}

std::optional<lang::BranchGoal> parse_goal(const std::string& label) {
  if (label.rfind("crash:", 0) == 0) return std::nullopt;
  return lang::goal_from_string(label);
}

// ---- criteria 1 and 3 share the carves ----

struct CarveSet {
  std::vector<std::tuple<const lang::Program*, snapshot::CarvedTest, vm::SystemInput>> carves;
  std::vector<lang::Program> programs;
};

CarveSet collect_carves() {
  CarveSet s;
  s.programs.reserve(fixtures::subject_names().size());
  for (const auto& n : fixtures::subject_names()) s.programs.push_back(fixtures::load(n));
  for (std::size_t i = 0; i < s.programs.size(); ++i) {
    const auto& n = fixtures::subject_names()[i];
    const auto& p = s.programs[i];
    for (const auto& in : fixtures::random_inputs(n, 20, 0xACC + i)) {
      vm::RunResult r;
      try {
        r = vm::run_with_tracing(p, in);
      } catch (const vm::TraceOverflow& e) {
        r = e.result();
      }
      for (auto& c : snapshot::carve(p, r, {}, {n, in}).tests) s.carves.emplace_back(&p, std::move(c), in);
    }
  }
  return s;
}

void criterion1(const CarveSet& s, double collect_seconds) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, truncated = 0, bad = 0;
  std::string first_bad;
  for (const auto& [p, c, in] : s.carves) {
    if (c.context.truncated) {
      ++truncated;
      continue;
    }
    ++checked;
    vm::RunOptions o;  // system step limit
    auto r = vm::call_function(*p, c.start.function, c.context.args,
                               vm::World{c.context.globals, c.context.segments, c.origin.input}, o);
    // observed_status is exit(0) for a returned call, else the run's crash
    bool same = r.coverage == c.observed_coverage;
    if (c.observed_status.crashed()) same = same && r.status.crashed() && r.status.crash == c.observed_status.crash &&
                                            r.status.crash_function == c.observed_status.crash_function;
    else same = same && !r.status.crashed() && r.return_value == c.observed_return;
    if (!same) {
      ++bad;
      if (first_bad.empty()) first_bad = c.origin.id + "/" + c.start.function_name;
    }
  }
  double took = collect_seconds + seconds_since(t0);
  verdict(1, bad == 0 && checked > 0 && took < 60,
          std::to_string(checked) + " non-truncated carves replayed, " + std::to_string(bad) + " mismatched" +
              (first_bad.empty() ? "" : " (first " + first_bad + ")") + ", " + std::to_string(truncated) +
              " truncated skipped, " + fmt(took) + "s");
}

void criterion3(const CarveSet& s) {
  std::size_t checked = 0, bad = 0, with_params = 0;
  for (const auto& [p, c, in] : s.carves) {
    auto m = mapper::build_mapping(c, in);
    unitgen::ParamAssignment a;
    for (const auto& path : m.parameters) a.values[path] = snapshot::resolve_path(c.context, path);
    with_params += !a.values.empty();
    ++checked;
    if (lifter::lift(m, a, in).input != in) ++bad;
  }
  verdict(3, bad == 0 && with_params > 0,
          std::to_string(checked) + " carves (" + std::to_string(with_params) + " with parameters), " +
              std::to_string(bad) + " lifted inputs differ from their origin");
}

// ---- criterion 2: brute-force mapping ----

struct BruteLeaf {
  std::string path;
  Value value;
};

void walk(const std::string& path, const Value& v, std::vector<BruteLeaf>& out) {
  switch (v.kind()) {
    case vm::ValueKind::Int:
    case vm::ValueKind::Float:
    case vm::ValueKind::Bytes: out.push_back({path, v}); break;
    case vm::ValueKind::Record: {
      const auto& r = v.as_record();
      for (std::size_t i = 0; i < r.fields.size(); ++i) walk(path + "." + r.shape->fields[i], r.fields[i], out);
      break;
    }
    case vm::ValueKind::Array: {
      const auto& a = v.as_array();
      for (std::size_t i = 0; i < a.size(); ++i) walk(path + "[" + std::to_string(i) + "]", a[i], out);
      break;
    }
    case vm::ValueKind::Ref: break;
  }
}

mapper::Mapping brute_mapping(const snapshot::Context& c, const vm::SystemInput& s, std::size_t min_len) {
  std::vector<BruteLeaf> leaves;
  for (std::size_t i = 0; i < c.args.size(); ++i) walk("arg[" + std::to_string(i) + "]", c.args[i], leaves);
  for (const auto& [name, v] : c.globals) walk("global:" + name, v, leaves);
  for (const auto& [id, seg] : c.segments.segments())
    for (std::size_t i = 0; i < seg.elements.size(); ++i)
      walk("seg#" + std::to_string(id) + "[" + std::to_string(i) + "]", seg.elements[i], leaves);

  mapper::Mapping m;
  std::set<std::size_t> hit_inputs;
  for (const auto& l : leaves) {
    std::string needle;
    auto enc = mapper::Encoding::RawBytes;
    if (l.value.is(vm::ValueKind::Bytes)) {
      needle = l.value.as_bytes();
    } else if (l.value.is(vm::ValueKind::Int)) {
      needle = std::to_string(l.value.as_int());
      enc = mapper::Encoding::DecimalInt;
    } else {
      continue;
    }
    if (needle.size() < min_len) continue;
    for (std::size_t e = 0; e < s.element_count(); ++e) {
      const auto& hay = s.element(e);
      for (std::size_t k = 0; k + needle.size() <= hay.size(); ++k) {
        if (hay.compare(k, needle.size(), needle) != 0) continue;
        m.matches.push_back({l.path, e, k, k + needle.size(), enc});
        m.parameters.insert(l.path);
        hit_inputs.insert(e);
      }
    }
  }
  for (std::size_t e = 0; e < s.element_count(); ++e)
    if (!hit_inputs.count(e)) m.unmatched_inputs.insert(e);
  std::sort(m.matches.begin(), m.matches.end());
  return m;
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  sysgen::Rng r(0xC2);
  auto shape = std::make_shared<lang::RecordShape>();
  shape->name = "P";
  shape->fields = {"name", "n"};
  const std::vector<std::string> words{"admin", "ab", "abab", "root", "x", "", "-12", "1234", "a\nb", "zzz"};
  auto pick = [&] { return words[r.below(words.size())]; };
  auto value = [&]() -> Value {
    switch (r.below(5)) {
      case 0: return Value::bytes(pick());
      case 1: return Value::integer(r.between(-2000, 2000));
      case 2: return Value::floating(1.5);
      case 3: return Value::record({shape, {Value::bytes(pick()), Value::integer(r.between(-99, 99999))}});
      default: return Value::array({Value::bytes(pick()), Value::integer(r.between(0, 500))});
    }
  };
  std::size_t bad = 0, total_matches = 0;
  for (int i = 0; i < 1000; ++i) {
    snapshot::Context c;
    for (std::uint64_t k = 0, n = r.below(4); k < n; ++k) c.args.push_back(value());
    for (std::uint64_t k = 0, n = r.below(3); k < n; ++k) c.globals["g" + std::to_string(k)] = value();
    for (std::uint64_t k = 0, n = r.below(3); k < n; ++k) {
      std::vector<Value> el;
      for (std::uint64_t j = 0, len = 1 + r.below(3); j < len; ++j) el.push_back(value());
      c.segments.allocate(vm::ValueKind::Bytes, vm::Origin::Heap, std::move(el));
    }
    vm::SystemInput s;
    for (std::uint64_t k = 0, n = r.below(4); k < n; ++k) s.argv.push_back(pick() + pick());
    for (std::uint64_t k = 0, n = r.below(6); k < n; ++k)
      s.stdin_data += r.chance(0.5) ? pick() : std::to_string(r.between(-2000, 99999));
    mapper::MapOptions o;
    o.min_match_len = 1 + r.below(4);
    auto got = mapper::build_mapping(c, s, o);
    auto want = brute_mapping(c, s, o.min_match_len);
    total_matches += want.matches.size();
    std::sort(got.matches.begin(), got.matches.end());
    if (got != want) ++bad;
  }
  double took = seconds_since(t0);
  verdict(2, bad == 0 && took < 30,
          "1000 random (context, input) pairs, " + std::to_string(total_matches) + " occurrences, " +
              std::to_string(bad) + " disagreements, " + fmt(took, 2) + "s");
}

// ---- criteria 4, 5, 8 on keycheck ----

bool found_via_lift(const report::CampaignReport& rep, lang::StmtId stmt) {
  for (const auto& e : rep.log) {
    auto g = parse_goal(e.goal);
    if (g && g->stmt == stmt) return e.source == "lift";
  }
  return false;
}

bool found_at_all(const report::CampaignReport& rep, lang::StmtId stmt) {
  for (const auto& e : rep.log) {
    auto g = parse_goal(e.goal);
    if (g && g->stmt == stmt) return true;
  }
  return false;
}

// A lift sought goal was found by its own lift run: the validation run is the
// only one charged at lift_elapsed, so its discoveries carry that timestamp.
bool password_check_lift_effective(const report::CampaignReport& rep, lang::StmtId stmt) {
  for (const auto& w : rep.winners) {
    if (w.lift != "effective") continue;
    for (const auto& e : rep.log) {
      auto g = parse_goal(e.goal);
      if (g && g->stmt == stmt && e.source == "lift" && e.elapsed == w.lift_elapsed) return true;
    }
  }
  return false;
}

void criterion4_5_8(const lang::Program& p) {
  auto t0 = std::chrono::steady_clock::now();
  const auto pw = *fixtures::marker_stmt(p, "keycheck", "password-check");
  int bridge_hits = 0, system_hits = 0;
  std::vector<report::CampaignReport> bridge;
  std::string per_seed;
  for (int seed = 0; seed < kSeeds; ++seed) {
    auto b = campaign(p, "keycheck", orch::Mode::Bridge, kKeycheckSteps, seed);
    auto s = campaign(p, "keycheck", orch::Mode::SystemOnly, kKeycheckSteps, seed);
    bool bh = found_via_lift(b, pw) && password_check_lift_effective(b, pw);
    bool sh = found_at_all(s, pw);
    bridge_hits += bh;
    system_hits += sh;
    per_seed += (bh ? "B" : "-");
    per_seed += (sh ? "S " : "- ");
    bridge.push_back(std::move(b));
  }
  double took = seconds_since(t0);
  verdict(4, bridge_hits >= 9 && system_hits <= 1 && took < 300,
          "password check reached via effective lift in " + std::to_string(bridge_hits) + "/10 bridge seeds, by " +
              std::to_string(system_hits) + "/10 system-only seeds [" + per_seed + "], budget " +
              std::to_string(kKeycheckSteps) + " steps, " + fmt(took) + "s");

  // 5: re-execute every lifted input and judge it against the goals logged
  // before its run; also replay every reported new system test.
  std::size_t lifted = 0, fp = 0, violations = 0, replayed = 0, replay_failures = 0;
  for (const auto& rep : bridge) {
    for (const auto& w : rep.winners) {
      if (!w.lifted_input) continue;
      ++lifted;
      std::set<std::string> known;
      for (const auto& e : rep.log)
        if (e.elapsed < w.lift_elapsed) known.insert(e.goal);
      auto r = vm::run_system(p, *w.lifted_input);
      bool changes = false;
      for (const auto& g : r.coverage) changes |= !known.count(lang::to_string(g));
      if (auto sig = orch::crash_signature(r.status)) {
        changes |= !known.count(std::string("crash:") + vm::crash_kind_name(sig->kind) + ":" +
                                std::to_string(sig->function));
      }
      const bool classified_fp = w.lift == "false-positive";
      fp += classified_fp;
      if (classified_fp == changes) ++violations;
    }
    for (const auto& t : rep.new_tests) {
      ++replayed;
      auto r = vm::run_system(p, t.input);
      std::set<std::string> got;
      for (const auto& g : r.coverage) got.insert(lang::to_string(g));
      if (auto sig = orch::crash_signature(r.status))
        got.insert(std::string("crash:") + vm::crash_kind_name(sig->kind) + ":" + std::to_string(sig->function));
      bool ok = !t.goals.empty();
      for (const auto& g : t.goals) ok = ok && got.count(g);
      replay_failures += !ok;
    }
  }
  verdict(5, violations == 0 && replay_failures == 0 && lifted > 0,
          std::to_string(lifted) + " lifts over 10 seeds, " + std::to_string(fp) + " false-positive, " +
              std::to_string(violations) + " misclassified; " + std::to_string(replayed) +
              " reported system tests replayed, " + std::to_string(replay_failures) + " failed to reproduce");

  std::vector<double> ratios;
  bool all = true;
  for (const auto& rep : bridge) {
    ratios.push_back(rep.speedup.ratio);
    all = all && rep.speedup.unit_samples > 0 && rep.speedup.system_samples > 0 && rep.speedup.ratio >= 10;
  }
  std::sort(ratios.begin(), ratios.end());
  const auto& s0 = bridge.front().speedup;
  verdict(8, all,
          "median system " + fmt(s0.median_system_ms, 2) + "ms vs unit " + fmt(s0.median_unit_ms, 4) +
              "ms on seed 0; ratio over 10 seeds min " + fmt(ratios.front()) + "x, max " + fmt(ratios.back()) + "x");
}

// ---- criterion 6: mini_dc ----

void criterion6() {
  auto p = fixtures::load("mini_dc");
  auto b = campaign(p, "mini_dc", orch::Mode::Bridge, kDcSteps, 0);
  auto s = campaign(p, "mini_dc", orch::Mode::SystemOnly, kDcSteps, 0);
  long diff = static_cast<long>(b.discovered_goals) - static_cast<long>(s.discovered_goals);
  verdict(6, b.tables.parameterized_carves <= 1 && std::labs(diff) <= 2,
          std::to_string(b.tables.parameterized_carves) + " parameterized of " + std::to_string(b.tables.carves) +
              " carves; bridge " + std::to_string(b.discovered_goals) + " vs system-only " +
              std::to_string(s.discovered_goals) + " of " + std::to_string(b.total_goals) + " goals at " +
              std::to_string(kDcSteps) + " steps");
}

// ---- criterion 7: mini_sed quit handler ----

void criterion7() {
  auto p = fixtures::load("mini_sed");
  const auto q = *fixtures::marker_stmt(p, "mini_sed", "quit-handler");
  const lang::BranchGoal quit{*p.find_function("parse_script"), q, lang::Outcome::Then};
  int found = 0, jumps = 0;
  std::string detail;
  for (int seed = 0; seed < kSeeds; ++seed) {
    auto rep = campaign(p, "mini_sed", orch::Mode::Bridge, kSedSteps, seed);
    std::optional<double> at;
    for (const auto& e : rep.log)
      if (e.goal == lang::to_string(quit)) at = e.elapsed;
    if (!at) {
      detail += "- ";
      continue;
    }
    ++found;
    // the jump: several goals share the discovery timestamp in the series
    std::size_t same = 0;
    for (const auto& pt : rep.series) same += pt.elapsed == *at;
    jumps += same >= 2;
    detail += std::to_string(same) + " ";
  }
  verdict(7, found >= 8 && jumps >= 8,
          "quit branch found in " + std::to_string(found) + "/10 seeds, with a multi-goal jump in " +
              std::to_string(jumps) + " [goals at discovery: " + detail + "], budget " + std::to_string(kSedSteps) +
              " steps");
}

// ---- criterion 9 ----

bool same_log(const report::CampaignReport& a, const report::CampaignReport& b) {
  if (a.log.size() != b.log.size()) return false;
  for (std::size_t i = 0; i < a.log.size(); ++i)
    if (a.log[i].goal != b.log[i].goal || a.log[i].elapsed != b.log[i].elapsed || a.log[i].source != b.log[i].source)
      return false;
  return true;
}

void criterion9() {
  std::string detail;
  bool ok = true;
  for (auto [subject, steps, seed] : {std::tuple{"mini_sed", kSedSteps, 3}, std::tuple{"keycheck", 3'000'000ul, 5},
                                      std::tuple{"mini_cut", 500'000ul, 1}}) {
    auto p = fixtures::load(subject);
    for (auto mode : {orch::Mode::Bridge, orch::Mode::SystemOnly}) {
      auto a = campaign(p, subject, mode, steps, seed);
      auto b = campaign(p, subject, mode, steps, seed);
      bool same = same_log(a, b) && a.tables.lifts == b.tables.lifts;
      ok = ok && same && !a.log.empty();
      detail += std::string(subject) + "/" + orch::mode_name(mode) + " " + std::to_string(a.log.size()) +
                " entries " + (same ? "identical" : "DIFFER") + "; ";
    }
  }
  verdict(9, ok, detail);
}

}  // namespace

int main() {
  try {
    auto t0 = std::chrono::steady_clock::now();
    auto carves = collect_carves();
    double collect = seconds_since(t0);
    criterion1(carves, collect);
    criterion2();
    criterion3(carves);
    auto keycheck = fixtures::load("keycheck");
    criterion4_5_8(keycheck);
    criterion6();
    criterion7();
    criterion9();
  } catch (const std::exception& e) {
    for (const auto& [n, l] : lines) std::cout << l << "\n";
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 2;
  }
  for (const auto& [n, l] : lines) std::cout << l << "\n";
  std::cout << (failures ? std::to_string(failures) + " criterion(s) failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
