#include "tgb/orchestrator/campaign.hpp"

#include <algorithm>

#include "tgb/lang/parser.hpp"
#include "tgb/orchestrator/select.hpp"
#include "tgb/sysgen/corpus.hpp"
#include "tgb/unitgen/fuzz.hpp"

namespace tgb::orch {

const char* mode_name(Mode m) { return m == Mode::Bridge ? "bridge" : "system-only"; }

Mode mode_from_name(const std::string& s) {
  if (s == "bridge") return Mode::Bridge;
  if (s == "system-only") return Mode::SystemOnly;
  throw ConfigError("unknown mode '" + s + "' (expected bridge or system-only)");
}

lang::Program load_subject(const std::string& path) {
  try {
    return lang::parse_file(path);
  } catch (const lang::ParseError& e) {
    throw SubjectLoadError(path + ": " + e.what());
  } catch (const IoError& e) {
    throw SubjectLoadError(e.what());
  }
}

void validate_config(const RunConfig& cfg) {
  if (cfg.step_budget ? *cfg.step_budget == 0 : !(cfg.budget_seconds > 0))
    throw ConfigError("budget must be positive");
  if (cfg.n_per_seed < 1) throw ConfigError("n_per_seed must be at least 1");
  if (cfg.unit_budget < 1) throw ConfigError("unit budget must be at least 1");
  if (cfg.system.step_limit < 10) throw ConfigError("step limit must be at least 10");
  if (cfg.system.max_dump_bytes < 1) throw ConfigError("max dump bytes must be positive");
  if (cfg.map.min_match_len < 1) throw ConfigError("min match length must be at least 1");
}

std::string goal_label(const LogEntry& e) {
  if (e.goal) return lang::to_string(*e.goal);
  return std::string("crash:") + vm::crash_kind_name(e.crash->kind) + ":" + std::to_string(e.crash->function);
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

double ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

class Campaign {
 public:
  Campaign(const lang::Program& p, const std::vector<vm::SystemInput>& seeds, const RunConfig& cfg)
      : p_(p),
        cfg_(cfg),
        seeds_(seeds),
        clock_(cfg.step_budget.has_value()),
        sys_rng_(sysgen::Rng(cfg.rng_seed).child(1)),
        unit_rng_(sysgen::Rng(cfg.rng_seed).child(2)) {
    unit_opts_ = cfg.system;
    unit_opts_.step_limit = std::max<std::uint64_t>(1, cfg.system.step_limit / 10);
  }

  report::CampaignReport run() {
    const bool bridge = cfg_.mode == Mode::Bridge;
    for (std::size_t i = 0; i < seeds_.size(); ++i)
      execute(seeds_[i], Source::SystemSeed, "seed-" + std::to_string(i), bridge);
    if (bridge) {
      if (!exhausted()) next_batch();
      while (!exhausted()) {
        auto idx = select_next(pool_, cov_, p_);
        if (!idx) {
          next_batch();
          continue;
        }
        unit_round(*idx);
      }
    } else {
      while (!exhausted()) next_batch();
    }
    return build_report();
  }

 private:
  bool exhausted() const {
    return cfg_.step_budget ? clock_.steps() >= *cfg_.step_budget : clock_.elapsed() >= cfg_.budget_seconds;
  }

  vm::RunResult system_run(const vm::SystemInput& in, bool traced) {
    vm::RunResult r;
    if (traced) {
      try {
        r = vm::run_with_tracing(p_, in, cfg_.system);
      } catch (const vm::TraceOverflow& e) {
        r = e.result();
      }
    } else {
      r = vm::run_system(p_, in, cfg_.system);
    }
    clock_.charge(std::max<std::uint64_t>(r.steps, 1));  // an empty main still costs an execution
    system_ms_.push_back(ms(r.wall));
    ++tables_.system_runs;
    return r;
  }

  void execute(const vm::SystemInput& in, Source source, const std::string& id, bool carve) {
    vm::RunResult r = system_run(in, carve);
    cov_.merge_run(r, source, clock_);
    if (carve) add_carves(r, {id, in});
  }

  void add_carves(const vm::RunResult& r, const snapshot::TestOrigin& origin) {
    auto carved = snapshot::carve(p_, r, cfg_.carve, origin);
    for (auto& c : carved.tests) {
      const auto f = c.start.function;
      ++tables_.carves;
      carved_functions_.insert(f);
      if (live_[f] >= cfg_.pool_cap_per_function) continue;
      mapper::Mapping m = mapper::build_mapping(c, c.origin.input, cfg_.map);
      if (!m.parameters.empty()) {
        ++tables_.parameterized_carves;
        parameterized_functions_.insert(f);
      }
      ++live_[f];
      pool_.entries.push_back({std::move(c), std::move(m), false});
    }
  }

  void next_batch() {
    sysgen::Rng rng = sys_rng_.child(batch_++);
    const auto& base = cfg_.mode == Mode::Bridge ? bridge_seeds() : seeds_;
    auto batch = sysgen::generate_batch(base, cfg_.n_per_seed, rng, cfg_.mutate);
    for (std::size_t i = 0; i < batch.size() && !exhausted(); ++i)
      execute(batch[i], Source::SystemGen, "gen-" + std::to_string(generated_++), cfg_.mode == Mode::Bridge);
  }

  const std::vector<vm::SystemInput>& bridge_seeds() {
    if (extra_seeds_.empty()) return seeds_;
    merged_seeds_ = seeds_;
    merged_seeds_.insert(merged_seeds_.end(), extra_seeds_.begin(), extra_seeds_.end());
    return merged_seeds_;
  }

  void unit_round(std::size_t idx) {
    PoolEntry& entry = pool_.entries[idx];
    entry.consumed = true;
    const auto f = entry.carve.start.function;
    --live_[f];

    sysgen::Rng rng = unit_rng_.child(rounds_);
    unitgen::FuzzResult fr;
    try {
      unitgen::FuzzOptions opts{unit_opts_};
      fr = unitgen::fuzz_unit(p_, entry.carve, entry.mapping, cfg_.unit_budget, cov_, rng, opts);
    } catch (const unitgen::NoParameters&) {
      ++tables_.no_parameter_carves;
      return;
    }
    ++rounds_;
    ++pool_.selections[f];
    ++tables_.unit_rounds;
    tables_.unit_executions += fr.executions;
    clock_.charge(std::max<std::uint64_t>(fr.steps, fr.executions));
    unit_ms_.insert(unit_ms_.end(), fr.exec_ms.begin(), fr.exec_ms.end());

    // the entry may move once lifts add carves
    const snapshot::CarvedTest carve = entry.carve;
    const mapper::Mapping mapping = entry.mapping;
    for (auto& o : fr.outcomes) {
      ++tables_.unit_winners;
      report::WinningAssignment w;
      w.function = carve.start.function_name;
      w.carve_origin = carve.origin.id;
      w.call_index = carve.start.call_index;
      w.values = o.assignment.values;
      w.provenance = o.assignment.provenance;
      for (const auto& g : o.new_goals) w.new_goals.push_back(lang::to_string(g));
      w.crashed = o.crashed;
      w.lift = "unlifted";
      if (!exhausted()) lift_winner(carve, mapping, o, w);
      winners_.push_back(std::move(w));
    }
  }

  void lift_winner(const snapshot::CarvedTest& carve, const mapper::Mapping& mapping, const unitgen::UnitOutcome& o,
                   report::WinningAssignment& w) {
    lifter::LiftedInput li = lifter::lift(mapping, o.assignment, carve.origin.input, cfg_.lift);
    ++tables_.lifts;
    const auto log_before = cov_.log().size();
    lifter::Validation v = lifter::validate(p_, li, o.new_goals,
                                            o.crashed ? crash_signature(o.status) : std::nullopt, cov_, clock_,
                                            cfg_.system);
    system_ms_.push_back(ms(v.run.wall));
    ++tables_.system_runs;
    w.lifted_input = li.input;
    w.lift_elapsed = clock_.elapsed();
    w.lift = lifter::classification_name(v.outcome.classification);

    switch (v.outcome.classification) {
      case lifter::Classification::Effective: ++tables_.effective; break;
      case lifter::Classification::OtherGoal: ++tables_.other_goal; break;
      case lifter::Classification::FalsePositive: ++tables_.false_positive; return;
    }

    report::NewSystemTest t;
    t.input = li.input;
    for (std::size_t i = log_before; i < cov_.log().size(); ++i) t.goals.push_back(goal_label(cov_.log()[i]));
    t.classification = w.lift;
    t.function = carve.start.function_name;
    if (v.outcome.classification == lifter::Classification::Effective) {
      if (!cfg_.corpus_out.empty()) {
        t.corpus_path = sysgen::write_corpus(cfg_.corpus_out, {li.input}, written_++).front();
      }
      if (cfg_.recarve_effective) {
        add_carves(v.run, {"lift-" + std::to_string(lifted_++), li.input});
        extra_seeds_.push_back(li.input);
      }
    }
    new_tests_.push_back(std::move(t));
  }

  report::CampaignReport build_report() {
    report::CampaignReport r;
    r.program = cfg_.program_path;
    r.mode = mode_name(cfg_.mode);
    r.rng_seed = cfg_.rng_seed;
    r.deterministic_clock = cfg_.step_budget.has_value();
    r.config = {{"mode", r.mode},
                {"budget_seconds", cfg_.budget_seconds},
                {"step_budget", cfg_.step_budget ? nlohmann::json(*cfg_.step_budget) : nlohmann::json(nullptr)},
                {"n_per_seed", cfg_.n_per_seed},
                {"unit_budget", cfg_.unit_budget},
                {"rng_seed", cfg_.rng_seed},
                {"step_limit", cfg_.system.step_limit},
                {"unit_step_limit", unit_opts_.step_limit},
                {"max_dump_bytes", cfg_.system.max_dump_bytes},
                {"min_match_len", cfg_.map.min_match_len},
                {"first_occurrence_only", cfg_.lift.first_occurrence_only},
                {"recarve_effective", cfg_.recarve_effective},
                {"seeds", seeds_.size()}};

    const auto all = lang::enumerate_goals(p_);
    r.total_goals = all.size();
    r.discovered_goals = cov_.discovered().size();
    r.elapsed = clock_.elapsed();
    std::size_t found = 0;
    for (const auto& e : cov_.log()) {
      r.log.push_back({e.elapsed, e.wall_ms, goal_label(e), source_name(e.source)});
      if (e.goal) {
        ++found;
        r.series.push_back({e.elapsed, all.empty() ? 0.0 : static_cast<double>(found) / static_cast<double>(all.size())});
      } else {
        r.crashes.push_back(goal_label(e));
      }
    }

    tables_.functions_total = p_.functions.size();
    tables_.functions_carved = carved_functions_.size();
    tables_.functions_parameterized = parameterized_functions_.size();
    tables_.pct_lifted = tables_.unit_winners ? 100.0 * static_cast<double>(tables_.lifts) / static_cast<double>(tables_.unit_winners) : 0;
    tables_.pct_effective = tables_.lifts ? 100.0 * static_cast<double>(tables_.effective) / static_cast<double>(tables_.lifts) : 0;
    r.tables = tables_;

    r.speedup.median_system_ms = median(system_ms_);
    r.speedup.median_unit_ms = median(unit_ms_);
    r.speedup.system_samples = system_ms_.size();
    r.speedup.unit_samples = unit_ms_.size();
    r.speedup.ratio = r.speedup.median_unit_ms > 0 ? r.speedup.median_system_ms / r.speedup.median_unit_ms : 0;
    r.new_tests = std::move(new_tests_);
    r.winners = std::move(winners_);
    return r;
  }

  const lang::Program& p_;
  const RunConfig& cfg_;
  const std::vector<vm::SystemInput>& seeds_;
  std::vector<vm::SystemInput> extra_seeds_;
  std::vector<vm::SystemInput> merged_seeds_;
  Clock clock_;
  CoverageMap cov_;
  CarvePool pool_;
  sysgen::Rng sys_rng_;
  sysgen::Rng unit_rng_;
  vm::RunOptions unit_opts_;
  std::uint64_t batch_ = 0;
  std::uint64_t rounds_ = 0;
  std::size_t generated_ = 0;
  std::size_t lifted_ = 0;
  std::size_t written_ = 0;
  std::map<lang::FunctionId, std::size_t> live_;
  std::set<lang::FunctionId> carved_functions_;
  std::set<lang::FunctionId> parameterized_functions_;
  std::vector<double> system_ms_;
  std::vector<double> unit_ms_;
  report::Tables tables_;
  std::vector<report::NewSystemTest> new_tests_;
  std::vector<report::WinningAssignment> winners_;
};

}  // namespace

report::CampaignReport run_campaign(const lang::Program& p, const std::vector<vm::SystemInput>& seeds,
                                    const RunConfig& cfg) {
  if (seeds.empty()) throw ConfigError("at least one seed input is required");
  validate_config(cfg);
  return Campaign(p, seeds, cfg).run();
}

}  // namespace tgb::orch
