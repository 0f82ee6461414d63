// tgb: command-line front end for campaigns, replays, carving and goal listing.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tgb/lang/goals.hpp"
#include "tgb/orchestrator/campaign.hpp"
#include "tgb/snapshot/snapshot_io.hpp"
#include "tgb/sysgen/corpus.hpp"

namespace fs = std::filesystem;
using namespace tgb;

namespace {

void print_status(const lang::Program& p, const vm::RunResult& r) {
  std::cout << "status: " << vm::describe(p, r.status) << "\n";
  std::cout << "steps: " << r.steps << "\n";
  std::cout << "coverage: " << r.coverage.size() << " goal(s)\n";
  for (const auto& g : r.coverage) std::cout << "  " << lang::describe(p, g) << "\n";
}

int cmd_goals(const std::string& program, bool per_function) {
  auto p = orch::load_subject(program);
  auto goals = lang::enumerate_goals(p);
  std::cout << goals.size() << "\n";
  if (per_function) {
    for (const auto& f : p.functions)
      std::cout << f.name << "\t" << lang::goals_in_function(p, f.id).size() << "\n";
  } else {
    for (const auto& g : goals) {
      auto pos = lang::stmt_position(p, g.stmt);
      std::cout << lang::describe(p, g) << "\t" << (pos ? std::to_string(pos->line) : "?") << "\n";
    }
  }
  return 0;
}

int cmd_replay_snapshot(const std::string& program, const std::string& snap) {
  auto p = orch::load_subject(program);
  auto c = snapshot::load_snapshot(snap);
  auto f = p.find_function(c.start.function_name);
  if (!f || *f != c.start.function)
    throw ConfigError("snapshot starts at '" + c.start.function_name + "', which does not match the program");
  auto r = snapshot::replay(p, c);
  print_status(p, r);
  if (r.return_value) std::cout << "return: " << vm::format_value(*r.return_value) << "\n";
  const bool same = r.coverage == c.observed_coverage;
  std::cout << "observed coverage reproduced: " << (same ? "yes" : "no") << "\n";
  return r.status.crashed() ? 1 : 0;
}

int cmd_replay_input(const std::string& program, const std::string& input) {
  auto p = orch::load_subject(program);
  auto in = sysgen::read_input_file(input);
  auto r = vm::run_system(p, in);
  std::cout.write(r.output.data(), static_cast<std::streamsize>(r.output.size()));
  if (!r.output.empty() && r.output.back() != '\n') std::cout << "\n";
  print_status(p, r);
  return r.status.crashed() ? 1 : 0;
}

int cmd_carve(const std::string& program, const std::string& input, const std::string& out_dir,
              std::size_t max_dump, std::size_t min_match) {
  auto p = orch::load_subject(program);
  auto in = sysgen::read_input_file(input);
  vm::RunOptions opts;
  opts.max_dump_bytes = max_dump;
  vm::RunResult r;
  try {
    r = vm::run_with_tracing(p, in, opts);
  } catch (const vm::TraceOverflow&) {
    std::cerr << "trace limit exceeded; nothing carved\n";
    return 1;
  }
  auto carved = snapshot::carve(p, r, {}, {fs::path(input).filename().string(), in});
  fs::create_directories(out_dir);
  mapper::MapOptions mo;
  mo.min_match_len = min_match;
  std::size_t i = 0;
  for (const auto& c : carved.tests) {
    auto m = mapper::build_mapping(c, in, mo);
    char name[32];
    std::snprintf(name, sizeof name, "c%03zu.snap", i++);
    const auto path = (fs::path(out_dir) / name).string();
    snapshot::save_snapshot(c, path, {{"program", program}, {"matches", mapper::mapping_to_json(m)}});
    std::cout << path << "\t" << c.start.function_name << "#" << c.start.call_index << "\tparams="
              << m.parameters.size() << (c.context.truncated ? "\ttruncated" : "") << "\n";
  }
  const auto& s = carved.skipped;
  std::cout << "carved " << s.carved << " of " << s.calls << " call(s); skipped: cap " << s.over_cap << ", no dump "
            << s.no_dump << ", unfinished " << s.unfinished << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carve unit tests from system runs, fuzz them, lift findings back to system inputs"};
  app.require_subcommand(1);

  std::string program, seeds_dir, mode = "bridge", report_path, corpus_out, series_path;
  double budget = 60;
  std::uint64_t det_steps = 0, rng_seed = 0, step_limit = 5'000'000;
  std::size_t n_per_seed = 10, unit_budget = 200, max_dump = 65536, min_match = 3;
  bool first_only = false, no_recarve = false;

  auto* run = app.add_subcommand("run", "run a campaign");
  run->add_option("--program", program, "MiniLang subject")->required()->check(CLI::ExistingFile);
  run->add_option("--seeds", seeds_dir, "directory of seed *.input files")->required()->check(CLI::ExistingDirectory);
  run->add_option("--mode", mode, "bridge or system-only")->check(CLI::IsMember({"bridge", "system-only"}))
      ->capture_default_str();
  run->add_option("--budget", budget, "wall-clock budget in seconds")->capture_default_str();
  run->add_option("--deterministic-clock", det_steps, "budget in VM steps instead of seconds");
  run->add_option("--rng-seed", rng_seed, "random seed")->capture_default_str();
  run->add_option("--n-per-seed", n_per_seed, "generated system tests per seed and batch")->capture_default_str();
  run->add_option("--unit-budget", unit_budget, "unit executions per round")->capture_default_str();
  run->add_option("--max-dump-bytes", max_dump, "context size limit per carve")->capture_default_str();
  run->add_option("--min-match-len", min_match, "shortest value matched against inputs")->capture_default_str();
  run->add_option("--step-limit", step_limit, "VM steps per system execution")->capture_default_str();
  run->add_flag("--first-occurrence-only", first_only, "lift only the first occurrence of a value");
  run->add_flag("--no-recarve", no_recarve, "do not carve effective lifted inputs");
  run->add_option("--report", report_path, "write the campaign report here");
  run->add_option("--series", series_path, "write the coverage series here");
  run->add_option("--corpus-out", corpus_out, "directory for effective lifted inputs");

  std::string snap, input;
  auto* replay = app.add_subcommand("replay", "re-execute a stored input or carved test");
  replay->add_option("--program", program, "MiniLang subject")->required()->check(CLI::ExistingFile);
  auto* snap_opt = replay->add_option("--snapshot", snap, "carved test")->check(CLI::ExistingFile);
  auto* input_opt = replay->add_option("--input", input, "system input file")->check(CLI::ExistingFile);
  snap_opt->excludes(input_opt);

  std::string out_dir = "carves";
  auto* carve = app.add_subcommand("carve", "run one input with tracing and write its carves");
  carve->add_option("--program", program, "MiniLang subject")->required()->check(CLI::ExistingFile);
  carve->add_option("--input", input, "system input file")->required()->check(CLI::ExistingFile);
  carve->add_option("--out", out_dir, "output directory")->capture_default_str();
  carve->add_option("--max-dump-bytes", max_dump, "context size limit per carve")->capture_default_str();
  carve->add_option("--min-match-len", min_match, "shortest value matched against inputs")->capture_default_str();

  bool per_function = false;
  auto* goals = app.add_subcommand("goals", "list branch goals");
  goals->add_option("--program", program, "MiniLang subject")->required()->check(CLI::ExistingFile);
  goals->add_flag("--per-function", per_function, "print counts per function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*goals) return cmd_goals(program, per_function);
    if (*carve) return cmd_carve(program, input, out_dir, max_dump, min_match);
    if (*replay) {
      if (!snap.empty()) return cmd_replay_snapshot(program, snap);
      if (!input.empty()) return cmd_replay_input(program, input);
      std::cerr << "replay needs --snapshot or --input\n";
      return 2;
    }

    orch::RunConfig cfg;
    cfg.mode = orch::mode_from_name(mode);
    cfg.budget_seconds = budget;
    if (det_steps) cfg.step_budget = det_steps;
    cfg.rng_seed = rng_seed;
    cfg.n_per_seed = n_per_seed;
    cfg.unit_budget = unit_budget;
    cfg.system.step_limit = step_limit;
    cfg.system.max_dump_bytes = max_dump;
    cfg.map.min_match_len = min_match;
    cfg.lift.first_occurrence_only = first_only;
    cfg.recarve_effective = !no_recarve;
    cfg.corpus_out = corpus_out;
    cfg.program_path = program;
    auto p = orch::load_subject(program);
    auto seeds = sysgen::read_corpus(seeds_dir);
    auto rep = orch::run_campaign(p, seeds, cfg);
    if (!report_path.empty()) report::write_report(rep, report_path);
    if (!series_path.empty()) report::emit_series(rep, series_path);
    std::cout << "mode " << rep.mode << ": " << rep.discovered_goals << "/" << rep.total_goals << " goals, "
              << rep.tables.system_runs << " system runs, " << rep.tables.unit_executions << " unit executions, "
              << rep.tables.lifts << " lifts (" << rep.tables.effective << " effective), " << rep.new_tests.size()
              << " new system test(s)\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
