#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "naive_interp.hpp"
#include "tgb/lang/parser.hpp"
#include "tgb/vm/vm.hpp"

using namespace tgb;
using namespace tgb::vm;
using fixtures::input;

namespace {

RunResult run(const std::string& src, SystemInput in = {}, RunOptions o = {}) {
  return run_system(lang::parse(src), in, o);
}

std::string out(const std::string& src, SystemInput in = {}) { return run(src, std::move(in)).output; }

lang::BranchGoal goal_at(const lang::Program& p, lang::StmtId s, lang::Outcome o) {
  for (const auto& g : lang::enumerate_goals(p))
    if (g.stmt == s && g.outcome == o) return g;
  throw std::runtime_error("no such goal");
}

}  // namespace

TEST(Vm, EmptyMainExitsZero) {
  auto r = run("fn main(){}", input({"a"}, "b"));
  EXPECT_EQ(r.status.kind, RunStatus::Kind::Exit);
  EXPECT_EQ(r.status.code, 0);
  EXPECT_TRUE(r.coverage.empty());
}

TEST(Vm, ExitCodeFromMain) {
  EXPECT_EQ(run("fn main() -> int { return 7; }").status.code, 7);
}

TEST(Vm, IntegerArithmeticWraps) {
  EXPECT_EQ(out("fn main(){ print(9223372036854775807 + 1); }"), "-9223372036854775808");
  EXPECT_EQ(out("fn main(){ print(-9223372036854775808 / -1); }"), "-9223372036854775808");
  EXPECT_EQ(out("fn main(){ print(-9223372036854775808 % -1); }"), "0");
  EXPECT_EQ(out("fn main(){ print(-7 / 2); print(\" \"); print(-7 % 2); }"), "-3 -1");
}

TEST(Vm, CrashKinds) {
  EXPECT_EQ(run("fn main(){ print(1 / 0); }").status.crash, CrashKind::DivZero);
  EXPECT_EQ(run("fn main(){ print(1.0 / 0.0); }").status.crash, CrashKind::DivZero);
  EXPECT_EQ(run("fn main(){ let b = \"ab\"; print(b[2]); }").status.crash, CrashKind::Oob);
  EXPECT_EQ(run("fn main(){ abort(\"no\"); }").status.crash, CrashKind::Abort);
  EXPECT_EQ(run("fn main(){ print(1 + \"a\"); }").status.crash, CrashKind::TypeError);
  EXPECT_EQ(run("fn main(){ if (1 == \"a\") {} }").status.crash, CrashKind::TypeError);
  EXPECT_EQ(run("global r: ref int; fn main(){ print(r[0]); }").status.crash, CrashKind::Oob);
  auto r = run("fn main(){ abort(\"boom\"); }");
  EXPECT_TRUE(r.status.crashed());
  EXPECT_EQ(r.status.message, "boom");
  EXPECT_EQ(r.status.crash_pos.line, 1u);
}

TEST(Vm, BuiltinsBehave) {
  EXPECT_EQ(out("fn main(){ print(arg_count()); print(arg(1)); }", input({"x", "yz"})), "2yz");
  EXPECT_EQ(out("fn main(){ print(read_all_input()); }", input({}, "hello")), "hello");
  EXPECT_EQ(out("fn main(){ print(len(\"abc\")); print(byte_at(\"abc\", 1)); }"), "398");
  EXPECT_EQ(out("fn main(){ print(slice(\"hello\", 1, 3)); print(concat(\"ab\", \"cd\")); }"), "elabcd");
  EXPECT_EQ(out("fn main(){ print(parse_int(\"-42x\")); print(\",\"); print(parse_int(\"x\")); }"), "-42,0");
  EXPECT_EQ(out("fn main(){ print(to_string(12)); }"), "12");
  EXPECT_EQ(out("fn main(){ let r = alloc_array(3, 5); r[1] = 7; print(r[0] + r[1] + len(r)); }"), "15");
  EXPECT_EQ(run("fn main(){ print(arg(0)); }").status.crash, CrashKind::Oob);
}

TEST(Vm, RefArithmeticAndRemainingLength) {
  EXPECT_EQ(out("fn main(){ let r = alloc_array(5, 0); let s = r + 2; s[0] = 9; print(r[2]); print(len(s)); }"), "93");
  EXPECT_EQ(run("fn main(){ let r = alloc_array(2, 0); let s = r + 3; }").status.crash, CrashKind::Oob);
}

TEST(Vm, BytesAreValues) {
  EXPECT_EQ(out("fn main(){ let a = \"ab\"; let b = a; b[0] = 120; print(a); print(b); }"), "abxb");
  EXPECT_EQ(out("fn main(){ let a = \"a\"; a[0] = 353; print(byte_at(a, 0)); }"), "97");
}

TEST(Vm, RecordsAndArrays) {
  const char* src = R"(
record P { x: int, name: bytes }
fn main() {
  let p = P{name: "n", x: 3};
  p.x = p.x + 1;
  let a = [1, 2, 3];
  a[2] = 9;
  let r = alloc_array(1, p);
  r->x = 10;
  print(p.x); print(p.name); print(a[2]); print(r[0].x);
}
)";
  EXPECT_EQ(out(src), "4n910");
}

TEST(Vm, StepLimitExhaustsBudget) {
  RunOptions o;
  o.step_limit = 1000;
  auto r = run("fn main(){ while (1) {} }", {}, o);
  EXPECT_EQ(r.status.kind, RunStatus::Kind::BudgetExhausted);
  EXPECT_FALSE(r.status.crashed());
  auto deep = run("fn f(n: int) -> int { return f(n + 1); } fn main(){ f(0); }");
  EXPECT_EQ(deep.status.kind, RunStatus::Kind::BudgetExhausted);
}

TEST(Vm, LoopExitMeansConditionFalse) {
  auto p = lang::parse("fn main(){ while (1) { break; } }");
  auto r = run_system(p, {});
  ASSERT_EQ(r.coverage.size(), 1u);
  EXPECT_EQ(r.coverage.begin()->outcome, lang::Outcome::LoopEnter);
}

TEST(Vm, Deterministic) {
  auto p = fixtures::load("mini_sed");
  auto in = fixtures::seeds("mini_sed")[0];
  auto a = run_with_tracing(p, in);
  auto b = run_with_tracing(p, in);
  std::ostringstream ta, tb;
  write_trace(ta, p, a.trace);
  write_trace(tb, p, b.trace);
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_EQ(a.coverage, b.coverage);
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.output, b.output);
}

TEST(Keycheck, UnknownUserFailsLogin) {
  auto p = fixtures::load("keycheck");
  auto pw = *fixtures::marker_stmt(p, "keycheck", "password-check");
  auto r = run_system(p, input({"d7wfv"}, "xczZ7tz"));
  EXPECT_EQ(r.status.kind, RunStatus::Kind::Exit);
  EXPECT_EQ(r.status.code, 1);
  EXPECT_FALSE(r.coverage.count(goal_at(p, pw, lang::Outcome::Then)));
  EXPECT_FALSE(r.coverage.count(goal_at(p, pw, lang::Outcome::Else)));
}

TEST(Keycheck, AdminReachesPasswordCheck) {
  auto p = fixtures::load("keycheck");
  auto pw = *fixtures::marker_stmt(p, "keycheck", "password-check");
  auto r = run_system(p, input({"admin"}, "xczZ7tz"));
  EXPECT_EQ(r.status.code, 2);
  EXPECT_TRUE(r.coverage.count(goal_at(p, pw, lang::Outcome::Else)));
  auto ok = run_system(p, input({"admin"}, "4dm1n-S3cret"));
  EXPECT_EQ(ok.status.code, 0);
  EXPECT_TRUE(ok.coverage.count(goal_at(p, pw, lang::Outcome::Then)));
}

TEST(Trace, EmptyProgramIsCallAndReturn) {
  auto r = run_with_tracing(lang::parse("fn main(){}"), {});
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<CallEvent>(r.trace[0]));
  EXPECT_TRUE(std::holds_alternative<ReturnEvent>(r.trace[1]));
}

TEST(Trace, OneGlobalStorePerWrite) {
  auto r = run_with_tracing(lang::parse("global g: int; fn main(){ g = 4; }"), {});
  std::size_t stores = 0;
  for (const auto& e : r.trace)
    if (auto* s = std::get_if<GlobalStoreEvent>(&e)) {
      ++stores;
      EXPECT_EQ(s->global, "g");
    }
  EXPECT_EQ(stores, 2u);  // zero-initialisation, then the write
}

TEST(Trace, MiniDcEventCountsMatchNaiveInterpreter) {
  auto p = fixtures::load("mini_dc");
  auto in = input({}, "1 2 +");
  auto r = run_with_tracing(p, in);
  auto n = oracle::naive_run(p, in);
  EXPECT_EQ(oracle::count_events(r.trace), n.events);
  EXPECT_EQ(r.coverage, n.coverage);
}

TEST(Trace, OverflowCarriesTheCompletedRun) {
  RunOptions o;
  o.trace_limit = 10;
  auto p = fixtures::load("mini_sed");
  auto in = fixtures::seeds("mini_sed")[0];
  try {
    run_with_tracing(p, in, o);
    FAIL() << "expected TraceOverflow";
  } catch (const TraceOverflow& e) {
    EXPECT_TRUE(e.result().trace_overflowed);
    EXPECT_EQ(e.result().trace.size(), 10u);
    EXPECT_EQ(e.result().coverage, run_system(p, in).coverage);
  }
}

TEST(Trace, JsonRoundTrip) {
  auto p = fixtures::load("keycheck");
  auto r = run_with_tracing(p, fixtures::seeds("keycheck")[0]);
  std::stringstream s;
  write_trace(s, p, r.trace);
  auto back = read_trace(s, p);
  std::stringstream again;
  write_trace(again, p, back);
  EXPECT_EQ(s.str(), again.str());
  EXPECT_EQ(back.size(), r.trace.size());
}

TEST(Trace, FieldNames) {
  auto p = lang::parse("global g: ref int = alloc_array(2, 0); fn f(x: bytes) -> int { if (len(x) > 0) {} return 1; } fn main(){ f(\"a\"); }");
  auto r = run_with_tracing(p, {});
  std::set<std::string> kinds;
  for (const auto& e : r.trace) {
    auto j = event_to_json(p, e);
    kinds.insert(j["kind"]);
    if (j["kind"] == "call") {
      EXPECT_TRUE(j.contains("call_index"));
      EXPECT_TRUE(j.contains("fn"));
      EXPECT_TRUE(j.contains("args"));
    }
    if (j["kind"] == "alloc") {
      EXPECT_TRUE(j.contains("segment"));
      EXPECT_TRUE(j.contains("len"));
    }
    if (j["kind"] == "global_store") {
      EXPECT_TRUE(j.contains("global"));
      EXPECT_TRUE(j.contains("value"));
    }
    if (j["kind"] == "branch") EXPECT_TRUE(j.contains("goal"));
  }
  EXPECT_EQ(kinds, (std::set<std::string>{"alloc", "branch", "call", "global_store", "return"}));
}

TEST(CallFunction, IdentityCoversNothing) {
  auto p = lang::parse("fn id(x: int) -> int { return x; } fn main(){}");
  auto r = call_function(p, *p.find_function("id"), {Value::integer(7)}, {});
  EXPECT_EQ(r.status.kind, RunStatus::Kind::Exit);
  EXPECT_TRUE(r.coverage.empty());
  ASSERT_TRUE(r.return_value);
  EXPECT_EQ(r.return_value->as_int(), 7);
}

TEST(CallFunction, ArityAndTypes) {
  auto p = lang::parse("fn f(x: int) -> int { return x; } fn main(){}");
  EXPECT_THROW(call_function(p, *p.find_function("f"), {}, {}), ArityMismatch);
  EXPECT_THROW(call_function(p, 42, {}, {}), lang::UnknownFunction);
  auto r = call_function(p, *p.find_function("f"), {Value::bytes("x")}, {});
  EXPECT_EQ(r.status.crash, CrashKind::TypeError);
}

TEST(CallFunction, DanglingReferenceIsAUnitCrash) {
  auto p = lang::parse("fn f(r: ref int) -> int { return r[0]; } fn main(){}");
  auto r = call_function(p, *p.find_function("f"), {Value::ref({5, 0})}, {});
  EXPECT_TRUE(r.status.crashed());
  EXPECT_EQ(r.status.crash, CrashKind::Oob);
  EXPECT_NE(r.status.message.find("context incomplete"), std::string::npos);
}

TEST(CallFunction, MissingGlobalIsContextIncomplete) {
  auto p = lang::parse("global g: int; fn f() -> int { return g; } fn main(){}");
  auto r = call_function(p, *p.find_function("f"), {}, {});
  EXPECT_TRUE(r.status.crashed());
}
