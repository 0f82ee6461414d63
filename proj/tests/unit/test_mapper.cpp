#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tgb/mapper/mapping.hpp"
#include "tgb/snapshot/carve.hpp"
#include "tgb/vm/vm.hpp"

using namespace tgb;
using namespace tgb::mapper;
using vm::Value;

TEST(Mapping, UserNameLeafIsAParameter) {
  snapshot::Context c;
  c.args.push_back(Value::bytes("d7wfv"));
  auto m = build_mapping(c, fixtures::input({"d7wfv"}, "xczZ7tz"));
  EXPECT_EQ(m.parameters, std::set<std::string>{"arg[0]"});
  ASSERT_EQ(m.matches.size(), 1u);
  EXPECT_EQ(m.matches[0].input, 0u);
  EXPECT_EQ(m.matches[0].start, 0u);
  EXPECT_EQ(m.matches[0].end, 5u);
  EXPECT_EQ(m.unmatched_inputs, std::set<std::size_t>{1});
}

TEST(Mapping, EmptyContext) {
  auto m = build_mapping(snapshot::Context{}, fixtures::input({"a", "b"}, "c"));
  EXPECT_TRUE(m.parameters.empty());
  EXPECT_TRUE(hrvar(m).empty());
  EXPECT_EQ(m.unmatched_inputs, (std::set<std::size_t>{0, 1, 2}));
}

TEST(ClassifyLeaf, OverlappingOccurrences) {
  MapOptions o;
  o.min_match_len = 2;
  auto occ = classify_leaf(Value::bytes("aa"), fixtures::input({}, "aaa"), o);
  ASSERT_EQ(occ.size(), 2u);
  EXPECT_EQ(occ[0].start, 0u);
  EXPECT_EQ(occ[0].end, 2u);
  EXPECT_EQ(occ[1].start, 1u);
  EXPECT_EQ(occ[1].end, 3u);
}

TEST(ClassifyLeaf, DecimalInts) {
  MapOptions o;
  o.min_match_len = 2;
  auto occ = classify_leaf(Value::integer(42), fixtures::input({}, "x42y"), o);
  ASSERT_EQ(occ.size(), 1u);
  EXPECT_EQ(occ[0].encoding, Encoding::DecimalInt);
  EXPECT_EQ(occ[0].start, 1u);
  EXPECT_EQ(classify_leaf(Value::integer(-5), fixtures::input({"a-5"}), o).size(), 1u);
  EXPECT_TRUE(classify_leaf(Value::integer(42), fixtures::input({}, "x42y")).empty());  // default length 3
}

TEST(ClassifyLeaf, FloatsAndShortValuesNeverMatch) {
  EXPECT_TRUE(classify_leaf(Value::floating(1.5), fixtures::input({"1.5"})).empty());
  EXPECT_FALSE(leaf_encoding(Value::floating(1.5)).has_value());
  EXPECT_TRUE(classify_leaf(Value::bytes("ab"), fixtures::input({"ab"})).empty());
}

TEST(Mapping, HrvarIsSortedAndDefinitional) {
  snapshot::Context c;
  c.args = {Value::bytes("zzz"), Value::bytes("nope"), Value::integer(123)};
  c.globals["g"] = Value::bytes("zzz");
  auto m = build_mapping(c, fixtures::input({"zzz 123"}));
  std::set<std::string> leaves;
  for (const auto& x : m.matches) leaves.insert(x.leaf);
  EXPECT_EQ(m.parameters, leaves);
  EXPECT_EQ(hrvar(m), (std::vector<std::string>{"arg[0]", "arg[2]", "global:g"}));
  EXPECT_EQ(matches_for(m, "arg[2]").size(), 1u);
  EXPECT_EQ(matches_for(m, "arg[2]")[0].encoding, Encoding::DecimalInt);
}

TEST(Mapping, JsonRoundTrip) {
  snapshot::Context c;
  c.args = {Value::bytes("abc"), Value::integer(777)};
  auto in = fixtures::input({"xabcx", "777"}, "abc");
  auto m = build_mapping(c, in);
  EXPECT_EQ(mapping_from_json(mapping_to_json(m), in.element_count()), m);
}

TEST(Mapping, HashedPasswordIsNeverMatched) {
  auto p = fixtures::load("keycheck");
  auto in = fixtures::seeds("keycheck")[0];
  auto r = vm::run_with_tracing(p, in);
  for (const auto& c : snapshot::carve(p, r, {}, {"seed", in}).tests) {
    if (c.start.function_name != "check_user") continue;
    auto m = build_mapping(c, in);
    EXPECT_EQ(m.parameters, std::set<std::string>{"arg[0]"});
    EXPECT_TRUE(m.unmatched_inputs.count(1));  // stdin reaches check_user only as a hash
  }
}

TEST(Mapping, NumbersInMiniDcAreNotParameters) {
  auto p = fixtures::load("mini_dc");
  for (const auto& in : fixtures::seeds("mini_dc")) {
    auto r = vm::run_with_tracing(p, in);
    for (const auto& c : snapshot::carve(p, r, {}, {"seed", in}).tests)
      EXPECT_TRUE(build_mapping(c, in).parameters.empty()) << c.start.function_name;
  }
}
