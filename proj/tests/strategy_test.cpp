#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wgame;

TEST(Strategy, ConstantStrategyOnTrivialInformation) {
  const auto g = gallery("PR2");
  const auto s = make_strategy(g.model, 0, {1});
  for (ConfigIndex h = 0; h < g.model.configuration_count(); ++h) EXPECT_EQ(evaluate(g.model, s, h), 1u);
}

TEST(Strategy, CopyStrategyLooksUpAtom) {
  const auto g = gallery("PR2");
  const auto& m = g.model;
  // Atom 0 of a2 holds configuration 0, where a1 played 0.
  const auto copy = make_strategy(m, 1, {0, 1});
  EXPECT_EQ(evaluate(m, copy, m.encode({0, {1, 0}})), 1u);
  EXPECT_EQ(evaluate(m, copy, m.encode({0, {0, 1}})), 0u);
}

TEST(Strategy, EvaluateIsConstantOnAtoms) {
  std::mt19937_64 rng(5);
  for (const char* name : {"STACK", "SEQ(3)", "HIDDEN_TYPE"}) {
    const auto g = gallery(name);
    for (AgentIndex a = 0; a < g.model.agent_count(); ++a) {
      const auto s = strategy_from_index(g.model, a, rng() % strategy_count(g.model, a));
      for (const auto& atom : g.model.info(a).atoms())
        for (ConfigIndex h : atom) EXPECT_EQ(evaluate(g.model, s, h), evaluate(g.model, s, atom.front()));
    }
  }
}

TEST(Strategy, CheckMeasurable) {
  const auto g = gallery("STACK");
  const auto& m = g.model;
  for (const auto& s : enumerate_pure(m, 1))
    EXPECT_TRUE(check_measurable(m, 1, [&](ConfigIndex h) { return evaluate(m, s, h); }));
  // A cannot condition on Nature.
  EXPECT_FALSE(check_measurable(m, 1, [&](ConfigIndex h) { return m.nature_of(h); }));
  for (AgentIndex a = 0; a < 2; ++a)
    EXPECT_TRUE(check_measurable(m, a, [](ConfigIndex) { return std::size_t{1}; }));
  std::vector<std::size_t> raw(m.configuration_count());
  for (ConfigIndex h = 0; h < raw.size(); ++h) raw[h] = m.nature_of(h);
  EXPECT_THROW(strategy_from_map(m, 1, raw), InvalidArgument);
  EXPECT_EQ(strategy_from_map(m, 0, raw).table, (std::vector<std::size_t>{0, 1}));
}

TEST(Strategy, EnumerationCounts) {
  const auto pr2 = gallery("PR2");
  EXPECT_EQ(enumerate_pure(pr2.model, 0).size(), 2u);
  EXPECT_EQ(enumerate_pure(pr2.model, 1).size(), 4u);
  const auto stack = gallery("STACK");
  EXPECT_EQ(enumerate_pure(stack.model, 0).size(), 4u);
}

TEST(Strategy, EnumerationDistinctMeasurableAndIndexed) {
  for (const char* name : {"STACK", "PR2", "SEQ(3)", "HIDDEN_TYPE", "DEADLOCK"}) {
    const auto g = gallery(name);
    const auto& m = g.model;
    for (AgentIndex a = 0; a < m.agent_count(); ++a) {
      const auto all = enumerate_pure(m, a);
      std::size_t expected = 1;
      for (std::size_t i = 0; i < m.info(a).size(); ++i) expected *= m.decision_size(a);
      ASSERT_EQ(all.size(), expected) << name;
      std::set<std::vector<std::size_t>> tables;
      for (std::size_t i = 0; i < all.size(); ++i) {
        tables.insert(all[i].table);
        EXPECT_EQ(strategy_index(m, all[i]), i);
        EXPECT_EQ(strategy_from_index(m, a, i), all[i]);
        EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
        EXPECT_TRUE(check_measurable(m, a, [&](ConfigIndex h) { return evaluate(m, all[i], h); }));
      }
      EXPECT_EQ(tables.size(), all.size());
    }
  }
}

TEST(Strategy, InvalidTables) {
  const auto g = gallery("PR2");
  EXPECT_THROW(make_strategy(g.model, 1, {0}), InvalidArgument);
  EXPECT_THROW(make_strategy(g.model, 1, {0, 2}), InvalidArgument);
  EXPECT_THROW(make_strategy(g.model, 2, {0}), InvalidArgument);
  EXPECT_THROW(strategy_from_index(g.model, 1, 4), InvalidArgument);
}
