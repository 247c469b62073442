#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wgame;

namespace {

ConfigurationOrdering constant(std::vector<AgentIndex> agents) {
  return ConfigurationOrdering::constant(Ordering(std::move(agents)));
}

}  // namespace

TEST(Recall, ChoiceFieldAtoms) {
  const auto pr2 = gallery("PR2");
  EXPECT_EQ(choice_field(pr2.model, 0).size(), 2u);
  EXPECT_EQ(choice_field(pr2.model, 1).size(), 4u);
  EXPECT_EQ(choice_field(gallery("STACK").model, 0).size(), 4u);
  EXPECT_EQ(past_choice_field(pr2.model, {}).size(), 1u);
}

TEST(Recall, TwoStageGame) {
  const auto g = gallery("PR2");
  const auto r = check_perfect_recall(g.model, g.players, 0, constant({0, 1}));
  EXPECT_TRUE(r.perfect_recall);
  EXPECT_FALSE(r.violation);
}

TEST(Recall, ForgettingFirstMove) {
  const auto g = gallery("PR2_NOR");
  const auto r = check_perfect_recall(g.model, g.players, 0, constant({0, 1}));
  ASSERT_FALSE(r.perfect_recall);
  EXPECT_EQ(r.violation->kappa, Ordering({0, 1}));
  EXPECT_EQ(r.violation->agent, 1u);
  EXPECT_EQ(g.model.decision_of(r.violation->representative, 0), 0u);
  EXPECT_FALSE(oracle::recall_by_definition(g.model, g.players, 0, constant({0, 1})));
}

TEST(Recall, SequentialGames) {
  for (std::size_t horizon : {2u, 3u, 4u}) {
    const auto g = gallery("SEQ", horizon);
    std::vector<AgentIndex> id(horizon);
    std::iota(id.begin(), id.end(), AgentIndex{0});
    EXPECT_TRUE(check_perfect_recall(g.model, g.players, 0, constant(id)).perfect_recall) << horizon;
  }
}

TEST(Recall, SingleAgentPlayersAlwaysRecall) {
  const auto g = gallery("STACK");
  for (PlayerIndex p = 0; p < 2; ++p)
    EXPECT_TRUE(check_perfect_recall(g.model, g.players, p, constant({0, 1})).perfect_recall);
}

TEST(Recall, RequiresCausalOrdering) {
  const auto g = gallery("STACK");
  EXPECT_THROW(check_perfect_recall(g.model, g.players, 0, constant({1, 0})), PreconditionFailed);
  EXPECT_THROW(check_perfect_recall(g.model, g.players, 2, constant({0, 1})), InvalidArgument);
}

TEST(RecallProperty, MatchesDefinition) {
  std::mt19937_64 rng(31);
  int checked = 0, recall = 0, forgetful = 0;
  for (int trial = 0; trial < 400 && checked < 150; ++trial) {
    const auto m = oracle::random_model(rng);
    const auto found = find_causal(m);
    if (!found.ordering) continue;
    std::vector<PlayerIndex> owner(m.agent_count());
    const std::size_t players = 1 + rng() % 2;
    for (auto& o : owner) o = rng() % players;
    owner[0] = 0;
    owner.back() = players - 1;
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < players; ++p) labels.push_back("p" + std::to_string(p));
    const PlayerPartition pp(labels, owner);
    for (PlayerIndex p = 0; p < players; ++p) {
      const bool expected = oracle::recall_by_definition(m, pp, p, *found.ordering);
      ASSERT_EQ(check_perfect_recall(m, pp, p, *found.ordering).perfect_recall, expected)
          << "trial " << trial;
      (expected ? recall : forgetful) += 1;
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
  EXPECT_GT(recall, 10);
  EXPECT_GT(forgetful, 10);
}

TEST(RecallProperty, AddingMemoryRestoresRecall) {
  // Giving every agent the information and decisions of the player's earlier
  // agents (in a constant causal order) always yields perfect recall.
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<std::size_t> sizes(n, 2);
    std::vector<InfoSpec> specs;
    for (AgentIndex a = 0; a < n; ++a) {
      ObserveSpec o;
      o.nature = rng() % 2 ? ObserveSpec::Nature::full : ObserveSpec::Nature::none;
      for (AgentIndex b = 0; b < a; ++b) o.agents.push_back(b);
      specs.push_back(o);
    }
    // A leaked Nature observation must be inherited by later agents.
    for (AgentIndex a = 1; a < n; ++a)
      if (std::get<ObserveSpec>(specs[a - 1]).nature == ObserveSpec::Nature::full)
        std::get<ObserveSpec>(specs[a]).nature = ObserveSpec::Nature::full;
    const auto m = build_model(2, sizes, specs);
    std::vector<AgentIndex> id(n);
    std::iota(id.begin(), id.end(), AgentIndex{0});
    const PlayerPartition one({"P"}, std::vector<PlayerIndex>(n, 0));
    EXPECT_TRUE(check_perfect_recall(m, one, 0, constant(id)).perfect_recall);
    EXPECT_TRUE(oracle::recall_by_definition(m, one, 0, constant(id)));
  }
}
