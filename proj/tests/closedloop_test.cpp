#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wgame;

namespace {

template <typename Fn>
void for_each_profile(const WModel& m, Fn fn) {
  std::vector<std::vector<PureStrategy>> all;
  for (AgentIndex a = 0; a < m.agent_count(); ++a) all.push_back(enumerate_pure(m, a));
  std::vector<std::size_t> radices;
  for (const auto& v : all) radices.push_back(v.size());
  const MixedRadix r(radices);
  for (std::size_t i = 0; i < r.size(); ++i) {
    PureProfile profile;
    for (AgentIndex a = 0; a < m.agent_count(); ++a) profile.push_back(all[a][r.digit(i, a)]);
    fn(profile);
  }
}

bool is_fixed_point(const WModel& m, const PureProfile& profile, std::size_t omega,
                    const DecisionProfile& u) {
  const ConfigIndex h = m.encode({omega, u});
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    if (evaluate(m, profile[a], h) != u[a]) return false;
  return true;
}

}  // namespace

TEST(ClosedLoop, DeadlockCopyCopyHasTwoSolutions) {
  const auto g = gallery("DEADLOCK");
  const auto& m = g.model;
  const PureProfile copy_copy{make_strategy(m, 0, {0, 1}), make_strategy(m, 1, {0, 1})};
  EXPECT_EQ(solution_set(m, copy_copy, 0), (std::vector<DecisionProfile>{{0, 0}, {1, 1}}));
  const PureProfile negate_copy{make_strategy(m, 0, {1, 0}), make_strategy(m, 1, {0, 1})};
  EXPECT_TRUE(solution_set(m, negate_copy, 0).empty());
  EXPECT_THROW(solution_map(m, copy_copy, 0), NotSolvable);
  try {
    solution_map(m, negate_copy, 0);
    FAIL();
  } catch (const NotSolvable& e) {
    EXPECT_EQ(e.kind(), NotSolvable::Kind::no_solution);
  }
}

TEST(ClosedLoop, ConstantProfilesHaveTheirDecisionsAsUniqueSolution) {
  for (const char* name : {"DEADLOCK", "STACK", "SEQ(3)", "HIDDEN_TYPE"}) {
    const auto g = gallery(name);
    const auto& m = g.model;
    for (std::size_t u = 0; u < m.profile_count(); ++u) {
      const auto star = m.profile_space().decode(u);
      PureProfile profile;
      for (AgentIndex a = 0; a < m.agent_count(); ++a) profile.push_back(constant_strategy(m, a, star[a]));
      for (std::size_t w = 0; w < m.nature_size(); ++w) {
        EXPECT_EQ(solution_set(m, profile, w), std::vector<DecisionProfile>{star});
        EXPECT_EQ(solution_map(m, profile, w), star);
      }
    }
  }
}

TEST(ClosedLoop, Solvability) {
  const auto stack = is_solvable(gallery("STACK").model);
  EXPECT_TRUE(stack.solvable);
  EXPECT_EQ(stack.profiles_checked, 16u);
  EXPECT_TRUE(is_solvable(gallery("MP").model).solvable);

  const auto g = gallery("DEADLOCK");
  const auto d = is_solvable(g.model);
  ASSERT_FALSE(d.solvable);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(d.witness->omega, 0u);
  EXPECT_EQ(d.witness->cardinality, 2u);
  EXPECT_EQ(d.witness->profile[0].table, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(d.witness->profile[1].table, (std::vector<std::size_t>{0, 1}));
}

TEST(ClosedLoop, StackelbergSolutionMap) {
  const auto g = gallery("STACK");
  const auto& m = g.model;
  // Leader plays L iff omega = w1; follower copies (L -> l, R -> r).
  const PureProfile profile{make_strategy(m, 0, {0, 1}), make_strategy(m, 1, {0, 1})};
  EXPECT_EQ(solution_map(m, profile, 0), (DecisionProfile{0, 0}));
  EXPECT_EQ(solution_map(m, profile, 1), (DecisionProfile{1, 1}));
}

TEST(ClosedLoop, SolutionsSatisfyClosedLoopEquations) {
  for (const char* name : {"DEADLOCK", "STACK", "PR2", "HIDDEN_TYPE"}) {
    const auto g = gallery(name);
    for_each_profile(g.model, [&](const PureProfile& profile) {
      for (std::size_t w = 0; w < g.model.nature_size(); ++w) {
        const auto sols = solution_set(g.model, profile, w);
        for (const auto& u : sols) EXPECT_TRUE(is_fixed_point(g.model, profile, w, u));
        std::size_t brute = 0;
        for (std::size_t u = 0; u < g.model.profile_count(); ++u)
          brute += is_fixed_point(g.model, profile, w, g.model.profile_space().decode(u));
        EXPECT_EQ(sols.size(), brute);
      }
    });
  }
}

TEST(ClosedLoop, ForwardSolveMatchesEnumeration) {
  for (const char* name : {"STACK", "MP", "PR2", "SEQ(2)", "SEQ(3)", "HIDDEN_TYPE", "HIDDEN_ACTION"}) {
    const auto g = gallery(name);
    const auto found = find_causal(g.model);
    ASSERT_TRUE(found.ordering) << name;
    for_each_profile(g.model, [&](const PureProfile& profile) {
      for (std::size_t w = 0; w < g.model.nature_size(); ++w)
        ASSERT_EQ(forward_solve(g.model, *found.ordering, profile, w), solution_map(g.model, profile, w))
            << name;
    });
  }
}

TEST(ClosedLoop, IncompleteProfileRejected) {
  const auto g = gallery("STACK");
  EXPECT_THROW(solution_set(g.model, PureProfile{constant_strategy(g.model, 0, 0)}, 0), InvalidArgument);
  const PureProfile profile{constant_strategy(g.model, 0, 0), constant_strategy(g.model, 1, 0)};
  EXPECT_THROW(solution_set(g.model, profile, 2), InvalidArgument);
}

TEST(ClosedLoop, SolvabilityBudget) {
  Budget b;
  b.max_profile_evaluations = 100;
  const auto seq = gallery("SEQ", 3);
  const auto m = build_model(seq.model.nature_labels(), seq.model.agents(),
                             {seq.model.info_source(0), seq.model.info_source(1),
                              seq.model.info_source(2)},
                             b);
  EXPECT_THROW(is_solvable(m), BudgetExceeded);
}
