#pragma once

// Small named games used by the tests, the acceptance suite and the CLI.
//
//   STACK          Stackelberg: leader sees Nature, follower sees the leader's move
//   DEADLOCK       two agents each observing the other's decision
//   PR2            one player, a2 observes a1 (perfect recall)
//   PR2_NOR        PR2 where a2 forgets a1's move
//   MP             matching pennies, no information
//   SEQ(T)         one player deciding T times, remembering Nature and all past moves
//   HIDDEN_TYPE    principal sees the agent's action, not its type
//   HIDDEN_ACTION  principal sees the type, not the agent's action

#include <charconv>

#include "wgame/ordering.hpp"

namespace wgame {

struct Game {
  WModel model;
  PlayerPartition players;
  std::optional<Criterion> criterion;
  std::optional<Ordering> ordering_hint;
};

inline std::vector<std::string> gallery_names() {
  return {"STACK", "DEADLOCK", "PR2", "PR2_NOR", "MP", "SEQ(T)", "HIDDEN_TYPE", "HIDDEN_ACTION"};
}

namespace detail {

inline ObserveSpec observes(ObserveSpec::Nature nature, std::vector<AgentIndex> agents = {}) {
  return ObserveSpec{nature, {}, std::move(agents)};
}

inline Game make_stack() {
  using N = ObserveSpec::Nature;
  auto model = build_model({"w1", "w2"}, {{"P", {"L", "R"}}, {"A", {"l", "r"}}},
                           {observes(N::full), observes(N::none, {0})});
  PlayerPartition players({"Leader", "Follower"}, {0, 1});
  // Leader scores when its move matches the state; follower when it mirrors the leader.
  Criterion crit;
  crit.payoffs.assign(2, std::vector<Rational>(model.configuration_count()));
  for (ConfigIndex h = 0; h < model.configuration_count(); ++h) {
    const auto c = model.decode(h);
    crit.payoffs[0][h] = c.nature == c.decisions[0] ? 1 : 0;
    crit.payoffs[1][h] = c.decisions[0] == c.decisions[1] ? 1 : 0;
  }
  crit.beliefs.assign(2, {Rational(1, 2), Rational(1, 2)});
  return {std::move(model), std::move(players), std::move(crit), Ordering{0, 1}};
}

inline Game make_deadlock() {
  using N = ObserveSpec::Nature;
  auto model = build_model({"w0"}, {{"a", {"0", "1"}}, {"b", {"0", "1"}}},
                           {observes(N::none, {1}), observes(N::none, {0})});
  return {std::move(model), PlayerPartition({"X", "Y"}, {0, 1}), std::nullopt, std::nullopt};
}

inline Game make_pr2(bool recall) {
  using N = ObserveSpec::Nature;
  auto model = build_model({"w0"}, {{"a1", {"0", "1"}}, {"a2", {"0", "1"}}},
                           {observes(N::none), recall ? observes(N::none, {0}) : observes(N::none)});
  return {std::move(model), PlayerPartition({"P"}, {0, 0}), std::nullopt, Ordering{0, 1}};
}

inline Game make_mp() {
  using N = ObserveSpec::Nature;
  auto model = build_model({"w0"}, {{"row", {"H", "T"}}, {"col", {"H", "T"}}},
                           {observes(N::none), observes(N::none)});
  Criterion crit;
  crit.payoffs.assign(2, std::vector<Rational>(model.configuration_count()));
  for (ConfigIndex h = 0; h < model.configuration_count(); ++h) {
    const auto c = model.decode(h);
    const int match = c.decisions[0] == c.decisions[1] ? 1 : -1;
    crit.payoffs[0][h] = match;
    crit.payoffs[1][h] = -match;
  }
  crit.beliefs.assign(2, {Rational(1)});
  return {std::move(model), PlayerPartition({"Row", "Col"}, {0, 1}), std::move(crit), Ordering{0, 1}};
}

inline Game make_seq(std::size_t horizon) {
  if (horizon == 0) throw InvalidArgument("SEQ(T) needs T >= 1");
  std::vector<Agent> agents;
  std::vector<InfoSpec> info;
  std::vector<AgentIndex> order;
  for (std::size_t t = 0; t < horizon; ++t) {
    agents.push_back({"t" + std::to_string(t), {"0", "1"}});
    info.push_back(observes(ObserveSpec::Nature::full, order));
    order.push_back(t);
  }
  auto model = build_model({"w0", "w1"}, std::move(agents), std::move(info));
  return {std::move(model), PlayerPartition({"P"}, std::vector<PlayerIndex>(horizon, 0)),
          std::nullopt, Ordering(order)};
}

inline Game make_hidden_type() {
  using N = ObserveSpec::Nature;
  auto model = build_model({"lo", "hi"}, {{"P", {"x0", "x1"}}, {"A", {"e0", "e1"}}},
                           {observes(N::none, {1}), observes(N::full)});
  return {std::move(model), PlayerPartition({"Principal", "Agent"}, {0, 1}), std::nullopt,
          Ordering{1, 0}};
}

inline Game make_hidden_action() {
  using N = ObserveSpec::Nature;
  auto model = build_model({"lo", "hi"}, {{"P", {"x0", "x1"}}, {"A", {"e0", "e1"}}},
                           {observes(N::full), observes(N::full)});
  return {std::move(model), PlayerPartition({"Principal", "Agent"}, {0, 1}), std::nullopt,
          Ordering{0, 1}};
}

}  // namespace detail

/// Builds a named fixture. SEQ accepts "SEQ(T)", "SEQT" or "SEQ" with
/// `horizon`.
inline Game gallery(std::string_view name, std::size_t horizon = 2) {
  if (name == "STACK") return detail::make_stack();
  if (name == "DEADLOCK") return detail::make_deadlock();
  if (name == "PR2") return detail::make_pr2(true);
  if (name == "PR2_NOR") return detail::make_pr2(false);
  if (name == "MP") return detail::make_mp();
  if (name == "HIDDEN_TYPE") return detail::make_hidden_type();
  if (name == "HIDDEN_ACTION") return detail::make_hidden_action();
  if (name.starts_with("SEQ")) {
    std::string_view rest = name.substr(3);
    if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
    if (!rest.empty()) {
      std::size_t t = 0;
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), t);
      if (ec != std::errc{} || ptr != rest.data() + rest.size())
        throw InvalidArgument("bad SEQ horizon in \"" + std::string(name) + "\"");
      horizon = t;
    }
    return detail::make_seq(horizon);
  }
  throw InvalidArgument("unknown gallery game \"" + std::string(name) + "\"");
}

}  // namespace wgame
