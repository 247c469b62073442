#pragma once

// Pure W-strategies. A strategy is measurable with respect to the agent's
// information iff it is constant on each information atom, so it is stored as
// a table atom -> decision and is measurable by construction.

#include <numeric>
#include <functional>

#include "wgame/model.hpp"

namespace wgame {

struct PureStrategy {
  AgentIndex agent = 0;
  std::vector<std::size_t> table;  // atom index -> decision index
  friend bool operator==(const PureStrategy&, const PureStrategy&) = default;
  friend auto operator<=>(const PureStrategy&, const PureStrategy&) = default;
};

/// One strategy per agent of the chosen scope (all agents, or the agents of a
/// player), ordered by agent index.
using PureProfile = std::vector<PureStrategy>;

/// |U_a|^{#atoms}; throws BudgetExceeded above the per-agent cap.
inline std::size_t strategy_count(const WModel& m, AgentIndex a) {
  const std::size_t u = m.decision_size(a);
  const std::size_t atoms = m.info(a).size();
  const std::size_t cap = m.budget().max_strategies_per_agent;
  std::size_t count = 1;
  for (std::size_t i = 0; i < atoms; ++i) {
    if (count > cap / u)
      throw BudgetExceeded("agent \"" + m.agent(a).label + "\" has more than " +
                           std::to_string(cap) + " pure strategies");
    count *= u;
  }
  if (count > cap)
    throw BudgetExceeded("agent \"" + m.agent(a).label + "\" has more than " +
                         std::to_string(cap) + " pure strategies");
  return count;
}

/// Validates a table and wraps it as a strategy.
inline PureStrategy make_strategy(const WModel& m, AgentIndex a, std::vector<std::size_t> table) {
  if (a >= m.agent_count()) throw InvalidArgument("agent index out of range");
  if (table.size() != m.info(a).size())
    throw InvalidArgument("strategy of agent \"" + m.agent(a).label + "\" needs " +
                          std::to_string(m.info(a).size()) + " entries, got " +
                          std::to_string(table.size()));
  for (std::size_t d : table)
    if (d >= m.decision_size(a))
      throw InvalidArgument("decision " + std::to_string(d) + " out of range for agent \"" +
                            m.agent(a).label + "\"");
  return {a, std::move(table)};
}

inline PureStrategy constant_strategy(const WModel& m, AgentIndex a, std::size_t decision) {
  return make_strategy(m, a, std::vector<std::size_t>(m.info(a).size(), decision));
}

inline std::size_t evaluate(const WModel& m, const PureStrategy& s, ConfigIndex h) {
  return s.table[m.atom_of(s.agent, h)];
}

/// Position of a strategy in the enumeration order: tables compared
/// lexicographically, atom 0 most significant.
inline std::size_t strategy_index(const WModel& m, const PureStrategy& s) {
  const std::size_t u = m.decision_size(s.agent);
  std::size_t index = 0;
  for (std::size_t d : s.table) index = index * u + d;
  return index;
}

/// Inverse of strategy_index.
inline PureStrategy strategy_from_index(const WModel& m, AgentIndex a, std::size_t index) {
  const std::size_t u = m.decision_size(a);
  std::vector<std::size_t> table(m.info(a).size());
  for (std::size_t g = table.size(); g-- > 0;) {
    table[g] = index % u;
    index /= u;
  }
  if (index != 0) throw InvalidArgument("strategy index out of range");
  return {a, std::move(table)};
}

/// All pure strategies of agent a in lexicographic table order.
inline std::vector<PureStrategy> enumerate_pure(const WModel& m, AgentIndex a) {
  const std::size_t n = strategy_count(m, a);
  std::vector<PureStrategy> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(strategy_from_index(m, a, i));
  return out;
}

/// True iff `decision_map` (a decision per configuration) is constant on every
/// information atom of agent a.
inline bool check_measurable(const WModel& m, AgentIndex a,
                             std::span<const std::size_t> decision_map) {
  if (decision_map.size() != m.configuration_count())
    throw InvalidArgument("decision map must cover every configuration");
  for (const auto& atom : m.info(a).atoms())
    for (ConfigIndex h : atom)
      if (decision_map[h] != decision_map[atom.front()]) return false;
  return true;
}

inline bool check_measurable(const WModel& m, AgentIndex a,
                             const std::function<std::size_t(ConfigIndex)>& f) {
  std::vector<std::size_t> values(m.configuration_count());
  for (ConfigIndex h = 0; h < values.size(); ++h) values[h] = f(h);
  return check_measurable(m, a, values);
}

/// Converts a measurable raw decision map into a strategy; throws if not
/// measurable.
inline PureStrategy strategy_from_map(const WModel& m, AgentIndex a,
                                      std::span<const std::size_t> decision_map) {
  if (!check_measurable(m, a, decision_map))
    throw InvalidArgument("decision map of agent \"" + m.agent(a).label +
                          "\" is not measurable with respect to its information");
  std::vector<std::size_t> table;
  for (const auto& atom : m.info(a).atoms()) table.push_back(decision_map[atom.front()]);
  return make_strategy(m, a, std::move(table));
}

/// Checks a profile holds exactly one strategy for each agent of `agents`, in
/// that order.
inline void validate_profile(const WModel& m, const PureProfile& profile,
                             std::span<const AgentIndex> agents) {
  if (profile.size() != agents.size())
    throw InvalidArgument("profile must hold one strategy per agent in scope");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (profile[i].agent != agents[i])
      throw InvalidArgument("profile strategies must follow agent order");
    make_strategy(m, agents[i], profile[i].table);
  }
}

inline void validate_profile(const WModel& m, const PureProfile& profile) {
  std::vector<AgentIndex> all(m.agent_count());
  std::iota(all.begin(), all.end(), AgentIndex{0});
  validate_profile(m, profile, all);
}

}  // namespace wgame
