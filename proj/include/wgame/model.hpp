#pragma once

// Finite W-model: Nature outcomes, agents with finite decision sets, and one
// information partition per agent over the configuration space
// H = Omega x U_0 x ... x U_{n-1}.
//
// Configurations are packed mixed-radix with coordinate order
// (Nature, agent 0, agent 1, ...), Nature most significant.

#include <cstdlib>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wgame/algebra.hpp"
#include "wgame/rational.hpp"

namespace wgame {

using AgentIndex = std::size_t;
using PlayerIndex = std::size_t;
/// Packed index of a configuration in H.
using ConfigIndex = std::size_t;
/// Decision per agent, in agent order.
using DecisionProfile = std::vector<std::size_t>;

/// Caps on exhaustive enumeration. Every algorithm in the library is
/// exhaustive; exceeding a cap throws BudgetExceeded instead of hanging.
struct Budget {
  std::size_t max_configurations = 100'000;
  std::size_t max_strategies_per_agent = 10'000;
  /// |profiles| x |Omega| x |decision profiles| for solvability scans and
  /// pushforwards.
  std::size_t max_profile_evaluations = 200'000'000;
  /// Agents allowed when enumerating total orderings (n! candidates).
  std::size_t max_ordering_agents = 8;
  /// Nodes visited by the sequential causal-ordering search.
  std::size_t max_search_nodes = 1'000'000;

  /// Applies WGAME_MAX_CONFIGURATIONS, WGAME_MAX_STRATEGIES_PER_AGENT,
  /// WGAME_MAX_PROFILE_EVALUATIONS, WGAME_MAX_ORDERING_AGENTS and
  /// WGAME_MAX_SEARCH_NODES when set.
  Budget with_env_overrides() const {
    Budget b = *this;
    auto read = [](const char* name, std::size_t& field) {
      if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end == v || *end != '\0')
          throw InvalidArgument(std::string("environment variable ") + name +
                                " must be a nonnegative integer");
        field = static_cast<std::size_t>(parsed);
      }
    };
    read("WGAME_MAX_CONFIGURATIONS", b.max_configurations);
    read("WGAME_MAX_STRATEGIES_PER_AGENT", b.max_strategies_per_agent);
    read("WGAME_MAX_PROFILE_EVALUATIONS", b.max_profile_evaluations);
    read("WGAME_MAX_ORDERING_AGENTS", b.max_ordering_agents);
    read("WGAME_MAX_SEARCH_NODES", b.max_search_nodes);
    return b;
  }
};

struct Agent {
  std::string label;
  std::vector<std::string> decisions;
};

struct Configuration {
  std::size_t nature = 0;
  DecisionProfile decisions;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Information generated by observing Nature (fully, not at all, or through a
/// coarsening) and the decisions of some agents.
struct ObserveSpec {
  enum class Nature { none, full, partial };
  Nature nature = Nature::none;
  /// Outcome -> class label; used when nature == partial.
  std::vector<std::size_t> nature_classes;
  std::vector<AgentIndex> agents;
};

/// Explicit atoms given as packed configuration indices.
struct AtomsSpec {
  std::vector<std::vector<ConfigIndex>> atoms;
};

using InfoSpec = std::variant<ObserveSpec, AtomsSpec>;

class WModel {
 public:
  /// Validates sizes, labels, the enumeration budget and every information
  /// partition. Prefer build_model(), which compiles InfoSpecs.
  WModel(std::vector<std::string> nature_labels, std::vector<Agent> agents,
         std::vector<FinitePartition> info, std::vector<InfoSpec> sources, Budget budget)
      : nature_labels_(std::move(nature_labels)),
        agents_(std::move(agents)),
        info_(std::move(info)),
        sources_(std::move(sources)),
        budget_(budget) {
    if (nature_labels_.empty()) throw InvalidArgument("Nature must have at least one outcome");
    require_unique(nature_labels_, "Nature outcome");
    std::vector<std::string> agent_labels;
    std::vector<std::size_t> radices{nature_labels_.size()};
    std::vector<std::size_t> decision_radices;
    for (const auto& a : agents_) {
      if (a.decisions.empty())
        throw InvalidArgument("agent \"" + a.label + "\" must have at least one decision");
      require_unique(a.decisions, "decision of agent \"" + a.label + "\"");
      agent_labels.push_back(a.label);
      radices.push_back(a.decisions.size());
      decision_radices.push_back(a.decisions.size());
    }
    require_unique(agent_labels, "agent");
    // Guard before MixedRadix multiplies out the sizes.
    long double size = 1;
    for (std::size_t r : radices) size *= static_cast<long double>(r);
    if (size > static_cast<long double>(budget_.max_configurations))
      throw BudgetExceeded("configuration space has " + std::to_string(static_cast<double>(size)) +
                           " elements, budget is " + std::to_string(budget_.max_configurations));
    space_ = MixedRadix(radices);
    profiles_ = MixedRadix(decision_radices);
    if (info_.size() != agents_.size())
      throw InvalidArgument("need exactly one information partition per agent");
    for (std::size_t a = 0; a < agents_.size(); ++a)
      if (info_[a].ground_size() != space_.size())
        throw InvalidArgument("information partition of agent \"" + agents_[a].label +
                              "\" has ground size " + std::to_string(info_[a].ground_size()) +
                              ", configuration space has " + std::to_string(space_.size()));
    if (sources_.size() != agents_.size()) sources_.assign(agents_.size(), InfoSpec{});
  }

  std::size_t nature_size() const noexcept { return nature_labels_.size(); }
  const std::vector<std::string>& nature_labels() const noexcept { return nature_labels_; }
  std::size_t agent_count() const noexcept { return agents_.size(); }
  const std::vector<Agent>& agents() const noexcept { return agents_; }
  const Agent& agent(AgentIndex a) const { return agents_.at(a); }
  std::size_t decision_size(AgentIndex a) const { return agents_.at(a).decisions.size(); }
  const FinitePartition& info(AgentIndex a) const { return info_.at(a); }
  /// How the information partition was specified (serialization only).
  const InfoSpec& info_source(AgentIndex a) const { return sources_.at(a); }
  const Budget& budget() const noexcept { return budget_; }

  /// Coordinates (Nature, agent 0, ...).
  const MixedRadix& space() const noexcept { return space_; }
  /// Decision profiles, coordinates (agent 0, agent 1, ...).
  const MixedRadix& profile_space() const noexcept { return profiles_; }
  std::size_t configuration_count() const noexcept { return space_.size(); }
  std::size_t profile_count() const noexcept { return profiles_.size(); }

  static constexpr std::size_t nature_position() { return 0; }
  static constexpr std::size_t position_of(AgentIndex a) { return a + 1; }

  std::size_t nature_of(ConfigIndex h) const { return space_.digit(h, 0); }
  std::size_t decision_of(ConfigIndex h, AgentIndex a) const {
    return space_.digit(h, position_of(a));
  }
  /// Packed decision-profile index of configuration h.
  std::size_t profile_of(ConfigIndex h) const { return h % profiles_.size(); }
  ConfigIndex configuration(std::size_t omega, std::size_t profile_index) const {
    return omega * profiles_.size() + profile_index;
  }

  ConfigIndex encode(const Configuration& c) const {
    if (c.nature >= nature_size()) throw InvalidArgument("Nature outcome out of range");
    if (c.decisions.size() != agent_count())
      throw InvalidArgument("configuration needs one decision per agent");
    std::vector<std::size_t> digits{c.nature};
    digits.insert(digits.end(), c.decisions.begin(), c.decisions.end());
    return space_.encode(digits);
  }

  Configuration decode(ConfigIndex h) const {
    auto digits = space_.decode(h);
    return {digits.front(), DecisionProfile(digits.begin() + 1, digits.end())};
  }

  /// Index of the information atom of agent a containing h.
  std::size_t atom_of(AgentIndex a, ConfigIndex h) const { return info_.at(a).atom_of(h); }

  std::optional<AgentIndex> find_agent(std::string_view label) const {
    for (AgentIndex a = 0; a < agents_.size(); ++a)
      if (agents_[a].label == label) return a;
    return std::nullopt;
  }

  std::optional<std::size_t> find_nature(std::string_view label) const {
    for (std::size_t w = 0; w < nature_labels_.size(); ++w)
      if (nature_labels_[w] == label) return w;
    return std::nullopt;
  }

  /// Model equality is structural on sizes, labels and information fields.
  friend bool operator==(const WModel& x, const WModel& y) {
    if (x.nature_labels_ != y.nature_labels_ || x.agents_.size() != y.agents_.size()) return false;
    for (std::size_t a = 0; a < x.agents_.size(); ++a)
      if (x.agents_[a].label != y.agents_[a].label ||
          x.agents_[a].decisions != y.agents_[a].decisions)
        return false;
    return x.info_ == y.info_;
  }

 private:
  static void require_unique(const std::vector<std::string>& labels, const std::string& what) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j])
          throw InvalidArgument("duplicate " + what + " label \"" + labels[i] + "\"");
  }

  std::vector<std::string> nature_labels_;
  std::vector<Agent> agents_;
  std::vector<FinitePartition> info_;
  std::vector<InfoSpec> sources_;
  Budget budget_;
  MixedRadix space_;
  MixedRadix profiles_;
};

/// Decision-cylinder field of a set of agents together with Nature (when
/// `with_nature`): the field generated by those coordinates.
inline FinitePartition agents_cylinder(const WModel& m, std::span<const AgentIndex> agents,
                                       bool with_nature) {
  std::vector<Observation> obs;
  if (with_nature) obs.push_back({WModel::nature_position(), {}});
  for (AgentIndex a : agents) {
    if (a >= m.agent_count()) throw InvalidArgument("agent index out of range");
    obs.push_back({WModel::position_of(a), {}});
  }
  return cylinder(m.space(), obs);
}

inline FinitePartition compile_info(const MixedRadix& space, std::size_t agent_count,
                                    const InfoSpec& spec) {
  if (const auto* obs = std::get_if<ObserveSpec>(&spec)) {
    std::vector<Observation> o;
    switch (obs->nature) {
      case ObserveSpec::Nature::none:
        break;
      case ObserveSpec::Nature::full:
        o.push_back({0, {}});
        break;
      case ObserveSpec::Nature::partial:
        o.push_back({0, obs->nature_classes});
        break;
    }
    for (AgentIndex a : obs->agents) {
      if (a >= agent_count) throw InvalidArgument("observed agent index out of range");
      o.push_back({WModel::position_of(a), {}});
    }
    return cylinder(space, o);
  }
  const auto& atoms = std::get<AtomsSpec>(spec).atoms;
  return FinitePartition::from_atoms(space.size(), atoms);
}

/// Builds and validates a model. Information specs are compiled into atom
/// partitions; errors name the offending agent.
inline WModel build_model(std::vector<std::string> nature_labels, std::vector<Agent> agents,
                          std::vector<InfoSpec> info_specs, Budget budget = {}) {
  if (info_specs.size() != agents.size())
    throw InvalidArgument("need exactly one information spec per agent");
  if (nature_labels.empty()) throw InvalidArgument("Nature must have at least one outcome");
  std::vector<std::size_t> radices{nature_labels.size()};
  long double size = static_cast<long double>(nature_labels.size());
  for (const auto& a : agents) {
    if (a.decisions.empty())
      throw InvalidArgument("agent \"" + a.label + "\" must have at least one decision");
    radices.push_back(a.decisions.size());
    size *= static_cast<long double>(a.decisions.size());
  }
  if (size > static_cast<long double>(budget.max_configurations))
    throw BudgetExceeded("configuration space has " + std::to_string(static_cast<double>(size)) +
                         " elements, budget is " + std::to_string(budget.max_configurations));
  const MixedRadix space(radices);
  std::vector<FinitePartition> info;
  for (std::size_t a = 0; a < agents.size(); ++a) {
    try {
      info.push_back(compile_info(space, agents.size(), info_specs[a]));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("information of agent \"" + agents[a].label + "\": " + e.what());
    }
  }
  return WModel(std::move(nature_labels), std::move(agents), std::move(info),
                std::move(info_specs), budget);
}

/// Unlabeled variant: outcomes "w0", "w1", ...; agents "a0", ...; decisions
/// "0", "1", ...
inline WModel build_model(std::size_t nature_size, std::span<const std::size_t> decision_sizes,
                          std::vector<InfoSpec> info_specs, Budget budget = {}) {
  std::vector<std::string> nature;
  for (std::size_t w = 0; w < nature_size; ++w) nature.push_back("w" + std::to_string(w));
  std::vector<Agent> agents;
  for (std::size_t a = 0; a < decision_sizes.size(); ++a) {
    Agent ag{"a" + std::to_string(a), {}};
    for (std::size_t d = 0; d < decision_sizes[a]; ++d) ag.decisions.push_back(std::to_string(d));
    agents.push_back(std::move(ag));
  }
  return build_model(std::move(nature), std::move(agents), std::move(info_specs), budget);
}

/// Assignment of agents to players; each player owns a nonempty set of agents.
class PlayerPartition {
 public:
  PlayerPartition(std::vector<std::string> labels, std::vector<PlayerIndex> owner)
      : labels_(std::move(labels)), owner_(std::move(owner)), members_(labels_.size()) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw InvalidArgument("duplicate player label \"" + labels_[i] + "\"");
    for (AgentIndex a = 0; a < owner_.size(); ++a) {
      if (owner_[a] >= labels_.size())
        throw InvalidArgument("agent " + std::to_string(a) + " owned by unknown player");
      members_[owner_[a]].push_back(a);
    }
    for (PlayerIndex p = 0; p < labels_.size(); ++p)
      if (members_[p].empty())
        throw InvalidArgument("player \"" + labels_[p] + "\" owns no agent");
  }

  /// Checks the partition covers exactly the model's agents.
  void validate_against(const WModel& m) const {
    if (owner_.size() != m.agent_count())
      throw InvalidArgument("every agent must be owned by exactly one player");
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(PlayerIndex p) const { return labels_.at(p); }
  PlayerIndex owner(AgentIndex a) const { return owner_.at(a); }
  /// Agents of player p in increasing index order.
  const std::vector<AgentIndex>& members(PlayerIndex p) const { return members_.at(p); }

  std::optional<PlayerIndex> find(std::string_view label) const {
    for (PlayerIndex p = 0; p < labels_.size(); ++p)
      if (labels_[p] == label) return p;
    return std::nullopt;
  }

  friend bool operator==(const PlayerPartition&, const PlayerPartition&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<PlayerIndex> owner_;
  std::vector<std::vector<AgentIndex>> members_;
};

/// Expected-utility criterion: per player a payoff per configuration and a
/// belief over Nature.
struct Criterion {
  std::vector<std::vector<Rational>> payoffs;  // [player][configuration]
  std::vector<std::vector<Rational>> beliefs;  // [player][omega]

  void validate(const WModel& m, const PlayerPartition& players) const {
    if (payoffs.size() != players.size() || beliefs.size() != players.size())
      throw InvalidArgument("criterion needs one payoff table and one belief per player");
    for (PlayerIndex p = 0; p < players.size(); ++p) {
      if (payoffs[p].size() != m.configuration_count())
        throw InvalidArgument("payoff table of player \"" + players.label(p) +
                              "\" must cover every configuration");
      if (beliefs[p].size() != m.nature_size())
        throw InvalidArgument("belief of player \"" + players.label(p) +
                              "\" must give one weight per Nature outcome");
      Rational total = 0;
      for (const auto& w : beliefs[p]) {
        if (w < 0) throw InvalidArgument("belief of player \"" + players.label(p) + "\" is negative");
        total += w;
      }
      if (total != 1)
        throw InvalidArgument("belief of player \"" + players.label(p) + "\" not normalized (sums to " +
                              to_string(total) + ")");
    }
  }
};

/// A kernel Omega -> distribution over decision profiles, dense over packed
/// decision-profile indices.
struct OutcomeDistribution {
  std::vector<std::vector<Rational>> per_omega;
  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

/// sum_w belief_p(w) sum_u payoff_p(w, u) K(w)(u) for every player p.
inline std::vector<Rational> expected_utility(const WModel& m, const PlayerPartition& players,
                                              const Criterion& crit,
                                              const OutcomeDistribution& kernel) {
  crit.validate(m, players);
  if (kernel.per_omega.size() != m.nature_size())
    throw InvalidArgument("kernel must give one distribution per Nature outcome");
  for (std::size_t w = 0; w < m.nature_size(); ++w) {
    const auto& dist = kernel.per_omega[w];
    if (dist.size() != m.profile_count())
      throw InvalidArgument("kernel distribution must cover every decision profile");
    Rational total = 0;
    for (const auto& q : dist) {
      if (q < 0) throw InvalidArgument("kernel has a negative probability");
      total += q;
    }
    if (total != 1)
      throw InvalidArgument("kernel distribution at \"" + m.nature_labels()[w] +
                            "\" sums to " + to_string(total));
  }
  std::vector<Rational> eu(players.size());
  for (PlayerIndex p = 0; p < players.size(); ++p)
    for (std::size_t w = 0; w < m.nature_size(); ++w) {
      if (crit.beliefs[p][w] == 0) continue;
      Rational inner = 0;
      for (std::size_t u = 0; u < m.profile_count(); ++u)
        if (kernel.per_omega[w][u] != 0)
          inner += crit.payoffs[p][m.configuration(w, u)] * kernel.per_omega[w][u];
      eu[p] += crit.beliefs[p][w] * inner;
    }
  return eu;
}

}  // namespace wgame
