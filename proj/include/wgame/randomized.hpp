#pragma once

// Randomized W-strategies and Kuhn's equivalence.
//
//   mixed           one distribution over a player's pure profiles
//   product-mixed   one independent distribution per agent over its pure strategies
//   behavioral      per agent, a distribution over decisions per information atom
//
// Transforms: product-mixed -> mixed, product-mixed <-> behavioral, and
// mixed -> behavioral under perfect recall. All arithmetic is exact.

#include <random>

#include "wgame/closedloop.hpp"
#include "wgame/recall.hpp"

namespace wgame {

/// Strategy index (see strategy_index) per agent of a player, in
/// PlayerPartition::members order.
using StrategyIndices = std::vector<std::size_t>;

struct MixedStrategy {
  PlayerIndex player = 0;
  /// Support only; absent profiles have weight zero.
  std::map<StrategyIndices, Rational> weights;
  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
};

struct ProductMixedStrategy {
  PlayerIndex player = 0;
  /// [member position][strategy index], dense over the agent's strategies.
  std::vector<std::vector<Rational>> per_agent;
  friend bool operator==(const ProductMixedStrategy&, const ProductMixedStrategy&) = default;
};

struct BehavioralStrategy {
  PlayerIndex player = 0;
  /// [member position][information atom][decision].
  std::vector<std::vector<std::vector<Rational>>> per_agent;
  friend bool operator==(const BehavioralStrategy&, const BehavioralStrategy&) = default;
};

namespace detail {

inline void require_distribution(std::span<const Rational> weights, const std::string& what) {
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw InvalidArgument(what + " has a negative weight");
    total += w;
  }
  if (total != 1) throw InvalidArgument(what + " sums to " + to_string(total) + ", not 1");
}

inline void require_player(const WModel& m, const PlayerPartition& players, PlayerIndex p) {
  players.validate_against(m);
  if (p >= players.size()) throw InvalidArgument("player index out of range");
}

/// Weights rescaled to integers over their least common denominator.
struct ScaledWeights {
  std::vector<Integer> numerators;
  Integer denominator = 1;
};

template <typename Range>
ScaledWeights common_denominator(const Range& weights) {
  ScaledWeights s;
  for (const Rational& w : weights)
    s.denominator = boost::multiprecision::lcm(s.denominator, boost::multiprecision::denominator(w));
  for (const Rational& w : weights)
    s.numerators.push_back(boost::multiprecision::numerator(w) *
                           (s.denominator / boost::multiprecision::denominator(w)));
  return s;
}

/// A player's support with decoded strategy tables and integer weights.
struct DecodedSupport {
  std::vector<std::vector<std::vector<std::size_t>>> tables;  // [entry][member] -> table
  std::vector<Integer> numerators;
  Integer denominator = 1;
};

}  // namespace detail

/// |Lambda^p| = prod over the player's agents of |Lambda_a|; throws
/// BudgetExceeded past max_profile_evaluations.
inline std::size_t player_profile_count(const WModel& m, const PlayerPartition& players,
                                        PlayerIndex p) {
  detail::require_player(m, players, p);
  std::size_t total = 1;
  for (AgentIndex a : players.members(p)) {
    const std::size_t c = strategy_count(m, a);
    if (total > m.budget().max_profile_evaluations / c)
      throw BudgetExceeded("player \"" + players.label(p) + "\" has too many pure profiles");
    total *= c;
  }
  return total;
}

inline void validate(const WModel& m, const PlayerPartition& players, const MixedStrategy& mu) {
  detail::require_player(m, players, mu.player);
  const auto& members = players.members(mu.player);
  std::vector<std::size_t> counts;
  for (AgentIndex a : members) counts.push_back(strategy_count(m, a));
  std::vector<Rational> w;
  for (const auto& [key, weight] : mu.weights) {
    if (key.size() != members.size())
      throw InvalidArgument("mixed strategy profile must give one strategy per agent of the player");
    for (std::size_t i = 0; i < key.size(); ++i)
      if (key[i] >= counts[i]) throw InvalidArgument("mixed strategy names an unknown pure strategy");
    w.push_back(weight);
  }
  detail::require_distribution(w, "mixed strategy of player \"" + players.label(mu.player) + "\"");
}

inline void validate(const WModel& m, const PlayerPartition& players,
                     const ProductMixedStrategy& pi) {
  detail::require_player(m, players, pi.player);
  const auto& members = players.members(pi.player);
  if (pi.per_agent.size() != members.size())
    throw InvalidArgument("product-mixed strategy needs one distribution per agent of the player");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (pi.per_agent[i].size() != strategy_count(m, members[i]))
      throw InvalidArgument("distribution of agent \"" + m.agent(members[i]).label +
                            "\" must cover all its pure strategies");
    detail::require_distribution(pi.per_agent[i],
                                 "distribution of agent \"" + m.agent(members[i]).label + "\"");
  }
}

inline void validate(const WModel& m, const PlayerPartition& players,
                     const BehavioralStrategy& beta) {
  detail::require_player(m, players, beta.player);
  const auto& members = players.members(beta.player);
  if (beta.per_agent.size() != members.size())
    throw InvalidArgument("behavioral strategy needs one kernel per agent of the player");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const AgentIndex a = members[i];
    if (beta.per_agent[i].size() != m.info(a).size())
      throw InvalidArgument("kernel of agent \"" + m.agent(a).label +
                            "\" must give one distribution per information atom");
    for (std::size_t g = 0; g < beta.per_agent[i].size(); ++g) {
      if (beta.per_agent[i][g].size() != m.decision_size(a))
        throw InvalidArgument("kernel of agent \"" + m.agent(a).label +
                              "\" must weigh every decision");
      detail::require_distribution(beta.per_agent[i][g], "kernel of agent \"" + m.agent(a).label +
                                                             "\" at atom " + std::to_string(g));
    }
  }
}

namespace detail {

inline DecodedSupport decode_support(const WModel& m, const PlayerPartition& players,
                                     const MixedStrategy& mu) {
  validate(m, players, mu);
  const auto& members = players.members(mu.player);
  DecodedSupport d;
  std::vector<Rational> weights;
  for (const auto& [key, weight] : mu.weights) {
    if (weight == 0) continue;
    std::vector<std::vector<std::size_t>> tables;
    for (std::size_t i = 0; i < members.size(); ++i)
      tables.push_back(strategy_from_index(m, members[i], key[i]).table);
    d.tables.push_back(std::move(tables));
    weights.push_back(weight);
  }
  auto scaled = common_denominator(weights);
  d.numerators = std::move(scaled.numerators);
  d.denominator = std::move(scaled.denominator);
  return d;
}

}  // namespace detail

/// Weight of a profile is the product of the agents' weights.
inline MixedStrategy pm_to_mixed(const WModel& m, const PlayerPartition& players,
                                 const ProductMixedStrategy& pi) {
  validate(m, players, pi);
  MixedStrategy mu{pi.player, {}};
  std::vector<std::pair<StrategyIndices, Rational>> partial{{{}, Rational(1)}};
  for (const auto& dist : pi.per_agent) {
    std::vector<std::pair<StrategyIndices, Rational>> next;
    for (const auto& [key, w] : partial)
      for (std::size_t s = 0; s < dist.size(); ++s) {
        if (dist[s] == 0) continue;
        StrategyIndices k = key;
        k.push_back(s);
        next.emplace_back(std::move(k), w * dist[s]);
      }
    partial = std::move(next);
  }
  for (auto& [key, w] : partial) mu.weights.emplace(std::move(key), std::move(w));
  return mu;
}

/// beta_a(u | G) = pi_a{lambda_a : lambda_a(G) = u}.
inline BehavioralStrategy pm_to_behavioral(const WModel& m, const PlayerPartition& players,
                                           const ProductMixedStrategy& pi) {
  validate(m, players, pi);
  const auto& members = players.members(pi.player);
  BehavioralStrategy beta{pi.player, {}};
  for (std::size_t i = 0; i < members.size(); ++i) {
    const AgentIndex a = members[i];
    std::vector<std::vector<Rational>> kernel(m.info(a).size(),
                                              std::vector<Rational>(m.decision_size(a)));
    for (std::size_t s = 0; s < pi.per_agent[i].size(); ++s) {
      if (pi.per_agent[i][s] == 0) continue;
      const auto table = strategy_from_index(m, a, s).table;
      for (std::size_t g = 0; g < table.size(); ++g) kernel[g][table[g]] += pi.per_agent[i][s];
    }
    beta.per_agent.push_back(std::move(kernel));
  }
  return beta;
}

/// Realization of a behavioral strategy: the product over atoms of the
/// per-atom distributions, carried to pure strategies through the
/// table <-> strategy bijection. Weight of lambda_a is prod_G beta_a(lambda_a(G) | G).
inline ProductMixedStrategy behavioral_to_pm(const WModel& m, const PlayerPartition& players,
                                             const BehavioralStrategy& beta) {
  validate(m, players, beta);
  const auto& members = players.members(beta.player);
  ProductMixedStrategy pi{beta.player, {}};
  for (std::size_t i = 0; i < members.size(); ++i) {
    const AgentIndex a = members[i];
    const std::size_t count = strategy_count(m, a);
    std::vector<Rational> dist(count);
    for (std::size_t s = 0; s < count; ++s) {
      const auto table = strategy_from_index(m, a, s).table;
      Rational w = 1;
      for (std::size_t g = 0; g < table.size() && w != 0; ++g) w *= beta.per_agent[i][g][table[g]];
      dist[s] = std::move(w);
    }
    pi.per_agent.push_back(std::move(dist));
  }
  return pi;
}

struct UnreachableAtom {
  AgentIndex agent = 0;
  std::size_t atom = 0;
  friend bool operator==(const UnreachableAtom&, const UnreachableAtom&) = default;
};

struct MixedToBehavioral {
  BehavioralStrategy behavioral;
  /// Atoms where every configuration has zero conditioning mass; they carry
  /// the uniform distribution.
  std::vector<UnreachableAtom> unreachable_atoms;
};

/// Behavioral strategy induced by a mixed strategy under perfect recall.
///
/// At configuration h, with kappa the prefix of phi(h) ending at agent a and B
/// the player's agents in front(kappa):
///   beta_a(u | h) = mu{lambda_a(h) = u, lambda_B(h) = h_B} / mu{lambda_B(h) = h_B}.
/// The value is constant on each information atom of a; configurations with a
/// zero denominator are skipped, and atoms with no positive denominator get
/// the uniform distribution and are listed in unreachable_atoms.
inline MixedToBehavioral mixed_to_behavioral(const WModel& m, const PlayerPartition& players,
                                             PlayerIndex p, const ConfigurationOrdering& phi,
                                             const MixedStrategy& mu) {
  detail::require_player(m, players, p);
  if (mu.player != p) throw InvalidArgument("mixed strategy belongs to another player");
  const auto recall = check_perfect_recall(m, players, p, phi);
  if (!recall.perfect_recall)
    throw PreconditionFailed("player \"" + players.label(p) +
                             "\" does not have perfect recall under the given ordering");
  const auto support = detail::decode_support(m, players, mu);
  const auto& members = players.members(p);
  std::vector<std::size_t> position_of(m.agent_count(), members.size());
  for (std::size_t i = 0; i < members.size(); ++i) position_of[members[i]] = i;

  MixedToBehavioral result{{p, {}}, {}};
  for (std::size_t i = 0; i < members.size(); ++i) {
    const AgentIndex a = members[i];
    const std::size_t atoms = m.info(a).size();
    const std::size_t decisions = m.decision_size(a);
    std::vector<std::optional<std::vector<Rational>>> kernel(atoms);
    for (ConfigIndex h = 0; h < m.configuration_count(); ++h) {
      const Ordering& rho = phi.at(h);
      std::vector<std::size_t> earlier;  // member positions of B
      for (std::size_t k = 0; rho[k] != a; ++k)
        if (players.owner(rho[k]) == p) earlier.push_back(position_of[rho[k]]);
      Integer denominator = 0;
      std::vector<Integer> numerator(decisions);
      const std::size_t atom_a = m.atom_of(a, h);
      for (std::size_t e = 0; e < support.tables.size(); ++e) {
        const auto& tables = support.tables[e];
        bool consistent = true;
        for (std::size_t j : earlier) {
          const AgentIndex b = members[j];
          if (tables[j][m.atom_of(b, h)] != m.decision_of(h, b)) {
            consistent = false;
            break;
          }
        }
        if (!consistent) continue;
        denominator += support.numerators[e];
        numerator[tables[i][atom_a]] += support.numerators[e];
      }
      if (denominator == 0) continue;
      std::vector<Rational> value;
      for (const auto& n : numerator) value.emplace_back(n, denominator);
      if (!kernel[atom_a])
        kernel[atom_a] = std::move(value);
      else if (*kernel[atom_a] != value)
        throw Error("internal: induced kernel of agent \"" + m.agent(a).label +
                    "\" is not constant on information atom " + std::to_string(atom_a));
    }
    std::vector<std::vector<Rational>> dense;
    for (std::size_t g = 0; g < atoms; ++g) {
      if (kernel[g]) {
        dense.push_back(std::move(*kernel[g]));
      } else {
        dense.emplace_back(decisions, Rational(1, static_cast<long long>(decisions)));
        result.unreachable_atoms.push_back({a, g});
      }
    }
    result.behavioral.per_agent.push_back(std::move(dense));
  }
  return result;
}

struct PushforwardOptions {
  /// When set, must be causal; closed-loop solutions are then computed by
  /// forward_solve instead of enumeration.
  const ConfigurationOrdering* causal_ordering = nullptr;
};

/// Q^omega: the distribution of the closed-loop solution when each player
/// draws a pure profile from its mixed strategy independently. Throws
/// NotSolvable if some drawn profile has no unique solution.
inline OutcomeDistribution pushforward(const WModel& m, const PlayerPartition& players,
                                       std::span<const MixedStrategy> mixed,
                                       const PushforwardOptions& options = {}) {
  players.validate_against(m);
  if (mixed.size() != players.size())
    throw InvalidArgument("pushforward needs one mixed strategy per player");
  std::vector<detail::DecodedSupport> supports;
  long double combos = 1;
  for (PlayerIndex p = 0; p < players.size(); ++p) {
    if (mixed[p].player != p) throw InvalidArgument("mixed strategies must follow player order");
    supports.push_back(detail::decode_support(m, players, mixed[p]));
    combos *= static_cast<long double>(supports.back().tables.size());
  }
  if (options.causal_ordering && !check_causality(m, *options.causal_ordering).causal)
    throw PreconditionFailed("pushforward ordering is not causal");
  const long double per_solve =
      options.causal_ordering ? static_cast<long double>(m.agent_count() + 1)
                              : static_cast<long double>(m.profile_count());
  if (combos * m.nature_size() * per_solve > static_cast<long double>(m.budget().max_profile_evaluations))
    throw BudgetExceeded("pushforward exceeds " + std::to_string(m.budget().max_profile_evaluations) +
                         " evaluations");

  const std::size_t n = m.agent_count();
  std::vector<std::vector<Integer>> mass(m.nature_size(), std::vector<Integer>(m.profile_count()));
  std::vector<std::size_t> pick(players.size(), 0);
  std::vector<const std::vector<std::size_t>*> tables(n);
  PureProfile profile;  // only materialized for the forward solver
  const detail::FixedPointScanner scanner(m);
  Integer denominator = 1;
  for (const auto& s : supports) denominator *= s.denominator;
  bool done = false;
  for (const auto& s : supports)
    if (s.tables.empty()) done = true;
  while (!done) {
    Integer weight = 1;
    for (PlayerIndex p = 0; p < players.size(); ++p) {
      const auto& entry = supports[p].tables[pick[p]];
      const auto& members = players.members(p);
      for (std::size_t i = 0; i < members.size(); ++i) tables[members[i]] = &entry[i];
      weight *= supports[p].numerators[pick[p]];
    }
    if (options.causal_ordering) {
      profile.clear();
      for (AgentIndex a = 0; a < n; ++a) profile.push_back({a, *tables[a]});
    }
    for (std::size_t w = 0; w < m.nature_size(); ++w) {
      std::size_t u = 0;
      if (options.causal_ordering) {
        u = m.profile_of(m.encode({w, forward_solve(m, *options.causal_ordering, profile, w)}));
      } else {
        std::vector<std::size_t> hits;
        const std::size_t found = scanner.scan(tables, w, &hits, 2);
        if (found != 1)
          throw NotSolvable(found == 0 ? NotSolvable::Kind::no_solution
                                       : NotSolvable::Kind::multiple_solutions,
                            found, "pushforward drew a profile without a unique solution");
        u = hits.front();
      }
      mass[w][u] += weight;
    }
    std::size_t pos = players.size();
    done = true;
    while (pos-- > 0) {
      if (++pick[pos] < supports[pos].tables.size()) {
        done = false;
        break;
      }
      pick[pos] = 0;
    }
  }
  OutcomeDistribution q;
  for (auto& row : mass) {
    std::vector<Rational> dist;
    dist.reserve(row.size());
    for (auto& v : row) dist.emplace_back(v, denominator);
    q.per_omega.push_back(std::move(dist));
  }
  return q;
}

/// Sampler of exact rational distributions: integer numerators drawn
/// uniformly from [0, resolution], normalized by their sum.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, unsigned resolution = 16)
      : rng_(seed), resolution_(resolution) {}

  std::vector<Rational> simplex(std::size_t n) {
    if (n == 0) throw InvalidArgument("cannot sample a distribution over an empty set");
    std::vector<long long> k(n);
    long long total = 0;
    for (auto& v : k) {
      v = static_cast<long long>(rng_() % (resolution_ + 1));
      total += v;
    }
    if (total == 0) {
      k[rng_() % n] = 1;
      total = 1;
    }
    std::vector<Rational> out;
    for (long long v : k) out.emplace_back(v, total);
    return out;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
  unsigned resolution_;
};

/// Random mixed strategy. If the player has at most `support_limit` pure
/// profiles, every profile gets a weight; otherwise `support_limit` profiles
/// are drawn uniformly (duplicates merged).
inline MixedStrategy random_mixed(const WModel& m, const PlayerPartition& players, PlayerIndex p,
                                  RationalSampler& sampler, std::size_t support_limit = 4096) {
  detail::require_player(m, players, p);
  const auto& members = players.members(p);
  std::vector<std::size_t> counts;
  for (AgentIndex a : members) counts.push_back(strategy_count(m, a));
  long double total = 1;
  for (std::size_t c : counts) total *= static_cast<long double>(c);
  std::vector<StrategyIndices> keys;
  if (total <= static_cast<long double>(support_limit)) {
    const MixedRadix radix(counts);
    for (std::size_t i = 0; i < radix.size(); ++i) keys.push_back(radix.decode(i));
  } else {
    for (std::size_t i = 0; i < support_limit; ++i) {
      StrategyIndices k;
      for (std::size_t c : counts) k.push_back(sampler.index(c));
      keys.push_back(std::move(k));
    }
  }
  const auto w = sampler.simplex(keys.size());
  MixedStrategy mu{p, {}};
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (w[i] != 0) mu.weights[keys[i]] += w[i];
  return mu;
}

inline BehavioralStrategy random_behavioral(const WModel& m, const PlayerPartition& players,
                                            PlayerIndex p, RationalSampler& sampler) {
  detail::require_player(m, players, p);
  BehavioralStrategy beta{p, {}};
  for (AgentIndex a : players.members(p)) {
    std::vector<std::vector<Rational>> kernel;
    for (std::size_t g = 0; g < m.info(a).size(); ++g)
      kernel.push_back(sampler.simplex(m.decision_size(a)));
    beta.per_agent.push_back(std::move(kernel));
  }
  return beta;
}

inline ProductMixedStrategy random_product_mixed(const WModel& m, const PlayerPartition& players,
                                                 PlayerIndex p, RationalSampler& sampler) {
  detail::require_player(m, players, p);
  ProductMixedStrategy pi{p, {}};
  for (AgentIndex a : players.members(p)) pi.per_agent.push_back(sampler.simplex(strategy_count(m, a)));
  return pi;
}

/// mu{lambda : lambda_a(h) = h_a for every agent a of the player}, for each h.
inline std::vector<Rational> realization_mass(const WModel& m, const PlayerPartition& players,
                                              const MixedStrategy& mu) {
  const auto support = detail::decode_support(m, players, mu);
  const auto& members = players.members(mu.player);
  std::vector<Rational> out;
  out.reserve(m.configuration_count());
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h) {
    Integer mass = 0;
    for (std::size_t e = 0; e < support.tables.size(); ++e) {
      bool agrees = true;
      for (std::size_t i = 0; i < members.size() && agrees; ++i)
        agrees = support.tables[e][i][m.atom_of(members[i], h)] == m.decision_of(h, members[i]);
      if (agrees) mass += support.numerators[e];
    }
    out.emplace_back(mass, support.denominator);
  }
  return out;
}

/// Same quantity under a product-mixed strategy, computed from its per-agent
/// marginals (the event is a product of per-agent events).
inline std::vector<Rational> realization_mass(const WModel& m, const PlayerPartition& players,
                                              const ProductMixedStrategy& pi) {
  validate(m, players, pi);
  const auto& members = players.members(pi.player);
  std::vector<std::vector<std::vector<std::size_t>>> tables(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t s = 0; s < pi.per_agent[i].size(); ++s)
      tables[i].push_back(strategy_from_index(m, members[i], s).table);
  std::vector<Rational> out;
  out.reserve(m.configuration_count());
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h) {
    Rational product = 1;
    for (std::size_t i = 0; i < members.size() && product != 0; ++i) {
      const AgentIndex a = members[i];
      const std::size_t atom = m.atom_of(a, h);
      Rational marginal = 0;
      for (std::size_t s = 0; s < tables[i].size(); ++s)
        if (pi.per_agent[i][s] != 0 && tables[i][s][atom] == m.decision_of(h, a))
          marginal += pi.per_agent[i][s];
      product *= marginal;
    }
    out.push_back(std::move(product));
  }
  return out;
}

struct KuhnOptions {
  std::size_t opponent_samples = 10;
  std::uint64_t seed = 0;
  /// Support cap for sampled opponent mixed strategies.
  std::size_t opponent_support_limit = 64;
  /// When set, expected utilities are compared as well.
  const Criterion* criterion = nullptr;
};

struct KuhnReport {
  bool passed = false;
  BehavioralStrategy behavioral;
  ProductMixedStrategy product_mixed;
  std::vector<UnreachableAtom> unreachable_atoms;

  bool factor_identity = true;
  std::optional<ConfigIndex> first_factor_mismatch;
  std::vector<Rational> mixed_mass;    // per configuration
  std::vector<Rational> product_mass;  // per configuration

  std::size_t opponent_samples = 0;
  bool outcomes_equal = true;
  /// (sample, omega) of the first differing outcome distribution.
  std::optional<std::pair<std::size_t, std::size_t>> first_outcome_mismatch;
  std::optional<bool> expected_utilities_equal;
};

/// Checks Kuhn's equivalence for player p and mixed strategy mu:
/// builds pi = behavioral_to_pm(mixed_to_behavioral(mu)), then
///  (i) mu and pi give equal mass to {lambda : lambda_a(h) = h_a, a in A^p}
///      at every configuration h, and
/// (ii) the outcome distributions under (mu^{-p}, mu) and (mu^{-p}, pi) agree
///      at every omega for sampled opponents mu^{-p}.
/// Throws PreconditionFailed unless phi is causal and p has perfect recall.
inline KuhnReport verify_kuhn(const WModel& m, const PlayerPartition& players, PlayerIndex p,
                              const ConfigurationOrdering& phi, const MixedStrategy& mu,
                              const KuhnOptions& options = {}) {
  detail::require_player(m, players, p);
  if (!check_causality(m, phi).causal)
    throw PreconditionFailed("configuration-ordering is not causal");
  if (!check_perfect_recall(m, players, p, phi).perfect_recall)
    throw PreconditionFailed("player \"" + players.label(p) +
                             "\" does not have perfect recall under the given ordering");
  KuhnReport report;
  auto induced = mixed_to_behavioral(m, players, p, phi, mu);
  report.behavioral = std::move(induced.behavioral);
  report.unreachable_atoms = std::move(induced.unreachable_atoms);
  report.product_mixed = behavioral_to_pm(m, players, report.behavioral);

  report.mixed_mass = realization_mass(m, players, mu);
  report.product_mass = realization_mass(m, players, report.product_mixed);
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h)
    if (report.mixed_mass[h] != report.product_mass[h]) {
      report.factor_identity = false;
      report.first_factor_mismatch = h;
      break;
    }

  if (options.criterion) {
    options.criterion->validate(m, players);
    report.expected_utilities_equal = true;
  }
  const MixedStrategy realized = pm_to_mixed(m, players, report.product_mixed);
  RationalSampler sampler(options.seed);
  const bool has_opponents = players.size() > 1;
  report.opponent_samples = has_opponents ? options.opponent_samples : 1;
  for (std::size_t sample = 0; sample < report.opponent_samples; ++sample) {
    std::vector<MixedStrategy> with_mixed, with_product;
    for (PlayerIndex q = 0; q < players.size(); ++q) {
      if (q == p) {
        with_mixed.push_back(mu);
        with_product.push_back(realized);
      } else {
        auto opponent = random_mixed(m, players, q, sampler, options.opponent_support_limit);
        with_mixed.push_back(opponent);
        with_product.push_back(std::move(opponent));
      }
    }
    const auto q_mixed = pushforward(m, players, with_mixed);
    const auto q_product = pushforward(m, players, with_product);
    for (std::size_t w = 0; w < m.nature_size() && report.outcomes_equal; ++w)
      if (q_mixed.per_omega[w] != q_product.per_omega[w]) {
        report.outcomes_equal = false;
        report.first_outcome_mismatch = std::make_pair(sample, w);
      }
    if (options.criterion &&
        expected_utility(m, players, *options.criterion, q_mixed) !=
            expected_utility(m, players, *options.criterion, q_product))
      report.expected_utilities_equal = false;
  }
  report.passed = report.factor_identity && report.outcomes_equal &&
                  report.expected_utilities_equal.value_or(true);
  return report;
}

}  // namespace wgame
