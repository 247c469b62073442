#pragma once

// Closed-loop equations u_a = lambda_a(omega, u) for all agents a.
//
// Brute-force enumeration of decision profiles is the reference solver. The
// forward solver follows a certified causal configuration-ordering and is
// cross-checked against it in the tests.

#include <type_traits>

#include "wgame/ordering.hpp"
#include "wgame/strategy.hpp"

namespace wgame {

namespace detail {

/// Enumerates decision profiles at a fixed omega and collects fixed points.
class FixedPointScanner {
 public:
  explicit FixedPointScanner(const WModel& m) : m_(m) {}

  /// tables[a] is the strategy table of agent a. Stops after `limit` hits.
  template <typename Tables>
  std::size_t scan(const Tables& tables, std::size_t omega, std::vector<std::size_t>* hits,
                   std::size_t limit = static_cast<std::size_t>(-1)) const {
    std::size_t found = 0;
    const std::size_t n = m_.agent_count();
    for (std::size_t u = 0; u < m_.profile_count(); ++u) {
      const ConfigIndex h = m_.configuration(omega, u);
      bool fixed = true;
      for (AgentIndex a = 0; a < n && fixed; ++a)
        fixed = table_at(tables, a)[m_.atom_of(a, h)] == m_.decision_of(h, a);
      if (!fixed) continue;
      if (hits) hits->push_back(u);
      if (++found >= limit) break;
    }
    return found;
  }

 private:
  template <typename Tables>
  static const std::vector<std::size_t>& table_at(const Tables& t, AgentIndex a) {
    if constexpr (std::is_pointer_v<std::decay_t<decltype(t[a])>>)
      return *t[a];
    else
      return t[a].table;
  }

  const WModel& m_;
};

inline void require_full_profile(const WModel& m, const PureProfile& profile) {
  validate_profile(m, profile);
}

}  // namespace detail

/// All decision profiles solving the closed-loop equations at omega, in
/// lexicographic order.
inline std::vector<DecisionProfile> solution_set(const WModel& m, const PureProfile& profile,
                                                 std::size_t omega) {
  detail::require_full_profile(m, profile);
  if (omega >= m.nature_size()) throw InvalidArgument("Nature outcome out of range");
  std::vector<std::size_t> hits;
  detail::FixedPointScanner(m).scan(profile, omega, &hits);
  std::vector<DecisionProfile> out;
  for (std::size_t u : hits) out.push_back(m.decode(m.configuration(omega, u)).decisions);
  return out;
}

/// The unique solution at omega. Throws NotSolvable when there are zero or
/// several.
inline DecisionProfile solution_map(const WModel& m, const PureProfile& profile,
                                    std::size_t omega) {
  detail::require_full_profile(m, profile);
  if (omega >= m.nature_size()) throw InvalidArgument("Nature outcome out of range");
  std::vector<std::size_t> hits;
  const std::size_t found = detail::FixedPointScanner(m).scan(profile, omega, &hits, 2);
  if (found == 0)
    throw NotSolvable(NotSolvable::Kind::no_solution, 0,
                      "closed-loop equations have no solution at \"" + m.nature_labels()[omega] + "\"");
  if (found > 1)
    throw NotSolvable(NotSolvable::Kind::multiple_solutions, found,
                      "closed-loop equations have several solutions at \"" +
                          m.nature_labels()[omega] + "\"");
  return m.decode(m.configuration(omega, hits.front())).decisions;
}

/// Resolves agents in the order given by a causal configuration-ordering.
/// Throws PreconditionFailed if the result is not a fixed point, which can only
/// happen when phi is not causal.
inline DecisionProfile forward_solve(const WModel& m, const ConfigurationOrdering& phi,
                                     const PureProfile& profile, std::size_t omega) {
  detail::require_full_profile(m, profile);
  if (omega >= m.nature_size()) throw InvalidArgument("Nature outcome out of range");
  ConfigIndex h = m.configuration(omega, 0);
  for (std::size_t k = 0; k < m.agent_count(); ++k) {
    const AgentIndex b = phi.at(h)[k];
    const std::size_t decision = profile[b].table[m.atom_of(b, h)];
    h += decision * m.space().stride(WModel::position_of(b));
  }
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    if (evaluate(m, profile[a], h) != m.decision_of(h, a))
      throw PreconditionFailed("forward solve did not reach a fixed point; ordering is not causal");
  return m.decode(h).decisions;
}

struct SolvabilityWitness {
  PureProfile profile;
  std::size_t omega = 0;
  std::size_t cardinality = 0;
};

struct SolvabilityReport {
  bool solvable = true;
  std::optional<SolvabilityWitness> witness;
  std::size_t profiles_checked = 0;
};

/// Number of pure profiles |Lambda| = prod_a |Lambda_a|, with the budget
/// checks of strategy_count and of max_profile_evaluations.
inline std::size_t profile_count_checked(const WModel& m) {
  long double work = static_cast<long double>(m.nature_size()) * m.profile_count();
  std::size_t total = 1;
  for (AgentIndex a = 0; a < m.agent_count(); ++a) {
    const std::size_t c = strategy_count(m, a);
    work *= static_cast<long double>(c);
    if (work > static_cast<long double>(m.budget().max_profile_evaluations))
      throw BudgetExceeded("exhaustive profile scan exceeds " +
                           std::to_string(m.budget().max_profile_evaluations) + " evaluations");
    total *= c;
  }
  return total;
}

/// Checks that every pure profile has exactly one solution at every omega.
/// Profiles are scanned in lexicographic order of per-agent strategy indices
/// (agent 0 most significant), omega innermost; the first failure is
/// returned as the witness.
inline SolvabilityReport is_solvable(const WModel& m) {
  profile_count_checked(m);
  const std::size_t n = m.agent_count();
  std::vector<std::vector<PureStrategy>> all(n);
  for (AgentIndex a = 0; a < n; ++a) all[a] = enumerate_pure(m, a);
  std::vector<std::size_t> index(n, 0);
  std::vector<const std::vector<std::size_t>*> tables(n);
  const detail::FixedPointScanner scanner(m);
  SolvabilityReport report;
  while (true) {
    for (AgentIndex a = 0; a < n; ++a) tables[a] = &all[a][index[a]].table;
    ++report.profiles_checked;
    for (std::size_t w = 0; w < m.nature_size(); ++w) {
      const std::size_t found = scanner.scan(tables, w, nullptr);
      if (found != 1) {
        SolvabilityWitness witness{{}, w, found};
        for (AgentIndex a = 0; a < n; ++a) witness.profile.push_back(all[a][index[a]]);
        report.solvable = false;
        report.witness = std::move(witness);
        return report;
      }
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++index[pos] < all[pos].size()) break;
      index[pos] = 0;
      if (pos == 0) return report;
    }
    if (n == 0) return report;
  }
}

}  // namespace wgame
