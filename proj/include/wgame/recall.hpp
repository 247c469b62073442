#pragma once

// Choice fields and perfect recall.

#include "wgame/ordering.hpp"

namespace wgame {

/// What agent a did joined with what it knew: own-decision cylinder v I_a.
inline FinitePartition choice_field(const WModel& m, AgentIndex a) {
  const AgentIndex self[] = {a};
  return join(agents_cylinder(m, self, false), m.info(a));
}

/// Join of the choice fields of `agents`; the trivial field when empty.
inline FinitePartition past_choice_field(const WModel& m, std::span<const AgentIndex> agents) {
  FinitePartition field = trivial(GroundSet(m.configuration_count()));
  for (AgentIndex b : agents) field = join(field, choice_field(m, b));
  return field;
}

using RecallViolation = FieldViolation;

struct RecallReport {
  bool perfect_recall = true;
  /// `atom` indexes the past choice field of the player's earlier agents.
  std::optional<RecallViolation> violation;
};

/// Perfect recall of player p under phi: for every nonempty H_kappa whose last
/// agent belongs to p, and every atom G of the joined choice fields of p's
/// agents in front(kappa), H_kappa ∩ G must lie in the information field of
/// last(kappa). Throws PreconditionFailed if phi is not causal.
inline RecallReport check_perfect_recall(const WModel& m, const PlayerPartition& players,
                                         PlayerIndex p, const ConfigurationOrdering& phi) {
  players.validate_against(m);
  if (p >= players.size()) throw InvalidArgument("player index out of range");
  if (!check_causality(m, phi).causal)
    throw PreconditionFailed("perfect recall needs a causal configuration-ordering");
  std::map<std::vector<AgentIndex>, FinitePartition> fields;
  for (const auto& [kappa, members] : prefix_sets(m, phi)) {
    if (kappa.empty() || players.owner(kappa.last()) != p) continue;
    std::vector<AgentIndex> own_past;
    for (AgentIndex b : kappa.front().range())
      if (players.owner(b) == p) own_past.push_back(b);
    auto it = fields.find(own_past);
    if (it == fields.end()) it = fields.emplace(own_past, past_choice_field(m, own_past)).first;
    const AgentIndex a = kappa.last();
    if (auto atom = detail::first_intersection_outside(members, it->second, m.info(a)))
      return {false, FieldViolation{kappa, a, *atom, it->second.atom(*atom).front()}};
  }
  return {true, std::nullopt};
}

}  // namespace wgame
