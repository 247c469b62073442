// A player with two agents mixes over "both play 0" and "both play 1". The
// second agent sees the first one's move, so the correlation survives as a
// behavioral strategy.

#include <iostream>

#include "wgame/wgame.hpp"

int main() {
  using namespace wgame;
  const Game g = gallery("PR2");
  const auto& m = g.model;
  const auto phi = ConfigurationOrdering::constant(*g.ordering_hint);

  // Strategy indices: a1 has one atom, a2 has one per move of a1.
  const std::size_t a1_zero = strategy_index(m, make_strategy(m, 0, {0}));
  const std::size_t a1_one = strategy_index(m, make_strategy(m, 0, {1}));
  const std::size_t a2_zero = strategy_index(m, make_strategy(m, 1, {0, 0}));
  const std::size_t a2_one = strategy_index(m, make_strategy(m, 1, {1, 1}));
  MixedStrategy mu{0, {{{a1_zero, a2_zero}, Rational(1, 2)}, {{a1_one, a2_one}, Rational(1, 2)}}};

  std::cout << "perfect recall: " << std::boolalpha
            << check_perfect_recall(m, g.players, 0, phi).perfect_recall << "\n";

  const auto beta = mixed_to_behavioral(m, g.players, 0, phi, mu).behavioral;
  for (std::size_t i = 0; i < beta.per_agent.size(); ++i)
    for (std::size_t atom = 0; atom < beta.per_agent[i].size(); ++atom) {
      std::cout << m.agent(g.players.members(0)[i]).label << " atom " << atom << ":";
      for (const auto& w : beta.per_agent[i][atom]) std::cout << " " << to_string(w);
      std::cout << "\n";
    }

  const auto report = verify_kuhn(m, g.players, 0, phi, mu);
  std::cout << "kuhn equivalence: " << report.passed << "\n";

  const std::vector<MixedStrategy> profile{mu};
  const auto q = pushforward(m, g.players, profile);
  for (std::size_t k = 0; k < m.profile_count(); ++k)
    if (q.per_omega[0][k] != 0) {
      const auto c = m.decode(k);  // omega 0 is the first block of H
      std::cout << "Q(" << c.decisions[0] << "," << c.decisions[1] << ") = " << to_string(q.per_omega[0][k])
                << "\n";
    }
}
