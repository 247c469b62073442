// Two agents who each observe only the other's move. No ordering makes the
// game causal, and the copy/copy profile has two closed-loop solutions.

#include <iostream>

#include "wgame/wgame.hpp"

int main() {
  using namespace wgame;
  const Game g = gallery("DEADLOCK");
  const auto& m = g.model;

  const auto search = find_causal(m);
  std::cout << "causal ordering found: " << std::boolalpha << search.ordering.has_value() << " (searched "
            << to_string(search.search_class) << " orderings)\n";

  const auto report = is_solvable(m);
  std::cout << "solvable: " << report.solvable << " after " << report.profiles_checked << " profiles\n";
  if (report.witness) {
    const auto& w = *report.witness;
    for (const auto& s : w.profile) {
      std::cout << m.agent(s.agent).label << " plays";
      for (std::size_t d : s.table) std::cout << " " << m.agent(s.agent).decisions[d];
      std::cout << "\n";
    }
    for (const auto& u : solution_set(m, w.profile, w.omega)) std::cout << "solution (" << u[0] << "," << u[1] << ")\n";
  }
}
