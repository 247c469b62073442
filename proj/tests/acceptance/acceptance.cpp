// Acceptance gate: runs criteria 1-7 and prints one PASS/FAIL line for each.
// Exit status is 0 only if every criterion passes.

#include <CLI11.hpp>

#include <unistd.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "../oracles.hpp"
#include "wgame/spec_io.hpp"

namespace fs = std::filesystem;
using namespace wgame;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failed check; later checks still run but keep the first message.
struct Checker {
  Outcome result;
  bool operator()(bool cond, const std::string& what) {
    if (!cond && result.ok) {
      result.ok = false;
      result.detail = what;
    }
    return cond;
  }
};

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

ConfigurationOrdering natural(const Game& g) { return ConfigurationOrdering::constant(*g.ordering_hint); }

// 1. Join laws, contains against the closure oracle, cylinder of a union is the join.
Outcome algebra_laws() {
  Checker check;
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 500 && check.result.ok; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto p = oracle::random_partition(rng, n, 1 + rng() % n);
    const auto q = oracle::random_partition(rng, n, 1 + rng() % n);
    const auto r = oracle::random_partition(rng, n, 1 + rng() % n);
    const auto tag = "trial " + std::to_string(trial) + ": ";
    check(join(p, q) == join(q, p), tag + "join is not commutative");
    check(join(join(p, q), r) == join(p, join(q, r)), tag + "join is not associative");
    check(join(p, p) == p, tag + "join is not idempotent");

    const auto field = oracle::closure(p);
    for (oracle::Mask s = 0; s < (oracle::Mask{1} << n); ++s) {
      std::vector<Element> elems;
      for (Element e = 0; e < n; ++e)
        if (s >> e & 1) elems.push_back(e);
      if (!check(contains(p, elems) == (field.count(s) == 1),
                 tag + "contains disagrees with closure on set " + std::to_string(s)))
        break;
    }

    // Coordinate sizes with product at most 12.
    std::vector<std::size_t> sizes;
    std::size_t product = 1;
    while (sizes.size() < 4) {
      const std::size_t s = 1 + rng() % 3;
      if (product * s > 12) break;
      sizes.push_back(s);
      product *= s;
    }
    if (sizes.empty()) sizes.push_back(1);
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const auto pick = rng() % 3;
      if (pick == 0) a.push_back(i);
      if (pick == 1) b.push_back(i);
    }
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    check(cylinder(sizes, ab) == join(cylinder(sizes, a), cylinder(sizes, b)),
          tag + "cylinder of a union differs from the join");
  }
  return check.result;
}

// 2. Causal fixtures are solvable; DEADLOCK is neither.
Outcome causality_implies_solvability() {
  Checker check;
  for (const std::string name : {"STACK", "MP", "PR2", "SEQ2", "SEQ3", "HIDDEN_TYPE", "HIDDEN_ACTION"}) {
    const auto g = gallery(name);
    const auto found = find_causal(g.model);
    if (!check(found.ordering.has_value(), name + ": no causal ordering found")) continue;
    check(check_causality(g.model, *found.ordering).causal, name + ": found ordering fails the check");
    check(is_solvable(g.model).solvable, name + ": causal but reported unsolvable");
  }
  const auto d = gallery("DEADLOCK");
  const auto found = find_causal(d.model);
  check(!found.ordering && found.search_class == SearchClass::sequential,
        "DEADLOCK: expected no ordering in the sequential class");
  const auto rep = is_solvable(d.model);
  if (check(!rep.solvable && rep.witness, "DEADLOCK: expected a non-solvability witness")) {
    const std::vector<std::size_t> copy{0, 1};
    check(rep.witness->cardinality == 2, "DEADLOCK: witness cardinality is not 2");
    check(rep.witness->profile.size() == 2 && rep.witness->profile[0].table == copy &&
              rep.witness->profile[1].table == copy,
          "DEADLOCK: witness is not copy/copy");
  }
  return check.result;
}

// 3. pm_to_behavioral after behavioral_to_pm is the identity.
Outcome transform_round_trip() {
  Checker check;
  for (const auto& name : {"STACK", "DEADLOCK", "PR2", "PR2_NOR", "MP", "SEQ2", "SEQ3", "HIDDEN_TYPE",
                           "HIDDEN_ACTION"}) {
    const auto g = gallery(name);
    RationalSampler sampler(3);
    for (int trial = 0; trial < 200; ++trial) {
      const PlayerIndex p = static_cast<PlayerIndex>(trial % g.players.size());
      const auto beta = random_behavioral(g.model, g.players, p, sampler);
      const auto back = pm_to_behavioral(g.model, g.players, behavioral_to_pm(g.model, g.players, beta));
      if (!check(back == beta, std::string(name) + ": round trip differs at trial " + std::to_string(trial)))
        break;
    }
  }
  return check.result;
}

// 4. Kuhn's equivalence, through verify_kuhn and through the brute-force
// pushforward of the realized product-mixed strategy.
Outcome kuhn_equivalence() {
  Checker check;
  for (const auto& name : {"PR2", "SEQ2", "SEQ3"}) {
    const auto g = gallery(name);
    const auto phi = natural(g);
    RationalSampler sampler(4);
    for (int trial = 0; trial < 100 && check.result.ok; ++trial) {
      const auto tag = std::string(name) + " trial " + std::to_string(trial) + ": ";
      const PlayerIndex p = static_cast<PlayerIndex>(trial % g.players.size());
      const auto mu = random_mixed(g.model, g.players, p, sampler);
      KuhnOptions opts;
      opts.opponent_samples = 10;
      opts.seed = static_cast<std::uint64_t>(trial);
      const auto rep = verify_kuhn(g.model, g.players, p, phi, mu, opts);
      check(rep.factor_identity, tag + "factor identity fails");
      check(rep.outcomes_equal, tag + "outcome distributions differ");
      // A player owning every agent has no opponent profile to vary.
      check(rep.opponent_samples == (g.players.size() > 1 ? 10u : 1u), tag + "wrong number of opponent samples");

      const auto pi_mixed = pm_to_mixed(g.model, g.players, rep.product_mixed);
      for (int s = 0; s < 10; ++s) {
        std::vector<MixedStrategy> with_mu, with_pi;
        for (PlayerIndex o = 0; o < g.players.size(); ++o) {
          if (o == p) {
            with_mu.push_back(mu);
            with_pi.push_back(pi_mixed);
          } else {
            const auto opp = random_mixed(g.model, g.players, o, sampler, 64);
            with_mu.push_back(opp);
            with_pi.push_back(opp);
          }
        }
        if (!check(oracle::brute_pushforward(g.model, g.players, with_mu).per_omega ==
                       oracle::brute_pushforward(g.model, g.players, with_pi).per_omega,
                   tag + "oracle outcome distributions differ"))
          break;
        if (g.players.size() == 1) break;  // no opponent to vary
      }
    }
  }
  return check.result;
}

// 5. The correlated PR2 strategy.
Outcome pr2_hand_example() {
  Checker check;
  const auto g = gallery("PR2");
  const auto& m = g.model;
  const auto phi = natural(g);
  // a1 has one atom, a2 two: constant-1 is index 1 for a1 and index 3 for a2.
  MixedStrategy mu{0, {{{0, 0}, Rational(1, 2)}, {{1, 3}, Rational(1, 2)}}};
  const auto induced = mixed_to_behavioral(m, g.players, 0, phi, mu);
  const auto& beta = induced.behavioral;
  const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  check(beta.per_agent[0] == std::vector<std::vector<Rational>>{half}, "beta_a1 is not (1/2, 1/2)");
  check(beta.per_agent[1].size() == 2, "a2 should have two information atoms");
  for (std::size_t atom = 0; atom < beta.per_agent[1].size(); ++atom) {
    const auto& d = beta.per_agent[1][atom];
    check(std::count(d.begin(), d.end(), Rational(1)) == 1, "beta_a2 is not deterministic on an atom");
  }
  check(induced.unreachable_atoms.empty(), "no atom should be unreachable");

  const auto& members = g.players.members(0);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (ConfigIndex h = 0; h < m.configuration_count(); ++h)
      for (std::size_t u = 0; u < m.decision_size(members[i]); ++u) {
        const auto expected = oracle::induced_behavioral(m, g.players, 0, phi, mu, members[i], h, u);
        if (expected)
          check(beta.per_agent[i][m.atom_of(members[i], h)][u] == *expected,
                "behavioral strategy differs from the oracle at configuration " + std::to_string(h));
      }

  const std::vector<MixedStrategy> profile{mu};
  const auto q = pushforward(m, g.players, profile);
  check(q.per_omega == oracle::brute_pushforward(m, g.players, profile).per_omega,
        "pushforward differs from the oracle");
  std::vector<Rational> expected(m.profile_count());
  expected[m.profile_of(m.encode({0, {0, 0}}))] = Rational(1, 2);
  expected[m.profile_of(m.encode({0, {1, 1}}))] = Rational(1, 2);
  check(q.per_omega.size() == 1 && q.per_omega[0] == expected, "Q(w0) is not 1/2 (0,0) + 1/2 (1,1)");
  return check.result;
}

// 6. Perfect recall on PR2, PR2_NOR and SEQ(T).
Outcome recall_discrimination() {
  Checker check;
  for (const auto& name : {"PR2", "SEQ2", "SEQ3"}) {
    const auto g = gallery(name);
    const auto phi = natural(g);
    check(check_perfect_recall(g.model, g.players, 0, phi).perfect_recall, std::string(name) + ": recall fails");
    check(oracle::recall_by_definition(g.model, g.players, 0, phi),
          std::string(name) + ": oracle disagrees");
  }
  const auto g = gallery("PR2_NOR");
  const auto phi = natural(g);
  const auto rep = check_perfect_recall(g.model, g.players, 0, phi);
  check(!oracle::recall_by_definition(g.model, g.players, 0, phi), "PR2_NOR: oracle reports recall");
  if (check(!rep.perfect_recall && rep.violation, "PR2_NOR: recall should fail")) {
    const auto& v = *rep.violation;
    check(v.kappa == Ordering{0, 1} && v.agent == 1, "PR2_NOR: violation is not at kappa=(a1,a2)");
    check(g.model.decode(v.representative).decisions[0] == 0, "PR2_NOR: representative does not have a1=0");
  }
  return check.result;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& cli, const std::string& args, const fs::path& dir) {
  const auto out = dir / "out";
  const std::string cmd = "'" + cli + "' " + args + " > '" + out.string() + "' 2> /dev/null < /dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

// 7. Every verb on every fixture, twice, with a fixed seed.
Outcome cli_determinism(const std::string& cli, const fs::path& fixtures) {
  Checker check;
  const auto dir = fs::temp_directory_path() / ("wgame_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  std::vector<std::string> invocations{"gallery", "gallery SEQ --horizon 3"};
  std::vector<fs::path> games;
  for (const auto& entry : fs::directory_iterator(fixtures / "games")) games.push_back(entry.path());
  std::sort(games.begin(), games.end());
  for (const auto& path : games) {
    const auto stem = path.stem().string();
    const auto g = io::game_from_text(slurp(path));
    const auto game = quote(path);
    invocations.push_back("gallery " + stem);
    for (const auto& verb : {"validate", "solvable", "causal"}) invocations.push_back(std::string(verb) + " " + game);

    RationalSampler sampler(7);
    std::string profile;
    for (PlayerIndex p = 0; p < g.players.size(); ++p) {
      const auto file = dir / (stem + "_" + std::to_string(p) + ".json");
      std::ofstream(file) << io::strategy_to_json(g, random_mixed(g.model, g.players, p, sampler, 64)).dump(2)
                          << "\n";
      const auto player = " --player " + g.players.label(p);
      const auto strategy = quote(file);
      profile += " --mixed " + strategy;
      invocations.push_back("recall " + game + player);
      for (const auto& to : {"mixed", "product-mixed", "behavioral"})
        invocations.push_back("transform " + game + " --input " + strategy + " --to " + to);
      invocations.push_back("kuhn-check " + game + player + " --mixed " + strategy + " --seed 11");
    }
    invocations.push_back("push " + game + profile);
    invocations.push_back("eu " + game + profile);
  }

  for (const auto& args : invocations) {
    const auto first = run(cli, args, dir), second = run(cli, args, dir);
    check(first.code >= 0 && first.code <= 2 && !first.out.empty(), "no report from: " + args);
    check(first.code == second.code && first.out == second.out, "reports differ for: " + args);
  }
  fs::remove_all(dir);
  if (check.result.ok) check.result.detail = std::to_string(invocations.size()) + " invocations";
  return check.result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string cli;
  std::string fixtures;
  app.add_option("--cli", cli, "Path to the wgame binary")->required();
  app.add_option("--fixtures", fixtures, "Fixture directory")->required();
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* name;
    double limit_seconds;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"algebra laws", 5, algebra_laws},
      {"causality implies solvability", 10, causality_implies_solvability},
      {"transform round trip", 10, transform_round_trip},
      {"Kuhn equivalence", 60, kuhn_equivalence},
      {"PR2 hand example", 0, pr2_hand_example},
      {"perfect recall discrimination", 0, recall_discrimination},
      {"CLI determinism", 0, [&] { return cli_determinism(cli, fixtures); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      o.ok = false;
      o.detail = "exceeded " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    if (!o.ok) ++failed;
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << c.name << ") " << std::fixed
         << std::setprecision(2) << seconds << " s";
    if (!o.detail.empty()) line << ": " << o.detail;
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
