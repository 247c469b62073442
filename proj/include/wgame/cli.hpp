#pragma once

// Command implementations behind the wgame command-line tool.
//
// Every command writes one JSON report to `out` and a short human summary to
// `err`. Exit codes: 0 success or property holds, 1 property fails (or a
// certificate it depends on is missing), 2 usage, parse or budget errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "wgame/spec_io.hpp"

namespace wgame::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kPropertyFails = 1, kUsage = 2 };

struct Options {
  std::string verb;
  std::string game;                 // path or "-"
  std::string name;                 // gallery
  std::size_t horizon = 2;          // gallery SEQ
  std::optional<std::string> player;
  std::vector<std::string> strategies;  // --mixed
  std::string input;                // transform
  std::string to;                   // transform
  std::optional<std::string> ordering;  // comma-separated agent labels
  std::uint64_t seed = 0;
  std::size_t samples = 10;
};

class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

namespace detail {

class Sources {
 public:
  explicit Sources(std::istream& in) : in_(in) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw UsageError("standard input can be read only once");
      stdin_used_ = true;
      std::ostringstream s;
      s << in_.rdbuf();
      return s.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open \"" + path + "\"");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

inline std::string with_source(const std::string& path, const std::string& message) {
  return (path == "-" ? std::string("<stdin>") : path) + ": " + message;
}

inline Game load_game(Sources& src, const std::string& path) {
  if (path.empty()) throw UsageError("missing game file");
  const auto text = src.read(path);
  try {
    return io::game_from_text(text);
  } catch (const io::SyntaxError& e) {
    throw io::SyntaxError(e.line(), e.column(), with_source(path, e.what()));
  }
}

inline io::AnyStrategy load_strategy(Sources& src, const Game& g, const std::string& path) {
  const auto text = src.read(path);
  return io::strategy_from_json(g, io::parse_json(text));
}

inline Ordering parse_ordering_flag(const WModel& m, const std::string& flag) {
  Json labels = Json::array();
  std::size_t start = 0;
  while (start <= flag.size()) {
    const auto comma = flag.find(',', start);
    labels.push_back(flag.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  try {
    return io::ordering_from_json(m, labels, "");
  } catch (const io::SpecError& e) {
    throw UsageError("--ordering: " + e.message());
  }
}

struct ChosenOrdering {
  ConfigurationOrdering phi;
  std::string source;  // "argument", "hint" or "search"
};

/// --ordering, else the game's ordering hint, else find_causal. The result
/// is not checked for causality here.
inline ChosenOrdering choose_ordering(const Game& g, const Options& o) {
  if (o.ordering) return {ConfigurationOrdering::constant(parse_ordering_flag(g.model, *o.ordering)), "argument"};
  if (g.ordering_hint) return {ConfigurationOrdering::constant(*g.ordering_hint), "hint"};
  auto found = find_causal(g.model);
  if (!found.ordering) throw PreconditionFailed("no causal configuration-ordering found");
  return {std::move(*found.ordering), "search"};
}

inline PlayerIndex resolve_player(const Game& g, const std::string& label) {
  if (auto p = g.players.find(label)) return *p;
  throw UsageError("unknown player \"" + label + "\"");
}

/// One mixed strategy per player, from the --mixed files.
inline std::vector<MixedStrategy> load_profile(Sources& src, const Game& g, const Options& o) {
  std::vector<std::optional<MixedStrategy>> by_player(g.players.size());
  for (const auto& path : o.strategies) {
    const auto s = load_strategy(src, g, path);
    const PlayerIndex p = io::player_of(s);
    if (by_player[p]) throw UsageError("two strategy files for player \"" + g.players.label(p) + "\"");
    by_player[p] = io::as_mixed(g, s);
  }
  std::vector<MixedStrategy> out;
  for (PlayerIndex p = 0; p < g.players.size(); ++p) {
    if (!by_player[p]) throw UsageError("missing --mixed file for player \"" + g.players.label(p) + "\"");
    out.push_back(std::move(*by_player[p]));
  }
  return out;
}

inline Json unreachable_to_json(const WModel& m, const std::vector<UnreachableAtom>& atoms) {
  Json out = Json::array();
  for (const auto& u : atoms)
    out.push_back(Json{{"agent", m.agent(u.agent).label},
                       {"atom", io::configuration_to_json(m, m.info(u.agent).atom(u.atom).front())}});
  return out;
}

// -- verbs ------------------------------------------------------------------

inline int validate(const Options& o, Sources& src, Json& report, std::ostream& err) {
  const Game g = load_game(src, o.game);
  const WModel& m = g.model;
  Json agents = Json::array();
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    agents.push_back(Json{{"label", m.agent(a).label},
                          {"decisions", m.agent(a).decisions},
                          {"atoms", m.info(a).size()},
                          {"player", g.players.label(g.players.owner(a))}});
  Json players = Json::array();
  for (PlayerIndex p = 0; p < g.players.size(); ++p) {
    Json owned = Json::array();
    for (AgentIndex a : g.players.members(p)) owned.push_back(m.agent(a).label);
    players.push_back(Json{{"label", g.players.label(p)}, {"agents", std::move(owned)}});
  }
  report["valid"] = true;
  report["nature"] = m.nature_labels();
  report["configurations"] = m.configuration_count();
  report["agents"] = std::move(agents);
  report["players"] = std::move(players);
  report["criterion"] = g.criterion.has_value();
  report["ordering"] = g.ordering_hint ? io::ordering_to_json(m, *g.ordering_hint) : Json(nullptr);
  err << "valid: " << m.agent_count() << " agents, " << g.players.size() << " players, "
      << m.configuration_count() << " configurations\n";
  return kOk;
}

inline int solvable(const Options& o, Sources& src, Json& report, std::ostream& err) {
  const Game g = load_game(src, o.game);
  const auto r = is_solvable(g.model);
  report["solvable"] = r.solvable;
  report["profiles_checked"] = r.profiles_checked;
  report["witness"] = r.witness ? io::witness_to_json(g.model, *r.witness) : Json(nullptr);
  if (r.solvable) {
    err << "solvable: every one of " << r.profiles_checked << " pure profiles has a unique solution\n";
    return kOk;
  }
  err << "not solvable: witness at omega \"" << g.model.nature_labels()[r.witness->omega] << "\" with "
      << r.witness->cardinality << " solutions\n";
  return kPropertyFails;
}

inline int causal(const Options& o, Sources& src, Json& report, std::ostream& err) {
  const Game g = load_game(src, o.game);
  if (o.ordering) {
    const auto phi = ConfigurationOrdering::constant(parse_ordering_flag(g.model, *o.ordering));
    const auto r = check_causality(g.model, phi);
    report["causal"] = r.causal;
    report["ordering"] = io::configuration_ordering_to_json(g.model, phi);
    report["violation"] = r.violation ? io::violation_to_json(g.model, *r.violation) : Json(nullptr);
    err << (r.causal ? "causal" : "not causal") << " under the given ordering\n";
    return r.causal ? kOk : kPropertyFails;
  }
  const auto r = find_causal(g.model);
  report["causal"] = r.ordering.has_value();
  report["search_class"] = to_string(r.search_class);
  report["ordering"] = r.ordering ? io::configuration_ordering_to_json(g.model, *r.ordering) : Json(nullptr);
  report["nodes_visited"] = r.nodes_visited;
  report["violation"] = !r.ordering && r.constant_violation
                            ? io::violation_to_json(g.model, *r.constant_violation)
                            : Json(nullptr);
  if (r.ordering) {
    err << "causal: " << to_string(r.search_class) << " ordering found\n";
    return kOk;
  }
  err << "no causal ordering in the constant or sequential class\n";
  return kPropertyFails;
}

inline int recall(const Options& o, Sources& src, Json& report, std::ostream& err) {
  const Game g = load_game(src, o.game);
  if (!o.player) throw UsageError("recall needs --player");
  const PlayerIndex p = resolve_player(g, *o.player);
  const auto chosen = choose_ordering(g, o);
  const auto r = check_perfect_recall(g.model, g.players, p, chosen.phi);
  report["player"] = g.players.label(p);
  report["ordering"] = io::configuration_ordering_to_json(g.model, chosen.phi);
  report["ordering_source"] = chosen.source;
  report["perfect_recall"] = r.perfect_recall;
  report["violation"] = r.violation ? io::violation_to_json(g.model, *r.violation) : Json(nullptr);
  err << "player \"" << g.players.label(p) << "\" " << (r.perfect_recall ? "has" : "lacks")
      << " perfect recall\n";
  return r.perfect_recall ? kOk : kPropertyFails;
}

inline int push(const Options& o, Sources& src, Json& report, std::ostream& err, bool with_utility) {
  const Game g = load_game(src, o.game);
  if (with_utility && !g.criterion) throw UsageError("the game has no criterion");
  const auto profile = load_profile(src, g, o);
  const auto q = pushforward(g.model, g.players, profile);
  report["outcome"] = io::outcome_to_json(g.model, q);
  if (with_utility) {
    const auto eu = expected_utility(g.model, g.players, *g.criterion, q);
    Json values = Json::object();
    for (PlayerIndex p = 0; p < g.players.size(); ++p) {
      values[g.players.label(p)] = to_string(eu[p]);
      err << g.players.label(p) << ": " << to_string(eu[p]) << "\n";
    }
    report["expected_utility"] = std::move(values);
  } else {
    err << "outcome distribution over " << g.model.nature_size() << " Nature outcomes\n";
  }
  return kOk;
}

inline int transform(const Options& o, Sources& src, Json& report, std::ostream& err) {
  const Game g = load_game(src, o.game);
  if (o.input.empty()) throw UsageError("transform needs --input");
  const auto in = load_strategy(src, g, o.input);
  const PlayerIndex p = io::player_of(in);
  const WModel& m = g.model;
  std::vector<UnreachableAtom> unreachable;

  // Every conversion from a mixed strategy goes through the induced
  // behavioral strategy; the others are the product-measure constructions.
  auto to_behavioral = [&]() -> BehavioralStrategy {
    if (const auto* mu = std::get_if<MixedStrategy>(&in)) {
      const auto chosen = choose_ordering(g, o);
      auto r = mixed_to_behavioral(m, g.players, p, chosen.phi, *mu);
      unreachable = std::move(r.unreachable_atoms);
      return std::move(r.behavioral);
    }
    if (const auto* pi = std::get_if<ProductMixedStrategy>(&in)) return pm_to_behavioral(m, g.players, *pi);
    return std::get<BehavioralStrategy>(in);
  };
  io::AnyStrategy out;
  if (o.to == "behavioral") {
    out = to_behavioral();
  } else if (o.to == "product-mixed") {
    if (const auto* pi = std::get_if<ProductMixedStrategy>(&in))
      out = *pi;
    else
      out = behavioral_to_pm(m, g.players, to_behavioral());
  } else if (o.to == "mixed") {
    out = io::as_mixed(g, in);
  } else {
    throw UsageError("--to must be mixed, product-mixed or behavioral");
  }
  report = io::strategy_to_json(g, out);
  if (std::holds_alternative<BehavioralStrategy>(out) && std::holds_alternative<MixedStrategy>(in))
    report["unreachable_atoms"] = unreachable_to_json(m, unreachable);
  err << io::kind_name(in) << " -> " << io::kind_name(out) << " for player \"" << g.players.label(p) << "\"";
  if (!unreachable.empty()) err << " (" << unreachable.size() << " unreachable atoms set uniform)";
  err << "\n";
  return kOk;
}

inline int kuhn_check(const Options& o, Sources& src, Json& report, std::ostream& err) {
  const Game g = load_game(src, o.game);
  if (o.strategies.size() != 1) throw UsageError("kuhn-check needs exactly one --mixed file");
  const auto s = load_strategy(src, g, o.strategies.front());
  const PlayerIndex p = io::player_of(s);
  if (o.player && resolve_player(g, *o.player) != p)
    throw UsageError("--player does not match the player of the strategy file");
  const auto chosen = choose_ordering(g, o);
  KuhnOptions options;
  options.opponent_samples = o.samples;
  options.seed = o.seed;
  if (g.criterion) options.criterion = &*g.criterion;
  const auto r = verify_kuhn(g.model, g.players, p, chosen.phi, io::as_mixed(g, s), options);

  const WModel& m = g.model;
  Json factors = Json::array();
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h)
    factors.push_back(Json{{"configuration", io::configuration_to_json(m, h)},
                           {"mixed", to_string(r.mixed_mass[h])},
                           {"product", to_string(r.product_mass[h])}});
  report["player"] = g.players.label(p);
  report["seed"] = o.seed;
  report["ordering"] = io::configuration_ordering_to_json(m, chosen.phi);
  report["ordering_source"] = chosen.source;
  report["passed"] = r.passed;
  report["factor_identity"] = r.factor_identity;
  report["first_factor_mismatch"] =
      r.first_factor_mismatch ? io::configuration_to_json(m, *r.first_factor_mismatch) : Json(nullptr);
  report["factors"] = std::move(factors);
  report["opponent_samples"] = r.opponent_samples;
  report["outcomes_equal"] = r.outcomes_equal;
  report["first_outcome_mismatch"] =
      r.first_outcome_mismatch
          ? Json{{"sample", r.first_outcome_mismatch->first},
                 {"omega", m.nature_labels()[r.first_outcome_mismatch->second]}}
          : Json(nullptr);
  report["expected_utilities_equal"] =
      r.expected_utilities_equal ? Json(*r.expected_utilities_equal) : Json(nullptr);
  report["behavioral"] = io::strategy_to_json(g, r.behavioral);
  report["unreachable_atoms"] = unreachable_to_json(m, r.unreachable_atoms);
  err << "kuhn-check for player \"" << g.players.label(p) << "\": " << (r.passed ? "pass" : "FAIL")
      << " (factor identity " << (r.factor_identity ? "holds" : "fails") << ", " << r.opponent_samples
      << " opponent samples)\n";
  return r.passed ? kOk : kPropertyFails;
}

inline int gallery_verb(const Options& o, Json& report, std::ostream& err) {
  if (o.name.empty()) {
    report["names"] = gallery_names();
    err << gallery_names().size() << " fixtures\n";
    return kOk;
  }
  const Game g = gallery(o.name, o.horizon);
  report = io::game_to_json(g);
  err << "fixture " << o.name << ": " << g.model.agent_count() << " agents, " << g.players.size()
      << " players\n";
  return kOk;
}

inline Json error_report(const std::string& verb, const char* kind, const std::string& message) {
  Json r = Json::object();
  r["command"] = verb;
  r["error"] = Json{{"kind", kind}, {"message", message}};
  return r;
}

}  // namespace detail

inline const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"validate", "solvable",   "causal", "recall", "push",
                                          "transform", "kuhn-check", "eu",     "gallery"};
  return v;
}

/// Runs one command. Never throws for input errors; they become exit code 2
/// (usage, parse, budget) or 1 (missing certificate, unsolvable profile).
inline int run_command(const Options& o, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  detail::Sources src(in);
  Json report = Json::object();
  report["command"] = o.verb;
  int code = kOk;
  try {
    if (o.verb == "validate")
      code = detail::validate(o, src, report, err);
    else if (o.verb == "solvable")
      code = detail::solvable(o, src, report, err);
    else if (o.verb == "causal")
      code = detail::causal(o, src, report, err);
    else if (o.verb == "recall")
      code = detail::recall(o, src, report, err);
    else if (o.verb == "push")
      code = detail::push(o, src, report, err, false);
    else if (o.verb == "eu")
      code = detail::push(o, src, report, err, true);
    else if (o.verb == "transform")
      code = detail::transform(o, src, report, err);
    else if (o.verb == "kuhn-check")
      code = detail::kuhn_check(o, src, report, err);
    else if (o.verb == "gallery")
      code = detail::gallery_verb(o, report, err);
    else
      throw UsageError("unknown command \"" + o.verb + "\"");
  } catch (const io::SyntaxError& e) {
    report = detail::error_report(o.verb, "syntax", e.what());
    report["error"]["line"] = e.line();
    report["error"]["column"] = e.column();
    code = kUsage;
  } catch (const io::SpecError& e) {
    report = detail::error_report(o.verb, "semantic", e.message());
    report["error"]["pointer"] = e.pointer();
    code = kUsage;
  } catch (const UsageError& e) {
    report = detail::error_report(o.verb, "usage", e.what());
    code = kUsage;
  } catch (const BudgetExceeded& e) {
    report = detail::error_report(o.verb, "budget", e.what());
    code = kUsage;
  } catch (const NotSolvable& e) {
    report = detail::error_report(o.verb, "not_solvable", e.what());
    code = kPropertyFails;
  } catch (const PreconditionFailed& e) {
    report = detail::error_report(o.verb, "precondition", e.what());
    code = kPropertyFails;
  } catch (const InvalidArgument& e) {
    report = detail::error_report(o.verb, "invalid", e.what());
    code = kUsage;
  }
  if (report.contains("error")) err << "error: " << report["error"]["message"].get<std::string>() << "\n";
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace wgame::cli
