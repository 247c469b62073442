#pragma once

// JSON codec for game specs, strategy files and analysis reports.
//
// Documents use insertion-ordered objects so emitted reports have a fixed key
// order. Rationals are "p/q" strings (plain integers are accepted on input).
// A configuration is written {"omega": label, "decisions": {agent: label}}.
//
// Game spec:
//   {
//     "nature":   ["w1", "w2"]            (or a count; default one outcome)
//     "agents":   [{"label": "P", "decisions": ["L", "R"],
//                   "info": {"observes": {"nature": true, "agents": ["A"]}}}]
//                 info may instead be {"atoms": [[configuration, ...], ...]};
//                 "nature" may be a list of groups of outcome labels.
//     "players":  [{"label": "Leader", "agents": ["P"]}]   (default: one per agent)
//     "criterion": {"payoffs": {player: {"default": "0/1",
//                                        "entries": [{"configuration": c, "value": "1/1"}]}},
//                   "beliefs": {player: {omega: "1/2"}}}
//     "ordering": ["P", "A"]
//     "budget":   {"max_configurations": 1000, ...}
//   }

#include <json.hpp>

#include <initializer_list>
#include <set>
#include <variant>

#include "wgame/wgame.hpp"

namespace wgame::io {

using Json = nlohmann::ordered_json;

/// Text that is not JSON.
class SyntaxError : public InvalidArgument {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& detail)
      : InvalidArgument("syntax error at line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + detail),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// JSON that does not describe a valid object. `pointer` is the JSON pointer
/// of the offending value.
class SpecError : public InvalidArgument {
 public:
  SpecError(std::string pointer, const std::string& message)
      : InvalidArgument((pointer.empty() ? std::string("/") : pointer) + ": " + message),
        pointer_(std::move(pointer)),
        message_(message) {}
  const std::string& pointer() const noexcept { return pointer_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string pointer_;
  std::string message_;
};

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string detail = e.what();
    if (auto at = detail.find(", column "); at != std::string::npos)
      if (auto colon = detail.find(": ", at); colon != std::string::npos) detail = detail.substr(colon + 2);
    throw SyntaxError(line, column, detail);
  }
}

namespace detail {

inline std::string child(const std::string& ptr, std::string_view key) {
  std::string out = ptr + "/";
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

inline std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

inline void expect_object(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw SpecError(ptr, "expected an object");
}

inline void expect_array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw SpecError(ptr, "expected an array");
}

inline void only_keys(const Json& j, const std::string& ptr, std::initializer_list<std::string_view> keys) {
  expect_object(j, ptr);
  for (const auto& [key, value] : j.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw SpecError(child(ptr, key), "unknown field");
}

inline const Json& field(const Json& j, const std::string& ptr, const char* key) {
  expect_object(j, ptr);
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(ptr, std::string("missing field \"") + key + "\"");
  return *it;
}

inline const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline std::string as_string(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw SpecError(ptr, "expected a string");
  return j.get<std::string>();
}

inline std::size_t as_count(const Json& j, const std::string& ptr) {
  if (!j.is_number_unsigned()) throw SpecError(ptr, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline Rational as_rational(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw SpecError(ptr, "expected a rational \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw SpecError(ptr, e.what());
  }
}

inline std::vector<std::string> unique_labels(const Json& j, const std::string& ptr) {
  expect_array(j, ptr);
  if (j.empty()) throw SpecError(ptr, "must not be empty");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto s = as_string(j[i], child(ptr, i));
    if (s.empty()) throw SpecError(child(ptr, i), "label must not be empty");
    if (std::find(out.begin(), out.end(), s) != out.end())
      throw SpecError(child(ptr, i), "duplicate label \"" + s + "\"");
    out.push_back(std::move(s));
  }
  return out;
}

/// Labels given as a list, or a count n meaning prefix0 .. prefix{n-1}.
inline std::vector<std::string> labels_or_count(const Json& j, const std::string& ptr,
                                                const std::string& prefix) {
  if (j.is_number_unsigned()) {
    const std::size_t n = j.get<std::size_t>();
    if (n == 0) throw SpecError(ptr, "count must be positive");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  }
  return unique_labels(j, ptr);
}

inline AgentIndex agent_ref(const WModel& m, const Json& j, const std::string& ptr) {
  const auto label = as_string(j, ptr);
  if (auto a = m.find_agent(label)) return *a;
  throw SpecError(ptr, "unknown agent \"" + label + "\"");
}

inline std::size_t nature_ref(const WModel& m, const Json& j, const std::string& ptr) {
  const auto label = as_string(j, ptr);
  if (auto w = m.find_nature(label)) return *w;
  throw SpecError(ptr, "unknown Nature outcome \"" + label + "\"");
}

inline std::size_t decision_ref(const WModel& m, AgentIndex a, const Json& j, const std::string& ptr) {
  const auto label = as_string(j, ptr);
  const auto& d = m.agent(a).decisions;
  auto it = std::find(d.begin(), d.end(), label);
  if (it == d.end())
    throw SpecError(ptr, "agent \"" + m.agent(a).label + "\" has no decision \"" + label + "\"");
  return static_cast<std::size_t>(it - d.begin());
}

inline PlayerIndex player_ref(const PlayerPartition& players, const Json& j, const std::string& ptr) {
  const auto label = as_string(j, ptr);
  if (auto p = players.find(label)) return *p;
  throw SpecError(ptr, "unknown player \"" + label + "\"");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Configurations and orderings

inline Json configuration_to_json(const WModel& m, ConfigIndex h) {
  const auto c = m.decode(h);
  Json decisions = Json::object();
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    decisions[m.agent(a).label] = m.agent(a).decisions[c.decisions[a]];
  return Json{{"omega", m.nature_labels()[c.nature]}, {"decisions", std::move(decisions)}};
}

/// "omega" may be omitted when Nature has a single outcome; every agent's
/// decision is required.
inline ConfigIndex configuration_from_json(const WModel& m, const Json& j, const std::string& ptr) {
  detail::only_keys(j, ptr, {"omega", "decisions"});
  Configuration c;
  if (const Json* w = detail::optional_field(j, "omega"))
    c.nature = detail::nature_ref(m, *w, detail::child(ptr, "omega"));
  else if (m.nature_size() != 1)
    throw SpecError(ptr, "missing field \"omega\"");
  const std::string dptr = detail::child(ptr, "decisions");
  const Json& d = detail::field(j, ptr, "decisions");
  detail::expect_object(d, dptr);
  c.decisions.assign(m.agent_count(), 0);
  std::vector<bool> seen(m.agent_count(), false);
  for (const auto& [key, value] : d.items()) {
    const auto a = m.find_agent(key);
    if (!a) throw SpecError(detail::child(dptr, key), "unknown agent \"" + key + "\"");
    c.decisions[*a] = detail::decision_ref(m, *a, value, detail::child(dptr, key));
    seen[*a] = true;
  }
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    if (!seen[a]) throw SpecError(dptr, "missing decision of agent \"" + m.agent(a).label + "\"");
  return m.encode(c);
}

inline Json decisions_to_json(const WModel& m, const DecisionProfile& u) {
  Json out = Json::object();
  for (AgentIndex a = 0; a < m.agent_count(); ++a) out[m.agent(a).label] = m.agent(a).decisions[u[a]];
  return out;
}

inline Json ordering_to_json(const WModel& m, const Ordering& k) {
  Json out = Json::array();
  for (AgentIndex a : k.agents()) out.push_back(m.agent(a).label);
  return out;
}

inline Ordering ordering_from_json(const WModel& m, const Json& j, const std::string& ptr) {
  detail::expect_array(j, ptr);
  std::vector<AgentIndex> agents;
  for (std::size_t i = 0; i < j.size(); ++i) agents.push_back(detail::agent_ref(m, j[i], detail::child(ptr, i)));
  try {
    Ordering k(std::move(agents));
    ConfigurationOrdering::constant(k).validate(m);
    return k;
  } catch (const InvalidArgument& e) {
    throw SpecError(ptr, e.what());
  }
}

inline Json configuration_ordering_to_json(const WModel& m, const ConfigurationOrdering& phi) {
  if (phi.is_constant()) return Json{{"constant", ordering_to_json(m, phi.at(0))}};
  Json table = Json::array();
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h)
    table.push_back(Json{{"configuration", configuration_to_json(m, h)}, {"ordering", ordering_to_json(m, phi.at(h))}});
  return Json{{"by_configuration", std::move(table)}};
}

// ---------------------------------------------------------------------------
// Games

namespace detail {

inline InfoSpec info_from_json(const WModel& skeleton, AgentIndex a, const Json& j, const std::string& ptr) {
  only_keys(j, ptr, {"observes", "atoms"});
  const Json* observes = optional_field(j, "observes");
  const Json* atoms = optional_field(j, "atoms");
  if ((observes == nullptr) == (atoms == nullptr))
    throw SpecError(ptr, "give exactly one of \"observes\" and \"atoms\"");
  if (observes) {
    const std::string optr = child(ptr, "observes");
    only_keys(*observes, optr, {"nature", "agents"});
    ObserveSpec spec;
    if (const Json* n = optional_field(*observes, "nature")) {
      const std::string nptr = child(optr, "nature");
      if (n->is_boolean()) {
        spec.nature = n->get<bool>() ? ObserveSpec::Nature::full : ObserveSpec::Nature::none;
      } else {
        expect_array(*n, nptr);
        spec.nature = ObserveSpec::Nature::partial;
        const std::size_t unset = skeleton.nature_size();
        spec.nature_classes.assign(skeleton.nature_size(), unset);
        for (std::size_t g = 0; g < n->size(); ++g) {
          const std::string gptr = child(nptr, g);
          expect_array((*n)[g], gptr);
          if ((*n)[g].empty()) throw SpecError(gptr, "group must not be empty");
          for (std::size_t i = 0; i < (*n)[g].size(); ++i) {
            const auto w = nature_ref(skeleton, (*n)[g][i], child(gptr, i));
            if (spec.nature_classes[w] != unset)
              throw SpecError(child(gptr, i), "Nature outcome listed twice");
            spec.nature_classes[w] = g;
          }
        }
        for (std::size_t w = 0; w < skeleton.nature_size(); ++w)
          if (spec.nature_classes[w] == unset)
            throw SpecError(nptr, "Nature outcome \"" + skeleton.nature_labels()[w] + "\" is in no group");
      }
    }
    if (const Json* list = optional_field(*observes, "agents")) {
      const std::string lptr = child(optr, "agents");
      expect_array(*list, lptr);
      for (std::size_t i = 0; i < list->size(); ++i) {
        const auto b = agent_ref(skeleton, (*list)[i], child(lptr, i));
        if (std::find(spec.agents.begin(), spec.agents.end(), b) != spec.agents.end())
          throw SpecError(child(lptr, i), "agent listed twice");
        spec.agents.push_back(b);
      }
    }
    return spec;
  }
  const std::string aptr = child(ptr, "atoms");
  expect_array(*atoms, aptr);
  AtomsSpec spec;
  for (std::size_t g = 0; g < atoms->size(); ++g) {
    const std::string gptr = child(aptr, g);
    expect_array((*atoms)[g], gptr);
    std::vector<ConfigIndex> atom;
    for (std::size_t i = 0; i < (*atoms)[g].size(); ++i)
      atom.push_back(configuration_from_json(skeleton, (*atoms)[g][i], child(gptr, i)));
    spec.atoms.push_back(std::move(atom));
  }
  try {
    compile_info(skeleton.space(), skeleton.agent_count(), spec);
  } catch (const InvalidArgument& e) {
    throw SpecError(aptr, "information of agent \"" + skeleton.agent(a).label + "\": " + e.what());
  }
  return spec;
}

inline Json info_to_json(const WModel& m, AgentIndex a) {
  const auto& source = m.info_source(a);
  if (const auto* obs = std::get_if<ObserveSpec>(&source)) {
    Json o = Json::object();
    switch (obs->nature) {
      case ObserveSpec::Nature::none:
        o["nature"] = false;
        break;
      case ObserveSpec::Nature::full:
        o["nature"] = true;
        break;
      case ObserveSpec::Nature::partial: {
        const auto groups = FinitePartition::from_labels(obs->nature_classes);
        Json g = Json::array();
        for (const auto& atom : groups.atoms()) {
          Json labels = Json::array();
          for (std::size_t w : atom) labels.push_back(m.nature_labels()[w]);
          g.push_back(std::move(labels));
        }
        o["nature"] = std::move(g);
        break;
      }
    }
    Json agents = Json::array();
    for (AgentIndex b : obs->agents) agents.push_back(m.agent(b).label);
    o["agents"] = std::move(agents);
    return Json{{"observes", std::move(o)}};
  }
  Json atoms = Json::array();
  for (const auto& atom : m.info(a).atoms()) {
    Json list = Json::array();
    for (ConfigIndex h : atom) list.push_back(configuration_to_json(m, h));
    atoms.push_back(std::move(list));
  }
  return Json{{"atoms", std::move(atoms)}};
}

inline Budget budget_from_json(const Json& j, const std::string& ptr) {
  only_keys(j, ptr,
            {"max_configurations", "max_strategies_per_agent", "max_profile_evaluations",
             "max_ordering_agents", "max_search_nodes"});
  Budget b;
  auto read = [&](const char* key, std::size_t& target) {
    if (const Json* v = optional_field(j, key)) target = as_count(*v, child(ptr, key));
  };
  read("max_configurations", b.max_configurations);
  read("max_strategies_per_agent", b.max_strategies_per_agent);
  read("max_profile_evaluations", b.max_profile_evaluations);
  read("max_ordering_agents", b.max_ordering_agents);
  read("max_search_nodes", b.max_search_nodes);
  return b;
}

inline PlayerPartition players_from_json(const WModel& m, const Json* j) {
  if (!j) {
    std::vector<std::string> labels;
    std::vector<PlayerIndex> owner;
    for (AgentIndex a = 0; a < m.agent_count(); ++a) {
      labels.push_back(m.agent(a).label);
      owner.push_back(a);
    }
    return PlayerPartition(std::move(labels), std::move(owner));
  }
  const std::string ptr = "/players";
  expect_array(*j, ptr);
  if (j->empty()) throw SpecError(ptr, "must not be empty");
  std::vector<std::string> labels;
  const PlayerIndex unowned = j->size();
  std::vector<PlayerIndex> owner(m.agent_count(), unowned);
  for (std::size_t p = 0; p < j->size(); ++p) {
    const std::string pptr = child(ptr, p);
    only_keys((*j)[p], pptr, {"label", "agents"});
    auto label = as_string(field((*j)[p], pptr, "label"), child(pptr, "label"));
    if (label.empty()) throw SpecError(child(pptr, "label"), "label must not be empty");
    if (std::find(labels.begin(), labels.end(), label) != labels.end())
      throw SpecError(child(pptr, "label"), "duplicate player label \"" + label + "\"");
    labels.push_back(std::move(label));
    const std::string aptr = child(pptr, "agents");
    const Json& agents = field((*j)[p], pptr, "agents");
    expect_array(agents, aptr);
    if (agents.empty()) throw SpecError(aptr, "a player must own at least one agent");
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const auto a = agent_ref(m, agents[i], child(aptr, i));
      if (owner[a] != unowned)
        throw SpecError(child(aptr, i), "agent \"" + m.agent(a).label + "\" already has an owner");
      owner[a] = p;
    }
  }
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    if (owner[a] == unowned) throw SpecError(ptr, "agent \"" + m.agent(a).label + "\" is owned by no player");
  return PlayerPartition(std::move(labels), std::move(owner));
}

inline Criterion criterion_from_json(const WModel& m, const PlayerPartition& players, const Json& j) {
  const std::string ptr = "/criterion";
  only_keys(j, ptr, {"payoffs", "beliefs"});
  Criterion c;
  c.payoffs.assign(players.size(), std::vector<Rational>(m.configuration_count()));
  c.beliefs.assign(players.size(), std::vector<Rational>(m.nature_size()));

  const std::string pptr = child(ptr, "payoffs");
  const Json& payoffs = field(j, ptr, "payoffs");
  expect_object(payoffs, pptr);
  for (const auto& [label, table] : payoffs.items()) {
    const std::string tptr = child(pptr, label);
    const PlayerIndex p = player_ref(players, Json(label), tptr);
    only_keys(table, tptr, {"default", "entries"});
    if (const Json* d = optional_field(table, "default"))
      std::fill(c.payoffs[p].begin(), c.payoffs[p].end(), as_rational(*d, child(tptr, "default")));
    if (const Json* entries = optional_field(table, "entries")) {
      const std::string eptr = child(tptr, "entries");
      expect_array(*entries, eptr);
      std::set<ConfigIndex> seen;
      for (std::size_t i = 0; i < entries->size(); ++i) {
        const std::string iptr = child(eptr, i);
        only_keys((*entries)[i], iptr, {"configuration", "value"});
        const ConfigIndex h =
            configuration_from_json(m, field((*entries)[i], iptr, "configuration"), child(iptr, "configuration"));
        if (!seen.insert(h).second) throw SpecError(iptr, "configuration listed twice");
        c.payoffs[p][h] = as_rational(field((*entries)[i], iptr, "value"), child(iptr, "value"));
      }
    }
  }

  const std::string bptr = child(ptr, "beliefs");
  const Json& beliefs = field(j, ptr, "beliefs");
  expect_object(beliefs, bptr);
  std::vector<bool> has_belief(players.size(), false);
  for (const auto& [label, belief] : beliefs.items()) {
    const std::string vptr = child(bptr, label);
    const PlayerIndex p = player_ref(players, Json(label), vptr);
    has_belief[p] = true;
    expect_object(belief, vptr);
    Rational total = 0;
    for (const auto& [omega, weight] : belief.items()) {
      const std::size_t w = nature_ref(m, Json(omega), child(vptr, omega));
      c.beliefs[p][w] = as_rational(weight, child(vptr, omega));
      if (c.beliefs[p][w] < 0) throw SpecError(child(vptr, omega), "belief weight is negative");
      total += c.beliefs[p][w];
    }
    if (total != 1) throw SpecError(vptr, "belief not normalized: sums to " + to_string(total));
  }
  for (PlayerIndex p = 0; p < players.size(); ++p)
    if (!has_belief[p]) throw SpecError(bptr, "missing belief of player \"" + players.label(p) + "\"");
  return c;
}

}  // namespace detail

/// Parses and validates a game. Budgets come from the defaults, then the
/// document's "budget" section, then the WGAME_MAX_* environment variables.
inline Game game_from_json(const Json& doc) {
  using namespace detail;
  only_keys(doc, "", {"description", "nature", "agents", "players", "criterion", "ordering", "budget"});
  Budget budget;
  if (const Json* b = optional_field(doc, "budget")) budget = budget_from_json(*b, "/budget");
  budget = budget.with_env_overrides();

  std::vector<std::string> nature{"w0"};
  if (const Json* n = optional_field(doc, "nature")) nature = labels_or_count(*n, "/nature", "w");

  const Json& agents_json = field(doc, "", "agents");
  expect_array(agents_json, "/agents");
  if (agents_json.empty()) throw SpecError("/agents", "a game needs at least one agent");
  std::vector<Agent> agents;
  for (std::size_t a = 0; a < agents_json.size(); ++a) {
    const std::string aptr = child("/agents", a);
    only_keys(agents_json[a], aptr, {"label", "decisions", "info"});
    Agent agent;
    agent.label = as_string(field(agents_json[a], aptr, "label"), child(aptr, "label"));
    if (agent.label.empty()) throw SpecError(child(aptr, "label"), "label must not be empty");
    for (const auto& other : agents)
      if (other.label == agent.label)
        throw SpecError(child(aptr, "label"), "duplicate agent label \"" + agent.label + "\"");
    agent.decisions = labels_or_count(field(agents_json[a], aptr, "decisions"), child(aptr, "decisions"), "");
    agents.push_back(std::move(agent));
  }
  const WModel skeleton =
      build_model(nature, agents, std::vector<InfoSpec>(agents.size(), ObserveSpec{}), budget);

  std::vector<InfoSpec> info;
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    const Json* spec = optional_field(agents_json[a], "info");
    info.push_back(spec ? info_from_json(skeleton, a, *spec, child(child("/agents", a), "info")) : InfoSpec{ObserveSpec{}});
  }
  WModel model = build_model(std::move(nature), std::move(agents), std::move(info), budget);
  PlayerPartition players = players_from_json(model, optional_field(doc, "players"));
  std::optional<Criterion> criterion;
  if (const Json* c = optional_field(doc, "criterion")) criterion = criterion_from_json(model, players, *c);
  std::optional<Ordering> hint;
  if (const Json* o = optional_field(doc, "ordering")) hint = ordering_from_json(model, *o, "/ordering");
  return Game{std::move(model), std::move(players), std::move(criterion), std::move(hint)};
}

inline Game game_from_text(std::string_view text) { return game_from_json(parse_json(text)); }

inline Json game_to_json(const Game& g) {
  const WModel& m = g.model;
  Json doc = Json::object();
  doc["nature"] = m.nature_labels();
  Json agents = Json::array();
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    agents.push_back(Json{{"label", m.agent(a).label},
                          {"decisions", m.agent(a).decisions},
                          {"info", detail::info_to_json(m, a)}});
  doc["agents"] = std::move(agents);
  Json players = Json::array();
  for (PlayerIndex p = 0; p < g.players.size(); ++p) {
    Json owned = Json::array();
    for (AgentIndex a : g.players.members(p)) owned.push_back(m.agent(a).label);
    players.push_back(Json{{"label", g.players.label(p)}, {"agents", std::move(owned)}});
  }
  doc["players"] = std::move(players);
  if (g.criterion) {
    Json payoffs = Json::object(), beliefs = Json::object();
    for (PlayerIndex p = 0; p < g.players.size(); ++p) {
      Json entries = Json::array();
      for (ConfigIndex h = 0; h < m.configuration_count(); ++h)
        if (g.criterion->payoffs[p][h] != 0)
          entries.push_back(Json{{"configuration", configuration_to_json(m, h)},
                                 {"value", to_string(g.criterion->payoffs[p][h])}});
      payoffs[g.players.label(p)] = Json{{"default", "0/1"}, {"entries", std::move(entries)}};
      Json belief = Json::object();
      for (std::size_t w = 0; w < m.nature_size(); ++w)
        belief[m.nature_labels()[w]] = to_string(g.criterion->beliefs[p][w]);
      beliefs[g.players.label(p)] = std::move(belief);
    }
    doc["criterion"] = Json{{"payoffs", std::move(payoffs)}, {"beliefs", std::move(beliefs)}};
  }
  if (g.ordering_hint) doc["ordering"] = ordering_to_json(m, *g.ordering_hint);
  return doc;
}

// ---------------------------------------------------------------------------
// Strategies

using AnyStrategy = std::variant<MixedStrategy, ProductMixedStrategy, BehavioralStrategy>;

inline const char* kind_name(const AnyStrategy& s) {
  switch (s.index()) {
    case 0:
      return "mixed";
    case 1:
      return "product-mixed";
    default:
      return "behavioral";
  }
}

inline Json pure_to_json(const WModel& m, AgentIndex a, const std::vector<std::size_t>& table) {
  Json out = Json::array();
  for (std::size_t d : table) out.push_back(m.agent(a).decisions[d]);
  return out;
}

/// A pure strategy is an index into the enumeration or a list of decision
/// labels, one per information atom in canonical order.
inline std::size_t pure_from_json(const WModel& m, AgentIndex a, const Json& j, const std::string& ptr) {
  if (j.is_number_unsigned()) {
    const std::size_t s = j.get<std::size_t>();
    if (s >= strategy_count(m, a)) throw SpecError(ptr, "strategy index out of range");
    return s;
  }
  detail::expect_array(j, ptr);
  if (j.size() != m.info(a).size())
    throw SpecError(ptr, "agent \"" + m.agent(a).label + "\" has " + std::to_string(m.info(a).size()) +
                             " information atoms, got " + std::to_string(j.size()) + " decisions");
  std::vector<std::size_t> table;
  for (std::size_t g = 0; g < j.size(); ++g) table.push_back(detail::decision_ref(m, a, j[g], detail::child(ptr, g)));
  return strategy_index(m, PureStrategy{a, std::move(table)});
}

inline Json strategy_to_json(const Game& g, const MixedStrategy& mu) {
  const auto& members = g.players.members(mu.player);
  Json support = Json::array();
  for (const auto& [key, weight] : mu.weights) {
    if (weight == 0) continue;
    Json strategies = Json::object();
    for (std::size_t i = 0; i < members.size(); ++i)
      strategies[g.model.agent(members[i]).label] =
          pure_to_json(g.model, members[i], strategy_from_index(g.model, members[i], key[i]).table);
    support.push_back(Json{{"strategies", std::move(strategies)}, {"weight", to_string(weight)}});
  }
  return Json{{"kind", "mixed"}, {"player", g.players.label(mu.player)}, {"support", std::move(support)}};
}

inline Json strategy_to_json(const Game& g, const ProductMixedStrategy& pi) {
  const auto& members = g.players.members(pi.player);
  Json agents = Json::object();
  for (std::size_t i = 0; i < members.size(); ++i) {
    Json list = Json::array();
    for (std::size_t s = 0; s < pi.per_agent[i].size(); ++s)
      if (pi.per_agent[i][s] != 0)
        list.push_back(Json{{"strategy", pure_to_json(g.model, members[i], strategy_from_index(g.model, members[i], s).table)},
                            {"weight", to_string(pi.per_agent[i][s])}});
    agents[g.model.agent(members[i]).label] = std::move(list);
  }
  return Json{{"kind", "product-mixed"}, {"player", g.players.label(pi.player)}, {"agents", std::move(agents)}};
}

inline Json strategy_to_json(const Game& g, const BehavioralStrategy& beta) {
  const auto& members = g.players.members(beta.player);
  Json agents = Json::object();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const AgentIndex a = members[i];
    Json list = Json::array();
    for (std::size_t atom = 0; atom < g.model.info(a).size(); ++atom) {
      Json dist = Json::object();
      for (std::size_t d = 0; d < g.model.decision_size(a); ++d)
        dist[g.model.agent(a).decisions[d]] = to_string(beta.per_agent[i][atom][d]);
      list.push_back(Json{{"atom", configuration_to_json(g.model, g.model.info(a).atom(atom).front())},
                          {"distribution", std::move(dist)}});
    }
    agents[g.model.agent(a).label] = std::move(list);
  }
  return Json{{"kind", "behavioral"}, {"player", g.players.label(beta.player)}, {"agents", std::move(agents)}};
}

inline Json strategy_to_json(const Game& g, const AnyStrategy& s) {
  return std::visit([&](const auto& v) { return strategy_to_json(g, v); }, s);
}

namespace detail {

/// Member position of each agent key of `obj`; every member must appear once.
inline std::vector<std::pair<std::size_t, const Json*>> member_entries(const Game& g, PlayerIndex p,
                                                                      const Json& obj, const std::string& ptr) {
  expect_object(obj, ptr);
  const auto& members = g.players.members(p);
  std::vector<std::pair<std::size_t, const Json*>> out;
  std::vector<bool> seen(members.size(), false);
  for (const auto& [label, value] : obj.items()) {
    const auto a = g.model.find_agent(label);
    const auto pos = a ? std::find(members.begin(), members.end(), *a) - members.begin()
                       : static_cast<std::ptrdiff_t>(members.size());
    if (static_cast<std::size_t>(pos) == members.size())
      throw SpecError(child(ptr, label), "not an agent of player \"" + g.players.label(p) + "\"");
    seen[static_cast<std::size_t>(pos)] = true;
    out.emplace_back(static_cast<std::size_t>(pos), &value);
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    if (!seen[i]) throw SpecError(ptr, "missing agent \"" + g.model.agent(members[i]).label + "\"");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Parses a strategy document ("kind": mixed | product-mixed | behavioral)
/// and validates it against the game.
inline AnyStrategy strategy_from_json(const Game& g, const Json& doc) {
  using namespace detail;
  expect_object(doc, "");
  const auto kind = as_string(field(doc, "", "kind"), "/kind");
  const PlayerIndex p = player_ref(g.players, field(doc, "", "player"), "/player");
  const auto& members = g.players.members(p);
  const WModel& m = g.model;
  AnyStrategy result;
  if (kind == "mixed") {
    only_keys(doc, "", {"kind", "player", "support"});
    MixedStrategy mu{p, {}};
    const Json& support = field(doc, "", "support");
    expect_array(support, "/support");
    for (std::size_t e = 0; e < support.size(); ++e) {
      const std::string eptr = child("/support", e);
      only_keys(support[e], eptr, {"strategies", "weight"});
      StrategyIndices key(members.size());
      const std::string sptr = child(eptr, "strategies");
      for (const auto& [i, value] : member_entries(g, p, field(support[e], eptr, "strategies"), sptr))
        key[i] = pure_from_json(m, members[i], *value, child(sptr, m.agent(members[i]).label));
      const Rational w = as_rational(field(support[e], eptr, "weight"), child(eptr, "weight"));
      if (w == 0) continue;
      if (!mu.weights.emplace(std::move(key), w).second) throw SpecError(eptr, "profile listed twice");
    }
    result = std::move(mu);
  } else if (kind == "product-mixed") {
    only_keys(doc, "", {"kind", "player", "agents"});
    ProductMixedStrategy pi{p, {}};
    for (AgentIndex a : members) pi.per_agent.emplace_back(strategy_count(m, a));
    for (const auto& [i, value] : member_entries(g, p, field(doc, "", "agents"), "/agents")) {
      const std::string lptr = child("/agents", m.agent(members[i]).label);
      expect_array(*value, lptr);
      std::set<std::size_t> seen;
      for (std::size_t e = 0; e < value->size(); ++e) {
        const std::string eptr = child(lptr, e);
        only_keys((*value)[e], eptr, {"strategy", "weight"});
        const auto s = pure_from_json(m, members[i], field((*value)[e], eptr, "strategy"), child(eptr, "strategy"));
        if (!seen.insert(s).second) throw SpecError(eptr, "strategy listed twice");
        pi.per_agent[i][s] = as_rational(field((*value)[e], eptr, "weight"), child(eptr, "weight"));
      }
    }
    result = std::move(pi);
  } else if (kind == "behavioral") {
    only_keys(doc, "", {"kind", "player", "agents", "unreachable_atoms"});
    BehavioralStrategy beta{p, {}};
    for (const auto& [i, value] : member_entries(g, p, field(doc, "", "agents"), "/agents")) {
      const AgentIndex a = members[i];
      const std::string lptr = child("/agents", m.agent(a).label);
      expect_array(*value, lptr);
      std::vector<std::optional<std::vector<Rational>>> kernel(m.info(a).size());
      for (std::size_t e = 0; e < value->size(); ++e) {
        const std::string eptr = child(lptr, e);
        only_keys((*value)[e], eptr, {"atom", "distribution"});
        const std::size_t atom =
            m.atom_of(a, configuration_from_json(m, field((*value)[e], eptr, "atom"), child(eptr, "atom")));
        if (kernel[atom]) throw SpecError(child(eptr, "atom"), "information atom listed twice");
        std::vector<Rational> dist(m.decision_size(a));
        const std::string dptr = child(eptr, "distribution");
        const Json& d = field((*value)[e], eptr, "distribution");
        expect_object(d, dptr);
        for (const auto& [label, weight] : d.items())
          dist[decision_ref(m, a, Json(label), child(dptr, label))] = as_rational(weight, child(dptr, label));
        kernel[atom] = std::move(dist);
      }
      std::vector<std::vector<Rational>> dense;
      for (std::size_t atom = 0; atom < kernel.size(); ++atom) {
        if (!kernel[atom])
          throw SpecError(lptr, "no distribution for the information atom of configuration " +
                                    configuration_to_json(m, m.info(a).atom(atom).front()).dump());
        dense.push_back(std::move(*kernel[atom]));
      }
      beta.per_agent.push_back(std::move(dense));
    }
    result = std::move(beta);
  } else {
    throw SpecError("/kind", "unknown strategy kind \"" + kind + "\"");
  }
  try {
    std::visit([&](const auto& s) { validate(m, g.players, s); }, result);
  } catch (const InvalidArgument& e) {
    throw SpecError("", e.what());
  }
  return result;
}

/// Any strategy as a mixed strategy: product-mixed through the product
/// measure, behavioral through its product-mixed realization.
inline MixedStrategy as_mixed(const Game& g, const AnyStrategy& s) {
  if (const auto* mu = std::get_if<MixedStrategy>(&s)) return *mu;
  if (const auto* pi = std::get_if<ProductMixedStrategy>(&s)) return pm_to_mixed(g.model, g.players, *pi);
  return pm_to_mixed(g.model, g.players, behavioral_to_pm(g.model, g.players, std::get<BehavioralStrategy>(s)));
}

inline PlayerIndex player_of(const AnyStrategy& s) {
  return std::visit([](const auto& v) { return v.player; }, s);
}

// ---------------------------------------------------------------------------
// Report fragments

inline Json pure_profile_to_json(const WModel& m, const PureProfile& profile) {
  Json out = Json::object();
  for (const auto& s : profile) out[m.agent(s.agent).label] = pure_to_json(m, s.agent, s.table);
  return out;
}

/// Nonzero outcome probabilities per Nature outcome.
inline Json outcome_to_json(const WModel& m, const OutcomeDistribution& q) {
  Json out = Json::array();
  for (std::size_t w = 0; w < m.nature_size(); ++w) {
    Json outcomes = Json::array();
    for (std::size_t u = 0; u < m.profile_count(); ++u)
      if (q.per_omega[w][u] != 0)
        outcomes.push_back(Json{{"decisions", decisions_to_json(m, m.profile_space().decode(u))},
                                {"probability", to_string(q.per_omega[w][u])}});
    out.push_back(Json{{"omega", m.nature_labels()[w]}, {"outcomes", std::move(outcomes)}});
  }
  return out;
}

inline Json violation_to_json(const WModel& m, const FieldViolation& v) {
  return Json{{"kappa", ordering_to_json(m, v.kappa)},
              {"agent", m.agent(v.agent).label},
              {"atom", v.atom},
              {"representative", configuration_to_json(m, v.representative)}};
}

inline Json witness_to_json(const WModel& m, const SolvabilityWitness& w) {
  Json solutions = Json::array();
  for (const auto& u : solution_set(m, w.profile, w.omega)) solutions.push_back(decisions_to_json(m, u));
  return Json{{"omega", m.nature_labels()[w.omega]},
              {"profile", pure_profile_to_json(m, w.profile)},
              {"cardinality", w.cardinality},
              {"solutions", std::move(solutions)}};
}

/// Inverse of witness_to_json's profile part.
inline PureProfile pure_profile_from_json(const WModel& m, const Json& j, const std::string& ptr) {
  detail::expect_object(j, ptr);
  PureProfile profile(m.agent_count());
  std::vector<bool> seen(m.agent_count(), false);
  for (const auto& [label, value] : j.items()) {
    const auto a = m.find_agent(label);
    if (!a) throw SpecError(detail::child(ptr, label), "unknown agent \"" + label + "\"");
    profile[*a] = strategy_from_index(m, *a, pure_from_json(m, *a, value, detail::child(ptr, label)));
    seen[*a] = true;
  }
  for (AgentIndex a = 0; a < m.agent_count(); ++a)
    if (!seen[a]) throw SpecError(ptr, "missing agent \"" + m.agent(a).label + "\"");
  return profile;
}

}  // namespace wgame::io
