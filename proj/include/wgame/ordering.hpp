#pragma once

// Orderings of agents, configuration-orderings, and causality.
//
// A configuration-ordering assigns a total ordering of the agents to every
// configuration. It is causal when, on the set of configurations where a
// prefix kappa is played, the information of the last agent of kappa depends
// only on Nature and on the decisions of the agents before it.

#include <map>
#include <optional>

#include "wgame/model.hpp"

namespace wgame {

/// Injective finite sequence of agents (a k-ordering).
class Ordering {
 public:
  Ordering() = default;
  explicit Ordering(std::vector<AgentIndex> agents) : agents_(std::move(agents)) {
    for (std::size_t i = 0; i < agents_.size(); ++i)
      for (std::size_t j = i + 1; j < agents_.size(); ++j)
        if (agents_[i] == agents_[j])
          throw InvalidArgument("ordering lists agent " + std::to_string(agents_[i]) + " twice");
  }
  Ordering(std::initializer_list<AgentIndex> agents)
      : Ordering(std::vector<AgentIndex>(agents)) {}

  const std::vector<AgentIndex>& agents() const noexcept { return agents_; }
  std::size_t cardinal() const noexcept { return agents_.size(); }
  bool empty() const noexcept { return agents_.empty(); }
  AgentIndex operator[](std::size_t i) const { return agents_.at(i); }

  AgentIndex last() const {
    if (agents_.empty()) throw InvalidArgument("empty ordering has no last element");
    return agents_.back();
  }

  /// The ordering without its last element.
  Ordering front() const {
    if (agents_.empty()) throw InvalidArgument("empty ordering has no front");
    return prefix(agents_.size() - 1);
  }

  /// Restriction to the first k elements.
  Ordering prefix(std::size_t k) const {
    if (k > agents_.size()) throw InvalidArgument("prefix longer than ordering");
    Ordering o;
    o.agents_.assign(agents_.begin(), agents_.begin() + static_cast<std::ptrdiff_t>(k));
    return o;
  }

  /// The set of agents in the ordering, sorted.
  std::vector<AgentIndex> range() const {
    std::vector<AgentIndex> r = agents_;
    std::sort(r.begin(), r.end());
    return r;
  }

  bool contains(AgentIndex a) const {
    return std::find(agents_.begin(), agents_.end(), a) != agents_.end();
  }

  Ordering then(AgentIndex a) const {
    std::vector<AgentIndex> next = agents_;
    next.push_back(a);
    return Ordering(std::move(next));
  }

  friend bool operator==(const Ordering&, const Ordering&) = default;
  /// Shorter orderings first, then lexicographic on agent indices.
  friend bool operator<(const Ordering& x, const Ordering& y) {
    if (x.agents_.size() != y.agents_.size()) return x.agents_.size() < y.agents_.size();
    return x.agents_ < y.agents_;
  }

 private:
  std::vector<AgentIndex> agents_;
};

class ConfigurationOrdering {
 public:
  static ConfigurationOrdering constant(Ordering total) {
    ConfigurationOrdering c;
    c.orders_.push_back(std::move(total));
    return c;
  }

  static ConfigurationOrdering table(std::vector<Ordering> per_configuration) {
    if (per_configuration.empty()) throw InvalidArgument("ordering table is empty");
    ConfigurationOrdering c;
    c.orders_ = std::move(per_configuration);
    c.constant_ = false;
    return c;
  }

  bool is_constant() const noexcept { return constant_; }
  const Ordering& at(ConfigIndex h) const { return constant_ ? orders_.front() : orders_.at(h); }
  const std::vector<Ordering>& entries() const noexcept { return orders_; }

  /// Every assigned ordering must be total; tables must cover H.
  void validate(const WModel& m) const {
    if (!constant_ && orders_.size() != m.configuration_count())
      throw InvalidArgument("ordering table must assign an ordering to every configuration");
    for (const auto& o : orders_) {
      if (o.cardinal() != m.agent_count())
        throw InvalidArgument("configuration-orderings must order every agent");
      for (AgentIndex a : o.agents())
        if (a >= m.agent_count()) throw InvalidArgument("ordering names an unknown agent");
    }
  }

  friend bool operator==(const ConfigurationOrdering&, const ConfigurationOrdering&) = default;

 private:
  ConfigurationOrdering() = default;
  std::vector<Ordering> orders_;
  bool constant_ = true;
};

/// Every kappa (including the empty ordering) with nonempty H_kappa, mapped to
/// the sorted configurations of H_kappa. Keys come in length-then-agents order.
inline std::map<Ordering, std::vector<ConfigIndex>> prefix_sets(const WModel& m,
                                                                const ConfigurationOrdering& phi) {
  phi.validate(m);
  std::map<Ordering, std::vector<ConfigIndex>> sets;
  auto& all = sets[Ordering{}];
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h) all.push_back(h);
  if (phi.is_constant()) {
    for (std::size_t k = 1; k <= m.agent_count(); ++k) sets[phi.at(0).prefix(k)] = all;
    return sets;
  }
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h)
    for (std::size_t k = 1; k <= m.agent_count(); ++k) sets[phi.at(h).prefix(k)].push_back(h);
  return sets;
}

/// H_kappa = {h : first |kappa| agents of phi(h) are kappa}; H for kappa = ().
inline std::vector<ConfigIndex> h_kappa(const WModel& m, const ConfigurationOrdering& phi,
                                        const Ordering& kappa) {
  phi.validate(m);
  std::vector<ConfigIndex> out;
  for (ConfigIndex h = 0; h < m.configuration_count(); ++h) {
    const Ordering& total = phi.at(h);
    if (kappa.cardinal() <= total.cardinal() && total.prefix(kappa.cardinal()) == kappa)
      out.push_back(h);
  }
  return out;
}

/// Position of a failed field-membership test: the ordering kappa, its last
/// agent, and the offending atom (index and smallest configuration).
struct FieldViolation {
  Ordering kappa;
  AgentIndex agent = 0;
  std::size_t atom = 0;
  ConfigIndex representative = 0;
};

using CausalityViolation = FieldViolation;

struct CausalityReport {
  bool causal = true;
  std::optional<CausalityViolation> violation;
};

namespace detail {

/// For each atom G of `atoms` (in atom order) tests subset ∩ G ∈ field.
/// Returns the first failing atom index.
inline std::optional<std::size_t> first_intersection_outside(
    std::span<const ConfigIndex> subset, const FinitePartition& atoms,
    const FinitePartition& field) {
  std::map<std::size_t, std::vector<ConfigIndex>> groups;
  for (ConfigIndex h : subset) groups[atoms.atom_of(h)].push_back(h);
  for (const auto& [atom, members] : groups)
    if (!contains(field, members)) return atom;
  return std::nullopt;
}

}  // namespace detail

/// Tests phi against the causality condition on every nonempty H_kappa and
/// every information atom of last(kappa). Reports the first violation in
/// (kappa length, kappa agents, atom index) order.
inline CausalityReport check_causality(const WModel& m, const ConfigurationOrdering& phi) {
  const auto sets = prefix_sets(m, phi);
  std::map<std::vector<AgentIndex>, FinitePartition> fields;
  for (const auto& [kappa, members] : sets) {
    if (kappa.empty()) continue;
    const AgentIndex a = kappa.last();
    const auto past = kappa.front().range();
    auto it = fields.find(past);
    if (it == fields.end()) it = fields.emplace(past, agents_cylinder(m, past, true)).first;
    if (auto atom = detail::first_intersection_outside(members, m.info(a), it->second))
      return {false, FieldViolation{kappa, a, *atom, m.info(a).atom(*atom).front()}};
  }
  return {true, std::nullopt};
}

enum class SearchClass { constant, sequential };

inline const char* to_string(SearchClass c) {
  return c == SearchClass::constant ? "constant" : "sequential";
}

struct CausalSearchResult {
  /// Certified causal configuration-ordering, if one was found in the search
  /// class. Absence is not a proof of noncausality.
  std::optional<ConfigurationOrdering> ordering;
  SearchClass search_class = SearchClass::constant;
  /// When no constant ordering passes: the violation of the identity ordering.
  std::optional<CausalityViolation> constant_violation;
  std::size_t nodes_visited = 0;
};

namespace detail {

class SequentialSearch {
 public:
  SequentialSearch(const WModel& m, std::vector<Ordering>& out) : m_(m), out_(out) {}

  // `cell` is an atom of the field generated by Nature and the agents of kappa.
  bool solve(const Ordering& kappa, const std::vector<ConfigIndex>& cell) {
    if (++nodes_ > m_.budget().max_search_nodes)
      throw BudgetExceeded("causal-ordering search exceeded " +
                           std::to_string(m_.budget().max_search_nodes) + " nodes");
    if (kappa.cardinal() == m_.agent_count()) {
      for (ConfigIndex h : cell) out_[h] = kappa;
      return true;
    }
    for (AgentIndex b = 0; b < m_.agent_count(); ++b) {
      if (kappa.contains(b) || !info_constant_on(b, cell)) continue;
      std::vector<std::vector<ConfigIndex>> split(m_.decision_size(b));
      for (ConfigIndex h : cell) split[m_.decision_of(h, b)].push_back(h);
      const Ordering next = kappa.then(b);
      bool ok = true;
      for (const auto& sub : split)
        if (!sub.empty() && !solve(next, sub)) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  }

  std::size_t nodes() const noexcept { return nodes_; }

 private:
  bool info_constant_on(AgentIndex b, const std::vector<ConfigIndex>& cell) const {
    const std::size_t first = m_.atom_of(b, cell.front());
    for (ConfigIndex h : cell)
      if (m_.atom_of(b, h) != first) return false;
    return true;
  }

  const WModel& m_;
  std::vector<Ordering>& out_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Searches for a causal configuration-ordering: first every constant total
/// ordering (in lexicographic order), then orderings chosen stage by stage
/// where the next agent may depend on Nature and on the decisions already
/// played. Any returned ordering has passed check_causality.
inline CausalSearchResult find_causal(const WModel& m) {
  const std::size_t n = m.agent_count();
  if (n > m.budget().max_ordering_agents)
    throw BudgetExceeded("ordering search over " + std::to_string(n) + " agents exceeds the cap of " +
                         std::to_string(m.budget().max_ordering_agents));
  CausalSearchResult result;
  std::vector<AgentIndex> perm(n);
  std::iota(perm.begin(), perm.end(), AgentIndex{0});
  do {
    auto phi = ConfigurationOrdering::constant(Ordering(perm));
    auto report = check_causality(m, phi);
    if (report.causal) {
      result.ordering = std::move(phi);
      result.search_class = SearchClass::constant;
      return result;
    }
    if (!result.constant_violation) result.constant_violation = report.violation;
  } while (std::next_permutation(perm.begin(), perm.end()));

  result.search_class = SearchClass::sequential;
  std::vector<Ordering> table(m.configuration_count());
  detail::SequentialSearch search(m, table);
  bool ok = true;
  for (std::size_t w = 0; w < m.nature_size() && ok; ++w) {
    std::vector<ConfigIndex> cell;
    for (std::size_t u = 0; u < m.profile_count(); ++u) cell.push_back(m.configuration(w, u));
    ok = search.solve(Ordering{}, cell);
  }
  result.nodes_visited = search.nodes();
  if (!ok) return result;
  auto phi = ConfigurationOrdering::table(std::move(table));
  if (!check_causality(m, phi).causal)
    throw Error("internal: sequential search produced an ordering that fails certification");
  result.ordering = std::move(phi);
  return result;
}

}  // namespace wgame
