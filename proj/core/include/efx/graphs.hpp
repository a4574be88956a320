#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "efx/allocation.hpp"
#include "efx/instance.hpp"

namespace efx {

// Small dense digraph over agents.
class AgentDigraph {
 public:
  AgentDigraph() = default;
  explicit AgentDigraph(std::size_t n) : n_(n), adj_(n * n, false) {}

  std::size_t size() const { return n_; }
  bool has_edge(AgentId from, AgentId to) const { return adj_[from * n_ + to]; }
  void add_edge(AgentId from, AgentId to) { adj_[from * n_ + to] = true; }

  std::size_t in_degree(AgentId v) const;
  std::vector<AgentId> sources() const;
  std::vector<std::pair<AgentId, AgentId>> edges() const;
  std::vector<AgentId> predecessors(AgentId v) const;

  // First cycle met by a depth-first search started from the lowest vertex,
  // visiting neighbours in increasing order. Self-loops count as cycles.
  std::optional<std::vector<AgentId>> find_cycle() const;
  bool is_acyclic() const { return !find_cycle().has_value(); }

  // Shortest path from -> to (breadth-first, lowest-index tie-break),
  // inclusive of both ends; {from} when from == to.
  std::optional<std::vector<AgentId>> path(AgentId from, AgentId to) const;

  nlohmann::json to_json() const;

 private:
  std::size_t n_ = 0;
  std::vector<bool> adj_;
};

// Edge (i, j) iff i envies j.
struct EnvyGraph : AgentDigraph {
  using AgentDigraph::AgentDigraph;
};

EnvyGraph envy_graph(const Instance& inst, const Allocation& x);

// Smallest k such that i's k favourite goods of S beat X_i, or nullopt when
// i does not envy S at all. Taking the top k is optimal because perturbed
// values are additive and every good is strictly positive.
std::optional<std::size_t> kappa(const Instance& inst, const Allocation& x, AgentId i, const GoodSet& s);

// A_X(S): the envious agents with minimum kappa, in increasing index order.
std::vector<AgentId> most_envious(const Instance& inst, const Allocation& x, const GoodSet& s);

// Edge (i, j) iff i champions j w.r.t. the unallocated good.
struct ChampionGraph : AgentDigraph {
  using AgentDigraph::AgentDigraph;
  GoodId good = 0;

  std::vector<AgentId> champions_of(AgentId j) const { return predecessors(j); }
  bool self_champions(AgentId j) const { return has_edge(j, j); }
};

ChampionGraph champion_graph(const Instance& inst, const Allocation& x, GoodId g);

// The champion's lower half G_ij and upper half (X_j + g) \ G_ij.
struct ChampionCut {
  AgentId champion = 0;
  AgentId owner = 0;
  GoodId good = 0;
  GoodSet lower;
  GoodSet upper;
};

// Throws ContractError unless i champions j w.r.t. g.
ChampionCut champion_cut(const Instance& inst, const Allocation& x, AgentId i, AgentId j, GoodId g);

// Rotates envy cycles until the envy graph is acyclic. Every agent on a
// rotated cycle takes the bundle of the agent it envies.
struct CycleElimination {
  Allocation result;
  std::size_t rotations = 0;
};
CycleElimination eliminate_envy_cycles_counted(const Instance& inst, const Allocation& x);
Allocation eliminate_envy_cycles(const Instance& inst, const Allocation& x);

// kappa(i, X_j + g) for all (i, j); null where i does not envy.
nlohmann::json kappa_table(const Instance& inst, const Allocation& x, GoodId g);

}  // namespace efx
