#include "efx/graphs.hpp"

#include <algorithm>
#include <deque>

#include "efx/errors.hpp"

namespace efx {

std::size_t AgentDigraph::in_degree(AgentId v) const {
  std::size_t d = 0;
  for (AgentId u = 0; u < n_; ++u) d += has_edge(u, v) ? 1 : 0;
  return d;
}

std::vector<AgentId> AgentDigraph::sources() const {
  std::vector<AgentId> out;
  for (AgentId v = 0; v < n_; ++v) {
    if (in_degree(v) == 0) out.push_back(v);
  }
  return out;
}

std::vector<std::pair<AgentId, AgentId>> AgentDigraph::edges() const {
  std::vector<std::pair<AgentId, AgentId>> out;
  for (AgentId u = 0; u < n_; ++u) {
    for (AgentId v = 0; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<AgentId> AgentDigraph::predecessors(AgentId v) const {
  std::vector<AgentId> out;
  for (AgentId u = 0; u < n_; ++u) {
    if (has_edge(u, v)) out.push_back(u);
  }
  return out;
}

std::optional<std::vector<AgentId>> AgentDigraph::find_cycle() const {
  enum class Color { White, Gray, Black };
  std::vector<Color> color(n_, Color::White);
  std::vector<AgentId> stack;
  std::optional<std::vector<AgentId>> found;

  auto dfs = [&](auto&& self, AgentId u) -> void {
    color[u] = Color::Gray;
    stack.push_back(u);
    for (AgentId v = 0; v < n_ && !found; ++v) {
      if (!has_edge(u, v)) continue;
      if (color[v] == Color::Gray) {
        auto it = std::find(stack.begin(), stack.end(), v);
        found = std::vector<AgentId>(it, stack.end());
      } else if (color[v] == Color::White) {
        self(self, v);
      }
    }
    stack.pop_back();
    color[u] = Color::Black;
  };

  for (AgentId s = 0; s < n_ && !found; ++s) {
    if (color[s] == Color::White) dfs(dfs, s);
  }
  return found;
}

std::optional<std::vector<AgentId>> AgentDigraph::path(AgentId from, AgentId to) const {
  std::vector<std::optional<AgentId>> parent(n_);
  std::vector<bool> seen(n_, false);
  std::deque<AgentId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const AgentId u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (AgentId v = 0; v < n_; ++v) {
      if (has_edge(u, v) && !seen[v]) {
        seen[v] = true;
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<AgentId> out{to};
  while (out.back() != from) out.push_back(*parent[out.back()]);
  std::reverse(out.begin(), out.end());
  return out;
}

nlohmann::json AgentDigraph::to_json() const {
  auto edges_json = nlohmann::json::array();
  for (auto [u, v] : edges()) edges_json.push_back({u + 1, v + 1});
  auto vertices = nlohmann::json::array();
  for (AgentId v = 0; v < n_; ++v) vertices.push_back(v + 1);
  return {{"vertices", vertices}, {"edges", edges_json}};
}

EnvyGraph envy_graph(const Instance& inst, const Allocation& x) {
  EnvyGraph graph(x.num_agents());
  const PerturbedOrder order(inst);
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    for (AgentId j = 0; j < x.num_agents(); ++j) {
      if (i != j && envies(order, x, i, j)) graph.add_edge(i, j);
    }
  }
  return graph;
}

std::optional<std::size_t> kappa(const Instance& inst, const Allocation& x, AgentId i, const GoodSet& s) {
  const PerturbedValue own = value(inst, i, x.bundles[i]);
  if (value(inst, i, s) <= own) return std::nullopt;
  GoodSet prefix(inst.num_goods());
  std::size_t k = 0;
  for (GoodId g : goods_descending(inst, i, s)) {
    prefix.insert(g);
    ++k;
    if (value(inst, i, prefix) > own) return k;
  }
  throw DefectError("kappa: envied set has no envied prefix", "");
}

std::vector<AgentId> most_envious(const Instance& inst, const Allocation& x, const GoodSet& s) {
  std::vector<AgentId> best;
  std::optional<std::size_t> best_k;
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    const auto k = kappa(inst, x, i, s);
    if (!k) continue;
    if (!best_k || *k < *best_k) {
      best_k = k;
      best = {i};
    } else if (*k == *best_k) {
      best.push_back(i);
    }
  }
  return best;
}

ChampionGraph champion_graph(const Instance& inst, const Allocation& x, GoodId g) {
  if (!x.pool.contains(g)) throw ContractError("champion graph needs an unallocated good");
  ChampionGraph graph(x.num_agents());
  graph.good = g;
  for (AgentId j = 0; j < x.num_agents(); ++j) {
    for (AgentId i : most_envious(inst, x, x.bundles[j].with(g))) graph.add_edge(i, j);
  }
  return graph;
}

ChampionCut champion_cut(const Instance& inst, const Allocation& x, AgentId i, AgentId j, GoodId g) {
  if (!x.pool.contains(g)) throw ContractError("champion cut needs an unallocated good");
  const GoodSet extended = x.bundles[j].with(g);
  const auto champs = most_envious(inst, x, extended);
  if (std::find(champs.begin(), champs.end(), i) == champs.end()) {
    throw ContractError("agent " + std::to_string(i + 1) + " does not champion agent " +
                        std::to_string(j + 1));
  }
  const std::size_t k = *kappa(inst, x, i, extended);
  ChampionCut cut;
  cut.champion = i;
  cut.owner = j;
  cut.good = g;
  cut.upper = GoodSet(inst.num_goods());
  const auto ranked = goods_descending(inst, i, extended);
  for (std::size_t r = 0; r < k; ++r) cut.upper.insert(ranked[r]);
  cut.lower = extended - cut.upper;
  return cut;
}

CycleElimination eliminate_envy_cycles_counted(const Instance& inst, const Allocation& x) {
  CycleElimination out{x, 0};
  while (auto cycle = envy_graph(inst, out.result).find_cycle()) {
    const auto& c = *cycle;
    std::vector<GoodSet> taken;
    taken.reserve(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) taken.push_back(out.result.bundles[c[(k + 1) % c.size()]]);
    for (std::size_t k = 0; k < c.size(); ++k) out.result.bundles[c[k]] = std::move(taken[k]);
    ++out.rotations;
  }
  return out;
}

Allocation eliminate_envy_cycles(const Instance& inst, const Allocation& x) {
  return eliminate_envy_cycles_counted(inst, x).result;
}

nlohmann::json kappa_table(const Instance& inst, const Allocation& x, GoodId g) {
  auto rows = nlohmann::json::array();
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    auto row = nlohmann::json::array();
    for (AgentId j = 0; j < x.num_agents(); ++j) {
      const auto k = kappa(inst, x, i, x.bundles[j].with(g));
      row.push_back(k ? nlohmann::json(*k) : nlohmann::json(nullptr));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace efx
