#include "efx/solver.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "efx/errors.hpp"

namespace efx {

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::CycleElim: return "CycleElim";
    case CaseLabel::SingleSource: return "SingleSource";
    case CaseLabel::SelfChampion: return "SelfChampion";
    case CaseLabel::ThreeSrc2Cycle: return "ThreeSrc2Cycle";
    case CaseLabel::ThreeSrc3Cycle: return "ThreeSrc3Cycle";
    case CaseLabel::TwoSrcQuick: return "TwoSrcQuick";
    case CaseLabel::TwoSrcA13: return "TwoSrcA13";
    case CaseLabel::TwoSrcA2: return "TwoSrcA2";
    case CaseLabel::IdenticalBaseline: return "IdenticalBaseline";
  }
  return "?";
}

const std::vector<CaseLabel>& all_case_labels() {
  static const std::vector<CaseLabel> labels{
      CaseLabel::CycleElim,      CaseLabel::SingleSource, CaseLabel::SelfChampion,
      CaseLabel::ThreeSrc2Cycle, CaseLabel::ThreeSrc3Cycle, CaseLabel::TwoSrcQuick,
      CaseLabel::TwoSrcA13,      CaseLabel::TwoSrcA2,     CaseLabel::IdenticalBaseline};
  return labels;
}

void ObservationLog::record(const std::string& name, bool holds, const std::string& detail) {
  auto& t = tallies_[name];
  ++t.checked;
  if (!holds) {
    ++t.violated;
    if (t.samples.size() < 5) t.samples.push_back(detail);
  }
}

void ObservationLog::merge(const ObservationLog& other) {
  for (const auto& [name, t] : other.tallies_) {
    auto& mine = tallies_[name];
    mine.checked += t.checked;
    mine.violated += t.violated;
    for (const auto& s : t.samples) {
      if (mine.samples.size() < 5) mine.samples.push_back(s);
    }
  }
  for (const auto& [branch, count] : other.branches_) branches_[branch] += count;
}

std::size_t ObservationLog::total_violations() const {
  std::size_t n = 0;
  for (const auto& [_, t] : tallies_) n += t.violated;
  return n;
}

std::size_t ObservationLog::checked(const std::string& name) const {
  auto it = tallies_.find(name);
  return it == tallies_.end() ? 0 : it->second.checked;
}

namespace {

// Comparison shorthands in the perturbed order.
struct Prefs {
  const Instance& inst;
  bool gt(AgentId i, const GoodSet& s, const GoodSet& t) const { return compare(inst, i, s, t) > 0; }
  bool ge(AgentId i, const GoodSet& s, const GoodSet& t) const { return compare(inst, i, s, t) >= 0; }
  const GoodSet& max_of(AgentId i, const GoodSet& s, const GoodSet& t) const { return gt(i, s, t) ? s : t; }
  const GoodSet& min_of(AgentId i, const GoodSet& s, const GoodSet& t) const { return gt(i, s, t) ? t : s; }
  GoodSet single(GoodId g) const { return GoodSet(inst.num_goods(), {g}); }
};

void note(ObservationLog* log, const std::string& name, bool holds, const std::string& detail = {}) {
  if (log) log->record(name, holds, detail);
}

void visit(ObservationLog* log, const char* branch) {
  if (log) log->visit(branch);
}

// Rebuilds the pool as everything in play minus the new bundles.
Allocation with_bundles(const Allocation& before, std::vector<GoodSet> bundles) {
  Allocation y;
  y.pool = before.allocated() | before.pool;
  for (const auto& b : bundles) y.pool -= b;
  y.bundles = std::move(bundles);
  return y;
}

// Smallest-cardinality subset of `from` that agent i values above `target`:
// i's favourite goods, added one at a time.
std::optional<GoodSet> smallest_beating(const Instance& inst, AgentId i, const GoodSet& from,
                                        const GoodSet& target) {
  GoodSet prefix(inst.num_goods());
  for (GoodId g : goods_descending(inst, i, from)) {
    prefix.insert(g);
    if (compare(inst, i, prefix, target) > 0) return prefix;
  }
  return std::nullopt;
}

std::string describe(const Instance& inst, const GoodSet& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (GoodId g : s.members()) {
    out << (first ? "" : ",") << inst.goods[g];
    first = false;
  }
  out << '}';
  return out.str();
}

[[noreturn]] void defect(const std::string& what) { throw DefectError(what, ""); }

// Swap the upper halves of p and q, who champion each other w.r.t. g and do
// not envy each other; the third agent must envy neither.
Allocation two_cycle_swap(const Instance& inst, const Allocation& x, GoodId g, AgentId p, AgentId q,
                          ObservationLog* log) {
  const Prefs pr{inst};
  const AgentId r = 3 - p - q;
  const auto c_qp = champion_cut(inst, x, q, p, g);  // G_21: q's cut of X_p
  const auto c_pq = champion_cut(inst, x, p, q, g);  // G_12: p's cut of X_q
  const GoodSet& xp = x.bundles[p];
  const GoodSet& xq = x.bundles[q];
  if (c_qp.lower.contains(g) || c_pq.lower.contains(g)) defect("two-cycle swap: g in a lower half");
  const GoodSet up_p = xp - c_qp.lower;
  const GoodSet up_q = xq - c_pq.lower;

  note(log, "upper-half-comparison", pr.gt(p, up_q, up_p), "p prefers q's upper half");
  note(log, "upper-half-comparison", pr.gt(q, up_p, up_q), "q prefers p's upper half");

  std::vector<GoodSet> b(3);
  b[p] = up_q | c_qp.lower;
  b[q] = up_p | c_pq.lower;
  b[r] = x.bundles[r];
  Allocation swapped = with_bundles(x, b);
  if (is_efx(inst, swapped)) {
    visit(log, "two-cycle/swap");
    return swapped;
  }

  if (strong_envy(inst, swapped, r, q)) {
    visit(log, "two-cycle/replace-second");
    b[q] = up_p.with(g);
  } else if (strong_envy(inst, swapped, r, p)) {
    visit(log, "two-cycle/replace-first");
    b[p] = up_q.with(g);
  } else {
    defect("two-cycle swap: strong envy not from the third agent");
  }
  return with_bundles(x, b);
}

// Improvement for a single-source envy graph: the source strictly gains.
Allocation improve_single_source(const Instance& inst, const Allocation& x, AgentId s, GoodId g) {
  const auto sources = envy_graph(inst, x).sources();
  if (sources.size() != 1 || sources.front() != s) defect("expected a single-source envy graph");
  return apply_champion_path(inst, x, s, g);
}

HandlerOutcome three_cycle(const Instance& inst, const Allocation& x, GoodId g, const ChampionGraph& m,
                           ObservationLog* log) {
  const Prefs pr{inst};
  // lab[t] is structural agent t+1; lab[t+1] uniquely champions lab[t].
  std::array<AgentId, 3> lab{};
  lab[0] = 0;
  for (int t = 0; t < 2; ++t) {
    const auto champs = m.champions_of(lab[t]);
    if (champs.size() != 1) defect("three-cycle: champion not unique");
    lab[t + 1] = champs.front();
  }
  if (m.champions_of(lab[2]) != std::vector<AgentId>{lab[0]}) defect("three-cycle: not a 3-cycle");

  std::array<GoodSet, 3> up, low;
  for (int t = 0; t < 3; ++t) {
    const auto cut = champion_cut(inst, x, lab[(t + 1) % 3], lab[t], g);
    if (cut.lower.contains(g)) defect("three-cycle: g in a lower half");
    low[t] = cut.lower;
    up[t] = x.bundles[lab[t]] - cut.lower;
  }

  const GoodSet gs = pr.single(g);
  for (int t = 0; t < 3; ++t) {
    const AgentId who = lab[t];
    const int prev = (t + 2) % 3;
    const int next = (t + 1) % 3;
    note(log, "three-cycle-upper-order",
         pr.gt(who, up[prev], up[t]) && pr.gt(who, up[prev], up[next]),
         "agent " + std::to_string(who + 1) + " favourite upper half");
    note(log, "three-cycle-lower-order",
         pr.gt(who, low[t], gs) && pr.gt(who, gs, low[prev]),
         "agent " + std::to_string(who + 1) + " lower halves vs g");
  }

  // Everyone takes their favourite upper half.
  std::vector<GoodSet> b(3);
  for (int t = 0; t < 3; ++t) b[lab[t]] = up[(t + 2) % 3] | low[t];
  const Allocation shifted = with_bundles(x, b);
  if (is_efx(inst, shifted)) {
    visit(log, "three-cycle/shift");
    return {shifted, CaseLabel::ThreeSrc3Cycle};
  }

  std::array<bool, 3> strong{};
  for (int t = 0; t < 3; ++t) strong[t] = strong_envy(inst, shifted, lab[t], lab[(t + 1) % 3]);
  for (int t = 0; t < 3; ++t) {
    note(log, "three-cycle-no-back-envy", !envies(PerturbedOrder(inst), shifted, lab[(t + 1) % 3], lab[t]));
  }

  if (strong[0] && strong[1] && strong[2]) {
    std::vector<GoodSet> rotated(3);
    for (int t = 0; t < 3; ++t) rotated[lab[t]] = shifted.bundles[lab[(t + 1) % 3]];
    visit(log, "three-cycle/rotate");
    return {with_bundles(x, rotated), CaseLabel::ThreeSrc3Cycle};
  }

  // Relabel so that 1 strongly envies 2 and 3 does not strongly envy 1.
  int k = 0;
  while (k < 3 && !(strong[k] && !strong[(k + 2) % 3])) ++k;
  if (k == 3) defect("three-cycle: no rotation with a strong edge 1->2 and none 3->1");
  std::array<AgentId, 3> a{};
  std::array<GoodSet, 3> u, l;
  for (int t = 0; t < 3; ++t) {
    a[t] = lab[(t + k) % 3];
    u[t] = up[(t + k) % 3];
    l[t] = low[(t + k) % 3];
  }

  note(log, "three-cycle-envy-1-ordering", pr.gt(a[0], u[0], u[1]) && pr.gt(a[0], l[1], l[0]),
       "agent 1 ordering when it envies 2");

  b[a[0]] = u[2] | l[0];
  b[a[1]] = u[0].with(g);
  b[a[2]] = u[1] | l[2];
  const Allocation replaced = with_bundles(x, b);
  if (is_efx(inst, replaced)) {
    visit(log, "three-cycle/replace");
    return {replaced, CaseLabel::ThreeSrc3Cycle};
  }

  const auto witnesses = strong_envy_witnesses(PerturbedOrder(inst), replaced);
  const bool only_2_to_3 = std::all_of(witnesses.begin(), witnesses.end(), [&](const EnvyWitness& w) {
    return w.envier == a[1] && w.envied == a[2];
  });
  note(log, "three-cycle-only-2-to-3", only_2_to_3);
  note(log, "three-cycle-envy-2-ordering", pr.gt(a[1], u[1], u[2]) && pr.gt(a[1], l[2], l[1]),
       "agent 2 ordering when it strongly envies 3");

  const GoodSet pool_for_z = u[0] | l[2];
  const auto z = smallest_beating(inst, a[1], pool_for_z, x.bundles[a[1]]);
  if (!z) defect("three-cycle: no subset of (X1 \\ G21) + G13 beats X2 for agent 2");
  if (z->contains(g)) defect("three-cycle: Z contains g");

  if (pr.gt(a[2], *z, x.bundles[a[2]])) {
    visit(log, "three-cycle/z-preferred-by-3");
    b[a[0]] = u[2].with(g);
    b[a[1]] = x.bundles[a[1]];
    b[a[2]] = *z;
  } else {
    visit(log, "three-cycle/z-not-preferred-by-3");
    b[a[0]] = u[2] | l[1];
    b[a[1]] = *z;
    b[a[2]] = u[1].with(g);
  }
  return {with_bundles(x, b), CaseLabel::ThreeSrc3Cycle};
}

// Agent a is structural agent 1 or 3.
Allocation two_sources_a13(const Instance& inst, const Allocation& x, GoodId g, std::array<AgentId, 3> r,
                           AgentId a, ObservationLog* log) {
  const Prefs pr{inst};
  const auto c21 = champion_cut(inst, x, r[1], r[0], g);
  const auto c32 = champion_cut(inst, x, r[2], r[1], g);
  if (c21.lower.contains(g) || c32.lower.contains(g)) defect("two sources: g in a lower half");
  note(log, "two-sources-lower-halves-nonempty", !c21.lower.empty() && !c32.lower.empty());
  const GoodSet& x1 = x.bundles[r[0]];
  const GoodSet& x2 = x.bundles[r[1]];
  const GoodSet& x3 = x.bundles[r[2]];
  const GoodSet u1 = x1 - c21.lower;
  const GoodSet u2 = x2 - c32.lower;
  const GoodSet b3 = u2.with(g);

  std::vector<GoodSet> b(3);
  b[r[0]] = x3;
  b[r[1]] = u1 | c32.lower;
  b[r[2]] = b3;
  const Allocation first = with_bundles(x, b);
  if (is_efx(inst, first)) {
    visit(log, "a13/first");
    return first;
  }

  const auto witnesses = strong_envy_witnesses(PerturbedOrder(inst), first);
  note(log, "two-sources-a13-only-1-to-2",
       std::all_of(witnesses.begin(), witnesses.end(),
                   [&](const EnvyWitness& w) { return w.envier == r[0] && w.envied == r[1]; }));

  const GoodSet& best2 = pr.max_of(r[1], b3, x3);
  const GoodSet& worst2 = pr.min_of(r[1], b3, x3);
  const auto z = smallest_beating(inst, r[1], u1 | c32.lower, best2);
  if (!z) defect("two sources (a=1/3): Z does not exist");

  if (!pr.gt(r[0], *z, x3)) {
    visit(log, "a13/z-not-preferred-by-1");
    b[r[0]] = x3;
    b[r[1]] = *z;
    b[r[2]] = b3;
    return with_bundles(x, b);
  }

  b[r[0]] = *z;
  b[r[1]] = best2;
  b[r[2]] = worst2;
  const Allocation second = with_bundles(x, b);
  if (a == r[0] || worst2 == b3) {
    visit(log, "a13/z-to-1");
    return second;
  }

  visit(log, "a13/single-source");
  // Agent 3 kept X_3: the envy graph is the path 3 -> 2 -> 1.
  return improve_single_source(inst, second, r[2], c21.lower.first());
}

// Agent a is structural agent 2.
Allocation two_sources_a2(const Instance& inst, const Allocation& x, GoodId g, std::array<AgentId, 3> r,
                          ObservationLog* log) {
  const Prefs pr{inst};
  const auto c21 = champion_cut(inst, x, r[1], r[0], g);
  if (c21.lower.contains(g)) defect("two sources: g in G21");
  const GoodSet& x2 = x.bundles[r[1]];
  const GoodSet& x3 = x.bundles[r[2]];
  const GoodSet b1 = (x.bundles[r[0]] - c21.lower).with(g);

  std::array<std::size_t, 3> kap{};
  for (AgentId i : {r[0], r[2]}) {
    const GoodSet& target = pr.max_of(i, x2, b1);
    note(log, "two-sources-a2-x3-best", pr.gt(i, x3, target));
    const auto zi = smallest_beating(inst, i, x3, target);
    if (!zi) defect("two sources (a=2): X_3 does not beat the alternatives");
    kap[i] = zi->size();
  }
  const AgentId w = kap[r[0]] <= kap[r[2]] ? r[0] : r[2];
  const AgentId l = w == r[0] ? r[2] : r[0];
  const GoodSet& hi = pr.max_of(l, x2, b1);
  const GoodSet& lo = pr.min_of(l, x2, b1);

  // Strip w's least valuable goods until l stops strongly envying.
  GoodSet z = x3;
  std::optional<GoodId> last_removed;
  auto l_strongly_envies = [&](const GoodSet& s) {
    for (GoodId h : s.members()) {
      if (pr.gt(l, s.without(h), hi)) return true;
    }
    return false;
  };
  while (l_strongly_envies(z)) {
    const auto ranked = goods_descending(inst, w, z);
    last_removed = ranked.back();
    z.erase(*last_removed);
  }

  std::vector<GoodSet> b(3);
  b[w] = z;
  b[l] = hi;
  b[r[1]] = lo;
  const Allocation first = with_bundles(x, b);
  if (last_removed) {
    note(log, "two-sources-a2-winner-envies-nobody",
         !envies(PerturbedOrder(inst), first, w, r[1]) && !envies(PerturbedOrder(inst), first, w, l));
  }
  if (lo == b1) {
    visit(log, last_removed ? "a2/first-after-removal" : "a2/first");
    return first;
  }

  const GoodId g1 = c21.lower.first();
  if (!last_removed || envies(PerturbedOrder(inst), first, l, w)) {
    // Path 2 -> l -> w.
    visit(log, "a2/single-source");
    return improve_single_source(inst, first, r[1], g1);
  }

  // Sources w and 2; 2 envies l.
  const auto champs = most_envious(inst, first, first.bundles[r[1]].with(g1));
  for (AgentId c : champs) {
    if (c == r[1] || c == l) {
      visit(log, "a2/champion-path");
      return apply_champion_path(inst, first, r[1], c, g1);
    }
  }
  const GoodId g2 = *last_removed;
  note(log, "two-sources-a2-unique-champion-of-winner",
       most_envious(inst, first, z.with(g2)) == std::vector<AgentId>{l});
  visit(log, "a2/double-champion");
  const auto cut_w2 = champion_cut(inst, first, w, r[1], g1);
  const auto cut_lw = champion_cut(inst, first, l, w, g2);
  b[w] = cut_w2.upper;
  b[l] = cut_lw.upper;
  b[r[1]] = b1;
  return with_bundles(first, b);
}

}  // namespace

Allocation apply_champion_path(const Instance& inst, const Allocation& x, AgentId s, AgentId champion,
                               GoodId g) {
  const auto graph = envy_graph(inst, x);
  const auto route = graph.path(s, champion);
  if (!route) {
    throw ContractError("champion " + std::to_string(champion + 1) + " is not reachable from agent " +
                        std::to_string(s + 1));
  }
  const auto cut = champion_cut(inst, x, champion, s, g);
  Allocation y = x;
  const auto& t = *route;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) y.bundles[t[k]] = x.bundles[t[k + 1]];
  y.bundles[champion] = cut.upper;
  y.pool = (x.pool - cut.upper) | cut.lower;
  return y;
}

Allocation apply_champion_path(const Instance& inst, const Allocation& x, AgentId s, GoodId g) {
  const auto graph = envy_graph(inst, x);
  for (AgentId c : most_envious(inst, x, x.bundles[s].with(g))) {
    if (graph.path(s, c)) return apply_champion_path(inst, x, s, c, g);
  }
  throw ContractError("no champion of agent " + std::to_string(s + 1) + " is reachable from it");
}

HandlerOutcome handle_three_sources(const Instance& inst, const Allocation& x, GoodId g, ObservationLog* log) {
  if (x.num_agents() != 3) throw ContractError("three-source handler needs three agents");
  if (!envy_graph(inst, x).edges().empty()) throw ContractError("three-source handler needs an envy-free X");
  const auto m = champion_graph(inst, x, g);
  for (AgentId i = 0; i < 3; ++i) {
    if (m.self_champions(i)) throw ContractError("three-source handler needs no self-champion");
  }

  if (log) {
    // Upper halves of distinct champions: X_j \ G_ij >_i X_k \ G_i'k when i
    // does not champion k.
    const Prefs pr{inst};
    for (auto [i, j] : m.edges()) {
      for (auto [i2, k] : m.edges()) {
        if (k == j || m.has_edge(i, k)) continue;
        const auto cij = champion_cut(inst, x, i, j, g);
        const auto cik = champion_cut(inst, x, i2, k, g);
        log->record("upper-half-comparison",
                    pr.gt(i, x.bundles[j] - cij.lower, x.bundles[k] - cik.lower),
                    "i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) + " k=" + std::to_string(k + 1));
      }
    }
  }

  for (AgentId p = 0; p < 3; ++p) {
    for (AgentId q = p + 1; q < 3; ++q) {
      if (m.has_edge(p, q) && m.has_edge(q, p)) {
        return {two_cycle_swap(inst, x, g, p, q, log), CaseLabel::ThreeSrc2Cycle};
      }
    }
  }
  return three_cycle(inst, x, g, m, log);
}

HandlerOutcome handle_two_sources(const Instance& inst, const Allocation& x, GoodId g, const PhiOrder& order,
                                  ObservationLog* log) {
  if (x.num_agents() != 3) throw ContractError("two-source handler needs three agents");
  const auto e = envy_graph(inst, x);
  const auto sources = e.sources();
  if (sources.size() != 2 || !e.is_acyclic()) {
    throw ContractError("two-source handler needs an acyclic envy graph with two sources");
  }
  const auto m = champion_graph(inst, x, g);
  for (AgentId i = 0; i < 3; ++i) {
    if (m.self_champions(i)) throw ContractError("two-source handler needs no self-champion");
  }
  const AgentId s1 = sources[0];
  const AgentId s2 = sources[1];
  const AgentId t = 3 - s1 - s2;

  if (e.has_edge(s1, t) && e.has_edge(s2, t)) {
    for (AgentId s : {s1, s2}) {
      if (m.has_edge(t, s)) {
        visit(log, "quick/envied-champion");
        return {apply_champion_path(inst, x, s, t, g), CaseLabel::TwoSrcQuick};
      }
    }
    if (!(m.has_edge(s1, s2) && m.has_edge(s2, s1))) defect("two sources: sources do not champion each other");
    visit(log, "quick/source-swap");
    return {two_cycle_swap(inst, x, g, s1, s2, log), CaseLabel::TwoSrcQuick};
  }

  // Structural roles: r[0] envies r[2]; r[1] is the other source.
  const std::array<AgentId, 3> r = e.has_edge(s1, t) ? std::array<AgentId, 3>{s1, s2, t}
                                                     : std::array<AgentId, 3>{s2, s1, t};
  if (m.has_edge(r[2], r[0])) {
    visit(log, "quick/target-champions-envier");
    return {apply_champion_path(inst, x, r[0], r[2], g), CaseLabel::TwoSrcQuick};
  }
  if (!m.has_edge(r[1], r[0])) defect("two sources: agent 1 has no champion");
  if (m.has_edge(r[0], r[1])) {
    visit(log, "quick/sources-champion-each-other");
    return {two_cycle_swap(inst, x, g, r[0], r[1], log), CaseLabel::TwoSrcQuick};
  }
  if (!m.has_edge(r[2], r[1])) defect("two sources: agent 2 has no champion");

  const AgentId a = order.first();
  if (a == r[1]) return {two_sources_a2(inst, x, g, r, log), CaseLabel::TwoSrcA2};
  return {two_sources_a13(inst, x, g, r, a, log), CaseLabel::TwoSrcA13};
}

void check_cut_observations(const Instance& inst, const Allocation& x, GoodId g, ObservationLog& log) {
  const Prefs pr{inst};
  const auto m = champion_graph(inst, x, g);
  const GoodSet gs = pr.single(g);
  for (AgentId j = 0; j < x.num_agents(); ++j) {
    log.record("champion-graph-in-degree", m.in_degree(j) >= 1);
  }
  for (auto [i, j] : m.edges()) {
    const auto cut = champion_cut(inst, x, i, j, g);
    const GoodSet extended = x.bundles[j].with(g);
    const std::string where = "cut(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";

    log.record("cut-size-equals-kappa", cut.upper.size() == kappa(inst, x, i, extended).value_or(0), where);
    log.record("cut-upper-envied", pr.gt(i, cut.upper, x.bundles[i]), where);

    bool part1 = true;
    for (AgentId k = 0; k < x.num_agents(); ++k) {
      for (GoodId h : cut.upper.members()) {
        if (pr.gt(k, cut.upper.without(h), x.bundles[k])) part1 = false;
      }
    }
    log.record("upper-minus-any-good-not-envied", part1, where);
    for (AgentId k = 0; k < x.num_agents(); ++k) {
      if (m.has_edge(k, j)) continue;
      log.record("non-champion-does-not-envy-upper", !pr.gt(k, cut.upper, x.bundles[k]),
                 where + " k=" + std::to_string(k + 1));
    }
    if (pr.ge(i, x.bundles[i], x.bundles[j])) {
      log.record("lower-half-below-g",
                 !cut.lower.contains(g) && cut.lower.is_subset_of(x.bundles[j]) && pr.gt(i, gs, cut.lower),
                 describe(inst, cut.lower));
    }
    if (!m.self_champions(j)) {
      log.record("lower-half-above-g-for-owner", !cut.lower.empty() && pr.ge(j, cut.lower, gs),
                 describe(inst, cut.lower));
    }
  }
}

SolverState initial_state(const Instance& inst, const SolveOptions& options) {
  if (inst.num_agents != 3) {
    throw InputError("the solver handles exactly 3 agents, got " + std::to_string(inst.num_agents));
  }
  validate(inst);
  SolverState state;
  state.inst = &inst;
  state.x = Allocation::empty(3, inst.num_goods());
  state.order = options.order.value_or(PhiOrder::identity(3));
  validate(state.order, 3);
  return state;
}

SolverState step(SolverState state, const SolveOptions& options) {
  const Instance& inst = *state.inst;
  const Allocation& x = state.x;
  if (x.pool.empty()) throw ContractError("step needs an unallocated good");

  StepRecord rec;
  rec.iteration = state.iteration + 1;
  rec.phi_before = phi(inst, state.order, x);

  Allocation y;
  auto cycles = eliminate_envy_cycles_counted(inst, x);
  if (cycles.rotations > 0) {
    rec.label = CaseLabel::CycleElim;
    if (options.record_graphs) rec.graphs = {{"envy", envy_graph(inst, x).to_json()}};
    y = std::move(cycles.result);
  } else {
    const GoodId g = x.pool.first();
    rec.good = g;
    const auto e = envy_graph(inst, x);
    const auto m = champion_graph(inst, x, g);
    if (options.record_graphs) {
      rec.graphs = {{"envy", e.to_json()}, {"champion", m.to_json()}, {"kappa", kappa_table(inst, x, g)}};
    }
    if (options.observations) check_cut_observations(inst, x, g, *options.observations);

    const auto sources = e.sources();
    std::optional<AgentId> self;
    for (AgentId i = 0; i < 3 && !self; ++i) {
      if (m.self_champions(i)) self = i;
    }
    if (sources.size() == 1) {
      rec.label = CaseLabel::SingleSource;
      y = apply_champion_path(inst, x, sources.front(), g);
    } else if (self) {
      rec.label = CaseLabel::SelfChampion;
      y = apply_champion_path(inst, x, *self, *self, g);
    } else if (sources.size() == 3) {
      auto out = handle_three_sources(inst, x, g, options.observations);
      rec.label = out.label;
      y = std::move(out.allocation);
    } else if (sources.size() == 2) {
      auto out = handle_two_sources(inst, x, g, state.order, options.observations);
      rec.label = out.label;
      y = std::move(out.allocation);
    } else {
      defect("envy graph without a source after cycle elimination");
    }
  }

  rec.phi_after = phi(inst, state.order, y);
  rec.allocation_after = y;

  if (options.check_invariants) {
    auto fail = [&](const std::string& what) {
      state.trace.push_back(rec);
      throw DefectError("step " + std::to_string(rec.iteration) + " (" + std::string(to_string(rec.label)) +
                            "): " + what,
                        trace_to_json(inst, state.order, state.trace).dump());
    };
    try {
      validate(y, 3, inst.num_goods());
    } catch (const InputError& err) {
      fail(std::string("malformed allocation: ") + err.what());
    }
    if (!((y.allocated() | y.pool) == (x.allocated() | x.pool))) fail("goods were lost or created");
    if (!is_efx(inst, y)) fail("allocation is not EFX");
    if (!lex_dominates(inst, state.order, y, x)) fail("potential did not strictly increase");
  }

  state.x = std::move(y);
  state.iteration = rec.iteration;
  state.trace.push_back(std::move(rec));
  return state;
}

SolveResult solve(const Instance& inst, const SolveOptions& options) {
  SolverState state = initial_state(inst, options);
  while (!state.x.pool.empty()) {
    if (state.iteration >= options.max_steps) {
      throw DefectError("step limit exceeded", trace_to_json(inst, state.order, state.trace).dump());
    }
    state = step(std::move(state), options);
  }
  return {std::move(state.x), std::move(state.trace)};
}

nlohmann::json phi_to_json(const std::vector<PerturbedValue>& values, const PhiOrder& order) {
  auto out = nlohmann::json::array();
  for (std::size_t k = 0; k < values.size(); ++k) {
    out.push_back({{"agent", order.agent_order[k] + 1},
                   {"value", to_string(values[k].base)},
                   {"key", to_string(values[k].key_integer())}});
  }
  return out;
}

nlohmann::json trace_to_json(const Instance& inst, const PhiOrder& order, const std::vector<StepRecord>& trace) {
  auto out = nlohmann::json::array();
  for (const auto& rec : trace) {
    nlohmann::json item = {
        {"iteration", rec.iteration},
        {"case", std::string(to_string(rec.label))},
        {"good", rec.good ? nlohmann::json(inst.goods[*rec.good]) : nlohmann::json(nullptr)},
        {"phi_before", phi_to_json(rec.phi_before, order)},
        {"phi_after", phi_to_json(rec.phi_after, order)},
        {"allocation_after", serialize_allocation(inst, rec.allocation_after)},
    };
    if (!rec.graphs.is_null()) item["graphs"] = rec.graphs;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace efx
