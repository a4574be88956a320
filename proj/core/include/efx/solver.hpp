#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "efx/allocation.hpp"
#include "efx/graphs.hpp"
#include "efx/instance.hpp"

namespace efx {

enum class CaseLabel {
  CycleElim,
  SingleSource,
  SelfChampion,
  ThreeSrc2Cycle,
  ThreeSrc3Cycle,
  TwoSrcQuick,
  TwoSrcA13,
  TwoSrcA2,
  IdenticalBaseline,
};

std::string_view to_string(CaseLabel label);
const std::vector<CaseLabel>& all_case_labels();

// Counts of structural facts the solver checks whenever their hypotheses
// hold. A nonzero `violated` means the construction is wrong somewhere.
struct ObservationTally {
  std::size_t checked = 0;
  std::size_t violated = 0;
  std::vector<std::string> samples;  // first few violation descriptions
};

class ObservationLog {
 public:
  void record(const std::string& name, bool holds, const std::string& detail = {});
  void merge(const ObservationLog& other);

  const std::map<std::string, ObservationTally>& tallies() const { return tallies_; }
  std::size_t total_violations() const;
  std::size_t checked(const std::string& name) const;

  // How often each exit of a handler was taken.
  void visit(const std::string& branch) { ++branches_[branch]; }
  const std::map<std::string, std::size_t>& branches() const { return branches_; }

 private:
  std::map<std::string, ObservationTally> tallies_;
  std::map<std::string, std::size_t> branches_;
};

struct StepRecord {
  std::size_t iteration = 0;
  CaseLabel label = CaseLabel::CycleElim;
  std::optional<GoodId> good;
  std::vector<PerturbedValue> phi_before;
  std::vector<PerturbedValue> phi_after;
  Allocation allocation_after;
  nlohmann::json graphs;  // envy/champion graphs and kappa table before the step, if recorded
};

struct SolveOptions {
  std::optional<PhiOrder> order;  // defaults to input agent order
  bool check_invariants = true;   // EFX, strict phi increase, conservation after every step
  bool record_graphs = false;
  ObservationLog* observations = nullptr;  // structural checks, when non-null
  std::size_t max_steps = 1'000'000;
};

struct SolverState {
  const Instance* inst = nullptr;
  Allocation x;
  PhiOrder order;
  std::size_t iteration = 0;
  std::vector<StepRecord> trace;
};

struct SolveResult {
  Allocation allocation;
  std::vector<StepRecord> trace;
};

// A complete allocation that is EFX in the perturbed order, hence EFX.
// Requires exactly three agents.
SolveResult solve(const Instance& inst, const SolveOptions& options = {});

SolverState initial_state(const Instance& inst, const SolveOptions& options = {});

// One dominating move. Precondition: X is EFX and the pool is nonempty.
SolverState step(SolverState state, const SolveOptions& options = {});

// Shift bundles back along the envy path s -> ... -> champion and give the
// champion the upper half of X_s + g. Throws ContractError unless
// `champion` champions s w.r.t. g and is reachable from s.
Allocation apply_champion_path(const Instance& inst, const Allocation& x, AgentId s, AgentId champion,
                               GoodId g);

// Same, choosing the lowest-index champion of s reachable from s.
Allocation apply_champion_path(const Instance& inst, const Allocation& x, AgentId s, GoodId g);

struct HandlerOutcome {
  Allocation allocation;
  CaseLabel label;
};

// X envy-free, no self-champion w.r.t. g.
HandlerOutcome handle_three_sources(const Instance& inst, const Allocation& x, GoodId g,
                                    ObservationLog* log = nullptr);

// Envy graph acyclic with exactly two sources, no self-champion w.r.t. g.
HandlerOutcome handle_two_sources(const Instance& inst, const Allocation& x, GoodId g, const PhiOrder& order,
                                  ObservationLog* log = nullptr);

// Runs every structural observation about champion cuts that applies to
// (X, g) and records the outcome.
void check_cut_observations(const Instance& inst, const Allocation& x, GoodId g, ObservationLog& log);

// Reallocation baseline for instances where all agents share one valuation.
// Throws InputError when the rows differ.
Allocation solve_identical(const Instance& inst);

nlohmann::json phi_to_json(const std::vector<PerturbedValue>& phi, const PhiOrder& order);
nlohmann::json trace_to_json(const Instance& inst, const PhiOrder& order, const std::vector<StepRecord>& trace);

}  // namespace efx
