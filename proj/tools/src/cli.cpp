#include "efx_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "efx/allocation.hpp"
#include "efx/eps_poly.hpp"
#include "efx/errors.hpp"
#include "efx/fixtures.hpp"
#include "efx/oracle.hpp"
#include "efx/repro.hpp"
#include "efx/solver.hpp"

namespace efx::cli {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text << '\n';
}

// An instance is infinitesimal if any entry is a degree map.
bool has_eps_values(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array()) return false;
  for (const auto& row : doc["values"]) {
    if (!row.is_array()) continue;
    for (const auto& v : row) {
      if (v.is_object()) return true;
    }
  }
  return false;
}

std::string bundle_text(const std::vector<std::string>& goods, const GoodSet& s) {
  std::string text = "{";
  bool first = true;
  for (GoodId g : s.members()) {
    if (!first) text += ",";
    text += goods[g];
    first = false;
  }
  return text + "}";
}

std::size_t resolve_max_goods(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("EFX_MAX_GOODS"); env && *env) {
    const std::string text(env);
    if (text.find_first_not_of("0123456789") == std::string::npos) {
      try {
        return static_cast<std::size_t>(std::stoull(text));
      } catch (const std::out_of_range&) {
      }
    }
    throw InputError(std::string("EFX_MAX_GOODS is not a non-negative integer: ") + env);
  }
  return kDefaultMaxGoods;
}

struct SolveArgs {
  std::string instance;
  std::string trace;
  bool json = false;
  bool graphs = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = parse_instance(read_json(a.instance));
  if (inst.num_agents != 3) {
    throw InputError("solve needs exactly 3 agents, got " + std::to_string(inst.num_agents));
  }
  SolveOptions options;
  options.record_graphs = a.graphs || !a.trace.empty();
  const SolveResult result = solve(inst, options);
  const PhiOrder order = PhiOrder::identity(3);
  if (!a.trace.empty()) write_file(a.trace, trace_to_json(inst, order, result.trace).dump(2));
  const auto doc = serialize_allocation(inst, result.allocation);
  if (a.json) {
    out << doc.dump() << '\n';
    return kHolds;
  }
  for (AgentId i = 0; i < 3; ++i) {
    out << "agent " << i + 1 << ": " << bundle_text(inst.goods, result.allocation.bundles[i]) << " value "
        << to_string(bundle_value(inst, i, result.allocation.bundles[i])) << '\n';
  }
  out << "steps: " << result.trace.size() << '\n';
  out << "efx: " << (is_efx(BaseOrder<Rational>(inst), result.allocation) ? "yes" : "no") << '\n';
  out << doc.dump() << '\n';
  return kHolds;
}

struct CheckArgs {
  std::string instance;
  std::string allocation;
  std::string criterion = "efx";
  bool witness = false;
  bool perturbed = false;
  bool json = false;
};

template <class Order>
int check_with(const Instance& inst, const Allocation& x, const CheckArgs& a, const Order& order,
               std::ostream& out) {
  bool holds = false;
  if (a.criterion == "efx") {
    holds = is_efx(order, x);
  } else if (a.criterion == "ef1") {
    holds = is_ef1(order, x);
  } else {
    holds = is_envy_free(order, x);
  }
  const auto witnesses = a.witness ? strong_envy_witnesses(order, x) : std::vector<EnvyWitness>{};
  if (a.json) {
    nlohmann::json doc = {{"criterion", a.criterion},
                          {"order", a.perturbed ? "perturbed" : "base"},
                          {"holds", holds},
                          {"complete", x.is_complete()}};
    if (a.witness) {
      auto list = nlohmann::json::array();
      for (const auto& w : witnesses) {
        list.push_back({{"envier", w.envier + 1}, {"envied", w.envied + 1}, {"good", inst.goods[w.removed]}});
      }
      doc["strong_envy_witnesses"] = std::move(list);
    }
    out << doc.dump() << '\n';
  } else {
    out << a.criterion << ": " << (holds ? "holds" : "fails") << '\n';
    for (const auto& w : witnesses) {
      out << "strong envy (" << w.envier + 1 << "," << w.envied + 1 << "," << inst.goods[w.removed] << ")\n";
    }
  }
  return holds ? kHolds : kFails;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const Instance inst = parse_instance(read_json(a.instance));
  const Allocation x = parse_allocation(inst, read_json(a.allocation));
  if (a.perturbed) return check_with(inst, x, a, PerturbedOrder(inst), out);
  return check_with(inst, x, a, BaseOrder<Rational>(inst), out);
}

struct OracleArgs {
  std::string instance;
  bool list = false;
  bool max_nsw = false;
  std::string dominates;
  std::optional<std::size_t> max_goods;
  bool perturbed = false;
};

template <class V>
int oracle_with(const BasicInstance<V>& inst, const OracleArgs& a, nlohmann::json (*value_json)(const V&),
                std::ostream& out) {
  OracleOptions options;
  options.max_goods = resolve_max_goods(a.max_goods);
  options.order = a.perturbed ? OracleOrder::Perturbed : OracleOrder::Base;
  options.keep_list = a.list;
  check_guard(inst.num_goods(), options.max_goods);
  std::optional<Allocation> target;
  if (!a.dominates.empty()) target = parse_allocation(inst, read_json(a.dominates));

  const auto report = enumerate_efx(inst, options);
  nlohmann::json doc = report_to_json(inst, report, value_json);
  if (!a.max_nsw && !a.list) doc.erase("max_nash");
  doc["query"] = {{"instance", a.instance},
                  {"order", a.perturbed ? "perturbed" : "base"},
                  {"max_goods", options.max_goods},
                  {"list", a.list},
                  {"max_nsw", a.max_nsw},
                  {"dominates", a.dominates.empty() ? nlohmann::json(nullptr) : nlohmann::json(a.dominates)}};
  int status = kHolds;
  if (target) {
    const auto witness = exists_pareto_dominator(inst, *target, options);
    doc["dominator"] = witness ? serialize_allocation(inst, *witness) : nlohmann::json(nullptr);
    doc["dominated"] = witness.has_value();
    if (witness) status = kFails;
  }
  out << doc.dump(2) << '\n';
  return status;
}

nlohmann::json rational_json(const Rational& r) { return rational_to_json(r); }
nlohmann::json eps_json(const EpsPoly& p) { return eps_to_json(p); }

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const auto doc = read_json(a.instance);
  if (has_eps_values(doc)) return oracle_with<EpsPoly>(parse_eps_instance(doc), a, eps_json, out);
  return oracle_with<Rational>(parse_instance(doc), a, rational_json, out);
}

struct GenArgs {
  long long agents = 3;
  long long goods = 0;
  long long max_value = 20;
  unsigned long long seed = 0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.agents < 1) throw InputError("--agents must be positive");
  if (a.goods < 0) throw InputError("--goods must be non-negative");
  if (a.max_value < 0) throw InputError("--max-value must be non-negative");
  if (a.goods > 4096) throw InputError("--goods is unreasonably large (limit 4096)");
  Instance inst = random_instance(a.seed, static_cast<std::size_t>(a.agents), static_cast<std::size_t>(a.goods),
                                  static_cast<std::uint64_t>(a.max_value));
  std::ostringstream comment;
  comment << "efx gen --agents " << a.agents << " --goods " << a.goods << " --max-value " << a.max_value
          << " --seed " << a.seed << " (uniform integers, mt19937_64)";
  inst.comment = comment.str();
  out << serialize_instance(inst).dump() << '\n';
  return kHolds;
}

struct ReproArgs {
  std::string which;
  std::string instance;
  bool json = false;
  std::optional<std::size_t> max_goods;
};

int cmd_repro(const ReproArgs& a, std::ostream& out) {
  OracleOptions options;
  options.max_goods = resolve_max_goods(a.max_goods);
  ReproReport report;
  if (a.which == "table1") {
    if (!a.instance.empty()) throw InputError("--instance is only supported for table2");
    report = repro_table1(options);
  } else {
    std::optional<EpsInstance> inst;
    if (!a.instance.empty()) inst = parse_eps_instance(read_json(a.instance));
    report = repro_table2(inst, options);
  }
  if (a.json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << report.summary();
    for (const auto& c : report.checks) {
      if (!c.pass) out << "  " << c.id << ": " << c.detail.dump() << '\n';
    }
  }
  return report.pass() ? kHolds : kFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact EFX allocations for three agents with additive valuations", "efx"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a complete EFX allocation");
  solve_cmd->add_option("instance", solve_args.instance, "Instance JSON file")->required();
  solve_cmd->add_option("--trace", solve_args.trace, "Write the step trace JSON to this file");
  solve_cmd->add_flag("--json", solve_args.json, "Print only the allocation JSON");
  solve_cmd->add_flag("--graphs", solve_args.graphs, "Include envy/champion graphs in the trace");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Check a fairness criterion of an allocation");
  check_cmd->add_option("instance", check_args.instance, "Instance JSON file")->required();
  check_cmd->add_option("allocation", check_args.allocation, "Allocation JSON file")->required();
  check_cmd->add_option("--criterion", check_args.criterion, "efx, ef1 or ef")
      ->check(CLI::IsMember({"efx", "ef1", "ef"}));
  check_cmd->add_flag("--strong-envy-witness", check_args.witness, "List every strong-envy triple (i, j, g)");
  check_cmd->add_flag("--perturbed", check_args.perturbed, "Compare bundles in the tie-broken order");
  check_cmd->add_flag("--json", check_args.json, "Machine-readable output");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search over complete allocations");
  oracle_cmd->add_option("instance", oracle_args.instance, "Instance JSON file")->required();
  oracle_cmd->add_flag("--list", oracle_args.list, "Include every complete EFX allocation");
  oracle_cmd->add_flag("--max-nsw", oracle_args.max_nsw, "Report the maximum Nash product and a witness");
  oracle_cmd->add_option("--dominates", oracle_args.dominates,
                         "Search for a complete EFX allocation Pareto dominating this allocation");
  oracle_cmd->add_option("--max-goods", oracle_args.max_goods, "Refuse instances with more goods (default 16)");
  oracle_cmd->add_flag("--perturbed", oracle_args.perturbed, "Classify in the tie-broken order");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--agents", gen_args.agents, "Number of agents")->capture_default_str();
  gen_cmd->add_option("--goods", gen_args.goods, "Number of goods")->required();
  gen_cmd->add_option("--max-value", gen_args.max_value, "Values are uniform in [0, V]")->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed")->capture_default_str();

  ReproArgs repro_args;
  auto* repro_cmd = app.add_subcommand("repro", "Reproduce the seven-good counterexamples");
  repro_cmd->add_option("which", repro_args.which, "table1 or table2")
      ->required()
      ->check(CLI::IsMember({"table1", "table2"}));
  repro_cmd->add_option("--instance", repro_args.instance, "Replace the table2 instance (negative controls)");
  repro_cmd->add_flag("--json", repro_args.json, "Machine-readable report");
  repro_cmd->add_option("--max-goods", repro_args.max_goods, "Oracle guard (default 16)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*check_cmd) return cmd_check(check_args, out);
    if (*oracle_cmd) return cmd_oracle(oracle_args, out);
    if (*gen_cmd) return cmd_gen(gen_args, out);
    if (*repro_cmd) return cmd_repro(repro_args, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid JSON document: " << e.what() << '\n';
    return kInputError;
  } catch (const DefectError& e) {
    err << "internal defect: " << e.what() << '\n';
    if (!e.context().empty()) err << e.context() << '\n';
    return kFails;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace efx::cli
