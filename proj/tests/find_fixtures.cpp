// Regenerates tests/fixtures/handlers/: one solver state per handler exit,
// found by the biased randomized search.
//   efx_find_fixtures <output-dir> [starts] [walk-steps] [seed]

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "fixture_search.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: efx_find_fixtures <output-dir> [starts] [walk-steps] [seed]\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  const std::uint64_t starts = argc > 2 ? std::stoull(argv[2]) : 400000;
  const int steps = argc > 3 ? std::stoi(argv[3]) : 2000;
  const std::uint64_t seed = argc > 4 ? std::stoull(argv[4]) : 1;
  std::filesystem::create_directories(dir);

  std::set<std::string> found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) found.insert(entry.path().stem().string());
  efx::ObservationLog log;
  const auto stats = fixture_search::search(
      seed, starts, steps, log, [&](const fixture_search::State& s, const fixture_search::Outcome& out) {
        for (const auto& branch : out.branches) {
          std::string name = std::string(efx::to_string(out.label)) + "__" + branch;
          std::replace(name.begin(), name.end(), '/', '_');
          if (!found.insert(name).second) continue;
          nlohmann::json doc = {{"label", efx::to_string(out.label)},
                                {"branch", branch},
                                {"instance", efx::serialize_instance(s.inst)},
                                {"allocation", efx::serialize_allocation(s.inst, s.x)}};
          std::ofstream(dir / (name + ".json")) << doc.dump(1) << '\n';
          std::cout << "found " << name << std::endl;
        }
        return true;
      });
  std::cout << stats.probes << " probes, " << stats.defects << " defects\n";
  if (stats.defects > 0) std::cout << stats.first_defect << '\n';
  for (const auto& [branch, count] : log.branches()) std::cout << branch << ' ' << count << '\n';
  return stats.defects == 0 ? 0 : 1;
}
