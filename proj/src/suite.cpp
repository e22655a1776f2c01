#include "addcomb/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>

#include "addcomb/analysis.hpp"

namespace addcomb {

namespace {

using Runner = std::function<BatteryResult(const SuiteConfig&, CensusCache*)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> batteries{
      {"kneser", [](const SuiteConfig&, CensusCache*) { return kneser_battery(); }},
      {"pollard", [](const SuiteConfig&, CensusCache*) { return pollard_battery(); }},
      {"chang", [](const SuiteConfig& c, CensusCache*) { return chang_battery(derive_seed(c.seed, "chang")); }},
      {"bohr", [](const SuiteConfig& c, CensusCache*) { return bohr_battery(derive_seed(c.seed, "bohr")); }},
      {"decompose", [](const SuiteConfig& c, CensusCache*) { return decompose_battery(derive_seed(c.seed, "decompose")); }},
      {"census-oracle",
       [](const SuiteConfig& c, CensusCache* cache) { return census_oracle_battery({c.workers}, cache); }},
      {"hypergraph-identity", [](const SuiteConfig& c, CensusCache*) { return hypergraph_identity_battery({c.workers}); }},
      {"fourier", [](const SuiteConfig& c, CensusCache*) { return fourier_battery(derive_seed(c.seed, "fourier")); }},
      {"gamma", [](const SuiteConfig&, CensusCache*) { return gamma_battery(); }},
      {"audit", [](const SuiteConfig&, CensusCache*) { return audit_battery(); }},
      {"index2", [](const SuiteConfig& c, CensusCache*) { return index2_battery({c.workers}); }},
      {"chernoff", [](const SuiteConfig& c, CensusCache*) { return chernoff_battery(c.seed); }},
  };
  return batteries;
}

BatteryResult run_with(const std::string& name, const SuiteConfig& config, CensusCache* cache) {
  for (const auto& [key, run] : registry()) {
    if (key != name) continue;
    const auto start = std::chrono::steady_clock::now();
    BatteryResult r = run(config, cache);
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw std::invalid_argument("unknown battery '" + name + "'");
}

}  // namespace

bool SuiteReport::all_passed() const {
  return !batteries.empty() &&
         std::all_of(batteries.begin(), batteries.end(), [](const BatteryResult& b) { return b.passed(); });
}

std::vector<std::string> battery_names() {
  std::vector<std::string> names;
  for (const auto& [name, run] : registry()) names.push_back(name);
  return names;
}

std::vector<std::string> resolve_batteries(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  const auto known = battery_names();
  for (const auto& name : requested) {
    if (name == "all") {
      for (const auto& k : known) {
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
      }
      continue;
    }
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown battery '" + name + "'");
    }
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  if (out.empty()) throw std::invalid_argument("no battery selected");
  return out;
}

BatteryResult run_battery(const std::string& name, const SuiteConfig& config) {
  std::optional<CensusCache> cache;
  if (config.cache_dir) cache.emplace(*config.cache_dir);
  return run_with(name, config, cache ? &*cache : nullptr);
}

SuiteReport run_suite(const SuiteConfig& config) {
  const auto names = resolve_batteries(config.batteries);
  std::optional<CensusCache> cache;
  if (config.cache_dir) cache.emplace(*config.cache_dir);
  SuiteReport report;
  report.seed = config.seed;
  report.batteries.resize(names.size());
  std::vector<std::exception_ptr> errors(names.size());
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= names.size()) return;
      try {
        report.batteries[i] = run_with(names[i], config, cache ? &*cache : nullptr);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(names.size())));
  if (workers == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (cache) report.cache_corrupt = cache->corrupt_entries();
  return report;
}

std::string report_json(const SuiteReport& report) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["code_version"] = code_version();
  j["seed"] = std::to_string(report.seed);
  auto& list = j["batteries"] = nlohmann::json::array();
  for (const auto& b : report.batteries) {
    list.push_back({{"name", b.name},
                    {"checks", std::to_string(b.checks)},
                    {"failures", std::to_string(b.failures)},
                    {"skipped", std::to_string(b.skipped)},
                    {"passed", b.passed()},
                    {"details", b.details}});
  }
  j["passed"] = report.all_passed();
  return j.dump(2) + "\n";
}

}  // namespace addcomb
