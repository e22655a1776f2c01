#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "addcomb/cache.hpp"
#include "addcomb/census.hpp"

namespace addcomb {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct BatteryResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;  // precondition not met, nothing asserted
  nlohmann::json details = nlohmann::json::object();
  double elapsed = 0.0;       // seconds; never written to the report
  bool passed() const { return failures == 0 && checks > 0; }
};

// Exhaustive Kneser bound over all nonempty pairs in ten groups of order
// <= 12, and Cauchy-Davenport for p in {2, 3, 5, 7}.
BatteryResult kneser_battery();
// Thick-sumset lower bounds, prime and general, plus the size-sum check.
BatteryResult pollard_battery();
BatteryResult chang_battery(std::uint64_t seed, std::size_t per_prime = 500);
BatteryResult bohr_battery(std::uint64_t seed, std::size_t per_order = 200);
BatteryResult decompose_battery(std::uint64_t seed, std::size_t per_prime = 100);
// Reduced counts go through the cache when one is given; the symmetric
// counts they are compared with are always recomputed.
BatteryResult census_oracle_battery(const CensusOptions& opts, CensusCache* cache = nullptr);
BatteryResult hypergraph_identity_battery(const CensusOptions& opts);
BatteryResult fourier_battery(std::uint64_t seed);
BatteryResult gamma_battery();
BatteryResult audit_battery();
BatteryResult index2_battery(const CensusOptions& opts);
BatteryResult chernoff_battery(std::uint64_t seed);

struct SuiteConfig {
  std::vector<std::string> batteries{"all"};
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<BatteryResult> batteries;
  std::vector<std::string> cache_corrupt;  // discarded entries; not in the JSON
  bool all_passed() const;
};

std::vector<std::string> battery_names();
// Expands "all" and rejects unknown names with std::invalid_argument.
std::vector<std::string> resolve_batteries(const std::vector<std::string>& requested);
BatteryResult run_battery(const std::string& name, const SuiteConfig& config);
// Batteries run concurrently on config.workers threads; the report lists
// them in request order.
SuiteReport run_suite(const SuiteConfig& config);

// Versioned and free of timings, so equal inputs give equal bytes.
std::string report_json(const SuiteReport& report);

}  // namespace addcomb
