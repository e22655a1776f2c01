#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/census.hpp"

namespace addcomb {

std::string code_version();

// Settings read from ADDCOMB_WORKERS and ADDCOMB_CACHE_DIR.
struct RuntimeConfig {
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
};
RuntimeConfig runtime_from_env();

// One JSON file per (group, method, code version); integers as decimal
// strings. Entries that fail to parse or disagree with their own histogram
// are deleted and reported through corrupt_entries().
class CensusCache {
 public:
  explicit CensusCache(std::filesystem::path dir);

  std::filesystem::path entry_path(const GroupSpec& g, CensusMethod method) const;
  std::optional<CensusResult> load(const GroupSpec& g, CensusMethod method);
  void store(const CensusResult& result) const;

  const std::vector<std::string>& corrupt_entries() const { return corrupt_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> corrupt_;
};

std::string census_to_json(const CensusResult& r);
CensusResult census_from_json(const std::string& text);

// Runs the census, going through the cache when one is given.
CensusResult cached_census(const GroupSpec& g, CensusMethod method, const CensusOptions& opts, CensusCache* cache);

}  // namespace addcomb
