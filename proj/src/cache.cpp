#include "addcomb/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace addcomb {

namespace fs = std::filesystem;

std::string code_version() { return ADDCOMB_VERSION; }

RuntimeConfig runtime_from_env() {
  RuntimeConfig cfg;
  if (const char* w = std::getenv("ADDCOMB_WORKERS"); w != nullptr && *w != '\0') {
    try {
      const long v = std::stol(w);
      if (v < 1 || v > 1024) throw std::out_of_range("workers");
      cfg.workers = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("ADDCOMB_WORKERS must be an integer in [1, 1024], got '") + w + "'");
    }
  }
  if (const char* d = std::getenv("ADDCOMB_CACHE_DIR"); d != nullptr && *d != '\0') cfg.cache_dir = fs::path(d);
  return cfg;
}

std::string census_to_json(const CensusResult& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["group"] = r.group.name();
  j["method"] = to_string(r.method);
  j["version"] = code_version();
  j["N"] = std::to_string(r.group.order());
  j["T"] = to_decimal(r.count);
  j["elapsed"] = r.elapsed;
  auto& hist = j["histogram"] = nlohmann::json::array();
  for (auto h : r.sumset_histogram) hist.push_back(std::to_string(h));
  return j.dump(1);
}

CensusResult census_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("schema").get<int>() != 1) throw std::runtime_error("census entry: unknown schema");
  CensusResult r;
  r.group = parse_group(j.at("group").get<std::string>());
  r.method = parse_method(j.at("method").get<std::string>());
  r.count = BigInt(j.at("T").get<std::string>());
  r.elapsed = j.at("elapsed").get<double>();
  for (const auto& h : j.at("histogram")) r.sumset_histogram.push_back(std::stoull(h.get<std::string>()));
  if (std::to_string(r.group.order()) != j.at("N").get<std::string>()) {
    throw std::runtime_error("census entry: N does not match the group");
  }
  if (!r.sumset_histogram.empty()) {
    const std::uint32_t n = r.group.order();
    if (r.sumset_histogram.size() != n + 1) throw std::runtime_error("census entry: histogram length");
    BigInt total = 0;
    for (std::uint32_t k = 0; k <= n; ++k) total += BigInt(r.sumset_histogram[k]) << (n - k);
    if (total != r.count) throw std::runtime_error("census entry: histogram disagrees with T");
  }
  return r;
}

CensusCache::CensusCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path CensusCache::entry_path(const GroupSpec& g, CensusMethod method) const {
  return dir_ / ("census-" + g.name() + "-" + to_string(method) + "-" + code_version() + ".json");
}

std::optional<CensusResult> CensusCache::load(const GroupSpec& g, CensusMethod method) {
  const fs::path path = entry_path(g, method);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    CensusResult r = census_from_json(buf.str());
    if (!(r.group == g) || r.method != method) throw std::runtime_error("key mismatch");
    return r;
  } catch (const std::exception& e) {
    corrupt_.push_back(path.filename().string() + ": " + e.what());
    in.close();
    std::error_code ignored;
    fs::remove(path, ignored);
    return std::nullopt;
  }
}

void CensusCache::store(const CensusResult& result) const {
  const fs::path path = entry_path(result.group, result.method);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    out << census_to_json(result) << '\n';
  }
  fs::rename(tmp, path);
}

CensusResult cached_census(const GroupSpec& g, CensusMethod method, const CensusOptions& opts, CensusCache* cache) {
  if (cache != nullptr) {
    if (auto hit = cache->load(g, method)) return *hit;
  }
  CensusResult r = run_census(g, method, opts);
  if (cache != nullptr) cache->store(r);
  return r;
}

}  // namespace addcomb
