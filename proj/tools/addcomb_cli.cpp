#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "addcomb/analysis.hpp"
#include "addcomb/cache.hpp"
#include "addcomb/census.hpp"
#include "addcomb/hypergraph.hpp"
#include "addcomb/structure.hpp"
#include "addcomb/suite.hpp"

using namespace addcomb;
using nlohmann::json;

namespace {

struct Env {
  RuntimeConfig runtime;
  std::unique_ptr<CensusCache> cache;
};

Env load_env(bool use_cache) {
  Env env{runtime_from_env(), nullptr};
  if (use_cache && env.runtime.cache_dir) env.cache = std::make_unique<CensusCache>(*env.runtime.cache_dir);
  return env;
}

void report_corruption(const Env& env) {
  if (!env.cache) return;
  for (const auto& entry : env.cache->corrupt_entries()) {
    std::cerr << "warning: discarded corrupt cache entry " << entry << " (recomputed)\n";
  }
}

CensusMethod method_for(std::uint32_t n) { return n <= 12 ? CensusMethod::reduced : CensusMethod::symmetric; }

json residual_json(const ResidualReport& r) {
  return {{"R_lb", to_decimal(r.r_lb)}, {"R1", to_decimal(r.r1)}, {"R2", to_decimal(r.r2)}};
}

json census_json(const CensusResult& r) {
  json j{{"schema", kReportSchemaVersion},
         {"group", r.group.name()},
         {"N", std::to_string(r.group.order())},
         {"method", to_string(r.method)},
         {"T", to_decimal(r.count)},
         {"lower_bound", to_decimal(lower_bound_count(r.group.order()))},
         {"elapsed", r.elapsed}};
  j["residuals"] = residual_json(residuals(r));
  if (!r.sumset_histogram.empty()) {
    auto& hist = j["sumset_histogram"] = json::array();
    for (auto h : r.sumset_histogram) hist.push_back(std::to_string(h));
  }
  return j;
}

// Cyclic censuses for d = 1..max_order, through the cache when configured.
std::vector<CensusResult> cyclic_censuses(std::uint32_t max_order, Env& env) {
  std::vector<CensusResult> out;
  for (std::uint32_t d = 1; d <= max_order; ++d) {
    const GroupSpec g = parse_group(std::to_string(d));
    out.push_back(cached_census(g, method_for(d), {env.runtime.workers}, env.cache.get()));
    std::cerr << "  Z_" << d << ": T = " << to_decimal(out.back().count) << " (" << out.back().elapsed << " s)\n";
  }
  return out;
}

json fit_json(const SlopeFit& f) {
  json j{{"window", {f.window_begin, f.window_end}},
         {"slope", f.slope},
         {"intercept", f.intercept},
         {"fitted_base", f.fitted_base}};
  auto& pts = j["points"] = json::array();
  for (std::size_t i = 0; i < f.series.size(); ++i) {
    pts.push_back({{"d", f.series[i].n}, {"abs_R2", f.series[i].value}, {"sign", f.signs[i]}, {"residual", f.residuals[i]}});
  }
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"addcomb: censuses and verification batteries for sum-free triples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  // census
  auto* census = app.add_subcommand("census", "Count triples (A, B, C) with A + B avoiding C");
  std::string group_text;
  std::string method_text;
  bool stratified = false;
  bool no_cache = false;
  census->add_option("--group", group_text, "Group as moduli, e.g. 12 or 2x6")->required();
  census->add_option("--method", method_text, "brute | reduced | symmetric (default by order)");
  census->add_flag("--stratified", stratified, "Also print N_{a,b,c} by set sizes");
  census->add_flag("--no-cache", no_cache, "Ignore ADDCOMB_CACHE_DIR");

  // hypergraph
  auto* hyper = app.add_subcommand("hypergraph", "Count independent sets of a 3-uniform hypergraph");
  std::optional<std::uint32_t> mod_d;
  std::string hyper_file;
  std::string export_path;
  auto* mod_opt = hyper->add_option("--mod", mod_d, "Mod hypergraph on three copies of Z/dZ");
  auto* file_opt = hyper->add_option("--file", hyper_file, "Hypergraph JSON {n, edges}");
  mod_opt->excludes(file_opt);
  hyper->add_option("--export", export_path, "Write the hypergraph as JSON");

  // decompose
  auto* dec = app.add_subcommand("decompose", "Structural decomposition on a random avoiding pair in Z_p");
  std::uint32_t dec_p = 0;
  double a_density = 0.0;
  std::optional<double> b_density;
  double dec_delta = 0.0;
  double dec_eps = 0.0;
  std::optional<double> dec_eta;
  std::uint64_t dec_seed = kDefaultSeed;
  dec->add_option("--p", dec_p, "Prime modulus")->required();
  dec->add_option("--a-density", a_density, "Density of A")->required();
  dec->add_option("--b-density", b_density, "Density of B (default: that of A)");
  dec->add_option("--delta", dec_delta)->required();
  dec->add_option("--eps", dec_eps)->required();
  dec->add_option("--eta", dec_eta, "Use C = complement of A +_eta B");
  dec->add_option("--seed", dec_seed);

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification batteries");
  std::vector<std::string> batteries{"all"};
  std::uint64_t suite_seed = kDefaultSeed;
  std::string verify_out;
  verify->add_option("--battery", batteries, "Battery names or all")->delimiter(',');
  verify->add_option("--seed", suite_seed);
  verify->add_option("--out", verify_out, "Write the JSON report here instead of stdout");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Residuals, slope fits and the analytic checks");
  bool want_residuals = false;
  bool want_fit = false;
  bool want_gamma = false;
  std::uint32_t max_order = 14;
  std::optional<unsigned> audit_p;
  std::optional<unsigned> audit_m;
  std::optional<std::uint32_t> chernoff_p;
  double chernoff_gamma = 0.5;
  std::uint64_t chernoff_trials = 2000;
  std::uint64_t analyze_seed = kDefaultSeed;
  analyze->add_flag("--residuals", want_residuals, "R_lb, R1, R2 for cyclic groups");
  analyze->add_flag("--fit", want_fit, "Slope fit of |R2(d)|");
  analyze->add_option("--max-order", max_order, "Largest d for the cyclic census")->check(CLI::Range(1u, kSymmetricGuard));
  analyze->add_flag("--gamma", want_gamma, "Maximize the gamma profile");
  analyze->add_option("--audit", audit_p, "Binomial-chain audit at this p");
  analyze->add_option("--audit-m", audit_m, "M for --audit (default p/16)");
  analyze->add_option("--chernoff", chernoff_p, "Chernoff experiment on Z_p");
  analyze->add_option("--chernoff-gamma", chernoff_gamma);
  analyze->add_option("--trials", chernoff_trials);
  analyze->add_option("--seed", analyze_seed);

  // report
  auto* report = app.add_subcommand("report", "Cyclic census table as CSV");
  std::string csv_path;
  std::uint32_t report_order = 14;
  report->add_option("--csv", csv_path, "Output file")->required();
  report->add_option("--max-order", report_order)->check(CLI::Range(1u, kSymmetricGuard));

  CLI11_PARSE(app, argc, argv);

  try {
    if (census->parsed()) {
      Env env = load_env(!no_cache);
      const GroupSpec g = parse_group(group_text);
      const CensusMethod method = method_text.empty() ? method_for(g.order()) : parse_method(method_text);
      const CensusResult r = cached_census(g, method, {env.runtime.workers}, env.cache.get());
      report_corruption(env);
      json j = census_json(r);
      if (stratified) {
        const StratifiedTable t = stratified_census(g, {env.runtime.workers});
        auto& rows = j["stratified"] = json::array();
        for (std::uint32_t a = 0; a <= t.n; ++a) {
          for (std::uint32_t b = 0; b <= t.n; ++b) {
            for (std::uint32_t c = 0; c <= t.n; ++c) {
              if (t.at(a, b, c) != 0) rows.push_back({a, b, c, to_decimal(t.at(a, b, c))});
            }
          }
        }
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (hyper->parsed()) {
      if (!mod_d && hyper_file.empty()) throw std::invalid_argument("hypergraph: give --mod d or --file path");
      const Hypergraph h = mod_d ? build_mod_hypergraph(*mod_d) : hypergraph_from_json(read_file(hyper_file));
      if (!export_path.empty()) write_file(export_path, to_json(h) + "\n");
      const Env env = load_env(false);
      const auto shape = validate(h);
      const auto start = std::chrono::steady_clock::now();
      const BigInt count = count_independent(h, {env.runtime.workers});
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      json j{{"schema", kReportSchemaVersion},
             {"n", std::to_string(h.n_vertices)},
             {"edges", std::to_string(h.edges.size())},
             {"linear", shape.linear},
             {"tripartite", shape.tripartite},
             {"independent_sets", to_decimal(count)},
             {"elapsed", elapsed}};
      j["uniform_k"] = shape.uniform_k ? json(std::to_string(*shape.uniform_k)) : json(nullptr);
      j["regular_d"] = shape.regular_d ? json(std::to_string(*shape.regular_d)) : json(nullptr);
      if (shape.uniform_k && shape.regular_d) {
        const auto gap = conjecture_gap(h, count);
        j["conjecture"] = {{"lhs", gap.lhs}, {"rhs", gap.rhs}, {"margin", gap.margin}};
      }
      if (h.mod_order) {
        const BigInt lb = mod_lower_bound(*h.mod_order);
        j["lower_bound"] = to_decimal(lb);
        j["above_lower_bound"] = count >= lb;
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (dec->parsed()) {
      const GroupSpec g = make_group({dec_p});
      const auto [a, b] = sample_avoiding_pair(dec_p, a_density, b_density.value_or(a_density), dec_seed);
      const Decomposition d = dec_eta ? decompose_thick(g, a, b, thick_sumset(g, a, b, *dec_eta).complement(),
                                                        *dec_eta, dec_delta, dec_eps)
                                      : decompose(g, a, b, dec_delta, dec_eps);
      std::cout << to_json(d) << '\n';
      return d.all_ok() ? 0 : 1;
    }

    if (verify->parsed()) {
      const Env env = load_env(false);
      SuiteConfig cfg;
      cfg.cache_dir = env.runtime.cache_dir;
      cfg.batteries = batteries;
      cfg.seed = suite_seed;
      cfg.workers = env.runtime.workers;
      resolve_batteries(cfg.batteries);  // fail on unknown names before any work
      const SuiteReport rep = run_suite(cfg);
      for (const auto& entry : rep.cache_corrupt) {
        std::cerr << "warning: discarded corrupt cache entry " << entry << " (recomputed)\n";
      }
      const std::string text = report_json(rep);
      if (verify_out.empty()) {
        std::cout << text;
      } else {
        write_file(verify_out, text);
      }
      for (const auto& b : rep.batteries) {
        std::cerr << (b.passed() ? "pass " : "FAIL ") << b.name << ": " << b.checks << " checks, " << b.failures
                  << " failures (" << b.elapsed << " s)\n";
      }
      return rep.all_passed() ? 0 : 1;
    }

    if (analyze->parsed()) {
      if (!want_residuals && !want_fit && !want_gamma && !audit_p && !chernoff_p) want_residuals = want_fit = true;
      json j{{"schema", kReportSchemaVersion}};
      if (want_residuals || want_fit) {
        Env env = load_env(true);
        const auto results = cyclic_censuses(max_order, env);
        report_corruption(env);
        if (want_residuals) {
          auto& rows = j["residuals"] = json::array();
          for (const auto& r : results) {
            json row = residual_json(residuals(r));
            row["d"] = std::to_string(r.group.order());
            row["T"] = to_decimal(r.count);
            rows.push_back(row);
          }
        }
        if (want_fit) {
          const SlopeFit f = residual_fit(results);
          j["fit"] = fit_json(f);
          j["fit"]["below_3"] = f.fitted_base < 3.0;
        }
      }
      if (want_gamma) {
        const auto gp = gamma_optimize();
        j["gamma"] = {{"gamma_star", gp.gamma_star}, {"base", gp.base}, {"tol", gp.tol}};
      }
      if (audit_p) {
        const ProofAudit a = proof_audit(*audit_p, audit_m.value_or(*audit_p / 16));
        j["audit"] = {{"p", std::to_string(a.p)},
                      {"M", std::to_string(a.m)},
                      {"lhs", to_decimal(a.lhs)},
                      {"mid", a.mid.str(30, std::ios::scientific)},
                      {"final", to_decimal(numerator(a.final_bound) / denominator(a.final_bound))},
                      {"ok", a.ok()}};
      }
      if (chernoff_p) {
        const auto c = chernoff_experiment(*chernoff_p, chernoff_gamma, chernoff_trials,
                                           derive_seed(analyze_seed, "chernoff"));
        json tails = json::array();
        for (const auto& t : c.size_tails) {
          tails.push_back({{"lambda", t.params.lambda},
                           {"bound", t.params.bound},
                           {"frequency", t.frequency},
                           {"standard_error", t.standard_error},
                           {"ok", t.ok}});
        }
        json overlap_counts = json::array();
        for (auto n : c.overlap_tail_counts) overlap_counts.push_back(std::to_string(n));
        j["chernoff"] = {{"p", std::to_string(c.p)},
                         {"gamma", c.gamma},
                         {"trials", std::to_string(c.trials)},
                         {"size_mean", c.size_mean},
                         {"size_tails", tails},
                         {"overlap_mean", c.overlap_mean},
                         {"overlap_sd", c.overlap_sd},
                         {"overlap_expected", c.overlap_expected},
                         {"overlap_tail_counts", overlap_counts},
                         {"ok", c.ok()}};
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (report->parsed()) {
      Env env = load_env(true);
      const auto results = cyclic_censuses(report_order, env);
      report_corruption(env);
      std::ostringstream csv;
      csv << "group,N,T,R_lb,R1,R2,elapsed\n";
      for (const auto& r : results) {
        const auto res = residuals(r);
        csv << r.group.name() << ',' << r.group.order() << ',' << to_decimal(r.count) << ',' << to_decimal(res.r_lb)
            << ',' << to_decimal(res.r1) << ',' << to_decimal(res.r2) << ',' << r.elapsed << '\n';
      }
      write_file(csv_path, csv.str());
      std::cerr << "wrote " << results.size() << " rows to " << csv_path << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
