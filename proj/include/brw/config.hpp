#pragma once

// ExperimentConfig: one JSON document describing a reproducible run.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brw/brw_sim.hpp"
#include "brw/error.hpp"
#include "brw/json_io.hpp"
#include "brw/limit_formulas.hpp"
#include "brw/limit_model.hpp"
#include "brw/offspring.hpp"
#include "brw/point_sample.hpp"
#include "brw/stats.hpp"
#include "brw/steps.hpp"

namespace brw {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr const char* kSoftwareVersion = "brwlab 1.0.0";

struct ObservablesConfig {
  std::vector<Interval> sets = default_count_partition();
  std::vector<double> grid = {0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<double> gap_t = {0.25, 0.5, 1.0, 2.0};
  std::vector<StepFunction> g = {
      StepFunction{{{{0.5, 1.0}, 0.3}, {{1.0, 2.0}, 0.7}, {{2.0, kInf}, 1.2}, {{-kInf, -1.0}, 0.5}}},
      StepFunction{{{{1.0, kInf}, 2.0}, {{-kInf, -0.5}, 0.25}}}};
};

struct LimitConfig {
  std::string representation = "cox";  // cox | sscdppp
  WMode w_mode = WMode::automatic;
  int w_depth = 16;
};

struct VerifyConfig {
  double scale = 1.0;               // multiplies replicate counts
  std::optional<double> r_override; // mutation hook
  std::vector<int> criteria;        // empty: all
};

struct ExperimentConfig {
  OffspringDistribution offspring = OffspringDistribution::geometric(0.5);
  StepDistribution step{1.0, 1.0};
  std::vector<int> n = {14};
  std::size_t replicates = 1000;
  double window = 0.05;
  int k = 3;
  ObservablesConfig observables;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  std::string out = "out";
  bool track_one_jump = false;
  bool write_atoms = false;
  SimCaps caps;
  LimitConfig limit;
  VerifyConfig verify;

  /// Everything that influences results; threads and out are excluded so
  /// the hash is stable across machines and output locations.
  Json experiment_json() const {
    Json sets = Json::array();
    for (const auto& s : observables.sets) sets.push_back(brw::to_json(s));
    Json gs = Json::array();
    for (const auto& g : observables.g) gs.push_back(brw::to_json(g));
    Json verify_json = {{"scale", verify.scale}, {"criteria", verify.criteria}};
    verify_json["r_override"] = verify.r_override ? Json(*verify.r_override) : Json(nullptr);
    return {{"offspring", brw::to_json(offspring)},
            {"step", brw::to_json(step)},
            {"n", n},
            {"replicates", replicates},
            {"window", window},
            {"k", k},
            {"observables",
             {{"sets", sets}, {"grid", observables.grid}, {"gap_t", observables.gap_t}, {"g", gs}}},
            {"seed", seed},
            {"track_one_jump", track_one_jump},
            {"write_atoms", write_atoms},
            {"caps", {{"population", caps.population}, {"restarts", caps.restarts}}},
            {"limit",
             {{"representation", limit.representation},
              {"w_mode", to_string(limit.w_mode)},
              {"w_depth", limit.w_depth}}},
            {"verify", verify_json}};
  }

  Json to_json() const {
    Json j = experiment_json();
    j["threads"] = threads;
    j["out"] = out;
    return j;
  }

  std::string hash() const { return config_hash(experiment_json()); }

  static ExperimentConfig from_json(const Json& j) {
    ExperimentConfig c;
    try {
      if (j.contains("offspring")) c.offspring = offspring_from_json(j.at("offspring"));
      if (j.contains("step")) c.step = step_from_json(j.at("step"));
      if (j.contains("n")) {
        const auto& n = j.at("n");
        c.n = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
      }
      c.replicates = j.value("replicates", c.replicates);
      c.window = j.value("window", c.window);
      c.k = j.value("k", c.k);
      c.seed = j.value("seed", c.seed);
      c.threads = j.value("threads", c.threads);
      c.out = j.value("out", c.out);
      c.track_one_jump = j.value("track_one_jump", c.track_one_jump);
      c.write_atoms = j.value("write_atoms", c.write_atoms);
      if (j.contains("observables")) {
        const auto& o = j.at("observables");
        if (o.contains("sets")) {
          c.observables.sets.clear();
          for (const auto& s : o.at("sets")) c.observables.sets.push_back(interval_from_json(s));
        }
        if (o.contains("grid")) c.observables.grid = o.at("grid").get<std::vector<double>>();
        if (o.contains("gap_t")) c.observables.gap_t = o.at("gap_t").get<std::vector<double>>();
        if (o.contains("g")) {
          c.observables.g.clear();
          for (const auto& g : o.at("g")) c.observables.g.push_back(step_function_from_json(g));
        }
      }
      if (j.contains("caps")) {
        c.caps.population = j.at("caps").value("population", c.caps.population);
        c.caps.restarts = j.at("caps").value("restarts", c.caps.restarts);
      }
      if (j.contains("limit")) {
        const auto& l = j.at("limit");
        c.limit.representation = l.value("representation", c.limit.representation);
        if (l.contains("w_mode")) c.limit.w_mode = wmode_from_string(l.at("w_mode").get<std::string>());
        c.limit.w_depth = l.value("w_depth", c.limit.w_depth);
      }
      if (j.contains("verify")) {
        const auto& v = j.at("verify");
        c.verify.scale = v.value("scale", c.verify.scale);
        if (v.contains("r_override") && !v.at("r_override").is_null())
          c.verify.r_override = v.at("r_override").get<double>();
        if (v.contains("criteria")) c.verify.criteria = v.at("criteria").get<std::vector<int>>();
      }
    } catch (const Json::exception& e) {
      throw config_error(std::string("config: ") + e.what());
    }
    return c;
  }

  /// Checks every precondition the subcommands rely on, before any work.
  void validate() const {
    auto fail = [](const std::string& m) { throw config_error("config: " + m); };
    if (n.empty()) fail("n must list at least one generation");
    for (int g : n)
      if (g < 1) fail("every n must be >= 1");
    if (!(window >= 0.0)) fail("window must be >= 0");
    if (k < 1 || k > kMaxOrderStatistic) fail("k must lie in [1, 20]");
    if (caps.population < 1 || caps.population > 0xFFFFFFFFULL) fail("caps.population out of range");
    if (limit.representation != "cox" && limit.representation != "sscdppp")
      fail("limit.representation must be cox or sscdppp");
    if (limit.w_depth < 1) fail("limit.w_depth must be >= 1");
    if (!(verify.scale > 0.0)) fail("verify.scale must be > 0");
    if (verify.r_override && !(*verify.r_override > 0.0)) fail("verify.r_override must be > 0");
    for (int id : verify.criteria)
      if (id < 1 || id > 10) fail("verify.criteria ids must lie in 1..10");
    try {
      PointSample probe(window);
      (void)counts(probe, observables.sets);
      for (const auto& g : observables.g) {
        g.validate();
        (void)integrate(probe, g);
      }
      LimitModel model(offspring, step);
      LimitSampleConfig{window > 0.0 ? window : 1.0, limit.w_mode, limit.w_depth}.validate(model);
    } catch (const domain_error& e) {
      fail(e.what());
    }
    for (double x : observables.grid)
      if (!(x > 0.0)) fail("observables.grid values must be > 0");
    for (double t : observables.gap_t)
      if (!(t >= 0.0)) fail("observables.gap_t values must be >= 0");
  }
};

}  // namespace brw
