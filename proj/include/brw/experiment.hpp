#pragma once

// Batch runners behind the CLI subcommands. Each returns its CSV payloads as
// strings plus a manifest, so callers can write files or compare bytes.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "brw/brw_sim.hpp"
#include "brw/config.hpp"
#include "brw/error.hpp"
#include "brw/json_io.hpp"
#include "brw/limit_formulas.hpp"
#include "brw/limit_model.hpp"
#include "brw/parallel.hpp"
#include "brw/point_sample.hpp"
#include "brw/random.hpp"

namespace brw {

/// Round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void append_extremes(std::string& row, const Extremes& e, int k) {
  for (int j = 0; j < k; ++j) {
    row += ',';
    if (static_cast<std::size_t>(j) < e.order.size()) row += format_real(e.order[static_cast<std::size_t>(j)]);
  }
  for (int j = 0; j + 1 < k; ++j) {
    row += ',';
    if (static_cast<std::size_t>(j) < e.gaps.size()) row += format_real(e.gaps[static_cast<std::size_t>(j)]);
  }
  row += ',';
  if (e.minimum) row += format_real(*e.minimum);
}

inline void append_counts(std::string& row, const std::vector<std::uint64_t>& c) {
  for (auto v : c) {
    row += ',';
    row += std::to_string(v);
  }
}

inline std::string extremes_header(int k, std::size_t sets) {
  std::string h;
  for (int j = 1; j <= k; ++j) h += ",M" + std::to_string(j);
  for (int j = 1; j < k; ++j) h += ",G" + std::to_string(j);
  h += ",Mmin";
  for (std::size_t i = 1; i <= sets; ++i) h += ",count_A" + std::to_string(i);
  return h;
}

inline std::string hash_line(const std::string& hash) { return "# config_hash=" + hash + "\n"; }

inline Json base_manifest(const ExperimentConfig& cfg, const char* kind) {
  return {{"schema_version", kManifestSchemaVersion},
          {"kind", kind},
          {"config_hash", cfg.hash()},
          {"config", cfg.to_json()},
          {"software_version", kSoftwareVersion},
          {"generator", kGeneratorName},
          {"seed", cfg.seed}};
}

}  // namespace detail

inline std::string replicate_csv_header(int k, std::size_t sets) {
  return "replicate_id,n,population,w_proxy,restarts" + detail::extremes_header(k, sets) + "\n";
}

inline std::string replicate_csv_row(std::uint64_t id, const SimReplicate& rep, int k,
                                     std::span<const Interval> sets) {
  std::string row = std::to_string(id) + ',' + std::to_string(rep.n) + ',' +
                    std::to_string(rep.population) + ',' + format_real(rep.w_proxy) + ',' +
                    std::to_string(rep.restarts);
  detail::append_extremes(row, extremes(rep, static_cast<std::size_t>(k)), k);
  detail::append_counts(row, counts(rep.positions, sets));
  return row + '\n';
}

inline const char* kAtomCsvHeader = "source,sample_id,location,multiplicity\n";

inline std::string atom_csv_rows(const char* source, std::uint64_t id, const PointSample& s) {
  std::string out;
  for (const auto& a : s.atoms())
    out += std::string(source) + ',' + std::to_string(id) + ',' + format_real(a.location) + ',' +
           std::to_string(a.multiplicity) + '\n';
  return out;
}

struct RunOutput {
  std::string main_csv;   // replicates / limit summary / formulas
  std::string atoms_csv;  // empty unless atoms were requested
  Json manifest;
  bool complete = true;
};

/// Replicate ids run over the n list in order; replicate `id` draws from
/// stream (seed, simulate, id), so output is independent of thread count.
inline RunOutput run_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t total = cfg.replicates * cfg.n.size();
  std::vector<std::string> rows(total);
  std::vector<std::string> atoms(cfg.write_atoms ? total : 0);
  std::vector<std::string> failures(total);

  parallel_for(total, resolve_threads(cfg.threads), [&](std::size_t id) {
    SimOptions opt;
    opt.n = cfg.n[id / cfg.replicates];
    opt.window = cfg.window;
    opt.track_one_jump = cfg.track_one_jump;
    opt.caps = cfg.caps;
    auto rng = make_stream(cfg.seed, StreamTag::simulate, id);
    try {
      const auto rep = simulate_replicate(cfg.offspring, cfg.step, opt, rng);
      rows[id] = replicate_csv_row(id, rep, cfg.k, cfg.observables.sets);
      if (cfg.write_atoms) atoms[id] = atom_csv_rows("sim", id, rep.positions);
    } catch (const resource_error& e) {
      failures[id] = e.what();
    }
  });

  RunOutput out;
  const auto hash = cfg.hash();
  out.main_csv = detail::hash_line(hash) + replicate_csv_header(cfg.k, cfg.observables.sets.size());
  if (cfg.write_atoms) out.atoms_csv = detail::hash_line(hash) + kAtomCsvHeader;
  Json failed = Json::array();
  for (std::size_t id = 0; id < total; ++id) {
    if (!failures[id].empty()) {
      failed.push_back({{"replicate_id", id}, {"n", cfg.n[id / cfg.replicates]}, {"error", failures[id]}});
      continue;
    }
    out.main_csv += rows[id];
    if (cfg.write_atoms) out.atoms_csv += atoms[id];
  }
  out.complete = failed.empty();

  out.manifest = detail::base_manifest(cfg, "simulate");
  Json bn = Json::array();
  for (int n : cfg.n)
    bn.push_back({{"n", n}, {"b_n", scaling_constant(cfg.step, cfg.offspring.mean(), n)}});
  out.manifest["b_n"] = bn;
  out.manifest["limit_model"] = LimitModel(cfg.offspring, cfg.step).to_json();
  out.manifest["replicates_requested"] = total;
  out.manifest["replicates_written"] = total - failed.size();
  out.manifest["failed_replicates"] = failed;
  out.manifest["complete"] = out.complete;
  return out;
}

inline std::string limit_csv_header(int k, std::size_t sets) {
  return "source,sample_id,w,total_multiplicity" + detail::extremes_header(k, sets) + "\n";
}

/// Limit-process samples from the configured representation.
inline RunOutput run_limit_sample(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!(cfg.window > 0.0)) throw config_error("config: limit sampling needs window > 0");
  LimitModel model(cfg.offspring, cfg.step);
  if (cfg.verify.r_override) model = model.with_r(*cfg.verify.r_override);
  const LimitSampleConfig lcfg{cfg.window, cfg.limit.w_mode, cfg.limit.w_depth};
  const bool cox = cfg.limit.representation == "cox";
  const char* source = cox ? "cox" : "sscdppp";

  std::vector<std::string> rows(cfg.replicates);
  std::vector<std::string> atoms(cfg.write_atoms ? cfg.replicates : 0);
  std::vector<std::string> failures(cfg.replicates);
  parallel_for(cfg.replicates, resolve_threads(cfg.threads), [&](std::size_t id) {
    auto rng = make_stream(cfg.seed, StreamTag::limit, id);
    try {
      const double w = sample_w(model, lcfg, rng);
      const auto s = cox ? sample_limit_cox(model, lcfg, w, rng) : sample_limit_sscdppp(model, lcfg, w, rng);
      std::string row = std::string(source) + ',' + std::to_string(id) + ',' + format_real(w) + ',' +
                        std::to_string(s.total_multiplicity());
      detail::append_extremes(row, extremes(s, static_cast<std::size_t>(cfg.k)), cfg.k);
      detail::append_counts(row, counts(s, cfg.observables.sets));
      rows[id] = row + '\n';
      if (cfg.write_atoms) atoms[id] = atom_csv_rows(source, id, s);
    } catch (const resource_error& e) {
      failures[id] = e.what();
    }
  });

  RunOutput out;
  const auto hash = cfg.hash();
  out.main_csv = detail::hash_line(hash) + limit_csv_header(cfg.k, cfg.observables.sets.size());
  if (cfg.write_atoms) out.atoms_csv = detail::hash_line(hash) + kAtomCsvHeader;
  Json failed = Json::array();
  for (std::size_t id = 0; id < cfg.replicates; ++id) {
    if (!failures[id].empty()) {
      failed.push_back({{"sample_id", id}, {"error", failures[id]}});
      continue;
    }
    out.main_csv += rows[id];
    if (cfg.write_atoms) out.atoms_csv += atoms[id];
  }
  out.complete = failed.empty();
  out.manifest = detail::base_manifest(cfg, "limit-sample");
  out.manifest["limit_model"] = model.to_json();
  out.manifest["representation"] = source;
  out.manifest["w_mode"] = to_string(resolve_wmode(model, cfg.limit.w_mode));
  out.manifest["failed_replicates"] = failed;
  out.manifest["complete"] = out.complete;
  return out;
}

inline const char* kFormulaCsvHeader = "statistic,k,x,u,v,t,value,stderr,method\n";

/// Closed-form limit laws on the configured grids. For finite offspring and
/// statistics needing E*[W^m e^{-bW}], W is sampled (`replicates` draws).
inline RunOutput run_formulas(const ExperimentConfig& cfg) {
  cfg.validate();
  LimitModel model(cfg.offspring, cfg.step);
  if (cfg.verify.r_override) model = model.with_r(*cfg.verify.r_override);

  WLaw law = WLaw::exact_for(model);
  if (model.offspring().kind() == OffspringKind::finite &&
      (cfg.k > 1 || !cfg.observables.gap_t.empty())) {
    std::vector<double> w(std::max<std::size_t>(cfg.replicates, 1));
    parallel_for(w.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
      auto rng = make_stream(cfg.seed, StreamTag::w_samples, i);
      w[i] = model.sample_w_simulated(cfg.limit.w_depth, rng);
    });
    law = WLaw::samples(std::move(w));
  }

  const auto& grid = cfg.observables.grid;
  std::string csv = detail::hash_line(cfg.hash()) + kFormulaCsvHeader;
  auto row = [&](const char* stat, int k, const std::string& x, const std::string& u,
                 const std::string& v, const std::string& t, const Estimate& e, const char* method) {
    csv += std::string(stat) + ',' + std::to_string(k) + ',' + x + ',' + u + ',' + v + ',' + t + ',' +
           format_real(e.value) + ',' + format_real(e.std_error) + ',' + method + '\n';
  };

  for (double x : grid) row("maxima", 1, format_real(x), "", "", "", {maxima_cdf(model, x), 0.0}, "transform");
  for (double x : grid)
    row("minima", 1, format_real(x), "", "", "", minima_cdf(model, x), "transform");
  for (int k = 1; k <= cfg.k; ++k)
    for (double x : grid) row("order_stat", k, format_real(x), "", "", "", order_stat_cdf(model, k, x, law), law.method());
  for (int k = 1; k < cfg.k; ++k)
    for (double u : grid)
      for (double v : grid)
        if (u < v)
          row("joint_order", k, "", format_real(u), format_real(v), "", joint_order_cdf(model, k, u, v, law),
              law.method());
  for (int k = 1; k < cfg.k; ++k)
    for (double t : cfg.observables.gap_t) {
      const auto g = gap_survival(model, k, t, GapGrid{}, law);
      row("gap_survival", k, "", "", "", format_real(t), {g.formula, g.formula_error}, law.method());
    }

  RunOutput out;
  out.main_csv = std::move(csv);
  out.manifest = detail::base_manifest(cfg, "formulas");
  out.manifest["limit_model"] = model.to_json();
  out.manifest["w_law"] = law.method();
  out.manifest["complete"] = true;
  return out;
}

}  // namespace brw
