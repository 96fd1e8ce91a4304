#pragma once

/* Task dispatch behind the command-line driver. Pure function from a
 * validated RunConfig to a JSON report plus named CSV tables, all built in
 * memory; the driver only writes files and picks exit codes. Keeping the
 * dispatch side-effect free is what makes the determinism guarantee testable:
 * the same config and seed must produce byte-identical output.
 */

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "avedim/config.hpp"
#include "avedim/dimension.hpp"
#include "avedim/horseshoe.hpp"
#include "avedim/pressure.hpp"
#include "avedim/serialize.hpp"
#include "avedim/subshift.hpp"
#include "avedim/verification.hpp"

namespace avedim {

struct RunOutputs {
  nlohmann::json report;
  std::map<std::string, std::string> files;  // file name -> CSV contents
};

namespace detail {

inline SubshiftSpec spec_from_config(const RunConfig& cfg) {
  if (cfg.model_kind == "horseshoe")
    return SubshiftSpec::full_shift(static_cast<int>(cfg.expansions.size()));
  Eigen::MatrixXi t(cfg.alphabet, cfg.alphabet);
  for (int i = 0; i < cfg.alphabet; ++i)
    for (int j = 0; j < cfg.alphabet; ++j)
      t(i, j) = cfg.transitions[static_cast<std::size_t>(i * cfg.alphabet + j)];
  return SubshiftSpec(t);
}

inline MatrixCocycle cocycle_from_rows(const std::vector<std::vector<double>>& rows, int d,
                                       Bundle side) {
  std::vector<Eigen::MatrixXd> gens;
  for (const auto& entries : rows) {
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = entries[static_cast<std::size_t>(i * d + j)];
    gens.push_back(g);
  }
  return MatrixCocycle(d, std::move(gens), side);
}

inline nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j = {{"task", cfg.task}, {"threads", cfg.threads}};
  if (!cfg.model_kind.empty()) j["model"] = cfg.model_kind;
  if (cfg.model_kind == "horseshoe") {
    j["expansions"] = cfg.expansions;
    j["contractions"] = cfg.contractions;
    j["beta"] = json_number(cfg.beta);
  }
  if (cfg.model_kind == "matrix") {
    j["alphabet"] = cfg.alphabet;
    j["bundle_dim"] = cfg.bundle_dim;
  }
  if (cfg.task == "dim" || cfg.task == "pressure" || cfg.task == "sweep") {
    j["k_max"] = cfg.k_max;
    j["tol"] = json_number(cfg.tol);
  }
  if (cfg.has_seed) j["seed"] = cfg.seed;
  if (cfg.depth > 0) j["depth"] = cfg.depth;
  if (!cfg.scales.empty()) {
    nlohmann::json s = nlohmann::json::array();
    for (double v : cfg.scales) s.push_back(json_number(v));
    j["scales"] = s;
  }
  if (cfg.task == "pressure") {
    j["t"] = json_number(cfg.t_value);
    j["cost"] = cfg.cost;
  }
  if (cfg.task == "sweep") {
    j["sweep_from"] = json_number(cfg.sweep_from);
    j["sweep_to"] = json_number(cfg.sweep_to);
    j["sweep_step"] = json_number(cfg.sweep_step);
  }
  if (cfg.task == "holder") {
    j["expansions_b"] = cfg.expansions_b;
    j["contractions_b"] = cfg.contractions_b;
    j["pairs"] = cfg.pairs;
  }
  return j;
}

}  // namespace detail

inline RunOutputs run_task(const RunConfig& cfg) {
  validate_config(cfg);
  RunOutputs out;
  out.report["config"] = detail::config_echo(cfg);

  if (cfg.task == "verify") {
    const std::vector<CriterionResult> results = run_acceptance_suite();
    nlohmann::json rows = nlohmann::json::array();
    bool all = true;
    for (const CriterionResult& r : results) {
      rows.push_back({{"id", r.id},
                      {"name", r.name},
                      {"pass", r.pass},
                      {"detail", r.detail},
                      {"seconds", json_number(r.seconds)}});
      all = all && r.pass;
    }
    out.report["criteria"] = rows;
    out.report["all_passed"] = all;
    return out;
  }

  if (cfg.task == "entropy") {
    const SubshiftSpec spec = detail::spec_from_config(cfg);
    out.report["entropy"] = json_number(topological_entropy(spec));
    out.report["alphabet"] = spec.alphabet_size();
    return out;
  }

  if (cfg.task == "pressure") {
    const SubshiftSpec spec = detail::spec_from_config(cfg);
    const MatrixCocycle c =
        cfg.model_kind == "horseshoe"
            ? HorseshoeModel::linear(cfg.expansions, cfg.contractions, cfg.beta).unstable_cocycle()
            : detail::cocycle_from_rows(cfg.unstable_gen, cfg.bundle_dim, Bundle::Unstable);
    const CostKind kind = cfg.cost == "norm" ? CostKind::LogNorm : CostKind::LogConorm;
    nlohmann::json rows = nlohmann::json::array();
    std::string csv = "k,block_length,pressure\n";
    for (int k = 0; k <= cfg.k_max; ++k) {
      const PressureEstimate est = block_pressure(spec, c, cfg.t_value, k, kind);
      rows.push_back(est);
      csv += std::to_string(k) + "," + std::to_string(1 << k) + "," + format_number(est.value) + "\n";
    }
    out.report["estimates"] = rows;
    out.files["pressure_table.csv"] = csv;
    return out;
  }

  if (cfg.task == "dim") {
    DimensionReport rep = [&] {
      if (cfg.model_kind == "horseshoe")
        return horseshoe_dimension_report(
            HorseshoeModel::linear(cfg.expansions, cfg.contractions, cfg.beta), cfg.k_max, cfg.tol);
      const SubshiftSpec spec = detail::spec_from_config(cfg);
      return dimension_report(spec,
                              detail::cocycle_from_rows(cfg.unstable_gen, cfg.bundle_dim, Bundle::Unstable),
                              detail::cocycle_from_rows(cfg.stable_gen, cfg.bundle_dim, Bundle::Stable),
                              cfg.k_max, cfg.tol);
    }();

    // With a seeded sampling block the report gets an independent geometric
    // cross-check: a box-count slope on the sampled invariant set.
    if (cfg.model_kind == "horseshoe" && cfg.has_seed && cfg.depth > 0 && cfg.scales.size() >= 4) {
      const HorseshoeModel m = HorseshoeModel::linear(cfg.expansions, cfg.contractions, cfg.beta);
      const BoxCountResult boxes = box_count_reference(m, cfg.depth, cfg.seed, cfg.scales);
      rep.box_count_ref = boxes.slope;
      out.report["box_count"] = boxes;
      out.files["box_counts.csv"] = csv_to_string([&](std::ostream& os) { write_box_count_csv(os, boxes); });
    }
    out.report["dimension"] = rep;
    out.files["brackets_unstable.csv"] =
        csv_to_string([&](std::ostream& os) { write_brackets_csv(os, rep.unstable_brackets); });
    out.files["brackets_stable.csv"] =
        csv_to_string([&](std::ostream& os) { write_brackets_csv(os, rep.stable_brackets); });
    return out;
  }

  if (cfg.task == "boxcount") {
    const HorseshoeModel m = HorseshoeModel::linear(cfg.expansions, cfg.contractions, cfg.beta);
    const PointCloud cloud = sample_invariant_set(m, cfg.depth, cfg.seed);
    const BoxCountResult boxes = box_count(cloud, cfg.scales);
    out.report["box_count"] = boxes;
    out.report["points"] = cloud.points.size();
    out.report["resolution"] = json_number(cloud.resolution);
    out.files["box_counts.csv"] = csv_to_string([&](std::ostream& os) { write_box_count_csv(os, boxes); });
    if (cfg.emit_points)
      out.files["points.csv"] = csv_to_string([&](std::ostream& os) { write_points_csv(os, cloud); });
    return out;
  }

  if (cfg.task == "sweep") {
    std::vector<double> grid;
    for (double p = cfg.sweep_from; p <= cfg.sweep_to + 1e-12; p += cfg.sweep_step) grid.push_back(p);
    const std::size_t branches = cfg.contractions.size();
    const SweepResult sweep = continuity_sweep(grid, [&](double mu) {
      return horseshoe_dimension_report(
          HorseshoeModel::linear(std::vector<double>(branches, mu), cfg.contractions, cfg.beta),
          cfg.k_max, cfg.tol);
    });
    out.report["sweep"] = sweep;
    out.files["sweep.csv"] = csv_to_string([&](std::ostream& os) { write_sweep_csv(os, sweep); });
    return out;
  }

  // holder: validated above, the only remaining task
  const HorseshoeModel a = HorseshoeModel::linear(cfg.expansions, cfg.contractions, cfg.beta);
  const HorseshoeModel b = HorseshoeModel::linear(cfg.expansions_b, cfg.contractions_b, cfg.beta);
  const HolderFit fit = holder_exponent_fit(a, b, cfg.depth, cfg.pairs, cfg.seed);
  out.report["holder"] = fit;
  return out;
}

// Canonical on-disk rendering of the JSON report: stable key order via the
// ordered dump, two-space indent, trailing newline.
inline std::string render_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace avedim
