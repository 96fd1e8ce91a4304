#pragma once

/* End-to-end verification suite. Nine self-contained checks pin the library
 * against closed-form oracles and cross-module consistency at desk scale:
 * scalar Bowen roots, entropy values, bracket collapse for an eventually
 * conformal rotation-scale bundle, the persistent-defect detector, the
 * dimension formula against box counts on a concrete planar model, the
 * variational characterization of pressure, parameter continuity, conjugacy
 * exponent fits, and the additivity/ordering properties every product must
 * satisfy. Tolerances are frozen here on purpose; loosening one is a library
 * regression, not a tuning knob. Each check also carries a wall-clock budget
 * so a quadratic slip in a hot path fails loudly.
 */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "avedim/cocycle.hpp"
#include "avedim/dimension.hpp"
#include "avedim/horseshoe.hpp"
#include "avedim/pressure.hpp"
#include "avedim/subshift.hpp"

namespace avedim {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values on success, first failed check otherwise
  double seconds = 0.0;
};

namespace verify_detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Collects requirements; remembers the first violation and its message.
struct Check {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& msg) {
    if (ok && !cond) {
      ok = false;
      why = msg;
    }
  }
  void within(double got, double want, double tol, const std::string& what) {
    require(std::abs(got - want) <= tol,
            what + " = " + num(got) + ", expected " + num(want) + " within " + num(tol));
  }
};

inline MatrixCocycle scalar_cocycle(const std::vector<double>& rates, Bundle side) {
  std::vector<Eigen::MatrixXd> gens;
  for (double r : rates) {
    Eigen::MatrixXd g(1, 1);
    g(0, 0) = r;
    gens.push_back(g);
  }
  return MatrixCocycle(1, std::move(gens), side);
}

inline SubshiftSpec golden_mean() {
  Eigen::MatrixXi t(2, 2);
  t << 1, 1, 1, 0;
  return SubshiftSpec(t);
}

template <typename Fn>
CriterionResult run_criterion(int id, const std::string& name, double budget_seconds, Fn&& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  Check chk;
  std::string measured;
  const auto start = std::chrono::steady_clock::now();
  try {
    measured = body(chk);
  } catch (const std::exception& e) {
    chk.require(false, std::string("unexpected exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  chk.require(r.seconds < budget_seconds,
              "runtime " + num(r.seconds) + " s exceeded the " + num(budget_seconds) + " s budget");
  r.pass = chk.ok;
  r.detail = chk.ok ? measured : chk.why;
  return r;
}

inline CriterionResult criterion_closed_form_roots() {
  return run_criterion(1, "closed-form expansion roots", 2.0, [](Check& chk) {
    const SubshiftSpec full2 = SubshiftSpec::full_shift(2);

    auto t0 = std::chrono::steady_clock::now();
    const BracketTable constant = bracket_sequence(full2, scalar_cocycle({4.0, 4.0}, Bundle::Unstable), 0);
    const double sec_constant = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    chk.within(constant.final_lower, 0.5, 1e-9, "constant-rate root (norm side)");
    chk.within(constant.final_upper, 0.5, 1e-9, "constant-rate root (conorm side)");
    chk.require(sec_constant < 1.0, "constant-rate solve took " + num(sec_constant) + " s, budget 1 s");

    const double golden_root = std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::log(2.0);
    t0 = std::chrono::steady_clock::now();
    const BracketTable mixed = bracket_sequence(full2, scalar_cocycle({2.0, 4.0}, Bundle::Unstable), 0);
    const double sec_mixed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    chk.within(mixed.final_lower, golden_root, 1e-8, "mixed-rate root (norm side)");
    chk.within(mixed.final_upper, golden_root, 1e-8, "mixed-rate root (conorm side)");
    chk.require(sec_mixed < 1.0, "mixed-rate solve took " + num(sec_mixed) + " s, budget 1 s");

    return "roots " + num(constant.final_lower) + " and " + num(mixed.final_lower);
  });
}

inline CriterionResult criterion_entropy_oracles() {
  return run_criterion(2, "entropy oracles", 1.0, [](Check& chk) {
    const double h_full = topological_entropy(SubshiftSpec::full_shift(2));
    const double h_golden = topological_entropy(golden_mean());
    chk.within(h_full, std::log(2.0), 1e-10, "full 2-shift entropy");
    chk.within(h_golden, 0.4812118250596035, 1e-10, "golden-mean entropy");
    return "entropies " + num(h_full) + " and " + num(h_golden);
  });
}

inline CriterionResult criterion_rotation_scale_brackets() {
  return run_criterion(3, "rotation-scale bracket collapse", 5.0, [](Check& chk) {
    const SubshiftSpec full2 = SubshiftSpec::full_shift(2);
    Eigen::MatrixXd m(2, 2);
    m << 0.0, -8.0, 2.0, 0.0;  // quarter turn composed with diag(2, 8)
    const MatrixCocycle c(2, {m, m}, Bundle::Unstable);

    const BracketTable table = bracket_sequence(full2, c, 3);
    chk.require(table.rows.size() == 4, "bracket table should have 4 rows");
    for (const BracketRow& row : table.rows)
      chk.require(row.lower_ok && row.upper_ok,
                  "row k=" + std::to_string(row.k) + " is missing a side");
    chk.within(table.rows[0].t_lower, 1.0 / 3.0, 1e-8, "single-step norm-side root");
    chk.within(table.rows[0].t_upper, 1.0, 1e-8, "single-step conorm-side root");
    for (std::size_t k = 1; k < table.rows.size(); ++k) {
      chk.within(table.rows[k].t_lower, 0.5, 1e-8,
                 "norm-side root at block length " + std::to_string(1 << k));
      chk.within(table.rows[k].t_upper, 0.5, 1e-8,
                 "conorm-side root at block length " + std::to_string(1 << k));
    }

    double worst = 0.0;
    for (int n = 2; n <= 12; n += 2) {
      const DefectCertificate cert = conformality_defect(c, full2, n);
      chk.require(std::abs(cert.defect) <= 1e-12,
                  "defect at even length " + std::to_string(n) + " is " + num(cert.defect));
      worst = std::max(worst, std::abs(cert.defect));
    }
    return "brackets collapse to 0.5; worst even-length defect " + num(worst);
  });
}

inline CriterionResult criterion_defect_detector() {
  return run_criterion(4, "persistent-defect detector", 30.0, [](Check& chk) {
    const SubshiftSpec full2 = SubshiftSpec::full_shift(2);
    Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(2, 2), a1 = Eigen::MatrixXd::Zero(2, 2);
    a0.diagonal() << 3.0, 4.0;
    a1.diagonal() << 4.0, 3.0;
    const MatrixCocycle unstable(2, {a0, a1}, Bundle::Unstable);
    const MatrixCocycle stable(2, {a0.inverse(), a1.inverse()}, Bundle::Stable);

    const double floor_value = std::log(4.0 / 3.0) - 1e-9;
    for (int n = 1; n <= 12; ++n) {
      const DefectCertificate cert = conformality_defect(unstable, full2, n);
      chk.require(cert.defect >= floor_value,
                  "defect at length " + std::to_string(n) + " dropped to " + num(cert.defect));
    }

    const DimensionReport rep = dimension_report(full2, unstable, stable, 4);
    const double gap = rep.dim_upper - rep.dim_lower;
    chk.require(gap > 0.05, "bracket gap " + num(gap) + " should exceed 0.05");
    const double gap_u = rep.unstable_brackets.final_upper - rep.unstable_brackets.final_lower;
    const double gap_s = rep.stable_brackets.final_upper - rep.stable_brackets.final_lower;
    chk.require(gap_u > 0.02, "unstable bracket gap " + num(gap_u) + " should exceed 0.02");
    chk.require(gap_s > 0.02, "stable bracket gap " + num(gap_s) + " should exceed 0.02");

    int flagged = 0;
    for (const std::string& f : rep.flags)
      if (f.find("not average conformal") != std::string::npos) ++flagged;
    chk.require(flagged == 2, "expected both bundles flagged, got " + std::to_string(flagged));
    return "gap " + num(gap) + " at block length 16, both bundles flagged";
  });
}

inline CriterionResult criterion_horseshoe_dimension() {
  return run_criterion(5, "horseshoe dimension vs box counts", 60.0, [](Check& chk) {
    const HorseshoeModel m = HorseshoeModel::linear({3.0, 3.0}, {0.2, 0.2});
    const DimensionReport rep = horseshoe_dimension_report(m, 2);
    const double dim_u = std::log(2.0) / std::log(3.0);
    const double dim_s = std::log(2.0) / std::log(5.0);
    chk.within(rep.dim_total, dim_u + dim_s, 1e-8, "report dimension");
    chk.require(rep.certified, "hyperbolicity certificates missing on a linear model");

    std::vector<double> dyadic;
    for (int j = 6; j <= 14; ++j) dyadic.push_back(std::ldexp(1.0, -j));
    const PointCloud cloud = sample_invariant_set(m, 11, 20260815u);
    chk.require(cloud.points.size() >= 100000,
                "sampled cloud has only " + std::to_string(cloud.points.size()) + " points");
    const BoxCountResult full = box_count(cloud, dyadic);
    chk.within(full.slope, rep.dim_total, 0.05, "full-set box-count slope");

    std::vector<double> triadic, pentadic;
    for (int j = 2; j <= 8; ++j) triadic.push_back(std::pow(3.0, -j));
    for (int j = 2; j <= 6; ++j) pentadic.push_back(std::pow(5.0, -j));

    const std::vector<Word> pasts = {{0}, {1}, {0, 1}};
    std::vector<BoxCountResult> slices;
    for (const Word& past : pasts) {
      slices.push_back(box_count(sample_unstable_slice(m, past, 12), triadic));
      chk.within(slices.back().slope, dim_u, 0.03, "unstable slice slope");
    }
    for (std::size_t i = 0; i < slices.size(); ++i)
      for (std::size_t j = i + 1; j < slices.size(); ++j) {
        const double band = 2.0 * (slices[i].slope_stderr + slices[j].slope_stderr) + 1e-12;
        chk.require(std::abs(slices[i].slope - slices[j].slope) <= band,
                    "slice slopes over distinct pasts differ beyond two standard errors");
      }

    const BoxCountResult stable_slice = box_count(sample_stable_slice(m, {0}, 12), pentadic);
    chk.within(stable_slice.slope, dim_s, 0.03, "stable slice slope");

    return "report " + num(rep.dim_total) + ", box slope " + num(full.slope) + ", slices " +
           num(slices[0].slope) + " / " + num(stable_slice.slope);
  });
}

inline CriterionResult criterion_variational_principle() {
  return run_criterion(6, "variational principle", 30.0, [](Check& chk) {
    const SubshiftSpec full2 = SubshiftSpec::full_shift(2);
    const SubshiftSpec golden = golden_mean();
    Eigen::MatrixXd phi_full(2, 2), phi_golden(2, 2);
    phi_full << 0.3, -0.7, 1.1, 0.2;
    phi_golden << 0.2, -0.3, 0.5, 0.0;  // (1,1) entry rides on a forbidden edge

    const VariationalResult v_full = variational_gap(full2, phi_full);
    chk.require(v_full.gap >= -1e-9, "optimizer exceeded the pressure on the full shift");
    chk.require(v_full.gap <= 1e-4, "full-shift optimizer gap " + num(v_full.gap) + " above 1e-4");
    const VariationalResult v_golden = variational_gap(golden, phi_golden);
    chk.require(v_golden.gap >= -1e-9, "optimizer exceeded the pressure on the golden-mean shift");
    chk.require(v_golden.gap <= 1e-4,
                "golden-mean optimizer gap " + num(v_golden.gap) + " above 1e-4");

    std::mt19937_64 rng(20260815u);
    int tested = 0;
    const std::pair<const SubshiftSpec*, const Eigen::MatrixXd*> cases[] = {{&full2, &phi_full},
                                                                            {&golden, &phi_golden}};
    for (const auto& [spec, phi] : cases) {
      const double pressure = additive_pressure(*spec, *phi).value;
      for (int i = 0; i < 500; ++i) {
        const MarkovMeasure mu = random_markov_measure(*spec, rng);
        const double value = markov_entropy(mu) + integrate_edge_function(mu, *phi);
        chk.require(value <= pressure + 1e-9,
                    "random measure value " + num(value) + " exceeds pressure " + num(pressure));
        ++tested;
      }
    }
    chk.require(tested == 1000, "expected 1000 random measures");
    return "gaps " + num(v_full.gap) + " and " + num(v_golden.gap) +
           "; 1000 random measures below pressure";
  });
}

inline CriterionResult criterion_parameter_continuity() {
  return run_criterion(7, "parameter continuity", 60.0, [](Check& chk) {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(3.0 + 0.05 * i);
    const SweepResult sweep = continuity_sweep(grid, [](double mu) {
      return horseshoe_dimension_report(HorseshoeModel::linear({mu, mu}, {0.2, 0.2}), 1);
    });
    chk.require(sweep.points.size() == 41, "expected 41 sweep points");
    for (const SweepPoint& p : sweep.points)
      chk.require(p.ok, "sweep failed at parameter " + num(p.parameter) + ": " + p.error);
    chk.require(sweep.max_jump <= 0.02, "max adjacent jump " + num(sweep.max_jump) + " above 0.02");
    for (std::size_t i = 0; i + 1 < sweep.points.size(); ++i)
      chk.require(sweep.points[i + 1].dim_total < sweep.points[i].dim_total + 1e-12,
                  "dimension failed to decrease at parameter " + num(sweep.points[i + 1].parameter));
    return "41 points, max adjacent jump " + num(sweep.max_jump) + ", monotone decreasing";
  });
}

inline CriterionResult criterion_conjugacy_exponent() {
  return run_criterion(8, "conjugacy exponent", 30.0, [](Check& chk) {
    const HorseshoeModel a = HorseshoeModel::linear({3.0, 3.0}, {0.25, 0.25});
    const HorseshoeModel b = HorseshoeModel::linear({3.3, 3.3}, {0.25, 0.25});
    const HolderFit fit = holder_exponent_fit(a, b, 12, 2000, 20260815u);
    chk.within(fit.r_lower, std::log(3.0) / std::log(3.3), 0.03, "fitted exponent");
    const HolderFit self = holder_exponent_fit(a, a, 12, 2000, 20260815u);
    chk.within(self.r_lower, 1.0, 0.01, "self-conjugacy exponent");
    return "exponent " + num(fit.r_lower) + ", self " + num(self.r_lower);
  });
}

inline CriterionResult criterion_product_properties() {
  return run_criterion(9, "additivity and ordering properties", 60.0, [](Check& chk) {
    const SubshiftSpec spec = golden_mean();
    Eigen::MatrixXd g0(2, 2), g1(2, 2);
    g0 << 2.0, 0.4, 0.1, 1.5;
    g1 << 1.8, -0.3, 0.2, 2.2;
    const MatrixCocycle c(2, {g0, g1}, Bundle::Unstable);

    std::mt19937_64 rng(7u);
    std::uniform_int_distribution<int> len_draw(1, 10);
    auto random_word = [&](int first, int length) {
      Word w{first};
      while (static_cast<int>(w.size()) < length) {
        std::vector<int> next;
        for (int s = 0; s < spec.alphabet_size(); ++s)
          if (spec.edge(w.back(), s)) next.push_back(s);
        w.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
      }
      return w;
    };
    auto sandwich = [&](const SingularStats& s, const char* what) {
      chk.require(s.log_conorm - 1e-9 <= s.log_abs_det / 2.0 &&
                      s.log_abs_det / 2.0 <= s.log_norm + 1e-9,
                  std::string("determinant left the conorm-norm sandwich on a ") + what);
    };

    std::uniform_int_distribution<int> start_draw(0, spec.alphabet_size() - 1);
    double worst_sub = -kNegInf, worst_super = -kNegInf;
    for (int trial = 0; trial < 10000; ++trial) {
      const Word u = random_word(start_draw(rng), len_draw(rng));
      std::vector<int> succ;
      for (int s = 0; s < spec.alphabet_size(); ++s)
        if (spec.edge(u.back(), s)) succ.push_back(s);
      const Word v =
          random_word(succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)],
                      len_draw(rng));
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());

      const SingularStats su = product_stats(c, u), sv = product_stats(c, v),
                          suv = product_stats(c, uv);
      const double sub_slack = su.log_norm + sv.log_norm - suv.log_norm;
      const double super_slack = suv.log_conorm - su.log_conorm - sv.log_conorm;
      chk.require(sub_slack >= -1e-10, "norm sub-additivity slack " + num(sub_slack));
      chk.require(super_slack >= -1e-10, "conorm super-additivity slack " + num(super_slack));
      worst_sub = std::min(worst_sub, sub_slack);
      worst_super = std::min(worst_super, super_slack);
      sandwich(su, "left factor");
      sandwich(sv, "right factor");
      sandwich(suv, "concatenated product");
    }

    const BlockPressure decreasing(spec, c, CostKind::LogNorm, 4);
    double prev = decreasing.pressure(0.0);
    for (int i = 1; i < 50; ++i) {
      const double value = decreasing.pressure(0.05 * i);
      chk.require(value < prev, "pressure failed to decrease at t = " + num(0.05 * i));
      prev = value;
    }

    for (int k = 0; k <= 3; ++k) {
      const BlockPressure lower(spec, c, CostKind::LogNorm, 1 << k);
      const BlockPressure upper(spec, c, CostKind::LogConorm, 1 << k);
      for (int i = 0; i <= 8; ++i) {
        const double t = 0.25 * i;
        chk.require(lower.pressure(t) <= upper.pressure(t) + 1e-9,
                    "norm-cost pressure exceeded conorm-cost pressure at block length " +
                        std::to_string(1 << k) + ", t = " + num(t));
      }
    }
    return "10000 word pairs; worst slacks " + num(worst_sub) + " (sub), " + num(worst_super) +
           " (super); pressure ordering holds";
  });
}

}  // namespace verify_detail

inline std::vector<CriterionResult> run_acceptance_suite() {
  return {verify_detail::criterion_closed_form_roots(),
          verify_detail::criterion_entropy_oracles(),
          verify_detail::criterion_rotation_scale_brackets(),
          verify_detail::criterion_defect_detector(),
          verify_detail::criterion_horseshoe_dimension(),
          verify_detail::criterion_variational_principle(),
          verify_detail::criterion_parameter_continuity(),
          verify_detail::criterion_conjugacy_exponent(),
          verify_detail::criterion_product_properties()};
}

}  // namespace avedim
