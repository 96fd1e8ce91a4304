#pragma once

/* Bowen-equation machinery: root solving for monotone pressure functions,
 * the dyadic bracket sequences, and the dimension report.
 *
 * For each block exponent k the norm-cost root is a lower estimate and the
 * conorm-cost root an upper one; doubling the block length tightens both
 * (sub/super-multiplicativity of singular values). The unstable dimension is
 * the norm-side root, the defining equation of the expanding bundle. The
 * stable dimension solves the pressure equation for t log ||Df^n|E^s||; in
 * terms of the inverse cocycle over the transposed coding this is exactly
 * the conorm-side equation, since ||A|| = 1/m(A^{-1}) and word reversal is a
 * bijection on admissible words. So one machine serves both bundles.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avedim/cocycle.hpp"
#include "avedim/common.hpp"
#include "avedim/pressure.hpp"
#include "avedim/subshift.hpp"

namespace avedim {

struct BowenRoot {
  double t = 0.0;
  double lo = 0.0, hi = 0.0;  // final bracket: pressure > 0 at lo, <= 0 at hi
  double residual = 0.0;      // |pressure(t)|
  int level = 0;              // block exponent or cylinder level of the scheme
  std::string scheme;
};

// Bisection root of a strictly decreasing pressure function. The hint is
// widened geometrically (up to 2^10 times) if pressure is still positive at
// its right end; monotonicity is spot-checked on 5 samples first.
inline BowenRoot bowen_root(const std::function<double(double)>& pressure,
                            std::pair<double, double> bracket_hint, double tol = 1e-10) {
  double lo = bracket_hint.first;
  double hi = bracket_hint.second;
  if (!(lo >= 0.0) || !(hi > lo)) throw DomainError("dimension: bowen_root: need 0 <= lo < hi");
  if (!(tol > 0.0)) throw DomainError("dimension: bowen_root: tolerance must be positive");

  const double p_lo = pressure(lo);
  if (p_lo <= 0.0) {
    if (lo == 0.0 && p_lo >= -1e-12) {
      // Zero-entropy coding: the unique root sits at t = 0.
      return {0.0, 0.0, 0.0, std::abs(p_lo), 0, ""};
    }
    throw DomainError("dimension: bowen_root: pressure is not positive at the bracket's low end");
  }
  const double width = hi - lo;
  int doublings = 0;
  while (pressure(hi) >= 0.0) {
    if (++doublings > 10)
      throw DomainError("dimension: bowen_root: no sign change after expanding the bracket 2^10-fold; potential not coercive");
    hi = lo + width * (1 << doublings);
  }

  // Strict decrease spot check.
  double prev = p_lo;
  for (int i = 1; i <= 4; ++i) {
    const double v = pressure(lo + (hi - lo) * i / 4.0);
    if (v > prev + 1e-12 * std::max(1.0, std::abs(prev)))
      throw DomainError("dimension: bowen_root: pressure samples are not decreasing on the bracket");
    prev = v;
  }

  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pressure(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  BowenRoot r;
  r.t = 0.5 * (lo + hi);
  r.lo = lo;
  r.hi = hi;
  r.residual = std::abs(pressure(r.t));
  return r;
}

struct BracketRow {
  int k = 0;
  double t_lower = 0.0;  // norm-cost root
  double t_upper = 0.0;  // conorm-cost root
  // A side is unavailable (NaN) when its pressure is not coercive at this
  // block length; happens below the length at which uniform growth kicks in.
  bool lower_ok = true, upper_ok = true;
};

struct BracketTable {
  std::vector<BracketRow> rows;
  double final_lower = 0.0, final_upper = 0.0;  // certified interval at k_max
  std::vector<std::string> notes;                // one entry per unavailable row side
};

namespace detail {

struct BundleBrackets {
  BracketTable table;
  BowenRoot lower_root;  // at k_max, norm side
  BowenRoot upper_root;  // at k_max, conorm side
};

// Runs the dyadic scheme on an expanding-side cocycle. The label names the
// bundle in scheme strings and error messages.
inline BundleBrackets bundle_brackets(const SubshiftSpec& spec, const MatrixCocycle& c, int k_max,
                                      double tol, const Limits& limits, const std::string& label) {
  if (c.orientation() != Bundle::Unstable)
    throw DomainError("dimension: bracket scheme expects the expanding-side cocycle (" + label +
                      "); invert a contracting bundle first");
  if (k_max < 0 || k_max > 30) throw DomainError("dimension: bracket scheme: k_max must lie in [0, 30]");
  const std::pair<double, double> hint{0.0, 2.0 * c.bundle_dim()};

  BundleBrackets out;
  for (int k = 0; k <= k_max; ++k) {
    const int len = 1 << k;
    const double count = spec.admissible_word_count(len);
    if (count > static_cast<double>(limits.word_budget)) {
      const int feasible = max_feasible_block_exponent(spec, limits);
      throw ResourceError("dimension: bracket scheme: blocks of length 2^" + std::to_string(k) + " need " +
                          std::to_string(count) + " words, over the budget of " +
                          std::to_string(limits.word_budget) + "; largest feasible block exponent is " +
                          std::to_string(feasible));
    }
    const BlockPressure lower_bp(spec, c, CostKind::LogNorm, len, limits);
    const BlockPressure upper_bp(spec, c, CostKind::LogConorm, len, limits);

    // Below k_max a non-coercive side is recorded as unavailable and the
    // scheme moves on; at k_max both roots must exist for the interval to
    // mean anything, so failures there propagate.
    BracketRow row;
    row.k = k;
    const auto solve = [&](const BlockPressure& bp, const char* side, double& t_out, bool& ok_out) {
      try {
        BowenRoot root = bowen_root([&](double t) { return bp.pressure(t); }, hint, tol);
        root.level = k;
        root.scheme = label + " block-2^" + std::to_string(k) + " " + side + " side";
        t_out = root.t;
        ok_out = true;
        return root;
      } catch (const DomainError& e) {
        if (k == k_max) throw;
        t_out = std::numeric_limits<double>::quiet_NaN();
        ok_out = false;
        out.table.notes.push_back(label + " " + side + " root unavailable at k=" + std::to_string(k) +
                                  ": " + e.what());
        return BowenRoot{};
      }
    };
    BowenRoot lo = solve(lower_bp, "norm", row.t_lower, row.lower_ok);
    BowenRoot up = solve(upper_bp, "conorm", row.t_upper, row.upper_ok);
    out.table.rows.push_back(row);
    if (k == k_max) {
      out.lower_root = std::move(lo);
      out.upper_root = std::move(up);
    }
  }
  out.table.final_lower = out.table.rows.back().t_lower;
  out.table.final_upper = out.table.rows.back().t_upper;
  return out;
}

}  // namespace detail

inline BracketTable bracket_sequence(const SubshiftSpec& spec, const MatrixCocycle& unstable, int k_max,
                                     double tol = 1e-10, const Limits& limits = {}) {
  return detail::bundle_brackets(spec, unstable, k_max, tol, limits, "unstable").table;
}

struct DimensionReport {
  BowenRoot t_u;  // norm-side root of the expanding bundle at k_max
  BowenRoot t_s;  // root of the pressure equation for t log ||Df^n|E^s||
  double dim_total = 0.0;
  double dim_lower = 0.0, dim_upper = 0.0;  // sums of the bracket interval ends

  BracketTable unstable_brackets;
  BracketTable stable_brackets;  // in inverse-machinery coordinates; see header comment

  DefectCertificate unstable_defect, stable_defect;  // at the largest block length
  HyperbolicityCertificate unstable_expansion, stable_contraction;

  bool certified = false;  // both hyperbolicity certificates found
  std::vector<std::string> flags;

  int k_max = 0;
  double tol = 0.0;
  std::optional<double> box_count_ref;  // filled in by geometric cross-checks
};

// Flags a bundle whose worst-case defect does not visibly decay between the
// two largest tested block lengths. Heuristic by design: a certificate of
// average conformality, not a proof; raw defect numbers ride along.
inline bool defect_decays(double at_half, double at_full) { return at_full <= 0.6 * at_half + 1e-9; }

inline DimensionReport dimension_report(const SubshiftSpec& spec, const MatrixCocycle& unstable,
                                        const MatrixCocycle& stable, int k_max, double tol = 1e-10,
                                        const Limits& limits = {}) {
  if (unstable.orientation() != Bundle::Unstable)
    throw DomainError("dimension: dimension_report: first cocycle must be the unstable bundle");
  if (stable.orientation() != Bundle::Stable)
    throw DomainError("dimension: dimension_report: second cocycle must be the stable bundle");
  detail::require_matching_cocycle(spec, unstable, "dimension: dimension_report");
  detail::require_matching_cocycle(spec, stable, "dimension: dimension_report");

  DimensionReport r;
  r.k_max = k_max;
  r.tol = tol;

  detail::BundleBrackets u = detail::bundle_brackets(spec, unstable, k_max, tol, limits, "unstable");
  detail::BundleBrackets s =
      detail::bundle_brackets(spec.transposed(), stable.inverse(), k_max, tol, limits, "stable");

  r.t_u = std::move(u.lower_root);
  r.t_s = std::move(s.upper_root);  // conorm side of the inverse = t log ||Df^n|E^s||
  r.t_s.scheme = "stable block-2^k via inverse cocycle";
  r.unstable_brackets = std::move(u.table);
  r.stable_brackets = std::move(s.table);
  r.dim_total = r.t_u.t + r.t_s.t;
  r.dim_lower = r.unstable_brackets.final_lower + r.stable_brackets.final_lower;
  r.dim_upper = r.unstable_brackets.final_upper + r.stable_brackets.final_upper;

  const int len = 1 << k_max;
  r.unstable_defect = conformality_defect(unstable, spec, len, limits);
  r.stable_defect = conformality_defect(stable, spec, len, limits);
  r.unstable_expansion = hyperbolicity_certificate(unstable, spec, 8, limits);
  r.stable_contraction = hyperbolicity_certificate(stable, spec, 8, limits);

  r.certified = r.unstable_expansion.certified && r.stable_contraction.certified;
  if (!r.unstable_expansion.certified)
    r.flags.push_back("uncertified: no uniform-expansion certificate for the unstable bundle up to block length 8");
  if (!r.stable_contraction.certified)
    r.flags.push_back("uncertified: no uniform-contraction certificate for the stable bundle up to block length 8");
  if (!r.unstable_brackets.notes.empty() || !r.stable_brackets.notes.empty())
    r.flags.push_back("bracket table incomplete below the top block length; see the table notes");

  if (k_max >= 1) {
    const DefectCertificate u_half = conformality_defect(unstable, spec, len / 2, limits);
    const DefectCertificate s_half = conformality_defect(stable, spec, len / 2, limits);
    if (!defect_decays(u_half.defect, r.unstable_defect.defect))
      r.flags.push_back("unstable bundle not average conformal: defect " +
                        std::to_string(r.unstable_defect.defect) + " per step at block length " +
                        std::to_string(len) + " did not decay from length " + std::to_string(len / 2));
    if (!defect_decays(s_half.defect, r.stable_defect.defect))
      r.flags.push_back("stable bundle not average conformal: defect " +
                        std::to_string(r.stable_defect.defect) + " per step at block length " +
                        std::to_string(len) + " did not decay from length " + std::to_string(len / 2));
  }
  return r;
}

struct SweepPoint {
  double parameter = 0.0;
  double dim_total = 0.0;
  bool ok = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // ordered by parameter
  double max_jump = 0.0;           // max |dim difference| over adjacent ok pairs
};

// Evaluates a model family over a parameter grid; per-point failures are
// recorded and the curve continues.
inline SweepResult continuity_sweep(std::vector<double> grid,
                                    const std::function<DimensionReport(double)>& build) {
  std::sort(grid.begin(), grid.end());
  SweepResult out;
  for (double p : grid) {
    SweepPoint pt;
    pt.parameter = p;
    try {
      pt.dim_total = build(p).dim_total;
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.dim_total = std::numeric_limits<double>::quiet_NaN();
      pt.ok = false;
      pt.error = e.what();
    }
    out.points.push_back(std::move(pt));
  }
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i)
    if (out.points[i].ok && out.points[i + 1].ok)
      out.max_jump = std::max(out.max_jump, std::abs(out.points[i + 1].dim_total - out.points[i].dim_total));
  return out;
}

}  // namespace avedim
