#pragma once

/* Linear horseshoes on the unit square, point-cloud sampling, grid box
 * counting, and the conjugacy exponent fit.
 *
 * A model has q affine branches. Branch i stretches its base rectangle
 * [a_i, a_i + 1/mu_i] x [0,1] horizontally by mu_i and squeezes it onto the
 * image strip [0,1] x [c_i, c_i + lambda_i]. Base intervals and image strips
 * are packed from 0 with the leftover length split evenly across the q - 1
 * interior gaps, so two branches with mu = 3 give the middle-thirds picture.
 * The itinerary map is the usual one: the forward word pins x through nested
 * base intervals, the backward word pins y through nested image strips.
 */

#include <array>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "avedim/dimension.hpp"

namespace avedim {

struct Branch {
  double base_left = 0.0;    // a_i
  double expansion = 0.0;    // mu_i > 1, horizontal derivative
  double image_bottom = 0.0; // c_i
  double contraction = 0.0;  // lambda_i in (0,1), vertical derivative
};

class HorseshoeModel {
 public:
  // Full-shift linear model from per-branch rates. Requires sum(1/mu) < 1 and
  // sum(lambda) < 1 so both packings leave genuine gaps (Markov disjointness).
  // beta <= 1 is the manifold-window size used when sampling slices.
  static HorseshoeModel linear(const std::vector<double>& expansions,
                               const std::vector<double>& contractions, double beta = 1.0) {
    const std::size_t q = expansions.size();
    if (q < 2) throw DomainError("geometry: linear model: need at least 2 branches");
    if (contractions.size() != q)
      throw DomainError("geometry: linear model: expansion and contraction lists differ in length");
    if (!(beta > 0.0) || beta > 1.0)
      throw DomainError("geometry: linear model: manifold window beta must lie in (0, 1]");
    double base_total = 0.0, image_total = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
      if (!(expansions[i] > 1.0))
        throw DomainError("geometry: linear model: every branch expansion must exceed 1");
      if (!(contractions[i] > 0.0 && contractions[i] < 1.0))
        throw DomainError("geometry: linear model: every branch contraction must lie in (0, 1)");
      base_total += 1.0 / expansions[i];
      image_total += contractions[i];
    }
    if (!(base_total < 1.0))
      throw DomainError("geometry: linear model: base intervals overlap; need sum of 1/mu below 1");
    if (!(image_total < 1.0))
      throw DomainError("geometry: linear model: image strips overlap; need sum of lambda below 1");

    HorseshoeModel m;
    m.beta_ = beta;
    const double base_gap = (1.0 - base_total) / static_cast<double>(q - 1);
    const double image_gap = (1.0 - image_total) / static_cast<double>(q - 1);
    m.min_gap_ = std::min(base_gap, image_gap);
    double a = 0.0, c = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
      Branch b;
      b.base_left = a;
      b.expansion = expansions[i];
      b.image_bottom = c;
      b.contraction = contractions[i];
      m.branches_.push_back(b);
      a += 1.0 / expansions[i] + base_gap;
      c += contractions[i] + image_gap;
    }
    m.coding_ = SubshiftSpec::full_shift(static_cast<int>(q));
    return m;
  }

  int branch_count() const { return static_cast<int>(branches_.size()); }
  const Branch& branch(int i) const { return branches_.at(static_cast<std::size_t>(i)); }
  const SubshiftSpec& coding() const { return coding_; }
  double beta() const { return beta_; }
  double min_gap() const { return min_gap_; }

  double min_expansion() const {
    double v = branches_[0].expansion;
    for (const Branch& b : branches_) v = std::min(v, b.expansion);
    return v;
  }
  double max_contraction() const {
    double v = branches_[0].contraction;
    for (const Branch& b : branches_) v = std::max(v, b.contraction);
    return v;
  }

  MatrixCocycle unstable_cocycle() const {
    std::vector<Eigen::MatrixXd> gens;
    for (const Branch& b : branches_) {
      Eigen::MatrixXd g(1, 1);
      g << b.expansion;
      gens.push_back(g);
    }
    return MatrixCocycle(1, gens, Bundle::Unstable);
  }
  MatrixCocycle stable_cocycle() const {
    std::vector<Eigen::MatrixXd> gens;
    for (const Branch& b : branches_) {
      Eigen::MatrixXd g(1, 1);
      g << b.contraction;
      gens.push_back(g);
    }
    return MatrixCocycle(1, gens, Bundle::Stable);
  }

  // x-coordinate pinned by a forward word (w0, w1, ...): nested base
  // intervals, completed by `tail` in [0, 1] (0.5 = rectangle center).
  double unstable_coordinate(const Word& forward, double tail = 0.5) const {
    double x = tail;
    for (std::size_t j = forward.size(); j-- > 0;) {
      const Branch& b = branch_checked(forward[j], "unstable_coordinate");
      x = b.base_left + x / b.expansion;
    }
    return x;
  }

  // y-coordinate pinned by a backward word given most-recent-first:
  // (w_{-1}, w_{-2}, ...).
  double stable_coordinate(const Word& backward, double tail = 0.5) const {
    double y = tail;
    for (std::size_t j = backward.size(); j-- > 0;) {
      const Branch& b = branch_checked(backward[j], "stable_coordinate");
      y = b.image_bottom + b.contraction * y;
    }
    return y;
  }

  // Exact coordinate of the point whose forward itinerary repeats `block`
  // forever: fixed point of the block's affine contraction.
  double periodic_unstable_coordinate(const Word& block) const {
    if (block.empty()) throw DomainError("geometry: periodic coordinate: empty block");
    const double offset = unstable_coordinate(block, 0.0);
    double rate = 1.0;
    for (int a : block) rate /= branch_checked(a, "periodic_unstable_coordinate").expansion;
    return offset / (1.0 - rate);
  }
  double periodic_stable_coordinate(const Word& block) const {
    if (block.empty()) throw DomainError("geometry: periodic coordinate: empty block");
    const double offset = stable_coordinate(block, 0.0);
    double rate = 1.0;
    for (int a : block) rate *= branch_checked(a, "periodic_stable_coordinate").contraction;
    return offset / (1.0 - rate);
  }

 private:
  const Branch& branch_checked(int a, const char* who) const {
    if (a < 0 || a >= branch_count())
      throw DomainError(std::string("geometry: ") + who + ": symbol out of range");
    return branches_[static_cast<std::size_t>(a)];
  }

  std::vector<Branch> branches_;
  SubshiftSpec coding_ = SubshiftSpec::full_shift(2);
  double beta_ = 1.0;
  double min_gap_ = 0.0;
};

struct PointCloud {
  std::vector<std::array<double, 2>> points;
  int depth = 0;
  std::uint64_t seed = 0;
  double resolution = 0.0;  // max rectangle extent at this depth
};

// One representative point (rectangle center) per pair of admissible depth-n
// backward/forward words whose junction edge is admissible. Deterministic;
// the seed is recorded as provenance only.
inline PointCloud sample_invariant_set(const HorseshoeModel& m, int depth, std::uint64_t seed,
                                       const Limits& limits = {}) {
  if (depth < 1) throw DomainError("geometry: sample_invariant_set: depth must be >= 1");
  const SubshiftSpec& spec = m.coding();
  const double words = spec.admissible_word_count(depth);
  if (2.0 * words > static_cast<double>(limits.point_budget) ||
      words * words > static_cast<double>(limits.point_budget)) {
    char need[40];
    std::snprintf(need, sizeof(need), "%.0f", words * words);
    throw ResourceError("geometry: sample_invariant_set: depth " + std::to_string(depth) +
                        " needs about " + need + " points, over the budget of " +
                        std::to_string(limits.point_budget));
  }

  // Backward words are paths of the transposed coding (read most-recent-first).
  std::vector<double> xs, ys;
  std::vector<int> x_first, y_recent;
  for_each_word(spec, depth, limits, [&](const Word& w) {
    xs.push_back(m.unstable_coordinate(w));
    x_first.push_back(w.front());
  });
  for_each_word(spec.transposed(), depth, limits, [&](const Word& w) {
    ys.push_back(m.stable_coordinate(w));
    y_recent.push_back(w.front());
  });

  PointCloud cloud;
  cloud.depth = depth;
  cloud.seed = seed;
  cloud.resolution = std::max(std::pow(1.0 / m.min_expansion(), depth),
                              std::pow(m.max_contraction(), depth));
  cloud.points.reserve(xs.size() * ys.size());
  for (std::size_t bi = 0; bi < ys.size(); ++bi)
    for (std::size_t fi = 0; fi < xs.size(); ++fi)
      if (spec.edge(y_recent[bi], x_first[fi])) cloud.points.push_back({xs[fi], ys[bi]});
  return cloud;
}

namespace detail {

inline void require_admissible_path(const SubshiftSpec& spec, const Word& w, const char* who) {
  for (int a : w)
    if (a < 0 || a >= spec.alphabet_size())
      throw DomainError(std::string("geometry: ") + who + ": symbol out of range");
  for (std::size_t j = 0; j + 1 < w.size(); ++j)
    if (!spec.edge(w[j], w[j + 1]))
      throw DomainError(std::string("geometry: ") + who + ": itinerary is not admissible");
}

}  // namespace detail

// Points of one local unstable manifold: the backward itinerary repeats
// `past` (most-recent-first) forever, fixing y exactly; x runs over forward
// cylinders. The model's beta restricts the window to x <= beta.
inline PointCloud sample_unstable_slice(const HorseshoeModel& m, const Word& past, int depth,
                                        const Limits& limits = {}) {
  if (depth < 1) throw DomainError("geometry: sample_unstable_slice: depth must be >= 1");
  const SubshiftSpec& spec = m.coding();
  // The periodic past must be admissible read forward: ... past[1] past[0].
  Word forward_past(past.rbegin(), past.rend());
  detail::require_admissible_path(spec, forward_past, "sample_unstable_slice");
  // Periodic continuation appends another block copy before this one, so the
  // wrap edge runs from the oldest symbol back to the most recent one.
  if (past.empty() || !spec.edge(past.front(), past.back()))
    throw DomainError("geometry: sample_unstable_slice: past itinerary does not close up periodically");
  const double words = spec.admissible_word_count(depth);
  if (words > static_cast<double>(limits.point_budget))
    throw ResourceError("geometry: sample_unstable_slice: depth over point budget");

  const double y = m.periodic_stable_coordinate(past);
  PointCloud cloud;
  cloud.depth = depth;
  cloud.resolution = std::pow(1.0 / m.min_expansion(), depth);
  for_each_word(spec, depth, limits, [&](const Word& w) {
    if (!spec.edge(past.front(), w.front())) return;  // junction edge
    const double x = m.unstable_coordinate(w);
    if (x <= m.beta()) cloud.points.push_back({x, y});
  });
  if (cloud.points.empty())
    throw DomainError("geometry: sample_unstable_slice: window is empty; no admissible forward word");
  return cloud;
}

// Mirror image: future itinerary fixed (w0, w1, ... periodic), y varies.
inline PointCloud sample_stable_slice(const HorseshoeModel& m, const Word& future, int depth,
                                     const Limits& limits = {}) {
  if (depth < 1) throw DomainError("geometry: sample_stable_slice: depth must be >= 1");
  const SubshiftSpec& spec = m.coding();
  detail::require_admissible_path(spec, future, "sample_stable_slice");
  if (future.empty() || !spec.edge(future.back(), future.front()))
    throw DomainError("geometry: sample_stable_slice: future itinerary does not close up periodically");
  const double words = spec.admissible_word_count(depth);
  if (words > static_cast<double>(limits.point_budget))
    throw ResourceError("geometry: sample_stable_slice: depth over point budget");

  const double x = m.periodic_unstable_coordinate(future);
  PointCloud cloud;
  cloud.depth = depth;
  cloud.resolution = std::pow(m.max_contraction(), depth);
  for_each_word(spec.transposed(), depth, limits, [&](const Word& w) {
    if (!spec.edge(w.front(), future.front())) return;
    const double y = m.stable_coordinate(w);
    if (y <= m.beta()) cloud.points.push_back({x, y});
  });
  if (cloud.points.empty())
    throw DomainError("geometry: sample_stable_slice: window is empty; no admissible backward word");
  return cloud;
}

struct BoxCountResult {
  std::vector<double> scales;   // kept scales, decreasing
  std::vector<std::uint64_t> counts;
  double slope = 0.0;
  double fit_quality = 0.0;     // R^2 of the log-log fit
  double slope_stderr = 0.0;
  std::string note;             // discarded scales, degeneracy warnings
};

// Occupied-grid-box counts over a scale list plus the least-squares dimension
// fit of log N against log(1/delta). Grid boxes stand in for ball covers; the
// dimension value is the same, only constants differ. Scales at or below the
// cloud's sampling resolution, or above a quarter of its diameter, carry no
// information and are dropped before fitting.
inline BoxCountResult box_count(const PointCloud& cloud, std::vector<double> scales) {
  if (cloud.points.empty()) throw DomainError("geometry: box_count: empty point cloud");
  if (scales.size() < 4) throw DomainError("geometry: box_count: need at least 4 scales");
  for (double s : scales)
    if (!(s > 0.0)) throw DomainError("geometry: box_count: scales must be positive");
  std::sort(scales.begin(), scales.end(), std::greater<double>());

  double min_x = cloud.points[0][0], max_x = min_x;
  double min_y = cloud.points[0][1], max_y = min_y;
  for (const auto& p : cloud.points) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double diameter = std::hypot(max_x - min_x, max_y - min_y);

  BoxCountResult res;
  if (diameter == 0.0) {
    res.scales = scales;
    res.counts.assign(scales.size(), 1);
    res.slope = 0.0;
    res.fit_quality = 1.0;
    res.note = "degenerate cloud: all points coincide; slope pinned to 0";
    return res;
  }

  int dropped = 0;
  for (double s : scales) {
    if (s <= cloud.resolution || s > diameter / 4.0) {
      ++dropped;
      continue;
    }
    res.scales.push_back(s);
  }
  if (res.scales.size() < 2)
    throw DomainError("geometry: box_count: fewer than 2 scales inside the usable window (resolution " +
                      std::to_string(cloud.resolution) + ", diameter " + std::to_string(diameter) + ")");
  if (dropped > 0)
    res.note = std::to_string(dropped) + " scale(s) outside (resolution, diameter/4] dropped";

  std::vector<std::uint64_t> keys;
  keys.reserve(cloud.points.size());
  std::vector<double> log_inv_scale, log_count;
  for (double s : res.scales) {
    keys.clear();
    for (const auto& p : cloud.points) {
      const auto ix = static_cast<std::uint64_t>(std::floor(p[0] / s));
      const auto iy = static_cast<std::uint64_t>(std::floor(p[1] / s));
      keys.push_back((ix << 32) | (iy & 0xffffffffULL));
    }
    std::sort(keys.begin(), keys.end());
    const auto distinct =
        static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    res.counts.push_back(distinct);
    log_inv_scale.push_back(-std::log(s));
    log_count.push_back(std::log(static_cast<double>(distinct)));
  }
  const LinearFit fit = linear_fit(log_inv_scale, log_count);
  res.slope = fit.slope;
  res.fit_quality = fit.r_squared;
  res.slope_stderr = fit.slope_stderr;
  return res;
}

// Samples the cloud and counts in one go; the reference number quoted next to
// pressure-equation roots.
inline BoxCountResult box_count_reference(const HorseshoeModel& m, int depth, std::uint64_t seed,
                                          const std::vector<double>& scales, const Limits& limits = {}) {
  return box_count(sample_invariant_set(m, depth, seed, limits), scales);
}

struct HolderFit {
  double r_lower = 0.0;     // min of the two regression directions
  double fit_quality = 0.0; // R^2 (direction-independent)
  int pairs_used = 0;
};

// Empirical exponent of the conjugacy between two models with the same
// coding, restricted to one unstable slice. Points with equal itineraries
// correspond under the conjugacy; the fit regresses log-distances of
// corresponding pairs both ways and keeps the smaller slope, the lower
// envelope of the two one-sided exponents.
inline HolderFit holder_exponent_fit(const HorseshoeModel& a, const HorseshoeModel& b, int depth,
                                     int sample_size, std::uint64_t seed, const Limits& limits = {}) {
  const Eigen::MatrixXi& ta = a.coding().transitions();
  const Eigen::MatrixXi& tb = b.coding().transitions();
  if (ta.rows() != tb.rows() || !(ta.array() == tb.array()).all())
    throw DomainError("geometry: holder_exponent_fit: models use different codings");
  if (depth < 2) throw DomainError("geometry: holder_exponent_fit: depth must be >= 2");
  if (sample_size < 8) throw DomainError("geometry: holder_exponent_fit: need at least 8 pairs");
  const SubshiftSpec& spec = a.coding();
  const double words = spec.admissible_word_count(depth);
  if (words > static_cast<double>(limits.word_budget))
    throw ResourceError("geometry: holder_exponent_fit: depth over word budget");

  std::vector<double> xa, xb;
  for_each_word(spec, depth, limits, [&](const Word& w) {
    xa.push_back(a.unstable_coordinate(w));
    xb.push_back(b.unstable_coordinate(w));
  });
  if (xa.size() < 2) throw DomainError("geometry: holder_exponent_fit: not enough cylinder points");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, xa.size() - 1);
  std::vector<double> la, lb;
  long attempts = 0;
  const long max_attempts = 100L * sample_size;
  while (static_cast<int>(la.size()) < sample_size) {
    if (++attempts > max_attempts)
      throw NumericError("geometry: holder_exponent_fit: could not draw enough distinct-cylinder pairs");
    const std::size_t i = pick(rng), j = pick(rng);
    const double da = std::abs(xa[i] - xa[j]);
    const double db = std::abs(xb[i] - xb[j]);
    if (da == 0.0 || db == 0.0) continue;  // same cylinder; no distance information
    la.push_back(std::log(da));
    lb.push_back(std::log(db));
  }
  const LinearFit ab = linear_fit(la, lb);
  const LinearFit ba = linear_fit(lb, la);
  HolderFit fit;
  fit.r_lower = std::min(ab.slope, ba.slope);
  fit.fit_quality = ab.r_squared;
  fit.pairs_used = sample_size;
  return fit;
}

// Pressure-equation report for a model's own coding and derivative cocycles.
inline DimensionReport horseshoe_dimension_report(const HorseshoeModel& m, int k_max,
                                                  double tol = 1e-10, const Limits& limits = {}) {
  return dimension_report(m.coding(), m.unstable_cocycle(), m.stable_cocycle(), k_max, tol, limits);
}

}  // namespace avedim
