#pragma once

/* Topological pressure on subshifts of finite type.
 *
 * Three schemes:
 *   - transfer-matrix: exact pressure of an edge-locally-constant potential,
 *     log spectral radius of A .* exp(phi);
 *   - cylinder-sum: (1/n) log of the weighted word sum at a fixed level n;
 *   - block transfer operator: pressure of the L-step recoding with a
 *     singular-value potential on blocks, the engine behind the monotone
 *     bracket sequences.
 *
 * The block operator over the alphabet of admissible L-words never gets
 * materialized: with weights depending on a block u only through its cost,
 * the |B| x |B| operator W[u][v] = e^{psi(u)} A[last(u)][first(v)] shares its
 * nonzero spectrum with the q x q collapse
 *     M[a][b] = sum_{u: first(u)=a} e^{psi(u)} A[last(u)][b]
 * (spectra of XY and YX agree away from 0), so blocks are bucketed once by
 * (first, last) symbol pair and every pressure evaluation costs one
 * log-sum-exp sweep over the buckets.
 *
 * The variational side maximizes h(mu) + Phi_*(mu) over Markov measures of a
 * chosen memory; the reference pressure is computed with the same truncation
 * depth as the integral so the inequality best_value <= reference holds at
 * any finite depth, not just in the limit.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "avedim/cocycle.hpp"
#include "avedim/common.hpp"
#include "avedim/numeric.hpp"
#include "avedim/subshift.hpp"

namespace avedim {

enum class CostKind { LogNorm, LogConorm };

inline const char* cost_kind_name(CostKind k) { return k == CostKind::LogNorm ? "norm" : "conorm"; }

struct PressureEstimate {
  double value = 0.0;  // nats per unit time of the base shift
  int level = 0;       // word length (cylinder-sum) or dyadic exponent (block scheme); 0 = exact
  std::string scheme;
  std::string monotonicity_note;
};

namespace detail {

inline void require_irreducible(const SubshiftSpec& spec, const std::string& who) {
  if (!spec.is_irreducible())
    throw DomainError(who + ": requires an irreducible transition matrix");
}

inline void require_edge_values(const SubshiftSpec& spec, const Eigen::MatrixXd& phi, const std::string& who) {
  const int q = spec.alphabet_size();
  if (phi.rows() != q || phi.cols() != q)
    throw DomainError(who + ": potential matrix must be " + std::to_string(q) + "x" + std::to_string(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (spec.edge(a, b) && !std::isfinite(phi(a, b)))
        throw DomainError(who + ": potential is not finite on edge (" + std::to_string(a) + "," +
                          std::to_string(b) + ")");
}

inline void require_matching_cocycle(const SubshiftSpec& spec, const MatrixCocycle& c, const std::string& who) {
  if (spec.alphabet_size() != c.symbol_count())
    throw DomainError(who + ": alphabet size does not match generator count");
}

inline double word_cost(const MatrixCocycle& c, const Word& w, CostKind kind) {
  const SingularStats s = product_stats(c, w);
  return kind == CostKind::LogNorm ? s.log_norm : s.log_conorm;
}

}  // namespace detail

// Exact pressure of an edge potential: log spectral radius of A .* exp(phi).
inline PressureEstimate additive_pressure(const SubshiftSpec& spec, const Eigen::MatrixXd& phi) {
  detail::require_irreducible(spec, "pressure: additive_pressure");
  detail::require_edge_values(spec, phi, "pressure: additive_pressure");
  const int q = spec.alphabet_size();
  std::vector<std::vector<double>> logw(static_cast<std::size_t>(q),
                                        std::vector<double>(static_cast<std::size_t>(q), kNegInf));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (spec.edge(a, b)) logw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = phi(a, b);
  PressureEstimate e;
  e.value = log_spectral_radius(logw, spec.period());
  e.level = 0;
  e.scheme = "transfer-matrix";
  e.monotonicity_note = "exact for locally constant potentials";
  return e;
}

// Level-n cylinder sum for an edge potential. The n-step sum over a cylinder
// pins down n-1 edges; the last one is taken at its supremum over admissible
// continuations, which makes constant potentials exact at every level.
inline PressureEstimate cylinder_pressure_level(const SubshiftSpec& spec, const Eigen::MatrixXd& phi, int n,
                                                const Limits& limits = {}) {
  detail::require_edge_values(spec, phi, "pressure: cylinder_pressure_level");
  if (n < 1) throw DomainError("pressure: cylinder_pressure_level: level must be >= 1");
  const int q = spec.alphabet_size();
  std::vector<double> tail(static_cast<std::size_t>(q), kNegInf);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (spec.edge(a, b)) tail[static_cast<std::size_t>(a)] = std::max(tail[static_cast<std::size_t>(a)], phi(a, b));
  LogSumExp acc;
  for_each_word(spec, n, limits, [&](const Word& w) {
    double s = tail[static_cast<std::size_t>(w.back())];
    for (std::size_t j = 0; j + 1 < w.size(); ++j) s += phi(w[j], w[j + 1]);
    acc.add(s);
  });
  PressureEstimate e;
  e.value = acc.value() / n;
  e.level = n;
  e.scheme = "cylinder-sum";
  e.monotonicity_note = "approaches the transfer-matrix value at rate O(1/level)";
  return e;
}

// Level-n cylinder sum for a singular-value potential -t * cost, where cost
// is log ||P(w)|| or log m(P(w)); constant on n-cylinders by local constancy.
inline PressureEstimate cylinder_pressure_level(const SubshiftSpec& spec, const MatrixCocycle& c,
                                                CostKind kind, double t, int n, const Limits& limits = {}) {
  detail::require_matching_cocycle(spec, c, "pressure: cylinder_pressure_level");
  if (n < 1) throw DomainError("pressure: cylinder_pressure_level: level must be >= 1");
  if (!std::isfinite(t)) throw DomainError("pressure: cylinder_pressure_level: coefficient must be finite");
  LogSumExp acc;
  for_each_word(spec, n, limits, [&](const Word& w) { acc.add(-t * detail::word_cost(c, w, kind)); });
  PressureEstimate e;
  e.value = acc.value() / n;
  e.level = n;
  e.scheme = "cylinder-sum";
  e.monotonicity_note = kind == CostKind::LogNorm
                            ? "super-additive family (t >= 0): on full shifts the log-sums a_n obey a_{m+n} >= a_m + a_n"
                            : "sub-additive family (t >= 0): on full shifts the log-sums a_n obey a_{m+n} <= a_m + a_n";
  return e;
}

// Pressure of the L-step block recoding with potential -t * cost(block),
// reported per unit time of the base shift. Cheap to re-evaluate across t:
// construction pays for the block products once, bucketed by (first, last).
class BlockPressure {
 public:
  BlockPressure(const SubshiftSpec& spec, const MatrixCocycle& c, CostKind kind, int block_length,
                const Limits& limits = {})
      : q_(spec.alphabet_size()),
        length_(block_length),
        kind_(kind),
        window_(0),
        edges_(spec.transitions()),
        buckets_(static_cast<std::size_t>(q_) * static_cast<std::size_t>(q_)) {
    detail::require_irreducible(spec, "pressure: block transfer operator");
    detail::require_matching_cocycle(spec, c, "pressure: block transfer operator");
    if (block_length < 1) throw DomainError("pressure: block transfer operator: block length must be >= 1");
    window_ = spec.period();
    for_each_word(spec, block_length, limits, [&](const Word& w) {
      buckets_[static_cast<std::size_t>(w.front()) * static_cast<std::size_t>(q_) +
               static_cast<std::size_t>(w.back())]
          .push_back(detail::word_cost(c, w, kind));
      ++count_;
    });
  }

  // (1/L) log rho(M(t)); strictly decreasing in t once every block cost is
  // positive (norm side) resp. negative as appropriate.
  double pressure(double t) const {
    if (!std::isfinite(t)) throw DomainError("pressure: block transfer operator: coefficient must be finite");
    const std::size_t q = static_cast<std::size_t>(q_);
    std::vector<std::vector<double>> bridge(q, std::vector<double>(q, kNegInf));
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t csym = 0; csym < q; ++csym) {
        const auto& bucket = buckets_[a * q + csym];
        if (bucket.empty()) continue;
        LogSumExp acc;
        for (double cost : bucket) acc.add(-t * cost);
        bridge[a][csym] = acc.value();
      }
    std::vector<std::vector<double>> logm(q, std::vector<double>(q, kNegInf));
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) {
        LogSumExp acc;
        for (std::size_t csym = 0; csym < q; ++csym)
          if (edges_(static_cast<Eigen::Index>(csym), static_cast<Eigen::Index>(b)) == 1 &&
              bridge[a][csym] != kNegInf)
            acc.add(bridge[a][csym]);
        logm[a][b] = acc.value();
      }
    return log_spectral_radius(logm, window_) / length_;
  }

  int block_length() const { return length_; }
  std::uint64_t block_count() const { return count_; }
  CostKind cost_kind() const { return kind_; }

 private:
  int q_;
  int length_;
  CostKind kind_;
  int window_;
  Eigen::MatrixXi edges_;
  std::vector<std::vector<double>> buckets_;  // [first * q + last] -> block costs
  std::uint64_t count_ = 0;
};

// Largest k such that the 2^k-word alphabet fits the word budget; -1 if none.
inline int max_feasible_block_exponent(const SubshiftSpec& spec, const Limits& limits = {}) {
  int best = -1;
  for (int k = 0; k <= 30; ++k) {
    const double count = spec.admissible_word_count(1 << k);
    if (count <= static_cast<double>(limits.word_budget))
      best = k;
    else
      break;
  }
  return best;
}

// Dyadic block pressure: blocks of length 2^k, potential -t * cost.
inline PressureEstimate block_pressure(const SubshiftSpec& spec, const MatrixCocycle& c, double t, int k,
                                       CostKind kind, const Limits& limits = {}) {
  if (k < 0 || k > 30) throw DomainError("pressure: block_pressure: exponent k must lie in [0, 30]");
  if (!(t >= 0.0)) throw DomainError("pressure: block_pressure: coefficient t must be >= 0");
  const int len = 1 << k;
  const double count = spec.admissible_word_count(len);
  if (count > static_cast<double>(limits.word_budget)) {
    const int feasible = max_feasible_block_exponent(spec, limits);
    throw ResourceError("pressure: block_pressure: blocks of length 2^" + std::to_string(k) + " need " +
                        std::to_string(count) + " words, over the budget of " +
                        std::to_string(limits.word_budget) + "; largest feasible block exponent is " +
                        std::to_string(feasible));
  }
  const BlockPressure bp(spec, c, kind, len, limits);
  PressureEstimate e;
  e.value = bp.pressure(t);
  e.level = k;
  e.scheme = "block-2^k";
  e.monotonicity_note = kind == CostKind::LogNorm
                            ? "lower bracket side: per-step value nondecreasing in k"
                            : "upper bracket side: per-step value nonincreasing in k";
  return e;
}

// Alphabet of admissible m-words with the overlap-shift transition rule; the
// chain carrying memory-m Markov measures of the base shift.
struct HigherBlockPresentation {
  SubshiftSpec block_spec;
  std::vector<Word> states;  // lexicographic; index = symbol of block_spec
};

inline HigherBlockPresentation higher_block_presentation(const SubshiftSpec& spec, int m,
                                                         const Limits& limits = {}) {
  if (m < 1) throw DomainError("pressure: higher_block_presentation: memory must be >= 1");
  detail::require_irreducible(spec, "pressure: higher_block_presentation");
  std::vector<Word> states;
  for_each_word(spec, m, limits, [&](const Word& w) { states.push_back(w); });
  const int nb = static_cast<int>(states.size());
  Eigen::MatrixXi trans = Eigen::MatrixXi::Zero(nb, nb);
  for (int u = 0; u < nb; ++u)
    for (int v = 0; v < nb; ++v) {
      bool ok = spec.edge(states[static_cast<std::size_t>(u)].back(), states[static_cast<std::size_t>(v)].back());
      for (int j = 0; ok && j + 1 < m; ++j)
        ok = states[static_cast<std::size_t>(u)][static_cast<std::size_t>(j + 1)] ==
             states[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)];
      if (ok) trans(u, v) = 1;
    }
  return {SubshiftSpec(std::move(trans)), std::move(states)};
}

inline int state_index(const std::vector<Word>& states, const Word& w) {
  const auto it = std::lower_bound(states.begin(), states.end(), w);
  if (it == states.end() || *it != w)
    throw DomainError("pressure: state_index: word is not an admissible chain state");
  return static_cast<int>(it - states.begin());
}

// h(mu) + integral of an edge potential. Exact: the law of a transition of
// the memory-m chain determines the law of a base edge through its last two
// symbols.
inline double entropy_plus_edge_integral(const HigherBlockPresentation& pres, const MarkovMeasure& mu,
                                         const Eigen::MatrixXd& phi) {
  const int nb = static_cast<int>(pres.states.size());
  Eigen::MatrixXd values(nb, nb);
  for (int u = 0; u < nb; ++u)
    for (int v = 0; v < nb; ++v)
      values(u, v) = phi(pres.states[static_cast<std::size_t>(u)].back(),
                         pres.states[static_cast<std::size_t>(v)].back());
  return markov_entropy(mu) + integrate_edge_function(mu, values);
}

// h(mu) + (1/depth) * sum over depth-cylinders of mu(cyl) * (-t * cost(cyl)).
inline double entropy_plus_cost_integral(const SubshiftSpec& base, const HigherBlockPresentation& pres,
                                         const MarkovMeasure& mu, const MatrixCocycle& c, CostKind kind,
                                         double t, int depth, const Limits& limits = {}) {
  const int m = static_cast<int>(pres.states.front().size());
  if (depth < m)
    throw DomainError("pressure: entropy_plus_cost_integral: depth must be >= the measure memory");
  double integral = 0.0;
  Word state(static_cast<std::size_t>(m));
  for_each_word(base, depth, limits, [&](const Word& w) {
    std::copy(w.begin(), w.begin() + m, state.begin());
    int cur = state_index(pres.states, state);
    double p = mu.stationary()(cur);
    for (int j = 1; j + m <= depth && p > 0.0; ++j) {
      std::copy(w.begin() + j, w.begin() + j + m, state.begin());
      const int nxt = state_index(pres.states, state);
      p *= mu.stochastic()(cur, nxt);
      cur = nxt;
    }
    if (p > 0.0) integral += p * (-t * detail::word_cost(c, w, kind));
  });
  return markov_entropy(mu) + integral / depth;
}

struct VariationalOptions {
  int memory = 1;
  int depth = 0;  // 0: for singular-value potentials, twice the certified block length
  std::uint64_t seed = 1;
  int restarts = 20;
  int max_iterations = 10000;  // ascent steps per restart
};

struct VariationalResult {
  double best_value = 0.0;
  double pressure_ref = 0.0;
  double gap = 0.0;  // pressure_ref - best_value; >= -1e-9 up to solver noise
  int memory = 1;
  int depth = 0;
  std::vector<Word> states;
  Eigen::MatrixXd argmax_transitions;
  Eigen::VectorXd argmax_stationary;
  std::string reference_scheme;
  std::string note;
};

namespace detail {

// Projected gradient ascent over stochastic matrices on the chain, restarted;
// ties broken by restart index so parallel execution stays deterministic.
inline Eigen::MatrixXd maximize_over_chain(const SubshiftSpec& chain,
                                           const std::function<double(const MarkovMeasure&)>& value,
                                           const VariationalOptions& opt, double* best_value,
                                           std::string* note) {
  const int nb = chain.alphabet_size();
  std::vector<std::vector<bool>> allowed(static_cast<std::size_t>(nb), std::vector<bool>(static_cast<std::size_t>(nb)));
  std::vector<int> degree(static_cast<std::size_t>(nb), 0);
  for (int u = 0; u < nb; ++u)
    for (int v = 0; v < nb; ++v) {
      allowed[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = chain.edge(u, v);
      degree[static_cast<std::size_t>(u)] += chain.edge(u, v) ? 1 : 0;
    }

  const double floor = 1e-12;
  auto clean_row = [&](std::vector<double>& row, int u) {
    project_to_simplex(row, allowed[static_cast<std::size_t>(u)]);
    double sum = 0.0;
    for (int v = 0; v < nb; ++v) {
      if (allowed[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
        row[static_cast<std::size_t>(v)] = std::max(row[static_cast<std::size_t>(v)], floor);
      sum += row[static_cast<std::size_t>(v)];
    }
    for (double& x : row) x /= sum;
  };

  auto evaluate = [&](const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(nb, nb);
    for (int u = 0; u < nb; ++u)
      for (int v = 0; v < nb; ++v) p(u, v) = rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    return value(MarkovMeasure(chain, p));
  };

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best_rows;
  bool any_capped = false;

  for (int restart = 0; restart < opt.restarts; ++restart) {
    std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart + 1)));
    std::exponential_distribution<double> exp_draw(1.0);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(nb),
                                          std::vector<double>(static_cast<std::size_t>(nb), 0.0));
    for (int u = 0; u < nb; ++u) {
      for (int v = 0; v < nb; ++v)
        if (allowed[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
          rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = restart == 0 ? 1.0 : exp_draw(rng);
      clean_row(rows[static_cast<std::size_t>(u)], u);
    }

    double cur = evaluate(rows);
    double eta = 0.25;
    const double fd = 1e-6;
    int stall = 0;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
      // Central differences on free coordinates, row-renormalized.
      std::vector<std::vector<double>> grad(static_cast<std::size_t>(nb),
                                            std::vector<double>(static_cast<std::size_t>(nb), 0.0));
      for (int u = 0; u < nb; ++u) {
        if (degree[static_cast<std::size_t>(u)] < 2) continue;
        for (int v = 0; v < nb; ++v) {
          if (!allowed[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
          auto hi = rows, lo = rows;
          hi[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] += fd;
          lo[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
              std::max(lo[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] - fd, floor);
          clean_row(hi[static_cast<std::size_t>(u)], u);
          clean_row(lo[static_cast<std::size_t>(u)], u);
          grad[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
              (evaluate(hi) - evaluate(lo)) / (2.0 * fd);
        }
      }
      bool moved = false;
      while (eta >= 1e-10) {
        auto cand = rows;
        for (int u = 0; u < nb; ++u) {
          if (degree[static_cast<std::size_t>(u)] < 2) continue;
          for (int v = 0; v < nb; ++v)
            cand[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] +=
                eta * grad[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
          clean_row(cand[static_cast<std::size_t>(u)], u);
        }
        const double cv = evaluate(cand);
        if (cv > cur) {
          stall = (cv - cur < 1e-13) ? stall + 1 : 0;
          rows = std::move(cand);
          cur = cv;
          eta = std::min(eta * 1.5, 1.0);
          moved = true;
          break;
        }
        eta *= 0.5;
      }
      if (!moved || stall >= 2) break;
    }
    if (it == opt.max_iterations) any_capped = true;

    if (cur > best) {
      best = cur;
      best_rows = rows;
    }
  }

  if (note && any_capped)
    *note = "optimizer hit the iteration cap on at least one restart; best-so-far reported";
  *best_value = best;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(nb, nb);
  for (int u = 0; u < nb; ++u)
    for (int v = 0; v < nb; ++v) p(u, v) = best_rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
  return p;
}

}  // namespace detail

// Variational check for an edge potential: the integral is exact, the
// reference pressure is the exact transfer-matrix value.
inline VariationalResult variational_gap(const SubshiftSpec& spec, const Eigen::MatrixXd& phi,
                                         const VariationalOptions& opt = {}, const Limits& limits = {}) {
  detail::require_edge_values(spec, phi, "pressure: variational_gap");
  if (opt.memory < 1) throw DomainError("pressure: variational_gap: memory must be >= 1");
  HigherBlockPresentation pres = higher_block_presentation(spec, opt.memory, limits);

  VariationalResult r;
  r.memory = opt.memory;
  r.depth = 1;
  r.pressure_ref = additive_pressure(spec, phi).value;
  r.reference_scheme = "transfer-matrix";
  r.argmax_transitions = detail::maximize_over_chain(
      pres.block_spec,
      [&](const MarkovMeasure& mu) { return entropy_plus_edge_integral(pres, mu, phi); }, opt,
      &r.best_value, &r.note);
  r.argmax_stationary = MarkovMeasure::solve_stationary(r.argmax_transitions);
  r.gap = r.pressure_ref - r.best_value;
  r.states = std::move(pres.states);
  return r;
}

// Variational check for a singular-value potential at a fixed depth: both the
// integral and the reference pressure live on depth-cylinders, so the gap is
// nonnegative at every finite depth.
inline VariationalResult variational_gap(const SubshiftSpec& spec, const MatrixCocycle& c, CostKind kind,
                                         double t, const VariationalOptions& opt = {},
                                         const Limits& limits = {}) {
  detail::require_matching_cocycle(spec, c, "pressure: variational_gap");
  if (opt.memory < 1) throw DomainError("pressure: variational_gap: memory must be >= 1");
  if (!(t >= 0.0)) throw DomainError("pressure: variational_gap: coefficient t must be >= 0");
  int depth = opt.depth;
  if (depth == 0) {
    const HyperbolicityCertificate cert = hyperbolicity_certificate(c, spec, 8, limits);
    depth = std::max(opt.memory, 2 * (cert.certified ? cert.block_length : 2));
  }
  if (depth < opt.memory)
    throw DomainError("pressure: variational_gap: depth must be >= memory");
  HigherBlockPresentation pres = higher_block_presentation(spec, opt.memory, limits);

  VariationalResult r;
  r.memory = opt.memory;
  r.depth = depth;
  const BlockPressure ref(spec, c, kind, depth, limits);
  r.pressure_ref = ref.pressure(t);
  r.reference_scheme = "block transfer operator at the integral depth";
  r.argmax_transitions = detail::maximize_over_chain(
      pres.block_spec,
      [&](const MarkovMeasure& mu) {
        return entropy_plus_cost_integral(spec, pres, mu, c, kind, t, depth, limits);
      },
      opt, &r.best_value, &r.note);
  r.argmax_stationary = MarkovMeasure::solve_stationary(r.argmax_transitions);
  r.gap = r.pressure_ref - r.best_value;
  r.states = std::move(pres.states);
  return r;
}

// Random stochastic matrix on the chain (exponential row draws, normalized);
// the workhorse for variational-inequality property tests.
inline MarkovMeasure random_markov_measure(const SubshiftSpec& chain, std::mt19937_64& rng) {
  const int nb = chain.alphabet_size();
  std::exponential_distribution<double> exp_draw(1.0);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(nb, nb);
  for (int u = 0; u < nb; ++u) {
    double sum = 0.0;
    for (int v = 0; v < nb; ++v)
      if (chain.edge(u, v)) {
        p(u, v) = exp_draw(rng) + 1e-12;
        sum += p(u, v);
      }
    for (int v = 0; v < nb; ++v) p(u, v) /= sum;
  }
  return MarkovMeasure(chain, p);
}

}  // namespace avedim
