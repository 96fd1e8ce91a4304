#pragma once

// Subshifts of finite type: transition specs, admissible word enumeration,
// topological entropy, and Markov measures over the edges.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "avedim/common.hpp"
#include "avedim/numeric.hpp"

namespace avedim {

using Word = std::vector<int>;

// Alphabet {0..q-1} with a 0/1 transition matrix. Invariants enforced here:
// entries in {0,1}; every symbol has at least one successor and one
// predecessor (no dead symbols). Irreducibility (strong connectivity) and the
// graph period are computed once; operations that need them check the flag.
class SubshiftSpec {
 public:
  explicit SubshiftSpec(Eigen::MatrixXi transitions) : a_(std::move(transitions)) {
    const Eigen::Index q = a_.rows();
    if (q < 1 || a_.cols() != q)
      throw DomainError("symbolic: SubshiftSpec: transition matrix must be square and non-empty");
    for (Eigen::Index i = 0; i < q; ++i) {
      int row = 0, col = 0;
      for (Eigen::Index j = 0; j < q; ++j) {
        if (a_(i, j) != 0 && a_(i, j) != 1)
          throw DomainError("symbolic: SubshiftSpec: transition entries must be 0 or 1");
        row += a_(i, j);
        col += a_(j, i);
      }
      if (row == 0) throw DomainError("symbolic: SubshiftSpec: symbol " + std::to_string(i) + " has no successor");
      if (col == 0) throw DomainError("symbolic: SubshiftSpec: symbol " + std::to_string(i) + " has no predecessor");
    }
    irreducible_ = reaches_all(a_) && reaches_all(Eigen::MatrixXi(a_.transpose()));
    period_ = irreducible_ ? graph_period() : 0;
  }

  static SubshiftSpec full_shift(int q) {
    if (q < 1) throw DomainError("symbolic: full_shift: alphabet size must be >= 1");
    return SubshiftSpec(Eigen::MatrixXi::Ones(q, q));
  }

  int alphabet_size() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXi& transitions() const { return a_; }
  bool edge(int i, int j) const { return a_(i, j) == 1; }
  bool is_irreducible() const { return irreducible_; }

  // gcd of cycle lengths; 1 means aperiodic. Only defined when irreducible.
  int period() const {
    if (!irreducible_) throw DomainError("symbolic: period: spec is not irreducible");
    return period_;
  }

  SubshiftSpec transposed() const { return SubshiftSpec(Eigen::MatrixXi(a_.transpose())); }

  // Number of admissible n-words, 1^T A^{n-1} 1, accumulated in doubles and
  // clamped so budget comparisons stay meaningful far past 2^53.
  double admissible_word_count(int n) const {
    if (n < 1) throw DomainError("symbolic: admissible_word_count: word length must be >= 1");
    const int q = alphabet_size();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(q);
    for (int step = 1; step < n; ++step) {
      v = a_.cast<double>() * v;
      if (v.maxCoeff() > 1e280) return std::numeric_limits<double>::infinity();
    }
    return v.sum();
  }

 private:
  static bool reaches_all(const Eigen::MatrixXi& m) {
    const int q = static_cast<int>(m.rows());
    std::vector<char> seen(q, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < q; ++v)
        if (m(u, v) == 1 && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

  int graph_period() const {
    const int q = alphabet_size();
    std::vector<int> level(q, -1);
    std::vector<int> queue{0};
    level[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int v = 0; v < q; ++v)
        if (a_(u, v) == 1 && level[v] < 0) {
          level[v] = level[u] + 1;
          queue.push_back(v);
        }
    }
    int g = 0;
    for (int u = 0; u < q; ++u)
      for (int v = 0; v < q; ++v)
        if (a_(u, v) == 1) g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
    return g == 0 ? 1 : g;
  }

  Eigen::MatrixXi a_;
  bool irreducible_ = false;
  int period_ = 0;
};

inline bool is_admissible(const SubshiftSpec& spec, const Word& w) {
  if (w.empty()) return false;
  for (int s : w)
    if (s < 0 || s >= spec.alphabet_size()) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!spec.edge(w[i], w[i + 1])) return false;
  return true;
}

// Lexicographic stream of admissible n-words. No dead symbols means every
// prefix extends, so greedy fill always succeeds.
class WordEnumerator {
 public:
  WordEnumerator(const SubshiftSpec& spec, int n) : spec_(&spec), n_(n) {
    if (n < 1) throw DomainError("symbolic: enumerate_words: word length must be >= 1");
    w_.assign(static_cast<std::size_t>(n), 0);
    fill_min_from(0);
    fresh_ = true;
  }

  bool next(Word& out) {
    if (done_) return false;
    if (!fresh_ && !advance()) {
      done_ = true;
      return false;
    }
    fresh_ = false;
    out = w_;
    return true;
  }

 private:
  void fill_min_from(int pos) {
    for (int i = pos; i < n_; ++i) {
      if (i == 0) {
        w_[0] = 0;
        continue;
      }
      int b = 0;
      while (!spec_->edge(w_[i - 1], b)) ++b;  // exists: no dead symbols
      w_[i] = b;
    }
  }

  bool advance() {
    for (int i = n_ - 1; i >= 0; --i) {
      const int q = spec_->alphabet_size();
      for (int b = w_[i] + 1; b < q; ++b) {
        if (i > 0 && !spec_->edge(w_[i - 1], b)) continue;
        w_[i] = b;
        fill_min_from(i + 1);
        return true;
      }
    }
    return false;
  }

  const SubshiftSpec* spec_;
  int n_;
  Word w_;
  bool fresh_ = false;
  bool done_ = false;
};

// Applies fn to every admissible n-word in lexicographic order.
template <typename F>
void for_each_word(const SubshiftSpec& spec, int n, const Limits& limits, F&& fn) {
  const double count = spec.admissible_word_count(n);
  if (count > static_cast<double>(limits.word_budget))
    throw ResourceError("symbolic: enumerate_words: " + std::to_string(count) +
                        " admissible words of length " + std::to_string(n) +
                        " exceed word budget " + std::to_string(limits.word_budget));
  WordEnumerator it(spec, n);
  Word w;
  while (it.next(w)) fn(static_cast<const Word&>(w));
}

// log of the spectral radius of the transition matrix; power iteration with
// the growth averaged over the graph period (see numeric.hpp).
inline double topological_entropy(const SubshiftSpec& spec) {
  if (!spec.is_irreducible())
    throw DomainError("symbolic: topological_entropy: transition matrix is not irreducible");
  const int q = spec.alphabet_size();
  std::vector<std::vector<double>> logm(q, std::vector<double>(q, kNegInf));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (spec.edge(i, j)) logm[i][j] = 0.0;
  return log_spectral_radius(logm, spec.period());
}

// Markov measure on the edge set of a spec: row-stochastic transition
// probabilities supported on admissible edges plus the stationary row vector.
class MarkovMeasure {
 public:
  MarkovMeasure(SubshiftSpec spec, Eigen::MatrixXd stochastic, Eigen::VectorXd stationary)
      : spec_(std::move(spec)), p_(std::move(stochastic)), pi_(std::move(stationary)) {
    validate();
  }

  MarkovMeasure(SubshiftSpec spec, Eigen::MatrixXd stochastic)
      : spec_(std::move(spec)), p_(std::move(stochastic)), pi_(solve_stationary(p_)) {
    validate();
  }

  const SubshiftSpec& spec() const { return spec_; }
  const Eigen::MatrixXd& stochastic() const { return p_; }
  const Eigen::VectorXd& stationary() const { return pi_; }

  static Eigen::VectorXd solve_stationary(const Eigen::MatrixXd& p) {
    const Eigen::Index q = p.rows();
    // pi P = pi with sum(pi) = 1: replace the last balance equation by the
    // normalization row; exact for periodic chains too, where power iteration
    // on P would cycle.
    Eigen::MatrixXd m = p.transpose() - Eigen::MatrixXd::Identity(q, q);
    m.row(q - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q);
    rhs(q - 1) = 1.0;
    Eigen::VectorXd pi = m.fullPivLu().solve(rhs);
    if (((m * pi) - rhs).cwiseAbs().maxCoeff() > 1e-8)
      throw NumericError("symbolic: MarkovMeasure: stationary solve failed (chain may be reducible); pass the stationary vector explicitly");
    for (Eigen::Index i = 0; i < q; ++i) {
      if (pi(i) < -1e-9)
        throw NumericError("symbolic: MarkovMeasure: stationary solve produced a negative mass");
      pi(i) = std::max(0.0, pi(i));
    }
    pi /= pi.sum();
    return pi;
  }

 private:
  void validate() const {
    const int q = spec_.alphabet_size();
    if (p_.rows() != q || p_.cols() != q || pi_.size() != q)
      throw DomainError("symbolic: MarkovMeasure: dimension mismatch with alphabet");
    for (int i = 0; i < q; ++i) {
      double row = 0.0;
      for (int j = 0; j < q; ++j) {
        const double v = p_(i, j);
        if (v < 0.0) throw DomainError("symbolic: MarkovMeasure: negative transition probability");
        if (v > 0.0 && !spec_.edge(i, j))
          throw DomainError("symbolic: MarkovMeasure: probability mass on a non-admissible edge");
        row += v;
      }
      if (std::abs(row - 1.0) > 1e-12)
        throw DomainError("symbolic: MarkovMeasure: row " + std::to_string(i) + " does not sum to 1 within 1e-12");
    }
    double total = 0.0;
    for (int i = 0; i < q; ++i) {
      if (pi_(i) < 0.0) throw DomainError("symbolic: MarkovMeasure: negative stationary mass");
      total += pi_(i);
    }
    if (std::abs(total - 1.0) > 1e-10)
      throw DomainError("symbolic: MarkovMeasure: stationary vector does not sum to 1 within 1e-10");
    Eigen::VectorXd image = p_.transpose() * pi_;
    if ((image - pi_).cwiseAbs().maxCoeff() > 1e-10)
      throw DomainError("symbolic: MarkovMeasure: stationary vector is not left-fixed within 1e-10");
  }

  SubshiftSpec spec_;
  Eigen::MatrixXd p_;
  Eigen::VectorXd pi_;
};

// Entropy rate -sum pi_i p_ij log p_ij with 0 log 0 = 0.
inline double markov_entropy(const MarkovMeasure& mu) {
  const int q = mu.spec().alphabet_size();
  double h = 0.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const double p = mu.stochastic()(i, j);
      if (p > 0.0) h -= mu.stationary()(i) * p * std::log(p);
    }
  return h;
}

// Integral of an edge function: sum pi_i p_ij f(i,j) over admissible edges.
// f must be finite wherever the measure puts mass.
inline double integrate_edge_function(const MarkovMeasure& mu, const Eigen::MatrixXd& values) {
  const int q = mu.spec().alphabet_size();
  if (values.rows() != q || values.cols() != q)
    throw DomainError("symbolic: integrate_edge_function: value matrix shape mismatch");
  double s = 0.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const double p = mu.stochastic()(i, j);
      if (p > 0.0) {
        if (!std::isfinite(values(i, j)))
          throw DomainError("symbolic: integrate_edge_function: non-finite value on a charged edge");
        s += mu.stationary()(i) * p * values(i, j);
      }
    }
  return s;
}

// Measure of maximal entropy. Perron vectors are obtained by power iteration
// on A + I (same eigenvectors, radius shifted by exactly 1, aperiodic even
// when the spec is periodic; rho(A) >= 1 keeps the shift well conditioned).
inline MarkovMeasure parry_measure(const SubshiftSpec& spec) {
  if (!spec.is_irreducible())
    throw DomainError("symbolic: parry_measure: spec is not irreducible");
  const int q = spec.alphabet_size();
  const Eigen::MatrixXd a = spec.transitions().cast<double>();
  const Eigen::MatrixXd shifted = a + Eigen::MatrixXd::Identity(q, q);
  auto perron = [&](const Eigen::MatrixXd& m) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(q);
    double lambda = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::VectorXd w = m * v;
      const double nl = w.sum();
      w /= nl;
      const bool done = (w - v).cwiseAbs().maxCoeff() < 1e-15 && std::abs(nl - lambda) < 1e-14 * nl;
      v = w;
      lambda = nl;
      if (done) return std::make_pair(lambda, v);
    }
    throw NumericError("symbolic: parry_measure: Perron iteration did not converge");
  };
  auto [lam_shift, right] = perron(shifted);
  auto [lam_shift_l, left] = perron(Eigen::MatrixXd(shifted.transpose()));
  (void)lam_shift_l;
  const double lambda = lam_shift - 1.0;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (spec.edge(i, j)) p(i, j) = right(j) / (lambda * right(i));
  Eigen::VectorXd pi(q);
  for (int i = 0; i < q; ++i) pi(i) = left(i) * right(i);
  pi /= pi.sum();
  return MarkovMeasure(spec, p, pi);
}

}  // namespace avedim
