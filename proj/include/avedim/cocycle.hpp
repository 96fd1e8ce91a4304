#pragma once

/* Locally constant matrix cocycles over a subshift: one invertible generator
 * per symbol.  A product over the word (w_0 .. w_{n-1}) is ordered like a
 * chain rule along the orbit, G_{w_{n-1}} ... G_{w_1} G_{w_0}.
 *
 * Singular-value statistics drive everything downstream: log ||P|| (largest
 * singular value), log m(P) (smallest), and log |det P|, the latter summed
 * over generator determinants so it is exact under products.  Hyperbolicity
 * and conformality are certified by finite enumeration, never assumed.
 */

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "avedim/common.hpp"
#include "avedim/subshift.hpp"

namespace avedim {

enum class Bundle { Unstable, Stable };

inline const char* bundle_name(Bundle b) { return b == Bundle::Unstable ? "unstable" : "stable"; }

struct SingularStats {
  double log_norm = 0.0;      // log of the largest singular value
  double log_conorm = 0.0;    // log of the smallest singular value
  double log_abs_det = 0.0;   // exact: sum of generator log-determinants
  int length = 0;
};

class MatrixCocycle {
 public:
  MatrixCocycle(int bundle_dim, std::vector<Eigen::MatrixXd> generators, Bundle orientation,
                double condition_cap = 1e8)
      : d_(bundle_dim), gens_(std::move(generators)), orientation_(orientation), cap_(condition_cap) {
    if (d_ < 1) throw DomainError("cocycle: bundle dimension must be >= 1");
    if (gens_.empty()) throw DomainError("cocycle: need at least one generator");
    log_dets_.reserve(gens_.size());
    for (std::size_t a = 0; a < gens_.size(); ++a) {
      const auto& g = gens_[a];
      if (g.rows() != d_ || g.cols() != d_)
        throw DomainError("cocycle: generator " + std::to_string(a) + " is not " + std::to_string(d_) +
                          "x" + std::to_string(d_));
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
      const double smax = svd.singularValues()(0);
      const double smin = svd.singularValues()(d_ - 1);
      if (!(smin > 0.0) || smax / smin > cap_)
        throw DomainError("cocycle: generator " + std::to_string(a) +
                          " is singular or ill-conditioned (condition cap " + std::to_string(cap_) + ")");
      // log |det| via LU diagonal, stable for any magnitude.
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(g);
      double ld = 0.0;
      for (int i = 0; i < d_; ++i) ld += std::log(std::abs(lu.matrixLU()(i, i)));
      log_dets_.push_back(ld);
    }
  }

  int bundle_dim() const { return d_; }
  int symbol_count() const { return static_cast<int>(gens_.size()); }
  Bundle orientation() const { return orientation_; }
  double condition_cap() const { return cap_; }
  const Eigen::MatrixXd& generator(int a) const { return gens_.at(static_cast<std::size_t>(a)); }
  double generator_log_abs_det(int a) const { return log_dets_.at(static_cast<std::size_t>(a)); }

  // Inverted generators, flipped orientation. Products of the inverse cocycle
  // along a word equal the inverse of the product along the reversed word;
  // dimension code pairs this with the transposed spec.
  MatrixCocycle inverse() const {
    std::vector<Eigen::MatrixXd> inv;
    inv.reserve(gens_.size());
    for (const auto& g : gens_) inv.push_back(g.inverse());
    return MatrixCocycle(d_, std::move(inv),
                         orientation_ == Bundle::Unstable ? Bundle::Stable : Bundle::Unstable, cap_);
  }

 private:
  int d_;
  std::vector<Eigen::MatrixXd> gens_;
  Bundle orientation_;
  double cap_;
  std::vector<double> log_dets_;
};

// Singular stats of the product along a word. Rescales every 16 factors so
// products of hundreds of matrices neither overflow nor underflow.
inline SingularStats product_stats(const MatrixCocycle& c, const Word& w) {
  if (w.empty()) throw DomainError("cocycle: product_stats: empty word");
  const int d = c.bundle_dim();
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(d, d);
  double log_scale = 0.0;
  double log_det = 0.0;
  int since_rescale = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int a = w[i];
    if (a < 0 || a >= c.symbol_count())
      throw DomainError("cocycle: product_stats: symbol " + std::to_string(a) + " has no generator");
    p = c.generator(a) * p;
    log_det += c.generator_log_abs_det(a);
    if (++since_rescale == 16) {
      const double f = p.norm();
      if (!(f > 0.0) || !std::isfinite(f))
        throw NumericError("cocycle: product_stats: non-finite product while rescaling");
      p /= f;
      log_scale += std::log(f);
      since_rescale = 0;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p);
  SingularStats s;
  s.log_norm = std::log(svd.singularValues()(0)) + log_scale;
  s.log_conorm = std::log(svd.singularValues()(d - 1)) + log_scale;
  s.log_abs_det = log_det;
  s.length = static_cast<int>(w.size());
  if (!std::isfinite(s.log_norm) || !std::isfinite(s.log_conorm))
    throw NumericError("cocycle: product_stats: non-finite singular values");
  return s;
}

struct DefectCertificate {
  int level = 0;
  double defect = 0.0;  // max over admissible level-words of (log_norm - log_conorm)/level
};

// Worst-case non-conformality per step at a fixed word length. Zero for
// conformal cocycles; for average conformal ones defect * level stays bounded.
inline DefectCertificate conformality_defect(const MatrixCocycle& c, const SubshiftSpec& spec, int n,
                                             const Limits& limits = {}) {
  if (spec.alphabet_size() != c.symbol_count())
    throw DomainError("cocycle: conformality_defect: alphabet size does not match generator count");
  DefectCertificate cert;
  cert.level = n;
  double worst = 0.0;
  for_each_word(spec, n, limits, [&](const Word& w) {
    const SingularStats s = product_stats(c, w);
    worst = std::max(worst, (s.log_norm - s.log_conorm) / static_cast<double>(n));
  });
  cert.defect = worst;
  return cert;
}

// Crude exponent window at length n: (min log_conorm / n, max log_norm / n).
inline std::pair<double, double> lyapunov_bounds(const MatrixCocycle& c, const SubshiftSpec& spec, int n,
                                                 const Limits& limits = {}) {
  if (spec.alphabet_size() != c.symbol_count())
    throw DomainError("cocycle: lyapunov_bounds: alphabet size does not match generator count");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for_each_word(spec, n, limits, [&](const Word& w) {
    const SingularStats s = product_stats(c, w);
    lo = std::min(lo, s.log_conorm / n);
    hi = std::max(hi, s.log_norm / n);
  });
  return {lo, hi};
}

struct HyperbolicityCertificate {
  bool certified = false;
  int block_length = 0;
  // Certified per-step rate: for unstable bundles the min of log_conorm / L
  // over admissible L-words (> 0 when certified); for stable bundles the max
  // of log_norm / L (< 0 when certified).
  double rate = 0.0;
};

// Searches the smallest block length L <= max_block_length at which every
// admissible L-word product is uniformly expanding (unstable) or contracting
// (stable). Returns certified = false, carrying the best rate seen, if none.
// The margin keeps rounding noise (rates within +-margin of zero) from
// producing a meaningless certificate.
inline HyperbolicityCertificate hyperbolicity_certificate(const MatrixCocycle& c, const SubshiftSpec& spec,
                                                          int max_block_length = 8,
                                                          const Limits& limits = {},
                                                          double margin = 1e-9) {
  if (spec.alphabet_size() != c.symbol_count())
    throw DomainError("cocycle: hyperbolicity_certificate: alphabet size does not match generator count");
  HyperbolicityCertificate best;
  for (int len = 1; len <= max_block_length; ++len) {
    double rate = c.orientation() == Bundle::Unstable ? std::numeric_limits<double>::infinity()
                                                      : -std::numeric_limits<double>::infinity();
    for_each_word(spec, len, limits, [&](const Word& w) {
      const SingularStats s = product_stats(c, w);
      if (c.orientation() == Bundle::Unstable)
        rate = std::min(rate, s.log_conorm / len);
      else
        rate = std::max(rate, s.log_norm / len);
    });
    const bool ok = c.orientation() == Bundle::Unstable ? rate > margin : rate < -margin;
    if (len == 1 || ok) {
      best.block_length = len;
      best.rate = rate;
    }
    if (ok) {
      best.certified = true;
      return best;
    }
  }
  best.certified = false;
  return best;
}

}  // namespace avedim
