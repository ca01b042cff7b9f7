#include "spikewave/eval/metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "spikewave/core/error.hpp"

namespace spikewave {
namespace {

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] - b[i];
    d += x * x;
  }
  return d;
}

void require_both_classes(std::span<const double> scores,
                          std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError("scores and labels differ in length");
  }
  const auto pos = std::count_if(labels.begin(), labels.end(),
                                 [](std::uint8_t l) { return l != 0; });
  if (pos == 0 || pos == static_cast<std::ptrdiff_t>(labels.size())) {
    throw DomainError("both classes must be present");
  }
}

}  // namespace

RbfModel::RbfModel(std::vector<std::vector<double>> centers,
                   std::vector<double> alpha, double sigma)
    : centers_(std::move(centers)), alpha_(std::move(alpha)), sigma_(sigma) {
  if (centers_.size() != alpha_.size()) {
    throw DimensionError("one readout weight per centre is required");
  }
  if (!(sigma_ > 0.0)) throw DomainError("RBF width must be positive");
}

double RbfModel::score(std::span<const double> x) const {
  const double inv = 1.0 / (2.0 * sigma_ * sigma_);
  double s = 0.0;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (centers_[i].size() != x.size()) {
      throw DimensionError("feature length does not match the model");
    }
    s += alpha_[i] * std::exp(-sq_distance(centers_[i], x) * inv);
  }
  return s;
}

std::vector<double> RbfModel::score_all(std::span<const FeatureVector> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const FeatureVector& x : xs) out.push_back(score(x.values));
  return out;
}

double median_pairwise_distance(std::span<const FeatureVector> xs) {
  std::vector<double> d;
  d.reserve(xs.size() * (xs.size() - 1) / 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      d.push_back(std::sqrt(sq_distance(xs[i].values, xs[j].values)));
    }
  }
  if (d.empty()) return 0.0;
  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid), d.end());
  const double upper = d[mid];
  if (d.size() % 2 == 1) return upper;
  const double lower = *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

RbfModel rbf_train(std::span<const FeatureVector> train, double ridge) {
  std::size_t pos = 0;
  for (const FeatureVector& x : train) pos += x.positive ? 1 : 0;
  if (pos < 2 || train.size() - pos < 2) {
    throw DomainError("RBF training needs at least two examples per class");
  }
  if (!(ridge >= 0.0)) throw DomainError("ridge must be non-negative");
  const std::size_t dim = train.front().values.size();
  for (const FeatureVector& x : train) {
    if (x.values.size() != dim) throw DimensionError("ragged feature vectors");
  }

  double sigma = median_pairwise_distance(train);
  if (!(sigma > 0.0)) sigma = 1.0;
  const double inv = 1.0 / (2.0 * sigma * sigma);
  const auto n = static_cast<Eigen::Index>(train.size());
  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = train[static_cast<std::size_t>(i)].positive ? 1.0 : -1.0;
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::exp(-sq_distance(train[static_cast<std::size_t>(i)].values,
                                             train[static_cast<std::size_t>(j)].values) *
                                inv);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  // The kernel matrix is PSD; the ridge makes it definite. A jitter retry
  // covers ridge = 0 with duplicated vectors.
  Eigen::MatrixXd a = k;
  a.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    a.diagonal().array() += 1e-10;
    llt.compute(a);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("RBF kernel matrix is not positive definite");
    }
  }
  const Eigen::VectorXd alpha = llt.solve(y);

  std::vector<std::vector<double>> centers;
  centers.reserve(train.size());
  for (const FeatureVector& x : train) centers.push_back(x.values);
  return RbfModel(std::move(centers),
                  std::vector<double>(alpha.data(), alpha.data() + alpha.size()),
                  sigma);
}

EquilibriumPoint equilibrium_accuracy(std::span<const double> scores,
                                      std::span<const std::uint8_t> labels) {
  require_both_classes(scores, labels);
  std::vector<double> uniq(scores.begin(), scores.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

  std::vector<double> cand;
  cand.reserve(uniq.size() + 1);
  cand.push_back(uniq.front() - 1.0);
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
    cand.push_back(0.5 * (uniq[i] + uniq[i + 1]));
  }
  cand.push_back(uniq.back() + 1.0);

  double n_pos = 0.0;
  double n_neg = 0.0;
  for (std::uint8_t l : labels) (l ? n_pos : n_neg) += 1.0;

  // Rates at each candidate; scores are counted in one sorted sweep.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> fpr(cand.size());
  std::vector<double> fnr(cand.size());
  std::size_t idx = 0;
  double pos_below = 0.0;
  double neg_below = 0.0;
  for (std::size_t c = 0; c < cand.size(); ++c) {
    while (idx < order.size() && scores[order[idx]] <= cand[c]) {
      (labels[order[idx]] ? pos_below : neg_below) += 1.0;
      ++idx;
    }
    fnr[c] = pos_below / n_pos;
    fpr[c] = (n_neg - neg_below) / n_neg;
  }

  // FPR - FNR is non-increasing along the candidates.
  EquilibriumPoint best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cand.size(); ++c) {
    const double gap = std::abs(fpr[c] - fnr[c]);
    if (gap < best_gap) {
      best_gap = gap;
      best = {1.0 - 0.5 * (fpr[c] + fnr[c]), cand[c]};
    }
  }
  if (best_gap == 0.0) return best;
  for (std::size_t c = 0; c + 1 < cand.size(); ++c) {
    const double d0 = fpr[c] - fnr[c];
    const double d1 = fpr[c + 1] - fnr[c + 1];
    if (d0 > 0.0 && d1 < 0.0) {
      const double f = d0 / (d0 - d1);
      const double fp = fpr[c] + f * (fpr[c + 1] - fpr[c]);
      const double fn = fnr[c] + f * (fnr[c + 1] - fnr[c]);
      return {1.0 - 0.5 * (fp + fn), cand[c] + f * (cand[c + 1] - cand[c])};
    }
  }
  return best;
}

double roc_auc(std::span<const double> scores,
               std::span<const std::uint8_t> labels) {
  require_both_classes(scores, labels);
  // Rank-sum with average ranks for ties.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  double n_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        rank_sum += avg;
        n_pos += 1.0;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(scores.size()) - n_pos;
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double count_selected_weights(const SynapseBank& bank, double threshold) {
  if (bank.n_features() == 0) return 0.0;
  std::size_t total = 0;
  for (double w : bank.all()) total += w > threshold ? 1 : 0;
  return static_cast<double>(total) / static_cast<double>(bank.n_features());
}

double selection_threshold(Rule rule) {
  return rule == Rule::Probabilistic ? std::log(2.0) : 0.5;
}

TTestResult t_test_two_tailed(std::span<const double> a,
                              std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DomainError("each t-test sample needs at least two values");
  }
  const auto mean = [](std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  };
  const auto ss = [](std::span<const double> x, double m) {
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s;
  };
  const double ma = mean(a);
  const double mb = mean(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  TTestResult r;
  r.df = na + nb - 2.0;
  const double pooled = (ss(a, ma) + ss(b, mb)) / r.df;
  const double se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  if (!(se > 0.0)) {
    if (ma == mb) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = ma > mb ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
    return r;
  }
  r.t = (ma - mb) / se;
  const boost::math::students_t dist(r.df);
  r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  return r;
}

std::string significance_stars(double p) {
  if (p < 0.005) return "****";
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

}  // namespace spikewave
