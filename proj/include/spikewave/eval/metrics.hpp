#pragma once

#include <span>
#include <string>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/core/types.hpp"

namespace spikewave {

struct FeatureVector {
  std::vector<double> values;
  bool positive = false;
};

// Gaussian RBF network: every training vector is a centre; readout weights
// come from a ridge-regularized least-squares fit to +-1 labels.
class RbfModel {
 public:
  RbfModel() = default;
  RbfModel(std::vector<std::vector<double>> centers, std::vector<double> alpha,
           double sigma);

  double sigma() const { return sigma_; }
  std::span<const double> alpha() const { return alpha_; }
  double score(std::span<const double> x) const;
  std::vector<double> score_all(std::span<const FeatureVector> xs) const;

 private:
  std::vector<std::vector<double>> centers_;
  std::vector<double> alpha_;
  double sigma_ = 1.0;
};

// Width is the median pairwise distance among training vectors (1 when
// that is 0). Needs at least two examples of each class.
RbfModel rbf_train(std::span<const FeatureVector> train, double ridge);

double median_pairwise_distance(std::span<const FeatureVector> xs);

struct EquilibriumPoint {
  double accuracy = 0.0;
  double threshold = 0.0;
};

// Accuracy where the false-positive rate equals the miss rate. Candidate
// thresholds are the midpoints between sorted unique scores plus one below
// and one above the range; "positive" means score > threshold. When
// FPR - FNR changes sign between neighbouring candidates the crossing is
// linearly interpolated.
EquilibriumPoint equilibrium_accuracy(std::span<const double> scores,
                                      std::span<const std::uint8_t> labels);

// Mann-Whitney AUC, ties count one half.
double roc_auc(std::span<const double> scores,
               std::span<const std::uint8_t> labels);

// Mean over features of the number of weights strictly above `threshold`.
double count_selected_weights(const SynapseBank& bank, double threshold);

// 0.5 for the original rule, ln 2 for the probabilistic rule.
double selection_threshold(Rule rule);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

// Pooled-variance two-sample t-test, two-tailed. Zero pooled variance gives
// p = 0 for different means and p = 1 for equal means.
TTestResult t_test_two_tailed(std::span<const double> a,
                              std::span<const double> b);

// "", "*", "**", "***", "****" for p < 0.1, 0.05, 0.01, 0.005.
std::string significance_stars(double p);

}  // namespace spikewave
