#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppa/model.hpp"
#include "ppa/types.hpp"

namespace ppa {

struct BenchmarkConfig {
  std::string dataset = "data";
  FitConfig fit;          // pca-based PPA; strategy is overridden per method
  bool include_gd = false;
  double train_fraction = 0.5;
  Eigen::Index max_dims = 0;  // 0 = all dimensions, otherwise keep the leading columns
};

struct RelMseRow {
  std::string method;  // pca, ppa, ppa-gd
  Eigen::Index q = 0;
  std::string split;   // train, test
  double mean = 0.0;
  double stddev = 0.0;
};

struct BenchmarkReport {
  std::string dataset;
  int repeats = 0;
  std::vector<std::uint64_t> repeat_seeds;
  std::vector<RelMseRow> rows;
  // Per repeat, per method (ppa, then ppa-gd if enabled), the degree of every step.
  std::vector<std::vector<std::vector<int>>> degrees;
  std::vector<std::vector<double>> fit_seconds;  // same layout as degrees

  const RelMseRow& find(const std::string& method, Eigen::Index q, const std::string& split) const;
};

// For each repeat: seeded 50/50 split, fit PCA and PPA (and PPA-GD) on the
// train part, truncation MSE for q = 1 .. d-1 on both parts as a percentage
// of PCA's MSE at the same q, then mean and sample std over repeats.
BenchmarkReport rel_mse_benchmark(const DataMatrix& x, const BenchmarkConfig& config, int repeats, std::uint64_t seed);

// dataset,method,q,split,rel_mse_mean,rel_mse_std,repeats
void write_report_csv(std::ostream& os, const BenchmarkReport& report, bool header = true);

enum class KnnMetric { Euclidean, Mahalanobis, PpaWhitened };

const char* to_string(KnnMetric m);
KnnMetric parse_knn_metric(const std::string& name);

// Maps samples into the space where the metric is Euclidean. Fitted on the
// training data only.
class KnnEmbedding {
 public:
  KnnEmbedding(KnnMetric metric, const DataMatrix& train, const FitConfig& ppa_config);
  Matrix map(const DataMatrix& x) const;

 private:
  KnnMetric metric_;
  Vector mean_;
  Matrix whitening_;  // mahalanobis: diag(1/sqrt(lambda)) U^T
  PpaModel model_;
  Vector inv_std_;    // ppa-whitened: 1/sqrt(variances)
};

// Majority vote among the k nearest training samples; a tied vote takes the
// label of the single nearest one. Distance ties keep training order.
std::vector<int> knn_predict(const Matrix& train, const std::vector<int>& train_labels, const Matrix& test, int k);

double knn_classify(const DataMatrix& train, const std::vector<int>& train_labels, const DataMatrix& test,
                    const std::vector<int>& test_labels, int k, KnnMetric metric,
                    const FitConfig& ppa_config = FitConfig{});

struct KnnRow {
  KnnMetric metric = KnnMetric::Euclidean;
  int k = 1;
  Eigen::Index n_train = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct KnnExperiment {
  std::vector<int> ks = {1, 5, 15};
  std::vector<KnnMetric> metrics = {KnnMetric::Euclidean, KnnMetric::Mahalanobis, KnnMetric::PpaWhitened};
  Eigen::Index train_per_class = 50;
  int repeats = 10;
  std::uint64_t seed = 0;
  FitConfig ppa;
};

// Each repeat draws train_per_class samples of every class (seeded) for
// training; all remaining samples are the test set.
std::vector<KnnRow> knn_experiment(const DataMatrix& x, const std::vector<int>& labels, const KnnExperiment& cfg);

// metric,k,n_train,accuracy_mean,accuracy_std
void write_knn_csv(std::ostream& os, const std::vector<KnnRow>& rows, bool header = true);

double mean_of(const std::vector<double>& v);
// Sample standard deviation (n-1); 0 for fewer than two values.
double stddev_of(const std::vector<double>& v);

}  // namespace ppa
