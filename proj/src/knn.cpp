#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>

#include "ppa/eval.hpp"
#include "ppa/geometry.hpp"
#include "ppa/kernels.hpp"
#include "ppa/pca.hpp"
#include "ppa/random.hpp"

namespace ppa {

const char* to_string(KnnMetric m) {
  switch (m) {
    case KnnMetric::Euclidean: return "euclidean";
    case KnnMetric::Mahalanobis: return "mahalanobis";
    case KnnMetric::PpaWhitened: return "ppa-whitened";
  }
  return "unknown";
}

KnnMetric parse_knn_metric(const std::string& name) {
  if (name == "euclidean") return KnnMetric::Euclidean;
  if (name == "mahalanobis") return KnnMetric::Mahalanobis;
  if (name == "ppa-whitened" || name == "ppa") return KnnMetric::PpaWhitened;
  throw Error(ErrorKind::Parse, "unknown metric '" + name + "'");
}

KnnEmbedding::KnnEmbedding(KnnMetric metric, const DataMatrix& train, const FitConfig& ppa_config)
    : metric_(metric) {
  switch (metric) {
    case KnnMetric::Euclidean:
      break;
    case KnnMetric::Mahalanobis: {
      const Centered c = center(train);
      const EigenBasis basis = covariance_eigenbasis(c.values);
      if (!(basis.values.minCoeff() > 0.0)) {
        throw Error(ErrorKind::RankDeficient, "training covariance is singular; mahalanobis whitening undefined");
      }
      mean_ = c.mean;
      whitening_ = basis.values.cwiseSqrt().cwiseInverse().asDiagonal() * basis.vectors.transpose();
      break;
    }
    case KnnMetric::PpaWhitened: {
      model_ = fit(train, ppa_config);
      inv_std_ = whitened_variances(model_, train).cwiseSqrt().cwiseInverse();
      break;
    }
  }
}

Matrix KnnEmbedding::map(const DataMatrix& x) const {
  switch (metric_) {
    case KnnMetric::Euclidean: return x.values();
    case KnnMetric::Mahalanobis: return whitening_ * (x.values().colwise() - mean_);
    case KnnMetric::PpaWhitened: return inv_std_.asDiagonal() * forward(model_, x);
  }
  return x.values();
}

std::vector<int> knn_predict(const Matrix& train, const std::vector<int>& train_labels, const Matrix& test, int k) {
  const Eigen::Index n = train.cols();
  if (static_cast<Eigen::Index>(train_labels.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "one label per training sample required");
  }
  if (k < 1) throw Error(ErrorKind::OutOfRange, "k must be >= 1");
  if (k > n) throw Error(ErrorKind::OutOfRange, "k exceeds the training set size");
  if (train.rows() != test.rows()) throw Error(ErrorKind::DimensionMismatch, "train/test dimension mismatch");

  const kernels::Table& kt = kernels::active();
  const auto dim = static_cast<std::size_t>(train.rows());
  std::vector<int> out(static_cast<std::size_t>(test.cols()));
  std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(n));
  for (Eigen::Index t = 0; t < test.cols(); ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      dist[static_cast<std::size_t>(i)] = {kt.squared_distance(test.col(t).data(), train.col(i).data(), dim), i};
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    std::map<int, int> votes;
    for (int j = 0; j < k; ++j) ++votes[train_labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(j)].second)]];
    int best = -1;
    int best_label = 0;
    bool tied = false;
    for (const auto& [label, count] : votes) {
      if (count > best) {
        best = count;
        best_label = label;
        tied = false;
      } else if (count == best) {
        tied = true;
      }
    }
    out[static_cast<std::size_t>(t)] = tied ? train_labels[static_cast<std::size_t>(dist.front().second)] : best_label;
  }
  return out;
}

double knn_classify(const DataMatrix& train, const std::vector<int>& train_labels, const DataMatrix& test,
                    const std::vector<int>& test_labels, int k, KnnMetric metric, const FitConfig& ppa_config) {
  if (static_cast<Eigen::Index>(test_labels.size()) != test.samples()) {
    throw Error(ErrorKind::DimensionMismatch, "one label per test sample required");
  }
  if (test.samples() == 0) throw Error(ErrorKind::InsufficientSamples, "empty test set");
  if (k > train.samples()) throw Error(ErrorKind::OutOfRange, "k exceeds the training set size");
  const KnnEmbedding emb(metric, train, ppa_config);
  const std::vector<int> pred = knn_predict(emb.map(train), train_labels, emb.map(test), k);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == test_labels[i];
  return static_cast<double>(correct) / static_cast<double>(pred.size());
}

std::vector<KnnRow> knn_experiment(const DataMatrix& x, const std::vector<int>& labels, const KnnExperiment& cfg) {
  if (static_cast<Eigen::Index>(labels.size()) != x.samples()) {
    throw Error(ErrorKind::DimensionMismatch, "one label per sample required");
  }
  if (cfg.repeats < 1) throw Error(ErrorKind::OutOfRange, "repeats must be >= 1");
  std::map<int, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < x.samples(); ++i) by_class[labels[static_cast<std::size_t>(i)]].push_back(i);
  for (const auto& [label, idx] : by_class) {
    if (static_cast<Eigen::Index>(idx.size()) <= cfg.train_per_class) {
      throw Error(ErrorKind::InsufficientSamples,
                  "class " + std::to_string(label) + " has too few samples for the requested training size");
    }
  }

  // acc[metric][k] over repeats
  std::vector<std::vector<std::vector<double>>> acc(cfg.metrics.size(),
                                                    std::vector<std::vector<double>>(cfg.ks.size()));
  Eigen::Index n_train = 0;
  for (int r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t rs = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
    Rng rng(rs);
    std::vector<Eigen::Index> train_idx, test_idx;
    for (const auto& [label, idx] : by_class) {
      const auto perm = random_permutation(static_cast<Eigen::Index>(idx.size()), rng);
      for (std::size_t j = 0; j < perm.size(); ++j) {
        const Eigen::Index i = idx[static_cast<std::size_t>(perm[j])];
        (static_cast<Eigen::Index>(j) < cfg.train_per_class ? train_idx : test_idx).push_back(i);
      }
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    const DataMatrix train = x.columns(train_idx);
    const DataMatrix test = x.columns(test_idx);
    std::vector<int> train_labels, test_labels;
    for (auto i : train_idx) train_labels.push_back(labels[static_cast<std::size_t>(i)]);
    for (auto i : test_idx) test_labels.push_back(labels[static_cast<std::size_t>(i)]);
    n_train = train.samples();

    for (std::size_t mi = 0; mi < cfg.metrics.size(); ++mi) {
      FitConfig fc = cfg.ppa;
      fc.seed = derive_seed(rs, 1);
      const KnnEmbedding emb(cfg.metrics[mi], train, fc);
      const Matrix tr = emb.map(train);
      const Matrix te = emb.map(test);
      for (std::size_t ki = 0; ki < cfg.ks.size(); ++ki) {
        const std::vector<int> pred = knn_predict(tr, train_labels, te, cfg.ks[ki]);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == test_labels[i];
        acc[mi][ki].push_back(static_cast<double>(correct) / static_cast<double>(pred.size()));
      }
    }
  }

  std::vector<KnnRow> rows;
  for (std::size_t mi = 0; mi < cfg.metrics.size(); ++mi)
    for (std::size_t ki = 0; ki < cfg.ks.size(); ++ki)
      rows.push_back({cfg.metrics[mi], cfg.ks[ki], n_train, mean_of(acc[mi][ki]), stddev_of(acc[mi][ki])});
  return rows;
}

void write_knn_csv(std::ostream& os, const std::vector<KnnRow>& rows, bool header) {
  if (header) os << "metric,k,n_train,accuracy_mean,accuracy_std\n";
  char buf[64];
  for (const KnnRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g", r.mean, r.stddev);
    os << to_string(r.metric) << ',' << r.k << ',' << r.n_train << ',' << buf << '\n';
  }
}

}  // namespace ppa
