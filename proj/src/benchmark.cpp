#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "ppa/data.hpp"
#include "ppa/eval.hpp"
#include "ppa/random.hpp"

namespace ppa {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

const RelMseRow& BenchmarkReport::find(const std::string& method, Eigen::Index q, const std::string& split) const {
  for (const RelMseRow& r : rows)
    if (r.method == method && r.q == q && r.split == split) return r;
  throw Error(ErrorKind::OutOfRange, "no report row for " + method + " q=" + std::to_string(q) + " " + split);
}

namespace {

double relative(double mse, double pca_mse) {
  if (pca_mse > 0.0) return 100.0 * mse / pca_mse;
  return mse > 0.0 ? std::numeric_limits<double>::infinity() : 100.0;
}

struct Method {
  std::string name;
  Strategy strategy;
};

}  // namespace

BenchmarkReport rel_mse_benchmark(const DataMatrix& x_in, const BenchmarkConfig& config, int repeats,
                                  std::uint64_t seed) {
  if (repeats < 1) throw Error(ErrorKind::OutOfRange, "repeats must be >= 1");
  if (config.max_dims < 0) throw Error(ErrorKind::OutOfRange, "max dims must be >= 0");
  config.fit.validate();

  DataMatrix x = x_in;
  if (config.max_dims > 0 && config.max_dims < x.dims()) {
    x = DataMatrix(x_in.values().topRows(config.max_dims));
  }
  const Eigen::Index d = x.dims();
  if (d < 2) throw Error(ErrorKind::InvalidData, "benchmark needs at least 2 dimensions");

  std::vector<Method> methods = {{"ppa", Strategy::PcaBased}};
  if (config.include_gd) methods.push_back({"ppa-gd", Strategy::GradientDescent});

  // rel[method][split][q-1] -> values over repeats; method 0 is pca.
  const std::size_t n_methods = methods.size() + 1;
  std::vector<std::vector<std::vector<std::vector<double>>>> rel(
      n_methods, std::vector<std::vector<std::vector<double>>>(
                     2, std::vector<std::vector<double>>(static_cast<std::size_t>(d - 1))));

  BenchmarkReport report;
  report.dataset = config.dataset;
  report.repeats = repeats;
  for (int r = 0; r < repeats; ++r) {
    const std::uint64_t rs = derive_seed(seed, static_cast<std::uint64_t>(r));
    report.repeat_seeds.push_back(rs);
    const Split parts = split(x, config.train_fraction, rs);
    const DataMatrix* sets[2] = {&parts.train, &parts.test};

    const PcaModel pca = fit_pca(parts.train);
    std::vector<std::vector<double>> pca_mse(2, std::vector<double>(static_cast<std::size_t>(d - 1)));
    for (int s = 0; s < 2; ++s)
      for (Eigen::Index q = 1; q < d; ++q)
        pca_mse[s][static_cast<std::size_t>(q - 1)] = truncation_mse(pca, *sets[s], q);

    std::vector<std::vector<int>> rep_degrees;
    std::vector<double> rep_seconds;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      FitConfig fc = config.fit;
      fc.strategy = methods[mi].strategy;
      fc.seed = derive_seed(rs, 1);
      const auto t0 = std::chrono::steady_clock::now();
      const PpaModel model = fit(parts.train, fc);
      rep_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      rep_degrees.push_back(model.degrees());
      for (int s = 0; s < 2; ++s) {
        for (Eigen::Index q = 1; q < d; ++q) {
          const auto qi = static_cast<std::size_t>(q - 1);
          rel[mi + 1][s][qi].push_back(relative(truncation_mse(model, *sets[s], q), pca_mse[s][qi]));
        }
      }
    }
    for (int s = 0; s < 2; ++s)
      for (Eigen::Index q = 1; q < d; ++q) rel[0][s][static_cast<std::size_t>(q - 1)].push_back(100.0);
    report.degrees.push_back(std::move(rep_degrees));
    report.fit_seconds.push_back(std::move(rep_seconds));
  }

  const char* split_names[2] = {"train", "test"};
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    const std::string name = mi == 0 ? "pca" : methods[mi - 1].name;
    for (Eigen::Index q = 1; q < d; ++q) {
      for (int s = 0; s < 2; ++s) {
        const auto& vals = rel[mi][s][static_cast<std::size_t>(q - 1)];
        report.rows.push_back({name, q, split_names[s], mean_of(vals), stddev_of(vals)});
      }
    }
  }
  return report;
}

void write_report_csv(std::ostream& os, const BenchmarkReport& report, bool header) {
  if (header) os << "dataset,method,q,split,rel_mse_mean,rel_mse_std,repeats\n";
  char buf[64];
  for (const RelMseRow& r : report.rows) {
    os << report.dataset << ',' << r.method << ',' << r.q << ',' << r.split << ',';
    std::snprintf(buf, sizeof buf, "%.10g,%.10g", r.mean, r.stddev);
    os << buf << ',' << report.repeats << '\n';
  }
}

}  // namespace ppa
