// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status if
// any criterion fails. Tolerances are fixed here and must not be relaxed to
// make a run pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ppa/data.hpp"
#include "ppa/eval.hpp"
#include "ppa/geometry.hpp"
#include "ppa/infotheory.hpp"
#include "ppa/model.hpp"
#include "ppa/optim.hpp"
#include "ppa/pca.hpp"
#include "support.hpp"

namespace {

using namespace ppa;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <typename... A>
std::string fmtn(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

struct Named {
  std::string name;
  DataMatrix data;
};

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / "ppa_acceptance";
  fs::create_directories(p);
  return p;
}

// The five synthetic datasets plus two loaded from CSV files written here.
std::vector<Named> dataset_suite() {
  std::vector<Named> out;
  out.push_back({"parabola", test::parabola(1.0, 0.1, 1000, 101)});
  out.push_back({"parabola-curved", test::parabola(2.0, 0.3, 1000, 102)});
  out.push_back({"helix3d", test::helix3(2.0, 0.8, 0.1, 1000, 103)});
  out.push_back({"helix3d-noisy", test::helix3(2.0, 0.8, 0.6, 1000, 104)});
  out.push_back({"helix4d", test::helix4(2.0, 0.8, 0.1, 1000, 105).data});

  const fs::path dir = scratch_dir();
  const std::string a = (dir / "cloud6.csv").string();
  const std::string b = (dir / "cloud10.csv").string();
  save_dataset(a, test::curved_cloud(6, 1500, 106), {"f1", "f2", "f3", "f4", "f5", "f6"});
  save_dataset(b, test::curved_cloud(10, 2000, 107));
  out.push_back({"cloud6.csv", load_dataset(a, true).data});
  out.push_back({"cloud10.csv", load_dataset(b, true).data});
  return out;
}

FitConfig cv_config(int max_degree) {
  FitConfig c;
  c.degree = DegreePolicy::cross_validated(1, max_degree);
  return c;
}

constexpr int kSuiteMaxDegree = 12;

void perfect_reconstruction(const std::vector<Named>& suite) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string worst_name;
  for (const Named& d : suite) {
    const PpaModel m = fit(d.data, cv_config(kSuiteMaxDegree));
    const Matrix back = inverse_batch(m, forward(m, d.data));
    const double e = (back - d.data.values()).cwiseAbs().maxCoeff();
    if (e >= worst) {
      worst = e;
      worst_name = d.name;
    }
  }
  const double secs = seconds_since(t0);
  report("perfect_reconstruction", worst < 1e-9 && secs < 10.0,
         fmtn("max |inverse(forward(x)) - x| = %.3e (%s) over %zu datasets, %.2f s", worst, worst_name.c_str(),
              suite.size(), secs));
}

void volume_preservation(const std::vector<Named>& suite) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int models = 0;
  Rng rng(7);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 10; ++i) {
    const Named& d = suite[static_cast<std::size_t>(i) % suite.size()];
    FitConfig c = cv_config(kSuiteMaxDegree);
    c.seed = static_cast<std::uint64_t>(i);
    if (i >= static_cast<int>(suite.size())) c.strategy = Strategy::GradientDescent;
    const PpaModel m = fit(d.data, c);
    ++models;
    const Centered cen = center(d.data);
    const Vector sd = (cen.values.rowwise().squaredNorm() / static_cast<double>(d.data.samples() - 1)).cwiseSqrt();
    for (int k = 0; k < 100; ++k) {
      Vector p(d.data.dims());
      for (Eigen::Index j = 0; j < p.size(); ++j) p(j) = cen.mean(j) + sd(j) * nd(rng);
      worst = std::max(worst, std::abs(full_jacobian(m, p).log_abs_det));
    }
  }
  const double secs = seconds_since(t0);
  report("volume_preservation", worst < 1e-8 && secs < 30.0,
         fmtn("max |log|det J|| = %.3e over %d models x 100 points, %.2f s", worst, models, secs));
}

struct SuiteBenchmarks {
  std::vector<std::pair<std::string, BenchmarkReport>> reports;
};

SuiteBenchmarks run_benchmarks(const std::vector<Named>& suite) {
  SuiteBenchmarks out;
  for (const Named& d : suite) {
    BenchmarkConfig cfg;
    cfg.dataset = d.name;
    cfg.fit = cv_config(kSuiteMaxDegree);
    cfg.include_gd = true;
    // Benchmark MSE lives in the normalized [0, 1] domain.
    const DataMatrix x = d.name.ends_with(".csv") ? d.data : apply_scaling(fit_scaling(d.data), d.data);
    out.reports.emplace_back(d.name, rel_mse_benchmark(x, cfg, 10, 2024));
  }
  return out;
}

void property_two(const std::vector<Named>& suite, const SuiteBenchmarks& bench) {
  // Direct check on full fits.
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (const Named& d : suite) {
    const PpaModel m = fit(d.data, cv_config(kSuiteMaxDegree));
    const PcaModel p = fit_pca(d.data);
    for (Eigen::Index q = 1; q < d.data.dims(); ++q) {
      worst_excess = std::max(worst_excess, truncation_mse(m, d.data, q) - truncation_mse(p, d.data, q));
    }
  }
  // Reported benchmark rows.
  double worst_rel = 0.0;
  double curved_sum = 0.0;
  int curved_rows = 0;
  for (const auto& [name, r] : bench.reports) {
    for (const RelMseRow& row : r.rows) {
      if (row.method != "ppa" || row.split != "train") continue;
      worst_rel = std::max(worst_rel, row.mean);
      if (name.starts_with("parabola") || name.starts_with("helix")) {
        curved_sum += row.mean;
        ++curved_rows;
      }
    }
  }
  const double curved_mean = curved_sum / curved_rows;
  report("property2_truncation_vs_pca", worst_excess <= 1e-12 && worst_rel <= 100.0,
         fmtn("max MSE(PPA)-MSE(PCA) = %.3e, max reported train Rel.MSE(PPA) = %.6f", worst_excess, worst_rel));
  report("property2_mean_improvement", curved_mean <= 90.0,
         fmtn("mean train Rel.MSE(PPA) over parabola+helix suites = %.2f over %d rows (limit 90)", curved_mean,
              curved_rows));
}

void property_three(const std::vector<Named>& suite) {
  double worst_w = 0.0, worst_diff = 0.0;
  for (std::size_t i : {std::size_t{0}, std::size_t{2}, std::size_t{6}}) {
    const DataMatrix& x = suite[i].data;
    const PpaModel m = fit(x, test::fixed_degree(1));
    for (const PpaStep& s : m.steps()) worst_w = std::max(worst_w, s.coeffs.norm());
    const PcaModel p = fit_pca(x);
    const Matrix r = forward(m, x);
    for (Eigen::Index k = 0; k < x.samples(); ++k) {
      worst_diff = std::max(worst_diff, (r.col(k) - p.project(x.col(k))).cwiseAbs().maxCoeff());
    }
  }
  report("property3_linear_is_pca", worst_w < 1e-8 && worst_diff < 1e-8,
         fmtn("max ||W_p||_F = %.3e, max |PPA - PCA| = %.3e on 3 datasets", worst_w, worst_diff));
}

void property_one(const std::vector<Named>& suite) {
  double worst = 0.0;
  for (std::size_t i : {std::size_t{2}, std::size_t{4}, std::size_t{6}}) {
    const DataMatrix& x = suite[i].data;
    const FitConfig a = cv_config(kSuiteMaxDegree);
    FitConfig b = a;
    b.complement_rotation_seed = 1234 + i;
    const PpaModel ma = fit(x, a);
    const PpaModel mb = fit(x, b);
    for (Eigen::Index q = 1; q <= x.dims(); ++q) {
      worst = std::max(worst, std::abs(truncation_mse(ma, x, q) - truncation_mse(mb, x, q)));
    }
  }
  report("property1_complement_invariance", worst < 1e-8,
         fmtn("max |MSE_q(E) - MSE_q(G E)| = %.3e over 3 datasets, all q", worst));
}

void oracles(const std::vector<Named>& suite) {
  Rng rng(99);
  std::vector<PpaModel> models;
  for (const Named& d : suite) models.push_back(fit(d.data, cv_config(6)));
  double worst_j = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Named& d = suite[static_cast<std::size_t>(i) % suite.size()];
    const PpaModel& m = models[static_cast<std::size_t>(i) % suite.size()];
    std::uniform_int_distribution<Eigen::Index> pick(0, d.data.samples() - 1);
    const Vector p = d.data.col(pick(rng));
    const Matrix j = full_jacobian(m, p).jacobian;
    const Matrix fd = test::fd_jacobian([&](const Vector& v) { return forward(m, v); }, p, 1e-6);
    worst_j = std::max(worst_j, test::rel_error(j, fd));
  }
  double worst_g = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Named& d = suite[static_cast<std::size_t>(i) % suite.size()];
    const Matrix xc = center(d.data).values;
    const int g = 1 + i % 4;
    const Vector e = random_unit_vector(xc.rows(), rng);
    const Vector an = cost_gradient(e, xc, g);
    const Vector fd = test::fd_gradient([&](const Vector& v) { return cost(v, xc, g); }, e, 1e-6);
    worst_g = std::max(worst_g, test::rel_error(an, fd));
  }
  report("jacobian_oracle", worst_j < 1e-5, fmtn("max relative error vs central differences = %.3e (50 points)", worst_j));
  report("gradient_oracle", worst_g < 1e-4,
         fmtn("max relative error vs central differences = %.3e (100 triples, degree <= 4)", worst_g));
}

// Mean curvatures along the first principal curve over the central 80% of
// the training scores (10th to 90th percentile). Closer to the ends of the
// sampled range the polynomial's higher derivatives are dominated by edge
// effects, which the third curvature (a fourth derivative) amplifies most.
Vector mean_curvatures(const PpaModel& m, const DataMatrix& x, int points = 60, bool absolute = true) {
  const Matrix r = forward(m, x);
  std::vector<double> a(r.cols());
  for (Eigen::Index k = 0; k < r.cols(); ++k) a[static_cast<std::size_t>(k)] = r(0, k);
  std::sort(a.begin(), a.end());
  const double lo = a[static_cast<std::size_t>(0.10 * static_cast<double>(a.size() - 1))];
  const double hi = a[static_cast<std::size_t>(0.90 * static_cast<double>(a.size() - 1))];
  Vector sum = Vector::Zero(m.dims() - 1);
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * i / (points - 1);
    const Vector c = frenet_frame(m, t).curvatures;
    sum += absolute ? Vector(c.cwiseAbs()) : c;
  }
  return sum / points;
}

constexpr int kHelixMaxDegree = 20;

void helix_geometry() {
  const auto t0 = Clock::now();
  const auto [k1, k2] = helix_reference_curvatures(2.0, 0.8);
  const DataMatrix clean = test::helix3(2.0, 0.8, 0.1, 2000, 501);
  const DataMatrix noisy = test::helix3(2.0, 0.8, 0.6, 2000, 502);
  const PpaModel mc = fit(clean, cv_config(kHelixMaxDegree));
  const PpaModel mn = fit(noisy, cv_config(kHelixMaxDegree));
  const Vector cc = mean_curvatures(mc, clean);
  const Vector cn = mean_curvatures(mn, noisy);
  const double e1 = std::abs(cc(0) - k1) / k1;
  const double e2 = std::abs(cc(1) - k2) / k2;
  const double secs = seconds_since(t0);
  report("helix_curvature_sigma_0.1", e1 <= 0.15 && e2 <= 0.25 && secs < 120.0,
         fmtn("chi1 = %.6f (ref %.6f, err %.1f%%), chi2 = %.6f (ref %.6f, err %.1f%%), degree %d, %.2f s", cc(0), k1,
              100 * e1, cc(1), k2, 100 * e2, mc.degrees()[0], secs));
  report("helix_noise_overestimates", cn(0) > cc(0) && cn(1) > cc(1),
         fmtn("sigma=0.6: chi1 = %.6f, chi2 = %.6f vs sigma=0.1: chi1 = %.6f, chi2 = %.6f", cn(0), cn(1), cc(0), cc(1)));
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a), mb = mean_of(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

void helix_4d() {
  const auto t0 = Clock::now();
  double worst_ratio = 0.0;
  for (double sigma : {0.05, 0.1}) {
    const DataMatrix x = test::helix4(2.0, 0.8, sigma, 2000, 601).data;
    const Vector c = mean_curvatures(fit(x, cv_config(kHelixMaxDegree)), x);
    worst_ratio = std::max(worst_ratio, c(2) / c(0));
  }
  report("helix4d_third_curvature", worst_ratio < 0.15,
         fmtn("max over sigma in {0.05, 0.1} of mean|chi3| / mean chi1 = %.4f (limit 0.15)", worst_ratio));

  const double pairs[10][2] = {{1.0, 0.5}, {1.0, 0.8}, {1.5, 0.6}, {1.5, 1.0}, {2.0, 0.8},
                               {2.0, 1.2}, {2.5, 1.0}, {2.5, 1.5}, {3.0, 1.2}, {3.0, 1.8}};
  std::vector<double> t1, t2, e1, e2;
  for (int i = 0; i < 10; ++i) {
    const double a = pairs[i][0], b = pairs[i][1];
    const auto [r1, r2] = helix_reference_curvatures(a, b);
    const DataMatrix x = test::helix4(a, b, 0.05, 2000, 700 + static_cast<std::uint64_t>(i)).data;
    const Vector c = mean_curvatures(fit(x, cv_config(kHelixMaxDegree)), x);
    t1.push_back(r1);
    t2.push_back(r2);
    e1.push_back(c(0));
    e2.push_back(c(1));
  }
  const double p1 = pearson(t1, e1), p2 = pearson(t2, e2);
  report("helix4d_sweep_correlation", p1 > 0.9 && p2 > 0.9,
         fmtn("Pearson r(chi1) = %.4f, r(chi2) = %.4f over 10 (a,b) pairs at sigma=0.05, %.2f s", p1, p2,
              seconds_since(t0)));
}

void non_convexity() {
  // Curvature 3 makes x2 the high-variance axis, so PC1 runs along the
  // parabola's axis of symmetry while the projection onto PC2 is the good one.
  const DataMatrix x = test::parabola(3.0, 0.1, 1000, 801);
  const Matrix xc = center(x).values;
  const int degree = 2;
  std::vector<double> f(36);
  for (int i = 0; i < 36; ++i) {
    const double th = std::numbers::pi * i / 36.0;
    Vector e(2);
    e << std::cos(th), std::sin(th);
    f[static_cast<std::size_t>(i)] = cost(e, xc, degree);
  }
  int minima = 0;
  for (int i = 0; i < 36; ++i) {
    const double prev = f[static_cast<std::size_t>((i + 35) % 36)];
    const double next = f[static_cast<std::size_t>((i + 1) % 36)];
    if (f[static_cast<std::size_t>(i)] < prev && f[static_cast<std::size_t>(i)] < next) ++minima;
  }
  const double fmin = *std::min_element(f.begin(), f.end());
  const double fpca = cost(pca_split(xc).leading, xc, degree);
  report("cost_non_convexity", minima >= 2 && fmin < fpca,
         fmtn("%d local minima over 36 orientations, sweep min f = %.6e < f(PCA) = %.6e", minima, fmin, fpca));
}

void gd_dominance(const std::vector<Named>& suite, const SuiteBenchmarks& bench) {
  double worst_increase = -std::numeric_limits<double>::infinity();
  for (const Named& d : suite) {
    const Matrix xc = center(d.data).values;
    const Vector init = pca_split(xc).leading;
    for (int g = 1; g <= 4; ++g) {
      const DescentResult r = optimize_leading(xc, g, init, DescentOptions{});
      worst_increase = std::max(worst_increase, r.cost - r.initial_cost);
    }
  }
  double worst_gap = -std::numeric_limits<double>::infinity();
  std::string worst_name;
  for (const auto& [name, r] : bench.reports) {
    const double gap = r.find("ppa-gd", 1, "train").mean - r.find("ppa", 1, "train").mean;
    if (gap > worst_gap) {
      worst_gap = gap;
      worst_name = name;
    }
  }
  // Per-fit check on the full datasets as well.
  double worst_fit_gap = -std::numeric_limits<double>::infinity();
  for (const Named& d : suite) {
    FitConfig pc = cv_config(kSuiteMaxDegree);
    FitConfig gd = pc;
    gd.strategy = Strategy::GradientDescent;
    worst_fit_gap = std::max(worst_fit_gap, truncation_mse(fit(d.data, gd), d.data, 1) -
                                                truncation_mse(fit(d.data, pc), d.data, 1));
  }
  report("gd_dominance", worst_increase <= 0.0 && worst_gap <= 1e-10 && worst_fit_gap <= 1e-10,
         fmtn("max descent cost increase = %.3e, max q=1 MSE(GD)-MSE(PPA) = %.3e, max q=1 train "
              "Rel.MSE(GD)-Rel.MSE(PPA) = %.3e (%s)",
              worst_increase, worst_fit_gap, worst_gap, worst_name.c_str()));
}

void multi_information() {
  Rng rng(31);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  Vector g(100000), u(100000);
  for (auto& v : g) v = nd(rng);
  for (auto& v : u) v = ud(rng);
  const double eg = std::abs(marginal_entropy(g).bits - 0.5 * std::log2(2 * std::numbers::pi * std::numbers::e));
  const double eu = std::abs(marginal_entropy(u).bits - 1.0);
  report("entropy_estimator", eg < 0.05 && eu < 0.05,
         fmtn("|h - h_true|: gaussian %.4f bits, uniform %.4f bits at n=1e5 (limit 0.05)", eg, eu));

  Matrix cov(2, 2);
  cov << 1, 0.5, 0.5, 1;
  const DataMatrix x = test::gaussian(cov, 100000, 32);
  const PcaModel p = fit_pca(x);
  Matrix y(2, x.samples());
  for (Eigen::Index k = 0; k < y.cols(); ++k) y.col(k) = p.project(x.col(k));
  const double di = multi_info_reduction(x.values(), y).bits_per_dim;
  report("gaussian_pca_multi_info", std::abs(di - 0.1038) < 0.03,
         fmtn("PCA delta I = %.4f bits/dim (target 0.1038 +/- 0.03)", di));

  int wins = 0;
  std::string detail;
  for (int s = 0; s < 10; ++s) {
    DataMatrix d;
    const auto seed = 900 + static_cast<std::uint64_t>(s);
    switch (s % 3) {
      case 0: d = test::parabola(1.0, 0.1, 5000, seed); break;
      case 1: d = test::helix3(2.0, 0.8, 0.1, 5000, seed); break;
      default: d = test::helix4(2.0, 0.8, 0.1, 5000, seed).data; break;
    }
    const PpaModel m = fit(d, cv_config(kHelixMaxDegree));
    const PcaModel pc = fit_pca(d);
    Matrix yp(d.dims(), d.samples());
    for (Eigen::Index k = 0; k < yp.cols(); ++k) yp.col(k) = pc.project(d.col(k));
    const double ippa = multi_info_reduction(d.values(), forward(m, d)).bits_per_dim;
    const double ipca = multi_info_reduction(d.values(), yp).bits_per_dim;
    wins += ippa > ipca;
    detail += fmtn(" %.3f/%.3f", ippa, ipca);
  }
  report("nonlinear_multi_info", wins >= 8, fmtn("PPA > PCA in %d of 10 runs (PPA/PCA bits:", wins) + detail + ")");
}

void knn_benefit() {
  const auto t0 = Clock::now();
  // Two parabolas of curvature 1.5 offset by 0.5 vertically, noise 0.1;
  // 300 samples per class, 50 per class train, the rest test. The curvature
  // keeps var(x1) > var(x2), so the pooled first principal direction is x1.
  const LabeledData ld = gen_parabola_classes(1.5, 0.5, 0.1, 300, 1001);
  KnnExperiment cfg;
  cfg.ks = {1, 5, 15};
  cfg.train_per_class = 50;
  cfg.repeats = 10;
  cfg.seed = 77;
  const auto rows = knn_experiment(ld.data, ld.labels, cfg);
  auto acc = [&](KnnMetric m, int k) {
    for (const KnnRow& r : rows)
      if (r.metric == m && r.k == k) return r.mean;
    return std::nan("");
  };
  bool ok = true;
  std::string detail;
  double lo_p = 1, hi_p = 0, lo_e = 1, hi_e = 0;
  for (int k : cfg.ks) {
    const double e = acc(KnnMetric::Euclidean, k), m = acc(KnnMetric::Mahalanobis, k), p = acc(KnnMetric::PpaWhitened, k);
    ok = ok && p >= m && p >= e;
    lo_p = std::min(lo_p, p);
    hi_p = std::max(hi_p, p);
    lo_e = std::min(lo_e, e);
    hi_e = std::max(hi_e, e);
    detail += fmtn(" k=%d euclid %.4f mahal %.4f ppa %.4f;", k, e, m, p);
  }
  ok = ok && (hi_p - lo_p) <= (hi_e - lo_e);
  report("knn_metric_benefit", ok,
         detail + fmtn(" spread ppa %.4f vs euclid %.4f, %.2f s", hi_p - lo_p, hi_e - lo_e, seconds_since(t0)));
}

void uci_scale() {
  std::string path;
  if (const char* env = std::getenv("PPA_UCI_CSV"); env && *env) {
    path = env;
  } else {
    path = (scratch_dir() / "uci_shape_19020x10.csv").string();
    save_dataset(path, test::curved_cloud(10, 19020, 1201));
  }
  const auto t0 = Clock::now();
  const LoadedDataset ds = load_dataset(path, true);
  const PpaModel m = fit(ds.data, FitConfig{});
  const double secs = seconds_since(t0);
  const double rec = (inverse_batch(m, forward(m, ds.data)) - ds.data.values()).cwiseAbs().maxCoeff();
  report("uci_scale_fit", secs < 60.0 && rec < 1e-9,
         fmtn("pca-based fit of %ld x %ld CSV in %.2f s (limit 60 s), reconstruction error %.3e",
              static_cast<long>(ds.data.samples()), static_cast<long>(ds.data.dims()), secs, rec));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  try {
    const std::vector<Named> suite = dataset_suite();
    perfect_reconstruction(suite);
    volume_preservation(suite);
    const SuiteBenchmarks bench = run_benchmarks(suite);
    property_two(suite, bench);
    property_three(suite);
    property_one(suite);
    oracles(suite);
    helix_geometry();
    helix_4d();
    non_convexity();
    gd_dominance(suite, bench);
    multi_information();
    knn_benefit();
    uci_scale();
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance_harness: unexpected exception: %s\n", e.what());
    ++g_failures;
  }
  std::printf("%s: %d failing criteria, %.1f s total\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
