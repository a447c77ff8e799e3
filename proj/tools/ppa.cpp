// ppa: command-line front end for fitting, transforming and evaluating
// Principal Polynomial Analysis models.
//
// Exit status: 0 success, 1 usage error, 2 data or I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ppa/data.hpp"
#include "ppa/eval.hpp"
#include "ppa/geometry.hpp"
#include "ppa/infotheory.hpp"
#include "ppa/model.hpp"
#include "ppa/model_io.hpp"
#include "ppa/pca.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

// Writes to the named file, or stdout for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ppa::Error(ppa::ErrorKind::Io, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_warnings(const ppa::PpaModel& m) {
  for (const auto& w : m.warnings()) std::cerr << "warning: " << w << '\n';
}

struct GenArgs {
  std::string kind = "parabola2d";
  double a = 2.0, b = 0.8, curvature = 1.0, offset = 0.0, sigma = 0.0;
  long n = 1000;
  std::uint64_t seed = 0;
  std::string output;
};

int run_gen(const GenArgs& g) {
  Output out(g.output);
  if (g.kind == "parabola-classes") {
    const ppa::LabeledData ld = ppa::gen_parabola_classes(g.curvature, g.offset, g.sigma, g.n, g.seed);
    ppa::Matrix rows(ld.data.samples(), 3);
    rows.leftCols(2) = ld.data.values().transpose();
    for (std::size_t i = 0; i < ld.labels.size(); ++i) rows(static_cast<Eigen::Index>(i), 2) = ld.labels[i];
    ppa::write_csv(out.stream(), rows, {"x1", "x2", "label"});
    return 0;
  }
  ppa::SyntheticSpec spec;
  spec.kind = ppa::parse_synthetic_kind(g.kind);
  spec.a = g.a;
  spec.b = g.b;
  spec.curvature = g.curvature;
  spec.offset = g.offset;
  spec.sigma = g.sigma;
  spec.n = g.n;
  spec.seed = g.seed;
  const ppa::DataMatrix x = ppa::generate(spec);
  ppa::write_csv(out.stream(), x.values().transpose());
  return 0;
}

struct FitArgs {
  std::string input, output;
  std::string strategy = "pca";
  int min_degree = 1;
  int max_degree = 5;
  int degree = 0;
  double cv_fraction = 0.5;
  int gd_iters = 200;
  double gd_tol = 1e-7;
  int gd_restarts = 0;
  std::uint64_t seed = 0;
  bool normalize = false;
};

ppa::FitConfig make_config(const FitArgs& f) {
  ppa::FitConfig c;
  c.strategy = ppa::parse_strategy(f.strategy);
  c.degree = f.degree > 0 ? ppa::DegreePolicy::fixed(f.degree)
                          : ppa::DegreePolicy::cross_validated(f.min_degree, f.max_degree);
  c.cv_fraction = f.cv_fraction;
  c.seed = f.seed;
  c.descent.max_iters = f.gd_iters;
  c.descent.gradient_tolerance = f.gd_tol;
  c.descent.restarts = f.gd_restarts;
  c.descent.seed = f.seed;
  c.validate();
  return c;
}

int run_fit(const FitArgs& f) {
  const ppa::FitConfig config = make_config(f);
  const ppa::LoadedDataset ds = ppa::load_dataset(f.input, f.normalize);
  const ppa::PpaModel model = ppa::fit(ds.data, config);
  print_warnings(model);
  if (f.output.empty() || f.output == "-") {
    ppa::write_model(std::cout, model);
  } else {
    ppa::save_model(f.output, model);
  }
  std::cerr << "degrees:";
  for (int d : model.degrees()) std::cerr << ' ' << d;
  std::cerr << '\n';
  return 0;
}

void check_dims(const ppa::PpaModel& m, const ppa::DataMatrix& x) {
  if (m.dims() != x.dims()) {
    throw ppa::Error(ppa::ErrorKind::DimensionMismatch, "input has " + std::to_string(x.dims()) +
                                                            " columns, model expects " + std::to_string(m.dims()));
  }
}

int run_transform(const std::string& model_path, const std::string& input, const std::string& output) {
  const ppa::PpaModel model = ppa::load_model(model_path);
  const ppa::LoadedDataset ds = ppa::load_dataset(input, false);
  check_dims(model, ds.data);
  Output out(output);
  ppa::write_csv(out.stream(), ppa::forward(model, ds.data).transpose());
  return 0;
}

int run_reconstruct(const std::string& model_path, const std::string& input, const std::string& output, long keep,
                    bool transformed) {
  const ppa::PpaModel model = ppa::load_model(model_path);
  const ppa::LoadedDataset ds = ppa::load_dataset(input, false);
  check_dims(model, ds.data);
  const Eigen::Index q = keep > 0 ? keep : model.dims();
  const ppa::Matrix r = transformed ? ds.data.values() : ppa::forward(model, ds.data);
  ppa::Matrix rec(model.dims(), r.cols());
  for (Eigen::Index k = 0; k < r.cols(); ++k) rec.col(k) = ppa::reconstruct_truncated(model, r.col(k), q);
  Output out(output);
  ppa::write_csv(out.stream(), rec.transpose());
  return 0;
}

struct BenchArgs {
  std::string input, output, dataset;
  int repeats = 10;
  std::uint64_t seed = 0;
  bool gd = false;
  bool no_normalize = false;
  long max_dims = 0;
  int max_degree = 5;
};

int run_benchmark(const BenchArgs& b) {
  const ppa::LoadedDataset ds = ppa::load_dataset(b.input, !b.no_normalize);
  ppa::BenchmarkConfig cfg;
  cfg.dataset = b.dataset.empty() ? b.input.substr(b.input.find_last_of('/') + 1) : b.dataset;
  cfg.fit.degree = ppa::DegreePolicy::cross_validated(1, b.max_degree);
  cfg.include_gd = b.gd;
  cfg.max_dims = b.max_dims;
  const ppa::BenchmarkReport report = ppa::rel_mse_benchmark(ds.data, cfg, b.repeats, b.seed);
  Output out(b.output);
  ppa::write_report_csv(out.stream(), report);
  for (std::size_t r = 0; r < report.degrees.size(); ++r) {
    for (std::size_t m = 0; m < report.degrees[r].size(); ++m) {
      std::cerr << "repeat " << r << (m == 0 ? " ppa" : " ppa-gd") << " degrees:";
      for (int d : report.degrees[r][m]) std::cerr << ' ' << d;
      std::cerr << " fit_seconds: " << report.fit_seconds[r][m] << '\n';
    }
  }
  return 0;
}

struct KnnArgs {
  std::string input, output;
  std::vector<int> ks = {1, 5, 15};
  std::vector<std::string> metrics = {"euclidean", "mahalanobis", "ppa-whitened"};
  long train_per_class = 50;
  int repeats = 10;
  std::uint64_t seed = 0;
  int max_degree = 5;
};

int run_knn(const KnnArgs& k) {
  // Last column holds integer class labels.
  const ppa::CsvTable t = ppa::read_csv_file(k.input);
  if (t.rows.cols() < 3) throw ppa::Error(ppa::ErrorKind::InvalidData, "knn input needs >= 2 features and a label");
  const Eigen::Index c = t.rows.cols() - 1;
  std::vector<int> labels;
  for (Eigen::Index i = 0; i < t.rows.rows(); ++i) {
    const double v = t.rows(i, c);
    if (v != std::round(v)) throw ppa::Error(ppa::ErrorKind::InvalidData, "labels must be integers");
    labels.push_back(static_cast<int>(v));
  }
  ppa::KnnExperiment cfg;
  cfg.ks = k.ks;
  cfg.metrics.clear();
  for (const auto& m : k.metrics) cfg.metrics.push_back(ppa::parse_knn_metric(m));
  cfg.train_per_class = k.train_per_class;
  cfg.repeats = k.repeats;
  cfg.seed = k.seed;
  cfg.ppa.degree = ppa::DegreePolicy::cross_validated(1, k.max_degree);
  const auto rows = ppa::knn_experiment(ppa::DataMatrix(t.rows.leftCols(c).transpose()), labels, cfg);
  Output out(k.output);
  ppa::write_knn_csv(out.stream(), rows);
  return 0;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw ppa::Error(ppa::ErrorKind::OutOfRange, "steps must be >= 1");
  std::vector<double> v;
  for (int i = 0; i < steps; ++i) v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  return v;
}

std::string frame_column_name(Eigen::Index k) {
  static const char* names[] = {"tangent", "normal", "binormal"};
  return k < 3 ? names[k] : "frame" + std::to_string(k + 1);
}

int run_curvature(const std::string& model_path, double lo, double hi, int steps, const std::string& output) {
  const ppa::PpaModel model = ppa::load_model(model_path);
  const Eigen::Index d = model.dims();
  Output out(output);
  std::ostream& os = out.stream();
  os << "alpha";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i + 1;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << frame_column_name(k) << '_' << i + 1;
  for (Eigen::Index k = 1; k < d; ++k) os << ",chi" << k;
  os << ",speed\n";
  for (double a : linspace(lo, hi, steps)) {
    const ppa::FrenetFrame f = ppa::frenet_frame(model, a);
    os << fmt(a);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << fmt(f.point(i));
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index i = 0; i < d; ++i) os << ',' << fmt(f.frame(i, k));
    for (Eigen::Index k = 0; k + 1 < d; ++k) os << ',' << fmt(f.curvatures(k));
    os << ',' << fmt(f.speed) << '\n';
  }
  return 0;
}

int run_curve(const std::string& model_path, int dims, int grid, double lo, double hi, const std::string& output) {
  const ppa::PpaModel model = ppa::load_model(model_path);
  const auto nodes = ppa::principal_grid(model, dims, linspace(lo, hi, grid));
  Output out(output);
  std::ostream& os = out.stream();
  for (int k = 0; k < dims; ++k) os << (k ? "," : "") << 'c' << k + 1;
  for (Eigen::Index i = 0; i < model.dims(); ++i) os << ",x" << i + 1;
  os << '\n';
  for (const auto& [coords, point] : nodes) {
    for (Eigen::Index k = 0; k < coords.size(); ++k) os << (k ? "," : "") << fmt(coords(k));
    for (Eigen::Index i = 0; i < point.size(); ++i) os << ',' << fmt(point(i));
    os << '\n';
  }
  return 0;
}

int run_mi(const std::string& model_path, const std::string& input, const std::string& baseline,
           const std::string& output) {
  const ppa::PpaModel model = ppa::load_model(model_path);
  const ppa::LoadedDataset ds = ppa::load_dataset(input, false);
  check_dims(model, ds.data);
  Output out(output);
  std::ostream& os = out.stream();
  os << "method,bits_per_dim,input_entropy_sum,output_entropy_sum,samples\n";
  auto row = [&](const char* name, const ppa::Matrix& y) {
    const ppa::MultiInfoReduction r = ppa::multi_info_reduction(ds.data.values(), y);
    os << name << ',' << fmt(r.bits_per_dim) << ',' << fmt(r.input_entropy_sum) << ','
       << fmt(r.output_entropy_sum) << ',' << ds.data.samples() << '\n';
  };
  row("ppa", ppa::forward(model, ds.data));
  if (baseline == "pca") {
    const ppa::PcaModel pca = ppa::fit_pca(ds.data);
    ppa::Matrix y(ds.data.dims(), ds.data.samples());
    for (Eigen::Index k = 0; k < y.cols(); ++k) y.col(k) = pca.project(ds.data.col(k));
    row("pca", y);
  } else if (!baseline.empty() && baseline != "none") {
    throw ppa::Error(ppa::ErrorKind::OutOfRange, "unknown baseline '" + baseline + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal Polynomial Analysis"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic dataset (rows = samples)");
  g->add_option("--kind", gen.kind, "parabola2d | helix3d | helix4d | parabola-classes")->capture_default_str();
  g->add_option("--a", gen.a, "Helix radius")->capture_default_str();
  g->add_option("--b", gen.b, "Helix pitch")->capture_default_str();
  g->add_option("--curvature", gen.curvature, "Parabola curvature")->capture_default_str();
  g->add_option("--offset", gen.offset, "Parabola vertical offset")->capture_default_str();
  g->add_option("--sigma", gen.sigma, "Noise standard deviation")->capture_default_str();
  g->add_option("--n", gen.n, "Samples (per class for parabola-classes)")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--output,-o", gen.output, "Output CSV (default stdout)");

  FitArgs fa;
  auto* f = app.add_subcommand("fit", "Fit a PPA model");
  f->add_option("--input,-i", fa.input, "Input CSV")->required();
  f->add_option("--output,-o", fa.output, "Model file (default stdout)");
  f->add_option("--strategy", fa.strategy, "pca | gd")->capture_default_str();
  f->add_option("--min-degree", fa.min_degree)->capture_default_str();
  f->add_option("--max-degree", fa.max_degree)->capture_default_str();
  f->add_option("--degree", fa.degree, "Fixed degree for every step (disables cross-validation)");
  f->add_option("--cv-fraction", fa.cv_fraction)->capture_default_str();
  f->add_option("--gd-iters", fa.gd_iters)->capture_default_str();
  f->add_option("--gd-tol", fa.gd_tol)->capture_default_str();
  f->add_option("--gd-restarts", fa.gd_restarts)->capture_default_str();
  f->add_option("--seed", fa.seed)->capture_default_str();
  f->add_flag("--normalize", fa.normalize, "Scale every column to [0, 1] before fitting");

  std::string model_path, input, output;
  long keep = 0;
  bool transformed = false;
  auto* t = app.add_subcommand("transform", "Map data to the PPA domain");
  t->add_option("--model,-m", model_path)->required();
  t->add_option("--input,-i", input)->required();
  t->add_option("--output,-o", output);

  auto* r = app.add_subcommand("reconstruct", "Reconstruct data from its first --keep PPA coordinates");
  r->add_option("--model,-m", model_path)->required();
  r->add_option("--input,-i", input)->required();
  r->add_option("--output,-o", output);
  r->add_option("--keep", keep, "Kept coordinates (default: all)");
  r->add_flag("--transformed", transformed, "Input is already in the PPA domain");

  BenchArgs ba;
  auto* b = app.add_subcommand("benchmark", "Relative MSE of PPA against PCA over random splits");
  b->add_option("--input,-i", ba.input)->required();
  b->add_option("--output,-o", ba.output);
  b->add_option("--dataset", ba.dataset, "Dataset id in the report (default: file name)");
  b->add_option("--repeats", ba.repeats)->capture_default_str();
  b->add_option("--seed", ba.seed)->capture_default_str();
  b->add_option("--max-dims", ba.max_dims, "Use only the first N columns (0 = all)")->capture_default_str();
  b->add_option("--max-degree", ba.max_degree)->capture_default_str();
  b->add_flag("--gd", ba.gd, "Also run the gradient-descent strategy");
  b->add_flag("--no-normalize", ba.no_normalize, "Skip [0, 1] scaling");

  KnnArgs ka;
  auto* k = app.add_subcommand("knn", "k-NN accuracy under euclidean, mahalanobis and PPA metrics");
  k->add_option("--input,-i", ka.input, "CSV with the class label in the last column")->required();
  k->add_option("--output,-o", ka.output);
  k->add_option("--k", ka.ks)->delimiter(',')->capture_default_str();
  k->add_option("--metric", ka.metrics)->delimiter(',')->capture_default_str();
  k->add_option("--train-per-class", ka.train_per_class)->capture_default_str();
  k->add_option("--repeats", ka.repeats)->capture_default_str();
  k->add_option("--seed", ka.seed)->capture_default_str();
  k->add_option("--max-degree", ka.max_degree)->capture_default_str();

  double alpha_min = -1.0, alpha_max = 1.0;
  int steps = 50;
  auto* c = app.add_subcommand("curvature", "Frenet frames and curvatures along the first principal curve");
  c->add_option("--model,-m", model_path)->required();
  c->add_option("--alpha-min", alpha_min)->capture_default_str();
  c->add_option("--alpha-max", alpha_max)->capture_default_str();
  c->add_option("--steps", steps)->capture_default_str();
  c->add_option("--output,-o", output);

  int dims = 1, grid = 21;
  auto* cv = app.add_subcommand("curve", "Principal curve / surface / volume on a grid");
  cv->add_option("--model,-m", model_path)->required();
  cv->add_option("--dims", dims)->capture_default_str();
  cv->add_option("--grid", grid, "Nodes per axis")->capture_default_str();
  cv->add_option("--min", alpha_min)->capture_default_str();
  cv->add_option("--max", alpha_max)->capture_default_str();
  cv->add_option("--output,-o", output);

  std::string baseline = "pca";
  auto* mi = app.add_subcommand("mi", "Multi-information reduction of the PPA transform");
  mi->add_option("--model,-m", model_path)->required();
  mi->add_option("--input,-i", input)->required();
  mi->add_option("--baseline", baseline, "pca | none")->capture_default_str();
  mi->add_option("--output,-o", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*g) return run_gen(gen);
    if (*f) return run_fit(fa);
    if (*t) return run_transform(model_path, input, output);
    if (*r) return run_reconstruct(model_path, input, output, keep, transformed);
    if (*b) return run_benchmark(ba);
    if (*k) return run_knn(ka);
    if (*c) return run_curvature(model_path, alpha_min, alpha_max, steps, output);
    if (*cv) return run_curve(model_path, dims, grid, alpha_min, alpha_max, output);
    if (*mi) return run_mi(model_path, input, baseline, output);
  } catch (const ppa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
