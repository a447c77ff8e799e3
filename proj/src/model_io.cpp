#include "ppa/model_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace ppa {
namespace {

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

template <typename Derived>
void write_values(std::ostream& os, const char* key, const Eigen::DenseBase<Derived>& m) {
  os << key;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << ' ' << format_double(m(i, j));
  os << '\n';
}

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  std::vector<std::string> next(const char* expected_key) {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      for (std::string t; ls >> t;) tokens.push_back(std::move(t));
      if (tokens.empty()) continue;
      if (tokens[0] != expected_key) fail(std::string("expected '") + expected_key + "', found '" + tokens[0] + "'");
      return tokens;
    }
    fail(std::string("unexpected end of document, expected '") + expected_key + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "model line " + std::to_string(line_no_) + ": " + what);
  }

  long to_int(const std::string& s) const {
    long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("bad integer '" + s + "'");
    return v;
  }

  double to_double(const std::string& s) const {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("bad number '" + s + "'");
    return v;
  }

  template <typename M>
  M values(const std::vector<std::string>& tokens, Eigen::Index rows, Eigen::Index cols) const {
    if (static_cast<Eigen::Index>(tokens.size()) != rows * cols + 1) {
      fail("'" + tokens[0] + "' needs " + std::to_string(rows * cols) + " values, found " +
           std::to_string(tokens.size() - 1));
    }
    M m(rows, cols);
    std::size_t t = 1;
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = to_double(tokens[t++]);
    return m;
  }

 private:
  std::istream& is_;
  int line_no_ = 0;
};

}  // namespace

void write_model(std::ostream& os, const PpaModel& model) {
  os << kModelSchema << '\n';
  os << "dims " << model.dims() << '\n';
  os << "strategy " << to_string(model.strategy()) << '\n';
  write_values(os, "mean", model.mean().transpose());
  for (std::size_t p = 0; p < model.steps().size(); ++p) {
    const PpaStep& s = model.steps()[p];
    os << "step " << (p + 1) << " degree " << s.degree << '\n';
    write_values(os, "leading", s.leading.transpose());
    write_values(os, "complement", s.complement);
    write_values(os, "coeffs", s.coeffs);
  }
  os << "end\n";
}

PpaModel read_model(std::istream& is) {
  LineReader in(is);
  const auto header = in.next(kModelSchema);
  if (header.size() != 1) in.fail("malformed schema line");
  const auto dims_line = in.next("dims");
  if (dims_line.size() != 2) in.fail("malformed dims line");
  const long d = in.to_int(dims_line[1]);
  if (d < 2) in.fail("dims must be >= 2");
  const auto strat_line = in.next("strategy");
  if (strat_line.size() != 2) in.fail("malformed strategy line");
  const Strategy strategy = parse_strategy(strat_line[1]);
  const Vector mean = in.values<Matrix>(in.next("mean"), 1, d).row(0).transpose();

  std::vector<PpaStep> steps;
  for (long p = 1; p < d; ++p) {
    const auto head = in.next("step");
    if (head.size() != 4 || head[2] != "degree" || in.to_int(head[1]) != p) in.fail("malformed step header");
    const long degree = in.to_int(head[3]);
    if (degree < 1) in.fail("degree must be >= 1");
    const Eigen::Index m = d - p + 1;
    PpaStep s;
    s.degree = static_cast<int>(degree);
    s.leading = in.values<Matrix>(in.next("leading"), 1, m).row(0).transpose();
    s.complement = in.values<RowMatrix>(in.next("complement"), m - 1, m);
    s.coeffs = in.values<RowMatrix>(in.next("coeffs"), m - 1, degree + 1);
    s.check(1e-8);
    steps.push_back(std::move(s));
  }
  in.next("end");
  return PpaModel(mean, std::move(steps), strategy);
}

void save_model(const std::string& path, const PpaModel& model) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_model(os, model);
  if (!os) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

PpaModel load_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return read_model(is);
}

}  // namespace ppa
