#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppa/types.hpp"

namespace ppa {

enum class SyntheticKind { Parabola2d, Helix3d, Helix4d };

const char* to_string(SyntheticKind kind);
SyntheticKind parse_synthetic_kind(const std::string& name);

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::Parabola2d;
  double curvature = 1.0;  // parabola: x2 = curvature * x1^2 / 2
  double offset = 0.0;     // parabola: added to x2
  double a = 2.0;          // helix radius
  double b = 0.8;          // helix pitch / (2 pi)
  double sigma = 0.0;
  Eigen::Index n = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

// Support of the parabola abscissa and of the helix parameter.
inline constexpr double kParabolaHalfWidth = 2.0;
inline constexpr double kHelixTurns = 2.5;

// x1 ~ U[-2, 2], x2 = curvature x1^2 / 2 + offset + N(0, sigma^2).
DataMatrix gen_parabola2d(const SyntheticSpec& spec);

// (a cos t, a sin t, b t) + N(0, sigma^2 I), t ~ U[0, 2 pi * 2.5].
DataMatrix gen_helix3d(const SyntheticSpec& spec);

struct EmbeddedHelix {
  DataMatrix data;
  Matrix rotation;  // 4 x 4 orthogonal
};

// 3-d helix padded with a zero coordinate, rotated by a seeded Haar rotation,
// then noise added in 4-d.
EmbeddedHelix gen_helix4d(const SyntheticSpec& spec);

DataMatrix generate(const SyntheticSpec& spec);

struct LabeledData {
  DataMatrix data;
  std::vector<int> labels;
};

// Two noisy parabolas of the same curvature separated vertically by `offset`
// (class 0 centered at zero offset, class 1 shifted), n samples per class,
// samples interleaved by class.
LabeledData gen_parabola_classes(double curvature, double offset, double sigma, Eigen::Index n_per_class,
                                 std::uint64_t seed);

// Per-column affine map to [0, 1]: y = (x - min) * scale.
struct ColumnScaling {
  Vector min;
  Vector scale;  // 1/(max - min); constant columns map to 0.5 and store scale 0

  Vector apply(const Eigen::Ref<const Vector>& x) const;
  Vector invert(const Eigen::Ref<const Vector>& y) const;
};

ColumnScaling fit_scaling(const DataMatrix& x);
DataMatrix apply_scaling(const ColumnScaling& s, const DataMatrix& x);
DataMatrix invert_scaling(const ColumnScaling& s, const DataMatrix& y);

struct CsvTable {
  std::optional<std::vector<std::string>> header;
  Matrix rows;  // n x c, as read
};

// Rows are samples. A first row with any non-numeric cell is a header.
// Ragged rows and non-numeric cells raise Parse errors with line/column.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& os, const Matrix& rows, const std::vector<std::string>& header = {});
void write_csv_file(const std::string& path, const Matrix& rows, const std::vector<std::string>& header = {});

struct LoadedDataset {
  DataMatrix data;  // d x n
  std::optional<ColumnScaling> scaling;
  std::optional<std::vector<std::string>> header;
};

// Reads a rows-as-samples CSV (>= 2 columns) into column-wise samples,
// optionally normalizing every dimension to [0, 1].
LoadedDataset load_dataset(const std::string& path, bool normalize);

// Samples as rows, the CSV orientation.
void save_dataset(const std::string& path, const DataMatrix& x, const std::vector<std::string>& header = {});

struct Split {
  DataMatrix train;
  DataMatrix test;
  std::vector<Eigen::Index> train_idx;
  std::vector<Eigen::Index> test_idx;
};

// Seeded uniform permutation; the first floor(fraction * n) columns train.
Split split(const DataMatrix& x, double fraction, std::uint64_t seed);

}  // namespace ppa
