#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "ppa/data.hpp"

namespace ppa {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    if (first) {
      first = false;
      width = cells.size();
      bool numeric = true;
      double tmp = 0.0;
      for (auto c : cells) numeric = numeric && parse_number(c, tmp);
      if (!numeric) {
        std::vector<std::string> header;
        for (auto c : cells) header.emplace_back(c);
        table.header = std::move(header);
        continue;
      }
    }
    if (cells.size() != width) {
      throw Error(ErrorKind::Parse, "csv line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                        " columns, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!parse_number(cells[c], v)) {
        throw Error(ErrorKind::Parse, "csv line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                          ": not a number '" + std::string(cells[c]) + "'");
      }
      values.push_back(v);
    }
    ++rows;
  }
  table.rows.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < width; ++c)
      table.rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * width + c];
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return read_csv(is);
}

void write_csv(std::ostream& os, const Matrix& rows, const std::vector<std::string>& header) {
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
    os << '\n';
  }
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) os << (c ? "," : "") << format_double(rows(r, c));
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const Matrix& rows, const std::vector<std::string>& header) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_csv(os, rows, header);
  if (!os) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

LoadedDataset load_dataset(const std::string& path, bool normalize) {
  CsvTable t = read_csv_file(path);
  if (t.rows.cols() < 2) throw Error(ErrorKind::InvalidData, "'" + path + "' needs at least 2 columns");
  if (t.rows.rows() < 2) throw Error(ErrorKind::InsufficientSamples, "'" + path + "' needs at least 2 rows");
  LoadedDataset out;
  out.data = DataMatrix(t.rows.transpose());
  out.header = std::move(t.header);
  if (normalize) {
    out.scaling = fit_scaling(out.data);
    out.data = apply_scaling(*out.scaling, out.data);
  }
  return out;
}

void save_dataset(const std::string& path, const DataMatrix& x, const std::vector<std::string>& header) {
  write_csv_file(path, x.values().transpose(), header);
}

}  // namespace ppa
