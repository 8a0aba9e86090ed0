// Structural metrics on effective-channel matrices, plus CSV export of
// magnitude heatmaps.
#pragma once

#include "afdm/daft.hpp"
#include "afdm/types.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afdm {

inline constexpr double kDefaultZeroThreshold = 1e-9;

using SupportMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct LeakageMetric {
  double support_energy_fraction = 1.0;
  double leakage = 0.0;
  double threshold = kDefaultZeroThreshold;
  SupportMask support;  // cells of the reference matrix above threshold
};

template <typename DerivedA, typename DerivedB>
LeakageMetric leakage_metric(const Eigen::MatrixBase<DerivedA>& impaired,
                             const Eigen::MatrixBase<DerivedB>& reference,
                             double threshold = kDefaultZeroThreshold) {
  require(impaired.rows() == reference.rows() && impaired.cols() == reference.cols(),
          "leakage_metric: dimension mismatch");
  LeakageMetric out;
  out.threshold = threshold;
  out.support = reference.cwiseAbs().array() > threshold;
  const auto energy = impaired.cwiseAbs2().array();
  const double total = energy.sum();
  const double on_support = out.support.select(energy, 0.0).sum();
  out.support_energy_fraction = total > 0.0 ? on_support / total : 1.0;
  out.leakage = std::clamp(1.0 - out.support_energy_fraction, 0.0, 1.0);
  return out;
}

struct DensityStats {
  std::size_t nnz = 0;
  double density = 0.0;
  std::size_t per_row_max_nnz = 0;
};

template <typename Derived>
DensityStats density_stats(const Eigen::MatrixBase<Derived>& m,
                           double threshold = kDefaultZeroThreshold) {
  require(threshold > 0.0, "density_stats: threshold must be positive");
  const SupportMask nz = m.cwiseAbs().array() > threshold;
  DensityStats s;
  s.nnz = static_cast<std::size_t>(nz.count());
  s.density = m.size() ? static_cast<double>(s.nnz) / static_cast<double>(m.size()) : 0.0;
  for (Eigen::Index r = 0; r < nz.rows(); ++r)
    s.per_row_max_nnz = std::max<std::size_t>(s.per_row_max_nnz, nz.row(r).count());
  return s;
}

using CsvHeader = std::vector<std::pair<std::string, std::string>>;

// Format: one comment line `# rows=R,cols=C[,key=value...]`, then one
// comma-separated row of |m(i,j)| per matrix row, 6 significant digits.
template <typename Derived>
void export_matrix_magnitudes(const Eigen::MatrixBase<Derived>& m, const std::string& path,
                              const CsvHeader& params = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "# rows=" << m.rows() << ",cols=" << m.cols();
  for (const auto& [k, v] : params) out << ',' << k << '=' << v;
  out << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6g", static_cast<double>(std::abs(m(i, j))));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline RMatrix import_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("ragged row in '" + path + "'");
    rows.push_back(std::move(row));
  }
  RMatrix m(static_cast<Eigen::Index>(rows.size()),
            rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// Plain-text rendering of a zero-pattern comparison, one `key=value` per line
// followed by one line per discrepancy.
inline std::string format_zero_pattern_report(const ZeroPatternReport& r) {
  std::ostringstream os;
  os << "n=" << r.n << '\n'
     << "k=" << r.k << '\n'
     << "threshold=" << r.threshold << '\n'
     << "predicted_zero_cells=" << r.predicted_zero.count() << '\n'
     << "oracle_zero_cells=" << r.actual_zero.count() << '\n'
     << "discrepancies=" << r.discrepancies.size() << '\n'
     << "odd_sum_discrepancies=" << r.odd_sum_discrepancies() << '\n';
  char buf[160];
  for (const auto& d : r.discrepancies) {
    std::snprintf(buf, sizeof buf, "discrepancy m=%d l=%d s=%d predicted=%s oracle=%s magnitude=%.6g\n",
                  d.m, d.l, (d.m + d.l) % r.n, d.predicted_zero ? "zero" : "nonzero",
                  d.actual_zero ? "zero" : "nonzero", d.magnitude);
    os << buf;
  }
  return os.str();
}

}  // namespace afdm
