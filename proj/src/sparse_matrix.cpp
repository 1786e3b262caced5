#include "sge/sparse_matrix.hpp"

#include <algorithm>

namespace sge {

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  const auto row_view = row(r);
  auto it = std::lower_bound(row_view.cols.begin(), row_view.cols.end(), static_cast<std::uint32_t>(c));
  if (it == row_view.cols.end() || *it != c) return 0.0;
  return row_view.values[static_cast<std::size_t>(it - row_view.cols.begin())];
}

double CsrMatrix::density() const {
  if (rows == 0 || cols == 0) return 0.0;
  return static_cast<double>(nnz()) / (static_cast<double>(rows) * static_cast<double>(cols));
}

std::size_t CsrMatrix::storage_bytes() const {
  return row_offsets.size() * sizeof(std::uint64_t) + col_indices.size() * sizeof(std::uint32_t) +
         values.size() * sizeof(double);
}

CsrMatrix CsrMatrix::select_rows(std::span<const std::size_t> which) const {
  CsrMatrix out;
  out.rows = which.size();
  out.cols = cols;
  out.row_offsets.reserve(which.size() + 1);
  for (auto r : which) {
    const auto view = row(r);
    out.col_indices.insert(out.col_indices.end(), view.cols.begin(), view.cols.end());
    out.values.insert(out.values.end(), view.values.begin(), view.values.end());
    out.row_offsets.push_back(out.col_indices.size());
  }
  return out;
}

}  // namespace sge
