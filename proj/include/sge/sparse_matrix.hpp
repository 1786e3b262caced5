#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sge {

struct SparseRow {
  std::span<const std::uint32_t> cols;
  std::span<const double> values;
  std::size_t nnz() const { return cols.size(); }
};

/// Compressed sparse rows with sorted column indices inside each row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> row_offsets{0};
  std::vector<std::uint32_t> col_indices;
  std::vector<double> values;

  static CsrMatrix empty(std::size_t rows, std::size_t cols) {
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_offsets.assign(rows + 1, 0);
    return m;
  }

  std::size_t nnz() const { return col_indices.size(); }
  SparseRow row(std::size_t r) const {
    const auto b = row_offsets[r], e = row_offsets[r + 1];
    return {{col_indices.data() + b, col_indices.data() + e}, {values.data() + b, values.data() + e}};
  }
  /// Value at (r, c), 0 if not stored.
  double at(std::size_t r, std::size_t c) const;
  /// Fraction of stored entries among rows * cols (0 for an empty shape).
  double density() const;
  /// Bytes held by the CSR arrays vs. a dense rows x cols double matrix.
  std::size_t storage_bytes() const;
  std::size_t dense_bytes() const { return rows * cols * sizeof(double); }
  /// Copies the given rows, in order, into a new matrix.
  CsrMatrix select_rows(std::span<const std::size_t> which) const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;
};

}  // namespace sge
