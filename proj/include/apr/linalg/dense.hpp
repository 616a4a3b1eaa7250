#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace apr::linalg {

/// Column-major dense matrix; columns are contiguous so kernel ops work on
/// them directly.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<double> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const double> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// Keeps the first `cols` columns.
  void truncate_cols(std::size_t cols);

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Compressed sparse column matrix (term x document for the LSI index).
struct CscMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::size_t> row_idx;
  std::vector<double> values;

  /// y = A x; y has `rows` entries.
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// y = A^T x; y has `cols` entries.
  void multiply_transposed(std::span<const double> x, std::span<double> y) const;

  double column_norm(std::size_t c) const;

  bool operator==(const CscMatrix&) const = default;
};

struct SymmetricEigen {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column i pairs with values[i]
};

/// Cyclic Jacobi eigensolver for a small dense symmetric matrix.
SymmetricEigen jacobi_eigen(DenseMatrix a, int max_sweeps = 100);

}  // namespace apr::linalg
