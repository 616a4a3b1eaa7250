#pragma once

#include <cstddef>
#include <vector>

#include "apr/linalg/dense.hpp"

namespace apr::linalg {

struct SvdOptions {
  std::size_t rank = 100;
  /// Stop once no leading singular value moves by more than
  /// tolerance * sigma_max between sweeps.
  double tolerance = 1e-10;
  int max_iterations = 1000;
  /// Extra block columns beyond `rank`; speeds convergence of the tail.
  std::size_t oversample = 8;
  /// Singular values at or below this fraction of sigma_max count as zero.
  double rank_tolerance = 1e-9;
  unsigned long long seed = 0x5eedULL;
};

struct TruncatedSvd {
  std::vector<double> singular_values;  // non-increasing, all > 0
  DenseMatrix left;                     // rows x rank, orthonormal columns
  DenseMatrix right;                    // cols x rank, orthonormal columns
  int iterations = 0;
  bool converged = false;

  std::size_t rank() const noexcept { return singular_values.size(); }
};

/// Rank-min(options.rank, numerical rank) SVD by block subspace iteration on
/// A^T A with Rayleigh-Ritz extraction. When the block spans the whole column
/// space the result is exact up to rounding after one sweep.
TruncatedSvd truncated_svd(const CscMatrix& a, const SvdOptions& options);

}  // namespace apr::linalg
