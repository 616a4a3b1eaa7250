#include "apr/linalg/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "apr/errors.hpp"
#include "apr/linalg/kernels.hpp"

namespace apr::linalg {

namespace {

// Modified Gram-Schmidt with one reorthogonalization pass. Columns that
// collapse (the operator has a null space inside the block) are replaced by
// fresh random directions so the block stays a full orthonormal basis.
void orthonormalize(DenseMatrix& q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t j = 0; j < q.cols(); ++j) {
    auto cj = q.col(j);
    for (int attempt = 0; attempt < 8; ++attempt) {
      const double before = kernels::norm2(cj);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < j; ++i) {
          const double proj = kernels::dot(q.col(i), cj);
          kernels::axpy(-proj, q.col(i), cj);
        }
      }
      const double after = kernels::norm2(cj);
      if (after > 1e-10 * before && after > 0.0) {
        kernels::scale(1.0 / after, cj);
        break;
      }
      for (auto& v : cj) {
        v = unit(rng);
      }
    }
  }
}

// Deterministic sign: the largest-magnitude entry of each right vector is positive.
void fix_signs(DenseMatrix& right, DenseMatrix& left) {
  for (std::size_t j = 0; j < right.cols(); ++j) {
    auto col = right.col(j);
    std::size_t best = 0;
    for (std::size_t i = 1; i < col.size(); ++i) {
      if (std::abs(col[i]) > std::abs(col[best])) {
        best = i;
      }
    }
    if (!col.empty() && col[best] < 0.0) {
      kernels::scale(-1.0, col);
      kernels::scale(-1.0, left.col(j));
    }
  }
}

}  // namespace

TruncatedSvd truncated_svd(const CscMatrix& a, const SvdOptions& options) {
  if (options.rank < 1) {
    throw Error(ErrorKind::validation, "svd rank must be >= 1");
  }
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  TruncatedSvd out;
  if (m == 0 || n == 0) {
    out.converged = true;
    return out;
  }

  const std::size_t target = std::min({options.rank, m, n});
  const std::size_t block = std::min(n, target + options.oversample);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  DenseMatrix q(n, block);
  for (auto& v : q.data()) {
    v = unit(rng);
  }
  orthonormalize(q, rng);

  DenseMatrix aq(m, block);
  DenseMatrix z(n, block);
  std::vector<double> sigma(block, 0.0);
  std::vector<double> previous(block, -1.0);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    for (std::size_t j = 0; j < block; ++j) {
      a.multiply(q.col(j), aq.col(j));
      a.multiply_transposed(aq.col(j), z.col(j));
    }
    q = z;
    orthonormalize(q, rng);

    // Rayleigh-Ritz on span(q): H = (A q)^T (A q)
    for (std::size_t j = 0; j < block; ++j) {
      a.multiply(q.col(j), aq.col(j));
    }
    DenseMatrix h(block, block);
    for (std::size_t i = 0; i < block; ++i) {
      for (std::size_t j = i; j < block; ++j) {
        const double v = kernels::dot(aq.col(i), aq.col(j));
        h(i, j) = v;
        h(j, i) = v;
      }
    }
    const SymmetricEigen eig = jacobi_eigen(std::move(h));
    DenseMatrix rotated(n, block);
    for (std::size_t k = 0; k < block; ++k) {
      auto dst = rotated.col(k);
      for (std::size_t i = 0; i < block; ++i) {
        kernels::axpy(eig.vectors(i, k), q.col(i), dst);
      }
    }
    q = std::move(rotated);
    for (std::size_t k = 0; k < block; ++k) {
      sigma[k] = std::sqrt(std::max(eig.values[k], 0.0));
    }

    out.iterations = iter;
    double change = 0.0;
    for (std::size_t k = 0; k < target; ++k) {
      change = std::max(change, std::abs(sigma[k] - previous[k]));
    }
    // A block covering all of R^n is an exact invariant subspace.
    if (block == n || change <= options.tolerance * std::max(sigma[0], 1e-300)) {
      out.converged = true;
      break;
    }
    previous = sigma;
  }

  // Singular triples from the Ritz vectors: sigma_k = ||A v_k||, u_k = A v_k / sigma_k.
  struct Triple {
    double sigma;
    std::size_t col;
  };
  std::vector<Triple> triples;
  triples.reserve(target);
  DenseMatrix left_all(m, target);
  for (std::size_t k = 0; k < target; ++k) {
    a.multiply(q.col(k), left_all.col(k));
    triples.push_back({kernels::norm2(left_all.col(k)), k});
  }
  std::stable_sort(triples.begin(), triples.end(), [](const Triple& x, const Triple& y) { return x.sigma > y.sigma; });
  const double sigma_max = triples.empty() ? 0.0 : triples.front().sigma;
  std::size_t rank = 0;
  while (rank < triples.size() && triples[rank].sigma > options.rank_tolerance * sigma_max) {
    ++rank;
  }

  // A zero matrix still gets one (zero) singular triple so callers always
  // see rank >= 1.
  const bool degenerate = rank == 0;
  if (degenerate) {
    rank = 1;
  }

  out.singular_values.resize(rank);
  out.left = DenseMatrix(m, rank);
  out.right = DenseMatrix(n, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const auto& t = triples[k];
    auto u = out.left.col(k);
    if (degenerate) {
      out.singular_values[k] = 0.0;
      u[0] = 1.0;
    } else {
      out.singular_values[k] = t.sigma;
      const auto src = left_all.col(t.col);
      std::copy(src.begin(), src.end(), u.begin());
      kernels::scale(1.0 / t.sigma, u);
    }
    const auto v = q.col(t.col);
    std::copy(v.begin(), v.end(), out.right.col(k).begin());
  }
  fix_signs(out.right, out.left);
  return out;
}

}  // namespace apr::linalg
