#include "apr/linalg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apr/linalg/kernels.hpp"

namespace apr::linalg {

void DenseMatrix::truncate_cols(std::size_t cols) {
  if (cols >= cols_) {
    return;
  }
  cols_ = cols;
  data_.resize(rows_ * cols_);
}

void CscMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    const double xc = x[c];
    if (xc == 0.0) {
      continue;
    }
    for (std::size_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) {
      y[row_idx[k]] += values[k] * xc;
    }
  }
}

void CscMatrix::multiply_transposed(std::span<const double> x, std::span<double> y) const {
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) {
      sum += values[k] * x[row_idx[k]];
    }
    y[c] = sum;
  }
}

double CscMatrix::column_norm(std::size_t c) const {
  const std::span<const double> v(values.data() + col_ptr[c], col_ptr[c + 1] - col_ptr[c]);
  return kernels::norm2(v);
}

SymmetricEigen jacobi_eigen(DenseMatrix a, int max_sweeps) {
  const std::size_t n = a.rows();
  DenseMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    v(i, i) = 1.0;
  }

  double frob = 0.0;
  for (double x : a.data()) {
    frob += x * x;
  }
  frob = std::sqrt(frob);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        off += a(p, q) * a(p, q);
      }
    }
    if (std::sqrt(off) <= 1e-15 * frob || frob == 0.0) {
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    const auto src = v.col(order[k]);
    std::copy(src.begin(), src.end(), out.vectors.col(k).begin());
  }
  return out;
}

}  // namespace apr::linalg
