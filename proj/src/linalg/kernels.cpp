#include "apr/linalg/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cmath>

namespace apr::kernels {

namespace scalar {

// Four independent accumulators, the same reduction tree as the AVX2 lanes,
// so both variants agree to within a couple of ulps.
double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  const std::size_t n = x.size();
  for (; i + 4 <= n; i += 4) {
    acc[0] += x[i] * y[i];
    acc[1] += x[i + 1] * y[i + 1];
    acc[2] += x[i + 2] * y[i + 2];
    acc[3] += x[i + 3] * y[i + 3];
  }
  double sum = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] += a * x[i];
  }
}

void scale(double a, std::span<double> x) {
  for (auto& v : x) {
    v *= a;
  }
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

}  // namespace scalar

namespace {

struct Table {
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  void (*scale)(double, std::span<double>);
  double (*norm2)(std::span<const double>);
};

constexpr Table kScalar{&scalar::dot, &scalar::axpy, &scalar::scale, &scalar::norm2};
#if defined(APR_HAVE_AVX2_KERNELS)
constexpr Table kAvx2{&avx2::dot, &avx2::axpy, &avx2::scale, &avx2::norm2};
#endif

bool cpu_has_avx2() {
#if defined(APR_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

const Table& table() {
#if defined(APR_HAVE_AVX2_KERNELS)
  if (current().load(std::memory_order_relaxed) == Isa::avx2) {
    return kAvx2;
  }
#endif
  return kScalar;
}

}  // namespace

const char* to_string(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) {
    return false;
  }
  current().store(isa, std::memory_order_relaxed);
  return true;
}

double dot(std::span<const double> x, std::span<const double> y) { return table().dot(x, y); }
void axpy(double a, std::span<const double> x, std::span<double> y) { table().axpy(a, x, y); }
void scale(double a, std::span<double> x) { table().scale(a, x); }
double norm2(std::span<const double> x) { return table().norm2(x); }

}  // namespace apr::kernels
