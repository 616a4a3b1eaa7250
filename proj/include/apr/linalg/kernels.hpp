#pragma once

// Dense double-precision vector kernels used by the SVD and the latent-space
// cosine. Each op has a scalar reference and, on x86-64, an AVX2/FMA variant;
// the public entry points dispatch once at startup on CPUID.

#include <cstddef>
#include <span>

namespace apr::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

/// Best variant supported by this build and CPU.
Isa detected_isa();

/// Variant currently used by the dispatching entry points.
Isa active_isa();

/// Pins dispatch to `isa`. Returns false (and changes nothing) when the
/// variant is unavailable. Intended for tests and benchmarks.
bool force_isa(Isa isa);

double dot(std::span<const double> x, std::span<const double> y);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
/// x *= a
void scale(double a, std::span<double> x);
double norm2(std::span<const double> x);

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
double norm2(std::span<const double> x);
}  // namespace scalar

#if defined(APR_HAVE_AVX2_KERNELS)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
double norm2(std::span<const double> x);
}  // namespace avx2
#endif

}  // namespace apr::kernels
