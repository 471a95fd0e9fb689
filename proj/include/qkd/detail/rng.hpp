// Counter-based random primitives shared by the scalar and vector kernels.
//
// Every draw is a pure function of (seed, counter): mix64(seed + counter * kGamma),
// the SplitMix64 output function evaluated at an arbitrary stream offset. Results
// are therefore independent of loop order, chunking, and worker count, and a
// vector lane evaluating counter k produces the same bits as a scalar iteration
// evaluating counter k.
//
// src/kernels/avx2.cpp mirrors these definitions operation for operation; the
// kernel equivalence suite asserts bit-identical output. Any change here must be
// kept in lockstep with that file.

#pragma once

#include <cmath>
#include <cstdint>

namespace qkd::detail {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// Counter slots reserved per simulated pair. Unused slots cost nothing.
inline constexpr std::uint64_t kSlotsPerPair = 8;
inline constexpr std::uint64_t kSlotLabel = 0;
inline constexpr std::uint64_t kSlotBasisA = 1;
inline constexpr std::uint64_t kSlotBasisB = 2;
inline constexpr std::uint64_t kSlotOutcome = 3;
inline constexpr std::uint64_t kSlotCheck = 4;
inline constexpr std::uint64_t kSlotNpabBasis = 5;

// Counter slots per Monte Carlo sample (polar and azimuthal draw).
inline constexpr std::uint64_t kSlotsPerSample = 2;

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_value(std::uint64_t seed, std::uint64_t counter) noexcept {
  return mix64(seed + counter * kGamma);
}

// Top 52 bits to a double in [0, 1). The integer fits a double exactly, so the
// conversion rounds identically in scalar and vector form.
inline double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 12) * 0x1.0p-52;
}

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// sin/cos polynomial coefficients, 1/k! with alternating sign.
inline constexpr double kS3 = -1.0 / 6.0;
inline constexpr double kS5 = 1.0 / 120.0;
inline constexpr double kS7 = -1.0 / 5040.0;
inline constexpr double kS9 = 1.0 / 362880.0;
inline constexpr double kS11 = -1.0 / 39916800.0;
inline constexpr double kS13 = 1.0 / 6227020800.0;
inline constexpr double kS15 = -1.0 / 1307674368000.0;
inline constexpr double kS17 = 1.0 / 355687428096000.0;

inline constexpr double kC2 = -1.0 / 2.0;
inline constexpr double kC4 = 1.0 / 24.0;
inline constexpr double kC6 = -1.0 / 720.0;
inline constexpr double kC8 = 1.0 / 40320.0;
inline constexpr double kC10 = -1.0 / 3628800.0;
inline constexpr double kC12 = 1.0 / 479001600.0;
inline constexpr double kC14 = -1.0 / 87178291200.0;
inline constexpr double kC16 = 1.0 / 20922789888000.0;
inline constexpr double kC18 = -1.0 / 6402373705728000.0;

struct SinCos {
  double cos_v;
  double sin_v;
};

// cos/sin of 2*pi*u for u in [0, 1). Quadrant reduction plus a Taylor kernel on
// [0, pi/2); max error a few 1e-14. Used instead of libm so vector lanes can
// reproduce the exact same doubles.
inline SinCos sincospi2(double u) noexcept {
  const double q = std::floor(u * 4.0);
  const double r = u - q * 0.25;
  const double x = r * kTwoPi;
  const double y = x * x;
  const double s =
      x * (1.0 + y * (kS3 + y * (kS5 + y * (kS7 + y * (kS9 + y * (kS11 + y * (kS13 + y * (kS15 + y * kS17))))))));
  const double c =
      1.0 +
      y * (kC2 + y * (kC4 + y * (kC6 + y * (kC8 + y * (kC10 + y * (kC12 + y * (kC14 + y * (kC16 + y * kC18))))))));
  switch (static_cast<int>(q)) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

}  // namespace qkd::detail
