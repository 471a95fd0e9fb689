// Scalar reference kernels. The AVX2 variants in avx2.cpp mirror this math
// operation for operation; keep the two files in lockstep.

#include <cmath>

#include "kernels_internal.hpp"
#include "qkd/detail/rng.hpp"

namespace qkd::kernels::detail {

using qkd::detail::counter_value;
using qkd::detail::sincospi2;
using qkd::detail::to_unit;

void mc_scalar_range(McEnsemble ensemble, int component, std::uint64_t begin, std::uint64_t end,
                     std::uint64_t seed, McAccum& acc) noexcept {
  for (std::uint64_t i = begin; i < end; ++i) {
    const std::uint64_t ctr = i * qkd::detail::kSlotsPerSample;
    const double u1 = to_unit(counter_value(seed, ctr));
    double nx, ny, nz;
    if (ensemble == McEnsemble::sphere) {
      // area-uniform: z uniform in [-1, 1), azimuth uniform in [0, 2*pi)
      const double u2 = to_unit(counter_value(seed, ctr + 1));
      nz = u1 * 2.0 - 1.0;
      const double r = std::sqrt(1.0 - nz * nz);
      const auto sc = sincospi2(u2);
      nx = r * sc.cos_v;
      ny = r * sc.sin_v;
    } else {
      // z-x plane: theta uniform in [0, pi)
      const auto sc = sincospi2(u1 * 0.5);
      nz = sc.cos_v;
      nx = sc.sin_v;
      ny = 0.0;
    }
    const double w = component == 0 ? nx : (component == 1 ? ny : nz);
    const double v = 1.0 - w * w;
    acc.sum[i & 3] += v;
    acc.sum_sq[i & 3] += v * v;
  }
}

PairCounts sim_scalar_range(const PairTable& table, std::uint64_t begin, std::uint64_t end,
                            std::uint64_t seed) noexcept {
  PairCounts counts;
  const double m = static_cast<double>(table.basis_count);
  const double* pp = table.parallel_prob.data();
  for (std::uint64_t i = begin; i < end; ++i) {
    const std::uint64_t base = i * qkd::detail::kSlotsPerPair;
    const double ul = to_unit(counter_value(seed, base + qkd::detail::kSlotLabel));
    const int label = (ul >= table.label_cdf[0] ? 1 : 0) + (ul >= table.label_cdf[1] ? 1 : 0) +
                      (ul >= table.label_cdf[2] ? 1 : 0);
    int basis_a, basis_b;
    if (table.npab) {
      const double us = to_unit(counter_value(seed, base + qkd::detail::kSlotNpabBasis));
      basis_a = basis_b = static_cast<int>(std::floor(us * m));
    } else {
      basis_a = static_cast<int>(
          std::floor(to_unit(counter_value(seed, base + qkd::detail::kSlotBasisA)) * m));
      basis_b = static_cast<int>(
          std::floor(to_unit(counter_value(seed, base + qkd::detail::kSlotBasisB)) * m));
    }
    if (basis_a != basis_b) continue;
    ++counts.sifted;
    const double uc = to_unit(counter_value(seed, base + qkd::detail::kSlotCheck));
    if (!(uc < table.check_fraction)) continue;
    ++counts.checked;
    const double v = to_unit(counter_value(seed, base + qkd::detail::kSlotOutcome));
    if (v < pp[label * table.basis_count + basis_a]) {
      ++counts.parallel;
    } else {
      ++counts.anti;
    }
  }
  return counts;
}

}  // namespace qkd::kernels::detail
